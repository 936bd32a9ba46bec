use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use conformal_kernel::commands::{run, Command, Flags};
use conformal_kernel::manifest::parse;
use conformal_kernel::runner::Parallel;

/// Checks and computations for Poisson conformal algebras described by a
/// manifest file.
#[derive(Parser, Debug)]
#[command(name = "conformal-kernel", version)]
struct Cli {
    /// check, coeff, cohomology, deform, nijenhuis or semiclassical
    command: Command,
    manifest: PathBuf,
    /// Generators of degree at most this enter the checks.
    #[arg(long)]
    window: Option<i64>,
    /// Mode range a..b for the coefficient algebra.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    modes: Option<(i64, i64)>,
    #[arg(long)]
    ansatz_ddeg: Option<u32>,
    #[arg(long)]
    ansatz_ldeg: Option<u32>,
    /// Random cochains per bidegree for the d^2 = 0 suite.
    #[arg(long)]
    d2_samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad bound `{}`", a))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad bound `{}`", b))?;
    if a > b {
        return Err(format!("empty range {}..{}", a, b));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let text = match std::fs::read_to_string(&cli.manifest) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {}", cli.manifest.display(), e);
            return ExitCode::from(3);
        }
    };
    let manifest = match parse(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("{}:{}", cli.manifest.display(), e);
            return ExitCode::from(3);
        }
    };
    let flags = Flags {
        window: cli.window,
        modes: cli.modes,
        ansatz_ddeg: cli.ansatz_ddeg,
        ansatz_ldeg: cli.ansatz_ldeg,
        d2_samples: cli.d2_samples,
        seed: cli.seed,
    };
    let report = run(cli.command, &manifest, &cli.manifest.display().to_string(), &flags, &Parallel);
    let text = report.render();
    print!("{}", text);
    if let Some(out) = &cli.out {
        if let Err(e) = std::fs::write(out, &text) {
            eprintln!("{}: {}", out.display(), e);
            return ExitCode::from(3);
        }
    }
    ExitCode::from(report.outcome().exit_code() as u8)
}
