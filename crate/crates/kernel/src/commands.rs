//! The pipelines behind each command. Settings come from command-line flags,
//! then the manifest's `[options]`, then fixed defaults.

use std::fmt;
use std::str::FromStr;

use conformal_core::algebra::runner::{names, tuples, Runner};
use conformal_core::algebra::{check_poisson, CheckReport, Checker, ConformalAlgebra};
use conformal_core::coeff::{check_coeff_poisson, coeff_bracket, coeff_derivation_check, compare_bracket, ModeWindow};
use conformal_core::cohomology::{
    check_action_laws, check_complex_identities, coboundary_solve, d_h, is_cocycle, Ansatz, Complex, IdentityConfig, RandomSpec,
};
use conformal_core::constructors::adjoint_module;
use conformal_core::deform::{
    check_homomorphism, check_n_deformation, extend_deformation, infinitesimal_is_cocycle, linear_deformation_check,
    nijenhuis_check, nijenhuis_deform, nijenhuis_linear_deformation, obstruction, semiclassical_report, series_associativity,
    trivial_deformation_check, DeformationSeries,
};

use crate::build;
use crate::manifest::Manifest;
use crate::report::{Report, Table};

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Coeff,
    Cohomology,
    Deform,
    Nijenhuis,
    Semiclassical,
}

impl Command {
    pub const ALL: [Command; 6] =
        [Command::Check, Command::Coeff, Command::Cohomology, Command::Deform, Command::Nijenhuis, Command::Semiclassical];

    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Coeff => "coeff",
            Command::Cohomology => "cohomology",
            Command::Deform => "deform",
            Command::Nijenhuis => "nijenhuis",
            Command::Semiclassical => "semiclassical",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command `{}`", s))
    }
}

/// Values given on the command line; `None` defers to the manifest.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub window: Option<i64>,
    pub modes: Option<(i64, i64)>,
    pub ansatz_ddeg: Option<u32>,
    pub ansatz_ldeg: Option<u32>,
    pub d2_samples: Option<usize>,
    pub seed: Option<u64>,
}

struct Settings<'a> {
    flags: &'a Flags,
    m: &'a Manifest,
}

impl Settings<'_> {
    fn int(&self, flag: Option<i64>, key: &str, default: i64) -> i64 {
        flag.or_else(|| self.m.option_int(key)).unwrap_or(default)
    }

    fn window(&self) -> i64 {
        self.int(self.flags.window, "window", 3)
    }

    fn seed(&self) -> u64 {
        self.flags.seed.or_else(|| self.m.option_int("seed").map(|s| s as u64)).unwrap_or(DEFAULT_SEED)
    }

    fn ansatz(&self) -> Option<Ansatz> {
        let d = self.flags.ansatz_ddeg.map(|v| v as i64).or_else(|| self.m.option_int("ansatz-ddeg"));
        let l = self.flags.ansatz_ldeg.map(|v| v as i64).or_else(|| self.m.option_int("ansatz-ldeg"));
        if d.is_none() && l.is_none() {
            return None;
        }
        let def = Ansatz::default();
        Some(Ansatz { ddeg: d.map_or(def.ddeg, |v| v as u32), ldeg: l.map_or(def.ldeg, |v| v as u32), ..def })
    }
}

/// Run `cmd` on a parsed manifest. `source` is echoed in the report.
pub fn run(cmd: Command, m: &Manifest, source: &str, flags: &Flags, runner: &dyn Runner) -> Report {
    let mut rep = Report::new(cmd.name(), source);
    let st = Settings { flags, m };
    let alg = build::algebra(m);
    match cmd {
        Command::Check => {
            let ck = Checker::new(st.window(), runner);
            rep.setting("window", ck.window);
            rep.checks = check_poisson(&alg, &ck);
        }
        Command::Coeff => coeff(&mut rep, &st, &alg, runner),
        Command::Cohomology => cohomology(&mut rep, &st, &alg, runner),
        Command::Deform => deform(&mut rep, &st, runner),
        Command::Nijenhuis => nijenhuis(&mut rep, &st, &alg, runner),
        Command::Semiclassical => {
            if let Some(ds) = series(&mut rep, &st) {
                let ck = Checker::new(st.window(), runner);
                rep.setting("window", ck.window);
                rep.setting("order", ds.order());
                rep.checks = semiclassical_report(&ds, &ck);
            }
        }
    }
    rep
}

fn coeff(rep: &mut Report, st: &Settings, alg: &ConformalAlgebra, runner: &dyn Runner) {
    let (lo, hi) = st.flags.modes.or_else(|| st.m.option_range("modes")).unwrap_or((-3, 3));
    let fw = st.m.option_int("family-window").unwrap_or_else(|| st.window());
    let tw = st.m.option_int("table-window").unwrap_or(fw.min(2));
    rep.setting("modes", format!("{}..{}", lo, hi));
    rep.setting("family-window", fw);
    rep.setting("table-window", tw);
    let win = ModeWindow::new(lo, hi, fw);
    rep.checks = check_coeff_poisson(alg, &win, runner);
    rep.checks.push(coeff_derivation_check(alg, &win, runner));
    if let Some(reference) = build::reference(st.m) {
        let mut c = compare_bracket(alg, &win, runner, &*reference);
        if c.failures > 0 {
            c.note = Some(format!(
                "discrepancy: the bracket constants derived from the conformal bracket differ from the reference formula on {} of {} mode pairs",
                c.failures, c.checked
            ));
            rep.notes.push(String::from("the reference formula for the coefficient bracket disagrees with the derived constants"));
        } else {
            c.note = Some(String::from("the derived bracket constants agree with the reference formula"));
        }
        rep.checks.push(c);
    }
    let mut table = Table { name: String::from("coeff-bracket"), rows: Vec::new() };
    let gens = alg.gens.enumerate(tw);
    for a in &gens {
        for b in &gens {
            for m in lo..=hi {
                for n in lo..=hi {
                    let v = match coeff_bracket(alg, (a, m), (b, n)) {
                        Ok(v) => v.to_string(),
                        Err(e) => format!("error: {}", e),
                    };
                    table.rows.push(format!("[{}_({}), {}_({})] = {}", a, m, b, n, v));
                }
            }
        }
    }
    rep.tables.push(table);
}

fn cohomology(rep: &mut Report, st: &Settings, alg: &ConformalAlgebra, runner: &dyn Runner) {
    let cx = Complex::new(alg.clone(), adjoint_module(alg));
    let def = IdentityConfig::default();
    let cfg = IdentityConfig {
        samples: st.flags.d2_samples.unwrap_or_else(|| st.m.option_int("d2-samples").map_or(def.samples, |v| v as usize)),
        window: st.m.option_int("d2-window").unwrap_or(def.window),
        max_total: st.m.option_int("d2-max-total").map_or(def.max_total, |v| v as usize),
        seed: st.seed(),
        ..def
    };
    let action_samples = st.m.option_int("action-samples").unwrap_or(50) as usize;
    rep.setting("module", "adjoint");
    rep.setting("d2-samples", cfg.samples);
    rep.setting("d2-window", cfg.window);
    rep.setting("d2-max-total", cfg.max_total);
    rep.setting("action-samples", action_samples);
    rep.setting("seed", cfg.seed);
    if alg.gens.enumerate(cfg.window).is_empty() {
        rep.notes.push(String::from("no generators in the window: every identity holds trivially"));
    } else {
        rep.checks = check_complex_identities(&cx, &cfg, runner);
        let spec = RandomSpec { carrier: alg.gens.clone(), ddeg: cfg.ddeg, ldeg: cfg.ldeg, terms: cfg.terms, seed: cfg.seed };
        rep.checks.extend(check_action_laws(&cx, cfg.window, &spec, action_samples, 3, runner));
    }
    let window = st.window();
    let declared = build::cochains(st.m);
    if !declared.is_empty() {
        rep.setting("window", window);
    }
    let ansatz = st.ansatz().unwrap_or_default();
    for (name, g) in declared {
        let mut c = is_cocycle(&cx, &g, window, runner);
        c.name = format!("cocycle {}", name);
        let closed = c.passed();
        rep.checks.push(c);
        if !closed {
            continue;
        }
        let mut s = CheckReport::new(&format!("coboundary {}", name));
        match coboundary_solve(&cx, &g, window, &ansatz) {
            Ok(Some(sol)) => {
                s.checked = 1;
                s.note = Some(format!(
                    "preimage found: {} unknowns, {} equations, rank {} (ansatz ddeg {}, ldeg {})",
                    sol.unknowns, sol.equations, sol.rank, ansatz.ddeg, ansatz.ldeg
                ));
            }
            Ok(None) => {
                s.checked = 1;
                s.inconclusive = 1;
                s.status = conformal_core::algebra::Status::Inconclusive;
                s.note = Some(format!("no preimage within the ansatz (ddeg {}, ldeg {})", ansatz.ddeg, ansatz.ldeg));
            }
            Err(e) => s.fail_with(format!("solver error: {}", e)),
        }
        rep.checks.push(s);
    }
}

fn series(rep: &mut Report, st: &Settings) -> Option<DeformationSeries> {
    let Some(ds) = build::series(st.m) else {
        rep.errors.push(String::from("the manifest has no [deformation] section"));
        return None;
    };
    Some(match st.m.option_int("truncate") {
        Some(k) => {
            rep.setting("truncate", k);
            ds.truncate(k as usize)
        }
        None => ds,
    })
}

fn deform(rep: &mut Report, st: &Settings, runner: &dyn Runner) {
    let Some(ds) = series(rep, st) else { return };
    let ck = Checker::new(st.window(), runner);
    rep.setting("window", ck.window);
    rep.setting("order", ds.order());
    rep.checks.push(check_n_deformation(&ds, &ck));
    rep.checks.push(series_associativity(&ds, &ck));
    if ds.order() >= 1 {
        rep.checks.push(infinitesimal_is_cocycle(&ds, &ck));
    }
    rep.checks.push(obstruction_closed(&ds, &ck));
    if let Some(ansatz) = st.ansatz() {
        rep.setting("ansatz-ddeg", ansatz.ddeg);
        rep.setting("ansatz-ldeg", ansatz.ldeg);
        let mut s = CheckReport::new("extension");
        s.checked = 1;
        match extend_deformation(&ds, &ck, &ansatz) {
            Ok(Some(next)) => {
                s.note = Some(format!("found mu{} within the ansatz; the extended series passes to order {}", next.order(), next.order()));
                let mut table = Table { name: format!("mu{}", next.order()), rows: Vec::new() };
                let gens = ds.base.gens.enumerate(ck.window);
                for a in &gens {
                    for b in &gens {
                        let v = next.mu(next.order()).on_generators(a, b).map_or_else(|e| format!("error: {}", e), |p| p.render(&["L"]));
                        table.rows.push(format!("{} {} = {}", a, b, v));
                    }
                }
                rep.tables.push(table);
            }
            Ok(None) => {
                s.inconclusive = 1;
                s.status = conformal_core::algebra::Status::Inconclusive;
                s.note = Some(format!("no extension within the ansatz (ddeg {}, ldeg {})", ansatz.ddeg, ansatz.ldeg));
            }
            Err(e) => s.fail_with(e.to_string()),
        }
        rep.checks.push(s);
    }
}

/// `d_H theta_N = 0` for the obstruction of the series.
pub fn obstruction_closed(ds: &DeformationSeries, ck: &Checker) -> CheckReport {
    let cx = Complex::new(ds.base.clone(), adjoint_module(&ds.base));
    let dt = d_h(&cx, &obstruction(ds));
    let ts = tuples(&ds.base.gens.enumerate(ck.window), 4);
    let mut rep = ck.run_tuples("obstruction-cocycle", &ts, &names(&["L1", "L2", "L3"]), &|t| dt.value(t));
    rep.note = Some(format!("obstruction of order {}", ds.order()));
    rep
}

fn nijenhuis(rep: &mut Report, st: &Settings, alg: &ConformalAlgebra, runner: &dyn Runner) {
    let Some(n) = build::nijenhuis_map(st.m) else {
        rep.errors.push(String::from("the manifest has no [nijenhuis] section"));
        return;
    };
    let ck = Checker::new(st.window(), runner);
    rep.setting("window", ck.window);
    rep.checks.push(nijenhuis_check(alg, &n, &ck));
    match nijenhuis_deform(alg, &n) {
        Ok(def) => {
            for mut c in check_poisson(&def, &ck) {
                c.name = format!("deformed {}", c.name);
                rep.checks.push(c);
            }
            rep.checks.push(check_homomorphism(&def, alg, &n, &ck));
        }
        Err(e) => rep.errors.push(format!("deformed structure: {}", e)),
    }
    match nijenhuis_linear_deformation(alg, &n) {
        Ok(ld) => {
            rep.checks.extend(linear_deformation_check(&ld, &ck));
            rep.checks.push(trivial_deformation_check(&ld, &n, &ck));
        }
        Err(e) => rep.errors.push(format!("linear deformation: {}", e)),
    }
}
