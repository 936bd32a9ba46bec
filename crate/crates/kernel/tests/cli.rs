use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conformal-kernel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn kernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conformal-kernel")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_passes_on_the_polynomial_algebra() {
    let p = example("ex2_17.alg");
    let o = kernel(&["check", p.to_str().unwrap(), "--window", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("schema = conformal-kernel-report/1\n"));
    assert!(s.contains("[summary]\n"));
    assert!(s.trim_end().ends_with("status = pass"));
    assert!(!s.contains("[witness]"));
}

#[test]
fn failing_check_exits_one_with_witnesses() {
    let p = example("ex2_17_printed.alg");
    let o = kernel(&["check", p.to_str().unwrap(), "--window", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("[witness]\ncheck = jacobi\n"));
    assert!(s.contains("[witness]\ncheck = leibniz\n"));
}

#[test]
fn reports_are_deterministic_and_written_to_out() {
    let p = example("ex2_17_printed.alg");
    let out = scratch("report.txt", "");
    let a = kernel(&["check", p.to_str().unwrap(), "--window", "3", "--out", out.to_str().unwrap()]);
    let b = kernel(&["check", p.to_str().unwrap(), "--window", "3"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout(&a));
}

#[test]
fn witnesses_come_in_graded_lex_order() {
    let p = example("ex2_17_printed.alg");
    let s = stdout(&kernel(&["check", p.to_str().unwrap(), "--window", "3"]));
    let mut tuples: Vec<Vec<i64>> = Vec::new();
    let mut in_jacobi = false;
    for line in s.lines() {
        if let Some(c) = line.strip_prefix("check = ") {
            in_jacobi = c == "jacobi";
        }
        if let (true, Some(t)) = (in_jacobi, line.strip_prefix("tuple = ")) {
            tuples.push(t.split(' ').map(|g| g.trim_start_matches("x[").trim_end_matches(']').parse().unwrap()).collect());
        }
    }
    assert!(tuples.len() > 1);
    let key = |t: &Vec<i64>| (t.iter().map(|v| v.abs()).sum::<i64>(), t.clone());
    assert!(tuples.windows(2).all(|w| key(&w[0]) < key(&w[1])), "{:?}", tuples);
}

#[test]
fn coeff_reports_the_table_and_the_discrepancy() {
    let good = kernel(&["coeff", example("ex2_17.alg").to_str().unwrap(), "--modes", "-3..3"]);
    assert_eq!(good.status.code(), Some(0));
    let s = stdout(&good);
    assert!(s.contains("[table]\nname = coeff-bracket\n"));
    assert!(s.contains("entry = [x[1]_(0), x[1]_(1)] = "));
    assert!(s.contains("the derived bracket constants agree"));

    let bad = kernel(&["coeff", example("ex2_17_printed.alg").to_str().unwrap(), "--modes", "-3..3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("note = discrepancy: "));
}

#[test]
fn inconclusive_only_exits_two() {
    let text = std::fs::read_to_string(example("star_current.alg")).unwrap().replace("window = 3", "window = 2\ntruncate = 1");
    let p = scratch("truncated.alg", &text);
    let o = kernel(&["deform", p.to_str().unwrap(), "--ansatz-ddeg", "0", "--ansatz-ldeg", "0"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let o = kernel(&["deform", p.to_str().unwrap(), "--ansatz-ddeg", "2", "--ansatz-ldeg", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_exit_three() {
    let p = scratch("bad.alg", "[generators]\nx[m]\n[rules]\nproduct x[m] x[n] = y[m+n]\n");
    let o = kernel(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.alg:4:21: undeclared generator `y`"), "{}", err);

    let o = kernel(&["check", "/nonexistent/manifest.alg"]);
    assert_eq!(o.status.code(), Some(3));

    // a missing section is an error in the report
    let o = kernel(&["nijenhuis", example("ex2_17.alg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("error = "));

    let o = kernel(&["bogus", example("ex2_17.alg").to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn empty_generators_pass_trivially() {
    let p = scratch("empty.alg", "[algebra]\nname = \"zero\"\n[generators]\n[module]\nadjoint\n");
    for cmd in ["check", "coeff", "cohomology"] {
        let o = kernel(&[cmd, p.to_str().unwrap(), "--d2-samples", "3"]);
        assert_eq!(o.status.code(), Some(0), "{}\n{}", cmd, stdout(&o));
    }
}

#[test]
fn seed_changes_samples_but_default_is_fixed() {
    let p = example("ex2_17.alg");
    let args = ["cohomology", p.to_str().unwrap(), "--d2-samples", "2", "--window", "1"];
    let a = stdout(&kernel(&args));
    assert_eq!(a, stdout(&kernel(&args)));
    assert!(a.contains("seed = 20240917"));
    let mut seeded = args.to_vec();
    seeded.extend(["--seed", "7"]);
    assert!(stdout(&kernel(&seeded)).contains("seed = 7"));
}
