use std::path::PathBuf;

use conformal_kernel::manifest::{parse, Expr, Manifest, ParseError};
use conformal_core::symcore::Scalar;
use proptest::prelude::*;

fn shipped() -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().map_or(false, |e| e == "alg"))
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    out
}

fn reparse(m: &Manifest) -> Manifest {
    let text = m.to_string();
    parse(&text).unwrap_or_else(|e| panic!("{}\n{}", e, text))
}

#[test]
fn shipped_manifests_round_trip() {
    let files = shipped();
    assert!(files.len() >= 4);
    for (p, text) in files {
        let m = parse(&text).unwrap_or_else(|e| panic!("{}: {}", p.display(), e));
        let again = reparse(&m);
        assert_eq!(m, again, "{}", p.display());
        assert_eq!(m.to_string(), again.to_string());
    }
}

const HEAD: &str = "[generators]\nx[m]\n[rules]\n";

fn err(body: &str) -> ParseError {
    parse(&format!("{}{}", HEAD, body)).unwrap_err()
}

#[test]
fn undeclared_generator_has_position() {
    let e = err("product x[m] x[n] = y[m+n]\n");
    assert_eq!(e, ParseError::UndeclaredGenerator { line: 4, col: 21, name: "y".into() });
    assert!(matches!(err("product x[m] z[n] = x[m]\n"), ParseError::UndeclaredGenerator { col: 14, .. }));
}

#[test]
fn arity_mismatch_has_position() {
    let e = err("bracket x[m] x[n] = L x[m, n]\n");
    assert_eq!(e, ParseError::ArityMismatch { line: 4, col: 23, family: "x".into(), expected: 1, found: 2 });
}

#[test]
fn non_rational_literals_are_rejected() {
    assert_eq!(err("product x[m] x[n] = 0.5 x[m+n]\n"), ParseError::NonRationalLiteral { line: 4, col: 21, text: "0.5".into() });
    assert!(matches!(err("product x[m] x[n] = pi x[m+n]\n"), ParseError::NonRationalLiteral { col: 21, .. }));
    assert!(matches!(err("product x[m] x[n] = 1e2 x[m+n]\n"), ParseError::NonRationalLiteral { .. }));
}

#[test]
fn syntax_errors_have_positions() {
    assert!(matches!(err("product x[m] x[n] x[m+n]\n"), ParseError::SyntaxError { line: 4, .. }));
    assert!(matches!(parse("x[m]\n"), Err(ParseError::SyntaxError { line: 1, col: 1, .. })));
    assert!(matches!(parse("[gens]\n"), Err(ParseError::SyntaxError { line: 1, col: 2, .. })));
    assert!(matches!(err("bracket x[m] x[n] = (m*D x[m]\n"), ParseError::SyntaxError { line: 4, .. }));
    assert!(matches!(parse("[options]\nwindow = -1\n"), Err(ParseError::SyntaxError { line: 2, .. })));
    assert!(matches!(parse("[options]\nmodes = 3\n"), Err(ParseError::SyntaxError { line: 2, .. })));
    // spectral variables are scoped per section
    assert!(matches!(parse("[generators]\nx[m]\n[nijenhuis]\nmap x[m] = L x[m]\n"), Err(ParseError::SyntaxError { line: 4, col: 12, .. })));
}

#[test]
fn empty_and_late_generator_sections() {
    let m = parse("[algebra]\nname = \"zero\"\n[generators]\n").unwrap();
    assert!(m.families.is_empty());
    let late = parse("[rules]\nproduct x[m] x[n] = x[m+n]\n[generators]\nx[m]\n").unwrap();
    assert_eq!(late.rules.len(), 1);
}

#[test]
fn cochain_degrees() {
    let base = "[generators]\nx[m]\n[cochains]\n";
    assert!(parse(&format!("{}c (0, 2) x[m] x[n] = x[m+n]\nc (2, 0) x[m] x[n] = L1 x[m+n]\n", base)).is_ok());
    assert!(parse(&format!("{}c (1, 1) x[m] x[n] = x[m+n]\n", base)).is_err());
    assert!(parse(&format!("{}c (0, 2) x[m] x[n] = x[m+n]\nc (1, 0) x[m] = x[m]\n", base)).is_err());
    assert!(parse(&format!("{}c (0, 2) x[m] x[n] = L1 x[m+n]\n", base)).is_err());
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..12).prop_map(|k| Expr::Num(Scalar::from_int(k))),
        prop::sample::select(vec!["m", "n", "D", "L"]).prop_map(|v| Expr::Var(v.to_string())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Call { func: "C".into(), args: vec![a, b] }),
            inner.prop_map(|a| Expr::Gen { family: "x".into(), args: vec![a], mode: None }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_manifests_reparse(body in expr(), g in expr(), lo in -3i64..1, win in 0i64..9) {
        let text = format!(
            "[generators]\nx[m: {}..]\ny\n[rules]\nbracket x[m] x[n] = {} if {} <= {}\nproduct y y = y\n[options]\nwindow = {}\n",
            lo, body, g, win, win
        );
        let m = parse(&text).unwrap();
        let again = reparse(&m);
        prop_assert_eq!(&m, &again);
        prop_assert_eq!(m.to_string(), again.to_string());
    }
}
