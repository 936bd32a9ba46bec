//! End-to-end acceptance run: one PASS/FAIL line per criterion, with the
//! sub-results behind it. Criteria that fail for documented reasons are
//! reported as FAIL without failing the test run; any other failure does.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::{Duration, Instant};

use conformal_core::algebra::checks::check_poisson;
use conformal_core::algebra::{fn_rule, CheckReport, Checker, ConformalAlgebra, Rule, RuleRef};
use conformal_core::coeff::{binomial_identity_check, check_coeff_poisson, coeff_bracket, coeff_derivation_check, ModeWindow};
use conformal_core::cohomology::action::check_action_laws;
use conformal_core::cohomology::checks::{check_complex_identities, IdentityConfig};
use conformal_core::cohomology::diff::d_h;
use conformal_core::cohomology::random::{random_cochain, RandomSpec};
use conformal_core::cohomology::{Ansatz, Cochain, Complex};
use conformal_core::constructors::adjoint_module;
use conformal_core::deform::series::GeneratorMap;
use conformal_core::deform::*;
use conformal_core::symcore::{GenIndex, Scalar};
use conformal_core::EvalResult;
use conformal_kernel::build;
use conformal_kernel::commands::{obstruction_closed, run, Command, Flags, DEFAULT_SEED};
use conformal_kernel::manifest::{parse, Manifest, OptValue};
use conformal_kernel::report::Outcome;
use conformal_kernel::runner::Parallel;

fn source(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)).unwrap()
}

fn manifest(name: &str) -> Manifest {
    parse(&source(name)).unwrap()
}

fn ck(w: i64) -> Checker<'static> {
    Checker::new(w, &Parallel)
}

fn failing(reps: &[CheckReport]) -> Vec<String> {
    reps.iter().filter(|r| !r.passed()).map(|r| r.name.clone()).collect()
}

fn all_pass(reps: &[CheckReport]) -> bool {
    failing(reps).is_empty()
}

struct Sub {
    ok: bool,
    text: String,
}

fn sub(ok: bool, text: impl Into<String>) -> Sub {
    Sub { ok, text: text.into() }
}

struct Verdict {
    subs: Vec<Sub>,
    /// Why the criterion cannot hold as stated, when it does not.
    analysis: Option<&'static str>,
}

impl Verdict {
    fn passed(&self) -> bool {
        self.subs.iter().all(|s| s.ok)
    }
}

/// The bracket of a single algebra, through the literal expansion
/// `[a_(m), b_(n)] = sum_j C(m, j) (a_(j) b)_(m+n-j)` with
/// `a_(j) b = j! [coefficient of L^j]` and `(D^d y)_(p) = (-1)^d p^(d) y_(p-d)`.
fn oracle(br: &dyn Rule, a: &GenIndex, m: i64, b: &GenIndex, n: i64) -> EvalResult<BTreeMap<(GenIndex, i64), Scalar>> {
    let mut out: BTreeMap<(GenIndex, i64), Scalar> = BTreeMap::new();
    for (mono, c) in br.on_generators(a, b)?.terms() {
        let j = mono.lam.first().copied().unwrap_or(0);
        let q = m + n - j as i64;
        let mut k = &(&Scalar::binomial(m, j) * &Scalar::falling(j as i64, j)) * c;
        k = &k * &Scalar::falling(q, mono.d);
        if mono.d % 2 == 1 {
            k = -&k;
        }
        let e = out.entry((mono.gen.clone(), q - mono.d as i64)).or_insert_with(Scalar::zero);
        *e = &*e + &k;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn closed_form(a: &GenIndex, m: i64, b: &GenIndex, n: i64, c: impl Fn(i64, i64, i64, i64) -> i64) -> BTreeMap<(GenIndex, i64), Scalar> {
    let (k, l) = (a.params[0], b.params[0]);
    let mut out = BTreeMap::new();
    let v = c(k, l, m, n);
    if v != 0 {
        out.insert((GenIndex::new("x", &[k + l - 1]), m + n - 1), Scalar::from_int(v));
    }
    out
}

/// Over the basis: coeff module vs oracle, and oracle vs a closed form.
fn compare_oracle(alg: &ConformalAlgebra, win: &ModeWindow, form: impl Fn(i64, i64, i64, i64) -> i64) -> (usize, usize, usize) {
    let br = alg.bracket.clone().unwrap();
    let basis = win.basis(alg);
    let (mut pairs, mut module_off, mut form_off) = (0, 0, 0);
    for (a, m) in &basis {
        for (b, n) in &basis {
            pairs += 1;
            let want = oracle(&*br, a, *m, b, *n).unwrap();
            let got: BTreeMap<(GenIndex, i64), Scalar> =
                coeff_bracket(alg, (a, *m), (b, *n)).unwrap().iter().map(|(g, p, c)| ((g.clone(), p), c.clone())).collect();
            if got != want {
                module_off += 1;
            }
            if closed_form(a, *m, b, *n, &form) != want {
                form_off += 1;
            }
        }
    }
    (pairs, module_off, form_off)
}

fn coeff_run(name: &str) -> conformal_kernel::report::Report {
    let mut m = manifest(name);
    m.options.insert("family-window".into(), OptValue::Int(8));
    let flags = Flags { modes: Some((-3, 3)), ..Flags::default() };
    run(Command::Coeff, &m, name, &flags, &Parallel)
}

fn criterion_1() -> Verdict {
    let alg = build::algebra(&manifest("ex2_17.alg"));
    let reps = check_poisson(&alg, &ck(6));
    let printed = check_poisson(&build::algebra(&manifest("ex2_17_printed.alg")), &ck(6));
    Verdict {
        subs: vec![
            sub(all_pass(&reps), format!("ex2_17.alg, window 6: {} checks, failing {:?}", reps.len(), failing(&reps))),
            sub(true, format!("info: with the bracket as printed (n D) the suite fails {:?}", failing(&printed))),
        ],
        analysis: None,
    }
}

fn criterion_2() -> Verdict {
    let win = ModeWindow::new(-3, 3, 8);
    let good = build::algebra(&manifest("ex2_17.alg"));
    let printed = build::algebra(&manifest("ex2_17_printed.alg"));
    let good_report = coeff_run("ex2_17.alg");
    let printed_report = coeff_run("ex2_17_printed.alg");
    let mut suite = check_coeff_poisson(&good, &win, &Parallel);
    suite.push(coeff_derivation_check(&good, &win, &Parallel));
    let (pairs, g_module, g_form) = compare_oracle(&good, &win, |k, l, m, n| l * m - k * n);
    let (_, p_module, p_form) = compare_oracle(&printed, &win, |k, l, m, n| k * m - l * n);
    let printed_suite = check_coeff_poisson(&printed, &win, &Parallel);
    let flagged = printed_report.checks.iter().any(|c| c.note.as_deref().map_or(false, |n| n.starts_with("discrepancy")));
    let good_flag = good_report.check("coeff-reference").map_or(false, |c| c.passed());
    Verdict {
        subs: vec![
            sub(all_pass(&suite), format!("Coeff(ex2_17.alg) Poisson suite on {} basis elements: failing {:?}", win.basis(&good).len(), failing(&suite))),
            sub(g_module == 0, format!("coeff module agrees with the oracle on {}/{} mode pairs", pairs - g_module, pairs)),
            sub(g_form == 0, format!("oracle constants are (lm - kn), the printed coefficient formula, on {}/{} pairs", pairs - g_form, pairs)),
            sub(good_flag && good_report.outcome() == Outcome::Pass, "coeff report on ex2_17.alg passes; the reference formula agrees"),
            sub(p_module == 0 && p_form == 0, "with the bracket as printed (n D) the oracle and module give (km - ln)"),
            sub(flagged, "the coeff report for that bracket flags the discrepancy with the printed coefficient formula"),
            sub(all_pass(&printed_suite), format!("Coeff of the printed bracket: failing {:?}", failing(&printed_suite))),
        ],
        analysis: Some(
            "the (km - ln) constants arise only from the bracket as printed, which fails Jacobi and Leibniz; the bracket \
             that passes gives (lm - kn), the printed coefficient formula, so no algebra meets every part",
        ),
    }
}

fn criterion_3() -> Verdict {
    let rep = binomial_identity_check(0..=8, 0..=8);
    Verdict { subs: vec![sub(rep.passed(), format!("{} (m, n) pairs checked", rep.checked))], analysis: None }
}

fn criterion_4() -> Verdict {
    let alg = build::algebra(&manifest("ex2_17.alg"));
    let cx = Complex::new(alg.clone(), adjoint_module(&alg));
    let cfg = IdentityConfig { samples: 100, max_total: 4, ddeg: 2, seed: DEFAULT_SEED, ..IdentityConfig::default() };
    let reps = check_complex_identities(&cx, &cfg, &Parallel);
    let subs = reps.iter().map(|r| sub(r.passed(), format!("{}: {} evaluations, {} failed", r.name, r.checked, r.failures))).collect();
    Verdict { subs, analysis: None }
}

fn criterion_5() -> Verdict {
    let alg = build::algebra(&manifest("ex2_17.alg"));
    let cx = Complex::new(alg.clone(), adjoint_module(&alg));
    let spec = RandomSpec { carrier: alg.gens.clone(), ddeg: 2, ldeg: 2, terms: 3, seed: DEFAULT_SEED };
    let reps = check_action_laws(&cx, 2, &spec, 50, 3, &Parallel);
    let subs = reps.iter().map(|r| sub(r.passed(), format!("{}: {} samples, {} failed", r.name, r.checked, r.failures))).collect();
    Verdict {
        subs,
        analysis: Some(
            "the law x_L (D~ g) = (L + D~)(x_L g) does not hold for the action as defined: expanding both sides leaves \
             L times the term of the action that feeds x into the last argument, which vanishes only in special cases",
        ),
    }
}

fn criterion_6() -> Verdict {
    let m = manifest("star_current.alg");
    let full = build::series(&m).unwrap();
    let cut = full.truncate(1);
    let c = ck(3);
    let full_rep = check_n_deformation(&full, &c);
    let cocycle = infinitesimal_is_cocycle(&cut, &c);
    let theta = obstruction_closed(&cut, &ck(2));
    let ext = extend_deformation(&cut, &c, &Ansatz { ddeg: 2, ldeg: 2, degree_slack: 0 }).unwrap();
    let ext_ok = ext.as_ref().map_or(false, |e| e.order() == 2 && check_n_deformation(e, &c).passed());
    let lim = semiclassical_limit(&full, &c).unwrap();
    let lim_reps = check_poisson(&lim, &c);
    Verdict {
        subs: vec![
            sub(full_rep.passed(), format!("order-2 star product is a 2-deformation ({} evaluations)", full_rep.checked)),
            sub(cocycle.passed(), "mu1 of the order-1 truncation is a Hochschild cocycle"),
            sub(theta.passed(), format!("obstruction theta_1 of the truncation satisfies d_H theta_1 = 0 ({} tuples)", theta.checked)),
            sub(ext_ok, "extend_deformation finds mu2 with ansatz (2, 2) on window 3; the extension is a 2-deformation there"),
            sub(all_pass(&lim_reps), format!("semiclassical limit passes the Poisson suite, failing {:?}", failing(&lim_reps))),
        ],
        analysis: None,
    }
}

fn criterion_7() -> Verdict {
    let m = manifest("star_current.alg");
    let base = build::algebra(&m);
    let cx = Complex::new(base.clone(), adjoint_module(&base));
    let c = ck(2);
    let gens = base.gens.enumerate(2);
    let zero = DeformationSeries::new(base.clone()).with_term(conformal_core::algebra::rule::zero_rule());
    // does d_H of the first-order term vanish, evaluated directly
    let direct = |mu1: &RuleRef| -> bool {
        let dh = d_h(&cx, &rule_cochain(mu1));
        gens.iter().all(|a| gens.iter().all(|b| gens.iter().all(|x| dh.value(&[a.clone(), b.clone(), x.clone()]).unwrap().is_zero())))
    };
    let (mut defor, mut equiv, mut agree) = (0, 0, 0);
    let seeds = 20;
    for s in 0..seeds {
        let spec = RandomSpec { carrier: base.gens.clone(), ddeg: 2, ldeg: 0, terms: 3, seed: DEFAULT_SEED + s };
        let phi_c: Cochain = random_cochain(0, 1, &spec);
        let pc = phi_c.clone();
        let phi: GeneratorMap = Arc::new(move |g: &GenIndex| Ok(pc.value(std::slice::from_ref(g))?.to_mod()));
        let mu1 = cochain_rule(&d_h(&cx, &phi_c));
        let ds = DeformationSeries::new(base.clone()).with_term(mu1.clone());
        defor += check_n_deformation(&ds, &c).passed() as usize;
        equiv += equivalence_check(&ds, &zero, &phi, &c).passed() as usize;
        agree += (infinitesimal_is_cocycle(&ds, &c).passed() == direct(&mu1)) as usize;
    }
    // a first-order term that is not a cocycle: L (a o b)
    let bad = parse("[generators]\nx[m]\n[rules]\nproduct x[m] x[n] = x[m+n]\n[deformation]\nmu1 x[m] x[n] = L x[m+n]\n").unwrap();
    let bad = build::series(&bad).unwrap();
    let bad_mu = bad.mu(1);
    let control = !infinitesimal_is_cocycle(&bad, &c).passed() && !direct(&bad_mu);
    Verdict {
        subs: vec![
            sub(defor == seeds as usize, format!("mu1 = d_H phi is a first-order deformation for {}/{} seeds", defor, seeds)),
            sub(equiv == seeds as usize, format!("phi is an equivalence to the zero deformation for {}/{} seeds", equiv, seeds)),
            sub(agree == seeds as usize, format!("infinitesimal_is_cocycle agrees with d_H for {}/{} seeds", agree, seeds)),
            sub(control, "control: L (a o b) is rejected by both"),
        ],
        analysis: None,
    }
}

fn nijenhuis_subs(label: &str, m: &Manifest, window: i64) -> Vec<Sub> {
    let alg = build::algebra(m);
    let n = build::nijenhuis_map(m).unwrap();
    let c = ck(window);
    let def = nijenhuis_deform(&alg, &n).unwrap();
    let poisson = check_poisson(&def, &c);
    let ld = nijenhuis_linear_deformation(&alg, &n).unwrap();
    let lin = linear_deformation_check(&ld, &c);
    let nij = nijenhuis_check(&alg, &n, &c).passed();
    let hom = check_homomorphism(&def, &alg, &n, &c).passed();
    let triv = trivial_deformation_check(&ld, &n, &c).passed();
    let ok = nij && all_pass(&poisson) && hom && all_pass(&lin) && triv;
    let mut text = format!("{}: nijenhuis {}, deformed Poisson {}, homomorphism {}, linear deformation {}, Nij1-5 {}", label, nij, all_pass(&poisson), hom, all_pass(&lin), triv);
    if !ok {
        text.push_str(&format!(" (failing {:?} {:?})", failing(&poisson), failing(&lin)));
    }
    vec![sub(ok, text)]
}

fn criterion_8() -> Verdict {
    let mut subs = Vec::new();
    for c in [1, 2, -3] {
        let text = format!("{}\n[nijenhuis]\nmap x[m] = {} x[m]\n", source("ex2_17.alg"), c);
        subs.extend(nijenhuis_subs(&format!("N = {} Id on ex2_17.alg", c), &parse(&text).unwrap(), 3));
    }
    subs.extend(nijenhuis_subs("N = left multiplication by E[1, 1] on Cur(M2)", &manifest("matrix_current.alg"), 4));
    let text = format!("{}\n[nijenhuis]\nmap x[m] = x[m+1]\n", source("star_current.alg"));
    subs.extend(nijenhuis_subs("N = multiplication by x on Cur(Q[x])", &parse(&text).unwrap(), 3));
    Verdict { subs, analysis: None }
}

/// `r` with `delta` added to the coefficient of one monomial on one pair.
fn corrupt(r: RuleRef, a: GenIndex, b: GenIndex, at: usize, delta: Scalar) -> RuleRef {
    fn_rule(move |x, y| {
        let v = r.on_generators(x, y)?;
        if *x != a || *y != b {
            return Ok(v);
        }
        let (mono, _) = v.terms().nth(at).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut out = v.clone();
        out.add_mono(mono.lam.clone(), mono.gen.clone(), mono.d, delta.clone());
        Ok(out)
    })
}

fn criterion_9() -> Verdict {
    let alg = build::algebra(&manifest("ex2_17.alg"));
    let window = 3;
    let gens = alg.gens.enumerate(window);
    let (mut total, mut caught, mut missed) = (0, 0, Vec::new());
    for op in ["product", "bracket"] {
        let r = if op == "product" { alg.product.clone() } else { alg.bracket.clone() }.unwrap();
        for a in &gens {
            for b in &gens {
                let terms = r.on_generators(a, b).unwrap().len();
                for at in 0..terms {
                    total += 1;
                    let mut bad = alg.clone();
                    let broken = corrupt(r.clone(), a.clone(), b.clone(), at, Scalar::ONE);
                    if op == "product" {
                        bad.product = Some(broken);
                    } else {
                        bad.bracket = Some(broken);
                    }
                    let reps = check_poisson(&bad, &ck(window));
                    let witnessed = reps.iter().any(|r| !r.passed() && r.witnesses.iter().any(|w| !w.residual.is_zero()));
                    if witnessed {
                        caught += 1;
                    } else {
                        missed.push(format!("{} {} {} #{}", op, a, b, at));
                    }
                }
            }
        }
    }
    Verdict {
        subs: vec![sub(
            caught == total && total > 0,
            format!("{}/{} single-constant corruptions fail with a nonzero witness{}", caught, total, if missed.is_empty() { String::new() } else { format!(", missed {:?}", missed) }),
        )],
        analysis: None,
    }
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Verdict); 9] = [
        (1, "Poisson suite on the polynomial algebra", Duration::from_secs(10), criterion_1),
        (2, "coefficient algebra and oracle constants", Duration::from_secs(30), criterion_2),
        (3, "binomial lemma for 0 <= m, n <= 8", Duration::from_secs(10), criterion_3),
        (4, "d^2 = 0 on seeded cochains", Duration::from_secs(120), criterion_4),
        (5, "action of the algebra on Hochschild cochains", Duration::from_secs(30), criterion_5),
        (6, "deformation round trip on Cur(Q[x])", Duration::from_secs(60), criterion_6),
        (7, "coboundary deformations are trivial", Duration::from_secs(30), criterion_7),
        (8, "Nijenhuis operators", Duration::from_secs(30), criterion_8),
        (9, "single-constant corruption is detected", Duration::from_secs(30), criterion_9),
    ];
    // documented failures: see the analysis lines
    let expected_fail = [2, 5];
    let mut unexpected = Vec::new();
    for (k, title, budget, f) in criteria {
        let start = Instant::now();
        let v = f();
        let took = start.elapsed();
        let ok = v.passed() && took <= budget;
        println!("criterion {}: {} ({:.2}s, budget {}s) {}", k, if ok { "PASS" } else { "FAIL" }, took.as_secs_f64(), budget.as_secs(), title);
        for s in &v.subs {
            println!("    [{}] {}", if s.ok { "ok" } else { "fail" }, s.text);
        }
        if let (false, Some(a)) = (v.passed(), v.analysis) {
            println!("    analysis: {}", a);
        }
        if took > budget {
            println!("    over the time budget");
        }
        if !ok && !expected_fail.contains(&k) {
            unexpected.push(k);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: criteria {:?}", unexpected);
        std::process::exit(1);
    }
}
