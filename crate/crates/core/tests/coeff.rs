use conformal_core::algebra::runner::sequential;
use conformal_core::algebra::{fn_rule, Status};
use conformal_core::coeff::*;
use conformal_core::constructors::catalog::*;
use conformal_core::constructors::current_algebra;
use conformal_core::symcore::{GenIndex, Exps, LambdaPoly, ModElement, Scalar};

/// Oracle: expand the mode formula by hand for a bracket
/// `[x^k_L x^l] = (c_D D + (k+l) L) x^{k+l-1}`, whose 0-th product is
/// `c_D D x^{k+l-1}` and 1-st product `(k+l) x^{k+l-1}`.
/// `(D y)_p = -p y_{p-1}` and `C(m,1) = m` give
/// `[x^k_m, x^l_n] = (-c_D (m+n) + m (k+l)) x^{k+l-1}_{m+n-1}`.
fn oracle(printed: bool, k: i64, m: i64, l: i64, n: i64) -> CoeffElement {
    if k + l == 0 {
        return CoeffElement::zero();
    }
    let cd = if printed { l } else { k };
    CoeffElement::mode(x(k + l - 1), m + n - 1).scale(&Scalar::from_int(-cd * (m + n) + m * (k + l)))
}

#[test]
fn bracket_constants_match_oracle() {
    for (alg, printed) in [(polynomial_conformal(), false), (polynomial_conformal_printed(), true)] {
        let rep = compare_bracket(&alg, &ModeWindow::new(-3, 3, 5), sequential(), &|a, m, b, n| {
            Ok(oracle(printed, a.params[0], m, b.params[0], n))
        });
        assert!(rep.passed());
    }
    // The shipped form gives (lm - kn); the printed bracket gives (km - ln).
    let p = polynomial_conformal();
    assert_eq!(coeff_bracket(&p, (&x(2), 3), (&x(1), -1)).unwrap(), CoeffElement::mode(x(2), 1).scale(&Scalar::from_int(5)));
    let q = polynomial_conformal_printed();
    assert_eq!(coeff_bracket(&q, (&x(2), 3), (&x(1), -1)).unwrap(), CoeffElement::mode(x(2), 1).scale(&Scalar::from_int(7)));
}

#[test]
fn reference_mismatch_is_reported() {
    let q = polynomial_conformal_printed();
    let rep = compare_bracket(&q, &ModeWindow::new(-1, 1, 2), sequential(), &|a, m, b, n| Ok(oracle(false, a.params[0], m, b.params[0], n)));
    assert_eq!(rep.status, Status::Fail);
    assert!(!rep.witnesses[0].residual.is_zero());
}

#[test]
fn coefficient_algebra_is_poisson() {
    let p = polynomial_conformal();
    let win = ModeWindow::new(-2, 2, 3);
    for r in check_coeff_poisson(&p, &win, sequential()) {
        assert!(r.passed(), "{}", r.name);
    }
    assert!(coeff_derivation_check(&p, &win, sequential()).passed());
    assert!(annihilation_relations_check(&p, &win, sequential(), 40, 7).passed());
}

#[test]
fn printed_bracket_coefficients_fail_jacobi() {
    let reps = check_coeff_poisson(&polynomial_conformal_printed(), &ModeWindow::new(-2, 2, 2), sequential());
    let jac = reps.iter().find(|r| r.name == "coeff-jacobi").unwrap();
    assert_eq!(jac.status, Status::Fail);
}

#[test]
fn current_algebra_modes_are_additive() {
    let alg = current_algebra(&canonical_poisson_plane());
    let win = ModeWindow::new(-2, 2, 2);
    for r in check_coeff_poisson(&alg, &win, sequential()) {
        assert!(r.passed(), "{}", r.name);
    }
    let ca = CoeffAlgebra::new(&alg);
    for (a, m) in win.basis(&alg) {
        for (b, n) in win.basis(&alg) {
            for op in [Op::Product, Op::Bracket] {
                for (_, k, _) in ca.on_modes(op, &a, m, &b, n).unwrap().iter() {
                    assert_eq!(k, m + n);
                }
            }
        }
    }
}

#[test]
fn corrupted_table_localizes_leibniz() {
    let base = polynomial_conformal();
    let br = base.bracket.clone().unwrap();
    let mut bad = base.clone();
    bad.bracket = Some(fn_rule(move |a: &GenIndex, b: &GenIndex| {
        let v = br.on_generators(a, b)?;
        if a.params[0] == 1 && b.params[0] == 2 {
            let mut extra = LambdaPoly::zero(1);
            extra.add_mono(Exps::from_slice(&[1]), x(2), 0, Scalar::ONE);
            return Ok(v.add(&extra));
        }
        Ok(v)
    }));
    let reps = check_coeff_poisson(&bad, &ModeWindow::new(-1, 1, 2), sequential());
    let leib = reps.iter().find(|r| r.name == "coeff-leibniz").unwrap();
    assert_eq!(leib.status, Status::Fail);
    assert!(leib.witnesses.iter().all(|w| !w.residual.is_zero()));
}

#[test]
fn zero_bracket_gives_zero() {
    let alg = current_algebra(&truncated_polynomial(3));
    assert!(coeff_bracket(&alg, (&x(1), 2), (&x(1), -2)).unwrap().is_zero());
    assert!(coeff_derivation_check(&alg, &ModeWindow::new(-1, 1, 2), sequential()).passed());
}

#[test]
fn binomial_lemma() {
    assert!(binomial_identity_check(0..=8, 0..=8).passed());
    assert!(binomial_identity_check(5..=5, 4..=4).passed());
}

#[test]
fn normalize_is_linear() {
    let a = ModElement::generator(x(1));
    let b = ModElement::generator(x(2)).d_pow(2);
    let c = Scalar::new(3, 2);
    let lhs = coeff_normalize(&[(a.scale(&c).add(&b), 4)]);
    let rhs = coeff_normalize(&[(a, 4)]).scale(&c).add(&coeff_normalize(&[(b, 4)]));
    assert_eq!(lhs, rhs);
}
