use std::sync::Arc;

use conformal_core::algebra::checks::check_poisson;
use conformal_core::algebra::runner::sequential;
use conformal_core::algebra::{fn_rule, overall_status, Checker, ConformalAlgebra, Status};
use conformal_core::constructors::catalog::*;
use conformal_core::constructors::ordinary::{bilinear, pgd_checks};
use conformal_core::constructors::*;
use conformal_core::symcore::{LambdaPoly, ModElement};

fn ck(w: i64) -> Checker<'static> {
    Checker::new(w, sequential())
}

fn all_pass(reps: &[conformal_core::algebra::CheckReport]) -> bool {
    reps.iter().all(|r| r.passed())
}

#[test]
fn derivation_construction_reproduces_closed_form() {
    let built = from_derivation(&polynomial_ring(), &ck(5)).unwrap();
    let closed = polynomial_conformal();
    for m in 0..6 {
        for n in 0..6 {
            let (a, b) = (x(m), x(n));
            let lhs = built.bracket.as_ref().unwrap().on_generators(&a, &b).unwrap();
            let rhs = closed.bracket.as_ref().unwrap().on_generators(&a, &b).unwrap();
            assert_eq!(lhs, rhs, "bracket on {a} {b}");
        }
    }
    assert!(all_pass(&check_poisson(&built, &ck(4))));
}

#[test]
fn printed_polynomial_bracket_fails_jacobi_and_leibniz() {
    let reps = check_poisson(&polynomial_conformal_printed(), &ck(3));
    let failing: Vec<&str> = reps.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
    assert_eq!(failing, vec!["jacobi", "leibniz"]);
    let jac = reps.iter().find(|r| r.name == "jacobi").unwrap();
    assert_eq!(jac.failures, 57);
    let w = &jac.witnesses[0];
    assert_eq!(w.tuple, vec![x(0), x(0), x(2)]);
    assert_eq!(w.residual.render(&["L", "M"]), "2*D*L*x[0] - 2*D*M*x[0] + 2*L^2*x[0] - 2*M^2*x[0]");
}

#[test]
fn current_algebras() {
    assert!(all_pass(&check_poisson(&current_algebra(&truncated_polynomial(3)), &ck(3))));
    let mat = current_algebra(&matrix_algebra_2());
    assert!(!mat.commutative);
    assert!(all_pass(&check_poisson(&mat, &ck(0))));
    // A non-associative product shows up as a lambda-independent associator.
    let mut bad = truncated_polynomial(3);
    bad.product = Some(bilinear(|a, b| {
        let s = a.params[0] + b.params[0];
        Ok(if s < 3 { ModElement::generator(x(s)).scale(&(a.params[0] + 1).into()) } else { ModElement::zero() })
    }));
    let rep = &check_poisson(&current_algebra(&bad), &ck(2))[0];
    assert_eq!(rep.name, "associativity");
    assert_eq!(rep.status, Status::Fail);
    assert_eq!(rep.witnesses[0].residual.max_lambda_degree(), 0);
}

#[test]
fn gd_and_pgd_checks() {
    let zero = truncated_polynomial(3);
    assert!(check_gd(&zero, &ck(2)).passed());
    let pgd = pgd_from_derivation(&polynomial_ring(), &ck(4)).unwrap();
    assert!(check_pgd(&pgd, &ck(4)).passed());
    // Novikov product = commutative product, with a nonzero bracket.
    let mut bad = canonical_poisson_plane();
    bad.novikov = bad.product.clone();
    let rep = check_gd(&bad, &ck(2));
    assert_eq!(rep.status, Status::Fail);
    assert!(rep.note.unwrap().contains("gd-compatibility"));
}

#[test]
fn quadratic_algebras_from_derivations() {
    for ord in [polynomial_ring_2(1, 2), canonical_poisson_plane(), two_dim_lie()] {
        let w = if ord.name == "aff" { 0 } else { 3 };
        let pgd = pgd_from_derivation(&ord, &ck(w)).unwrap();
        assert!(pgd_checks(&pgd, &ck(w)).iter().all(|r| r.passed()), "{}", ord.name);
        let alg = from_derivation(&ord, &ck(w)).unwrap();
        assert!(all_pass(&check_poisson(&alg, &ck(if w == 3 { 2 } else { 0 }))), "{}", ord.name);
    }
}

#[test]
fn pgd_equivalence_under_perturbation() {
    let mut pgd = pgd_from_derivation(&polynomial_ring(), &ck(3)).unwrap();
    let nov = pgd.novikov.clone().unwrap();
    pgd.novikov = Some(bilinear(move |a, b| {
        let v = nov.apply(a, b)?;
        Ok(if a.params[0] == 1 && b.params[0] == 1 { v.scale(&2.into()) } else { v })
    }));
    assert!(!check_pgd(&pgd, &ck(3)).passed());
    assert!(quadratic_from_pgd(&pgd, &ck(3)).is_err());
}

#[test]
fn derivation_is_verified() {
    let mut ord = polynomial_ring();
    ord.derivation = Some(conformal_core::constructors::ordinary::linear(|a| Ok(ModElement::generator(x(a.params[0] + 2)))));
    assert!(from_derivation(&ord, &ck(3)).is_err());
}

#[test]
fn direct_sums() {
    let p = polynomial_conformal();
    let s = direct_sum(&p, &p);
    assert_eq!(s.gens.names(), vec!["x_1", "x_2"]);
    assert!(all_pass(&check_poisson(&s, &ck(2))));
    let bad = direct_sum(&p, &polynomial_conformal_printed());
    let reps = check_poisson(&bad, &ck(2));
    let jac = reps.iter().find(|r| r.name == "jacobi").unwrap();
    assert_eq!(jac.status, Status::Fail);
    for w in &jac.witnesses {
        assert!(w.tuple.iter().all(|g| &*g.family == "x_2"));
    }
}

#[test]
fn modules_and_semidirect_products() {
    let p = polynomial_conformal();
    let ad = adjoint_module(&p);
    assert!(all_pass(&check_module(&p, &ad, &ck(3))));
    let sd = semidirect_product(&p, &ad, &ck(2)).unwrap();
    assert!(all_pass(&check_poisson(&sd, &ck(1))));

    let mat = current_algebra(&matrix_algebra_2());
    let adm = adjoint_module(&mat);
    assert!(all_pass(&check_module(&mat, &adm, &ck(0))));
    assert!(all_pass(&check_poisson(&semidirect_product(&mat, &adm, &ck(0)).unwrap(), &ck(0))));

    // Flipping the sign of the Lie action breaks the Lie module identity.
    let mut flipped = ad.clone();
    let rho = p.bracket.clone().unwrap();
    flipped.lie = Some(fn_rule(move |a, b| Ok(rho.on_generators(a, b)?.neg())));
    let reps = check_module(&p, &flipped, &ck(2));
    assert!(!reps.iter().find(|r| r.name == "module-lie").unwrap().passed());
    assert!(semidirect_product(&p, &flipped, &ck(2)).is_err());
    let sd = semidirect_product_unchecked(&p, &flipped);
    let sreps = check_poisson(&sd, &ck(1));
    assert!(!sreps.iter().find(|r| r.name == "jacobi").unwrap().passed());
    assert!(sreps.iter().find(|r| r.name == "associativity").unwrap().passed());

    let triv = ConformalModule::trivial(p.gens.clone(), ModuleKind::Poisson);
    assert!(all_pass(&check_module(&p, &triv, &ck(2))));
    let _ = (Arc::new(0), LambdaPoly::zero(0), overall_status(&[]));
    let _: ConformalAlgebra = p;
}
