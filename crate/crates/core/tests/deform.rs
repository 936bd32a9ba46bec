use std::sync::Arc;

use conformal_core::algebra::checks::check_poisson;
use conformal_core::algebra::runner::sequential;
use conformal_core::algebra::{fn_rule, Checker, RuleRef};
use conformal_core::cohomology::diff::d_h;
use conformal_core::cohomology::random::{random_cochain, RandomSpec};
use conformal_core::cohomology::{Ansatz, Complex};
use conformal_core::constructors::catalog::*;
use conformal_core::constructors::*;
use conformal_core::deform::series::GeneratorMap;
use conformal_core::deform::*;
use conformal_core::symcore::{GenIndex, LambdaPoly, ModElement, Scalar};

fn ck(w: i64) -> Checker<'static> {
    Checker::new(w, sequential())
}

fn star(order: u32) -> DeformationSeries {
    let mut ds = DeformationSeries::new(polynomial_current());
    for k in 1..=order {
        ds = ds.with_term(star_product_term(k));
    }
    ds
}

fn zero_rule() -> RuleRef {
    conformal_core::algebra::rule::zero_rule()
}

/// `L a o b`: not a Hochschild cocycle.
fn lambda_times_product() -> RuleRef {
    fn_rule(|a, b| {
        let mut p = LambdaPoly::zero(1);
        p.add_mono(smallvec::smallvec![1], x(a.params[0] + b.params[0]), 0, Scalar::ONE);
        Ok(p)
    })
}

fn random_phi(seed: u64) -> GeneratorMap {
    let spec = RandomSpec { carrier: monomial_family(), ddeg: 2, ldeg: 0, terms: 3, seed };
    let c = random_cochain(0, 1, &spec);
    Arc::new(move |g: &GenIndex| Ok(c.value(std::slice::from_ref(g))?.to_mod()))
}

fn hochschild_of(phi: &GeneratorMap) -> RuleRef {
    let base = polynomial_current();
    let cx = Complex::new(base.clone(), adjoint_module(&base));
    let phi = phi.clone();
    let c = conformal_core::cohomology::Cochain::new(0, 1, move |t| Ok(LambdaPoly::from_mod(&phi(&t[0])?, 0)));
    cochain_rule(&d_h(&cx, &c))
}

#[test]
fn star_product_is_a_deformation() {
    for order in 0..=3 {
        let ds = star(order);
        let rep = check_n_deformation(&ds, &ck(3));
        assert!(rep.passed(), "order {order}: {:?}", rep.witnesses.first());
        assert!(series_associativity(&ds, &ck(3)).passed());
    }
}

#[test]
fn broken_first_order_term_is_localized() {
    let ds = DeformationSeries::new(polynomial_current()).with_term(lambda_times_product());
    let rep = check_n_deformation(&ds, &ck(2));
    assert!(!rep.passed());
    assert_eq!(rep.witnesses[0].label.as_deref(), Some("order 1"));
    assert!(!series_associativity(&ds, &ck(2)).passed());
    assert!(!infinitesimal_is_cocycle(&ds, &ck(2)).passed());
}

#[test]
fn noncommutative_base_is_rejected() {
    let ds = DeformationSeries::new(current_algebra(&matrix_algebra_2()));
    let rep = check_n_deformation(&ds, &ck(0));
    assert!(!rep.passed());
    assert!(rep.note.unwrap().contains("commutative"));
}

#[test]
fn coboundaries_are_infinitesimal_deformations() {
    for seed in 0..5 {
        let phi = random_phi(seed);
        let ds = DeformationSeries::new(polynomial_current()).with_term(hochschild_of(&phi));
        assert!(check_n_deformation(&ds, &ck(2)).passed());
        assert!(infinitesimal_is_cocycle(&ds, &ck(2)).passed());
        let zero = DeformationSeries::new(polynomial_current()).with_term(zero_rule());
        assert!(equivalence_check(&ds, &zero, &phi, &ck(2)).passed());
        // a different map does not do it
        let other = random_phi(seed + 100);
        assert!(!equivalence_check(&ds, &zero, &other, &ck(2)).passed());
    }
}

#[test]
fn star_first_order_term_is_a_cocycle() {
    let rep = infinitesimal_is_cocycle(&star(1), &ck(3));
    assert!(rep.passed());
}

#[test]
fn obstruction_is_the_next_coboundary() {
    let full = star(2);
    let cut = full.truncate(1);
    let theta = obstruction(&cut);
    let base = polynomial_current();
    let cx = Complex::new(base.clone(), adjoint_module(&base));
    let mu2 = rule_cochain(&full.mu(2));
    let dmu2 = d_h(&cx, &mu2);
    let dtheta = d_h(&cx, &theta);
    let gens: Vec<GenIndex> = (0..3).map(x).collect();
    for a in &gens {
        for b in &gens {
            for c in &gens {
                let t = [a.clone(), b.clone(), c.clone()];
                assert_eq!(theta.value(&t).unwrap(), dmu2.value(&t).unwrap());
                for d in &gens {
                    assert!(dtheta.value(&[a.clone(), b.clone(), c.clone(), d.clone()]).unwrap().is_zero());
                }
            }
        }
    }
    assert!(theta.value(&[x(1), x(1), x(1)]).unwrap().len() > 0);
    // no higher terms, no obstruction
    let lone = DeformationSeries::new(polynomial_current()).with_term(zero_rule());
    assert!(obstruction(&lone).value(&[x(1), x(2), x(0)]).unwrap().is_zero());
}

#[test]
fn extension_round_trip() {
    let cut = star(2).truncate(1);
    let ansatz = Ansatz { ddeg: 2, ldeg: 2, degree_slack: 0 };
    let ext = extend_deformation(&cut, &ck(2), &ansatz).unwrap().expect("an extension within bounds");
    assert_eq!(ext.order(), 2);
    assert!(check_n_deformation(&ext, &ck(2)).passed());
    // the obstruction needs L^2: no extension with linear values
    let small = Ansatz { ddeg: 2, ldeg: 1, degree_slack: 0 };
    assert!(extend_deformation(&cut, &ck(2), &small).unwrap().is_none());
    // zero obstruction
    let lone = DeformationSeries::new(polynomial_current()).with_term(zero_rule());
    let ext = extend_deformation(&lone, &ck(1), &ansatz).unwrap().unwrap();
    assert!(ext.mu(2).on_generators(&x(1), &x(1)).unwrap().is_zero());
}

#[test]
fn semiclassical_limit_is_the_polynomial_algebra() {
    let ds = star(2);
    let lim = semiclassical_limit(&ds, &ck(3)).unwrap();
    let expect = polynomial_conformal();
    for m in 0..5 {
        for n in 0..5 {
            let (a, b) = (x(m), x(n));
            assert_eq!(
                lim.bracket.as_ref().unwrap().on_generators(&a, &b).unwrap(),
                expect.bracket.as_ref().unwrap().on_generators(&a, &b).unwrap()
            );
        }
    }
    assert!(check_poisson(&lim, &ck(3)).iter().all(|r| r.passed()));
    assert!(semiclassical_report(&ds, &ck(3)).iter().all(|r| r.passed()));
    // first order only: partial report, and the operation refuses
    let reps = semiclassical_report(&star(1), &ck(2));
    assert_eq!(reps.iter().map(|r| r.name.as_str()).collect::<Vec<_>>(), ["skew-symmetry", "leibniz"]);
    assert!(reps[0].note.as_ref().unwrap().contains("Jacobi"));
    assert!(semiclassical_limit(&star(1), &ck(2)).is_err());
    // trivial series: zero bracket
    let triv = DeformationSeries::new(polynomial_current()).with_term(zero_rule()).with_term(zero_rule());
    let lim = semiclassical_limit(&triv, &ck(2)).unwrap();
    assert!(lim.bracket.unwrap().on_generators(&x(2), &x(3)).unwrap().is_zero());
}

fn left_e11() -> LinearMap {
    LinearMap::new("L_e11", |g: &GenIndex| {
        let s = g.family.as_bytes();
        Ok(if s[1] == b'1' { ModElement::generator(g.clone()) } else { ModElement::zero() })
    })
}

fn times_x() -> LinearMap {
    LinearMap::new("x*", |g: &GenIndex| Ok(ModElement::generator(x(g.params[0] + 1))))
}

fn nijenhuis_pipeline(alg: &conformal_core::algebra::ConformalAlgebra, n: &LinearMap, w: i64) {
    assert!(nijenhuis_check(alg, n, &ck(w)).passed(), "{}", n.name);
    let def = nijenhuis_deform(alg, n).unwrap();
    for r in check_poisson(&def, &ck(w)) {
        assert!(r.passed(), "{} {}: {:?}", n.name, r.name, r.witnesses.first());
    }
    assert!(check_homomorphism(&def, alg, n, &ck(w)).passed());
    let ld = nijenhuis_linear_deformation(alg, n).unwrap();
    for r in linear_deformation_check(&ld, &ck(w)) {
        assert!(r.passed(), "{} {}: {:?}", n.name, r.name, r.witnesses.first());
    }
    assert!(trivial_deformation_check(&ld, n, &ck(w)).passed());
}

#[test]
fn scalar_nijenhuis_operators() {
    let alg = polynomial_conformal();
    for c in [1, 2, -3] {
        let n = LinearMap::scalar(Scalar::from_int(c));
        nijenhuis_pipeline(&alg, &n, 2);
        // o_N = c * o
        let def = nijenhuis_deform(&alg, &n).unwrap();
        let lhs = def.product.unwrap().on_generators(&x(1), &x(2)).unwrap();
        let rhs = alg.product.as_ref().unwrap().on_generators(&x(1), &x(2)).unwrap().scale(&Scalar::from_int(c));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn multiplication_operators_are_nijenhuis() {
    nijenhuis_pipeline(&current_algebra(&matrix_algebra_2()), &left_e11(), 0);
    nijenhuis_pipeline(&polynomial_current(), &times_x(), 2);
}

#[test]
fn a_random_operator_is_not_nijenhuis() {
    let alg = polynomial_conformal();
    let n = LinearMap::new("shift", |g: &GenIndex| {
        Ok(ModElement::generator(x(g.params[0] + 1)).add(&ModElement::generator(g.clone()).d_pow(1)))
    });
    assert!(!nijenhuis_check(&alg, &n, &ck(2)).passed());
}

#[test]
fn zero_linear_deformation_passes() {
    let alg = polynomial_conformal();
    let ld = LinearDeformation { base: alg, varpi: zero_rule(), omega: zero_rule() };
    assert!(linear_deformation_check(&ld, &ck(2)).iter().all(|r| r.passed()));
}

#[test]
fn broken_linear_deformation_fails_both_ways() {
    let alg = polynomial_conformal();
    let ld = LinearDeformation { base: alg, varpi: lambda_times_product(), omega: zero_rule() };
    let reps = linear_deformation_check(&ld, &ck(2));
    let failing: Vec<&str> = reps.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
    assert!(failing.contains(&"first-order-product"));
    assert!(failing.contains(&"t-expansion"));
    assert!(failing.contains(&"fgv-cocycle"));
}

#[test]
fn equivalent_linear_deformations() {
    let alg = polynomial_conformal();
    let n = LinearMap::scalar(Scalar::from_int(2));
    let ld = nijenhuis_linear_deformation(&alg, &n).unwrap();
    let zero = LinearDeformation { base: alg.clone(), varpi: zero_rule(), omega: zero_rule() };
    // the deformation of a Nijenhuis operator is trivial: equivalent to zero
    for r in linear_equivalence_check(&ld, &zero, &n, &ck(2)) {
        assert!(r.passed(), "{}: {:?}", r.name, r.witnesses.first());
    }
    let m = LinearMap::scalar(Scalar::from_int(3));
    assert!(!linear_equivalence_check(&ld, &zero, &m, &ck(2))[0].passed());
}

#[test]
fn tagging_round_trips() {
    let g = x(4);
    assert_eq!(untag(&tag(&g, 't', 2), 't'), (g.clone(), 2));
    assert_eq!(untag(&g, 't'), (g.clone(), 0));
    assert_eq!(untag(&tag(&g, 'h', 1), 't').1, 0);
}

