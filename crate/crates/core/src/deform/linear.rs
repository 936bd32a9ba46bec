//! Linear deformations `(o + t varpi, [,] + t omega)` of a noncommutative
//! Poisson conformal algebra, Nijenhuis operators and the deformations they
//! generate.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{bracket_cochain, graded_rule, rule_cochain};
use crate::algebra::checks::{
    associativity_residual, check_poisson, commutativity_residual, jacobi_residual, leibniz_residual, skew_residual,
};
use crate::algebra::eval::{eval_op, lift, sum, var};
use crate::algebra::runner::{names, tuples, Outcome};
use crate::algebra::{fn_rule, CheckReport, Checker, ConformalAlgebra, Rule, RuleRef};
use crate::cohomology::checks::is_cocycle;
use crate::cohomology::diff::{d_fgv, Graded};
use crate::cohomology::{Cochain, Complex};
use crate::constructors::adjoint_module;
use crate::error::{EvalError, EvalResult};
use crate::symcore::{GenIndex, LambdaPoly, ModElement, Scalar};

/// A `C[D]`-module endomorphism given on generators. `N D = D N` holds by
/// construction.
#[derive(Clone)]
pub struct LinearMap {
    pub name: String,
    map: Arc<dyn Fn(&GenIndex) -> EvalResult<ModElement> + Send + Sync>,
}

impl LinearMap {
    pub fn new<F>(name: &str, f: F) -> Self
    where
        F: Fn(&GenIndex) -> EvalResult<ModElement> + Send + Sync + 'static,
    {
        LinearMap { name: String::from(name), map: Arc::new(f) }
    }

    pub fn scalar(c: Scalar) -> Self {
        LinearMap::new(&format!("{}*Id", c), move |g| Ok(ModElement::generator(g.clone()).scale(&c)))
    }

    pub fn on_generator(&self, g: &GenIndex) -> EvalResult<ModElement> {
        (self.map)(g)
    }

    pub fn apply(&self, p: &LambdaPoly) -> EvalResult<LambdaPoly> {
        p.map_generators(|g| (self.map)(g))
    }

    fn lifted(&self, g: &GenIndex, n: usize) -> EvalResult<LambdaPoly> {
        Ok(LambdaPoly::from_mod(&(self.map)(g)?, n))
    }

    /// As a `(1, 0)` cochain, i.e. a degree-1 element of the total complex.
    pub fn cochain(&self) -> Cochain {
        let f = self.map.clone();
        Cochain::new(1, 0, move |t| Ok(LambdaPoly::from_mod(&f(&t[0])?, 0)))
    }
}

#[derive(Clone)]
pub struct LinearDeformation {
    pub base: ConformalAlgebra,
    pub varpi: RuleRef,
    pub omega: RuleRef,
}

fn product(alg: &ConformalAlgebra) -> EvalResult<&dyn Rule> {
    alg.product.as_deref().ok_or_else(|| EvalError::MissingStructure(String::from("product")))
}

fn bracket(alg: &ConformalAlgebra) -> EvalResult<&dyn Rule> {
    alg.bracket.as_deref().ok_or_else(|| EvalError::MissingStructure(String::from("bracket")))
}

/// `r(N a, b) + r(a, N b) - N r(a, b)`.
fn deformed(r: &dyn Rule, n: &LinearMap, a: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly> {
    let l = var(0, 1);
    let mut out = eval_op(r, &n.lifted(a, 1)?, &lift(b, 1), &l)?;
    out.add_assign(&eval_op(r, &lift(a, 1), &n.lifted(b, 1)?, &l)?);
    Ok(out.sub(&n.apply(&r.on_generators(a, b)?)?))
}

/// `N(r_N(a, b)) - r(N a, N b)`.
fn nijenhuis_residual(r: &dyn Rule, n: &LinearMap, a: &GenIndex, b: &GenIndex) -> Outcome {
    let lhs = n.apply(&deformed(r, n, a, b)?)?;
    Ok(lhs.sub(&eval_op(r, &n.lifted(a, 1)?, &n.lifted(b, 1)?, &var(0, 1))?))
}

fn pair_report(name: &str, alg: &ConformalAlgebra, ck: &Checker, parts: &[(&str, &(dyn Fn(&GenIndex, &GenIndex) -> Outcome + Sync))]) -> CheckReport {
    let ts = tuples(&alg.gens.enumerate(ck.window), 2);
    let mut rep = CheckReport::new(name);
    for (label, f) in parts {
        let outcomes = ck.runner.run(ts.len(), &|i| f(&ts[i][0], &ts[i][1]));
        for (t, o) in ts.iter().zip(outcomes) {
            rep.record(t, o, &names(&["L"]), Some(String::from(*label)));
        }
    }
    rep
}

/// Both Nijenhuis conditions, for the product and for the bracket.
pub fn nijenhuis_check(alg: &ConformalAlgebra, n: &LinearMap, ck: &Checker) -> CheckReport {
    let (Ok(p), Ok(br)) = (product(alg), bracket(alg)) else {
        return CheckReport::failed_with("nijenhuis", String::from("the algebra needs a product and a bracket"));
    };
    pair_report(
        "nijenhuis",
        alg,
        ck,
        &[("product", &|a, b| nijenhuis_residual(p, n, a, b)), ("bracket", &|a, b| nijenhuis_residual(br, n, a, b))],
    )
}

fn deformed_rule(r: RuleRef, n: &LinearMap) -> RuleRef {
    let n = n.clone();
    fn_rule(move |a, b| deformed(&*r, &n, a, b))
}

/// `(o_N, [,]_N)`: `a o_N b = N a o b + a o N b - N(a o b)`, likewise for the
/// bracket.
pub fn nijenhuis_deform(alg: &ConformalAlgebra, n: &LinearMap) -> EvalResult<ConformalAlgebra> {
    let p = alg.product.clone().ok_or_else(|| EvalError::MissingStructure(String::from("product")))?;
    let br = alg.bracket.clone().ok_or_else(|| EvalError::MissingStructure(String::from("bracket")))?;
    let mut out = alg.clone();
    out.name = format!("{}_{}", alg.name, n.name);
    out.product = Some(deformed_rule(p, n));
    out.bracket = Some(deformed_rule(br, n));
    Ok(out)
}

/// Whether `f` maps `source` to `target` homomorphically:
/// `f(a o b) = f a o f b` and `f [a_L b] = [f a_L f b]`.
pub fn check_homomorphism(source: &ConformalAlgebra, target: &ConformalAlgebra, f: &LinearMap, ck: &Checker) -> CheckReport {
    let ops = (product(source), product(target), bracket(source), bracket(target));
    let (Ok(ps), Ok(pt), Ok(bs), Ok(bt)) = ops else {
        return CheckReport::failed_with("homomorphism", String::from("both algebras need a product and a bracket"));
    };
    let hom = |s: &dyn Rule, t: &dyn Rule, a: &GenIndex, b: &GenIndex| -> Outcome {
        let lhs = f.apply(&s.on_generators(a, b)?)?;
        Ok(lhs.sub(&eval_op(t, &f.lifted(a, 1)?, &f.lifted(b, 1)?, &var(0, 1))?))
    };
    pair_report(
        "homomorphism",
        source,
        ck,
        &[("product", &|a, b| hom(ps, pt, a, b)), ("bracket", &|a, b| hom(bs, bt, a, b))],
    )
}

/// The linear deformation `varpi = o_N`, `omega = [,]_N` of a Nijenhuis
/// operator.
pub fn nijenhuis_linear_deformation(alg: &ConformalAlgebra, n: &LinearMap) -> EvalResult<LinearDeformation> {
    let d = nijenhuis_deform(alg, n)?;
    Ok(LinearDeformation { base: alg.clone(), varpi: d.product.unwrap(), omega: d.bracket.unwrap() })
}

/// Residual of `r(a_L s(b_M c)) - r(s(a_L b)_{L+M} c)` and friends, over two
/// variables.
fn nest(r: &dyn Rule, s: &dyn Rule, x: &GenIndex, y: &GenIndex, z: &GenIndex, outer: usize, inner: usize) -> EvalResult<LambdaPoly> {
    // r(x_{v_outer} s(y_{v_inner} z))
    let yz = eval_op(s, &lift(y, 2), &lift(z, 2), &var(inner, 2))?;
    eval_op(r, &lift(x, 2), &yz, &var(outer, 2))
}

fn front(r: &dyn Rule, s: &dyn Rule, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> EvalResult<LambdaPoly> {
    // r(s(a_L b)_{L+M} c)
    let ab = eval_op(s, &lift(a, 2), &lift(b, 2), &var(0, 2))?;
    eval_op(r, &ab, &lift(c, 2), &sum(&[0, 1], 2))
}

/// The conditions for `(o + t varpi, [,] + t omega)` to be a noncommutative
/// Poisson conformal algebra for all `t`, one report per condition:
/// `varpi` associative (and commutative for the commutative kind), `omega`
/// skew and Jacobi, the mixed Leibniz rule of `(varpi, omega)`, and the
/// three first-order conditions. Sesquilinearity holds by construction.
///
/// Two further reports: the same algebra with `t` adjoined formally, run
/// through the ordinary Poisson suite (an independent path: it fails exactly
/// when some coefficient of `t` fails), and `d_FGV(omega + varpi) = 0`.
pub fn linear_deformation_check(ld: &LinearDeformation, ck: &Checker) -> Vec<CheckReport> {
    let (Ok(p), Ok(br)) = (product(&ld.base), bracket(&ld.base)) else {
        return alloc::vec![CheckReport::failed_with("linear-deformation", String::from("the algebra needs a product and a bracket"))];
    };
    let (vp, om) = (&*ld.varpi, &*ld.omega);
    let gens = ld.base.gens.enumerate(ck.window);
    let pairs = tuples(&gens, 2);
    let triples = tuples(&gens, 3);
    let mut reps = Vec::new();
    let one = names(&["L"]);
    let two = names(&["L", "M"]);
    reps.push(ck.run_tuples("varpi-associativity", &triples, &two, &|t| associativity_residual(vp, &t[0], &t[1], &t[2])));
    if ld.base.commutative {
        reps.push(ck.run_tuples("varpi-commutativity", &pairs, &one, &|t| commutativity_residual(vp, &t[0], &t[1])));
    }
    reps.push(ck.run_tuples("omega-skew-symmetry", &pairs, &one, &|t| skew_residual(om, &t[0], &t[1])));
    reps.push(ck.run_tuples("omega-jacobi", &triples, &two, &|t| jacobi_residual(om, &t[0], &t[1], &t[2])));
    reps.push(ck.run_tuples("varpi-omega-leibniz", &triples, &two, &|t| leibniz_residual(vp, om, &t[0], &t[1], &t[2])));
    // varpi(a_L (b o_M c)) + a o_L varpi(b_M c) - varpi((a o_L b)_{L+M} c) - varpi(a_L b) o_{L+M} c
    reps.push(ck.run_tuples("first-order-product", &triples, &two, &|t| {
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        Ok(nest(vp, p, a, b, c, 0, 1)?.add(&nest(p, vp, a, b, c, 0, 1)?).sub(&front(vp, p, a, b, c)?).sub(&front(p, vp, a, b, c)?))
    }));
    // omega([a_L b]_{L+M} c) - omega(a_L [b_M c]) + omega(b_M [a_L c])
    //   - [a_L omega(b_M c)] + [omega(a_L b)_{L+M} c] + [b_M omega(a_L c)]
    reps.push(ck.run_tuples("first-order-bracket", &triples, &two, &|t| {
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        let lhs = front(om, br, a, b, c)?.sub(&nest(om, br, a, b, c, 0, 1)?).add(&nest(om, br, b, a, c, 1, 0)?);
        let rhs = nest(br, om, a, b, c, 0, 1)?.sub(&front(br, om, a, b, c)?).sub(&nest(br, om, b, a, c, 1, 0)?);
        Ok(lhs.sub(&rhs))
    }));
    // [a_L varpi(b_M c)] - varpi([a_L b]_{L+M} c) - varpi(b_M [a_L c])
    //   - omega(a_L b) o_{L+M} c - b o_M omega(a_L c) + omega(a_L (b o_M c))
    reps.push(ck.run_tuples("first-order-mixed", &triples, &two, &|t| {
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        let lhs = nest(br, vp, a, b, c, 0, 1)?.sub(&front(vp, br, a, b, c)?).sub(&nest(vp, br, b, a, c, 1, 0)?);
        let rhs = front(p, om, a, b, c)?.add(&nest(p, om, b, a, c, 1, 0)?).sub(&nest(om, p, a, b, c, 0, 1)?);
        Ok(lhs.sub(&rhs))
    }));
    reps.push(t_expansion(ld, ck));
    reps.push(fgv_cocycle(ld, ck));
    reps
}

/// The deformed algebra over `Q[t]`, with powers of `t` carried by the
/// generators, through the Poisson suite.
fn t_expansion(ld: &LinearDeformation, ck: &Checker) -> CheckReport {
    let mut alg = ld.base.clone();
    alg.name = format!("{}[t]", ld.base.name);
    alg.product = Some(graded_rule(alloc::vec![ld.base.product.clone().unwrap(), ld.varpi.clone()], 't', 2));
    alg.bracket = Some(graded_rule(alloc::vec![ld.base.bracket.clone().unwrap(), ld.omega.clone()], 't', 2));
    let mut rep = CheckReport::new("t-expansion");
    for r in check_poisson(&alg, ck) {
        rep.absorb(r);
    }
    rep
}

fn fgv_cocycle(ld: &LinearDeformation, ck: &Checker) -> CheckReport {
    let cx = Complex::new(ld.base.clone(), adjoint_module(&ld.base));
    let g = Graded::new(2).with(rule_cochain(&ld.varpi)).with(bracket_cochain(&ld.omega));
    let mut rep = is_cocycle(&cx, &g, ck.window, ck.runner);
    rep.name = String::from("fgv-cocycle");
    rep
}

/// The trivial-deformation equations for `N`: `N D = D N` (by construction),
/// `varpi = o_N`, `N varpi(a, b) = N a o N b`, `omega = [,]_N`,
/// `N omega(a, b) = [N a, N b]`.
pub fn trivial_deformation_check(ld: &LinearDeformation, n: &LinearMap, ck: &Checker) -> CheckReport {
    let (Ok(p), Ok(br)) = (product(&ld.base), bracket(&ld.base)) else {
        return CheckReport::failed_with("trivial-deformation", String::from("the algebra needs a product and a bracket"));
    };
    let (vp, om) = (&*ld.varpi, &*ld.omega);
    let image = |r: &dyn Rule, s: &dyn Rule, a: &GenIndex, b: &GenIndex| -> Outcome {
        let lhs = n.apply(&r.on_generators(a, b)?)?;
        Ok(lhs.sub(&eval_op(s, &n.lifted(a, 1)?, &n.lifted(b, 1)?, &var(0, 1))?))
    };
    let mut rep = pair_report(
        "trivial-deformation",
        &ld.base,
        ck,
        &[
            ("varpi = o_N", &|a, b| Ok(vp.on_generators(a, b)?.sub(&deformed(p, n, a, b)?))),
            ("N varpi = N o N", &|a, b| image(vp, p, a, b)),
            ("omega = [,]_N", &|a, b| Ok(om.on_generators(a, b)?.sub(&deformed(br, n, a, b)?))),
            ("N omega = [N, N]", &|a, b| image(om, br, a, b)),
        ],
    );
    rep.note = Some(String::from("N D = D N holds by construction"));
    rep
}

/// The equations for `Id + t N` to map the deformation `ld` to `other`,
/// plus the cohomological consequence
/// `(omega + varpi) - (omega' + varpi') = d_FGV N`.
pub fn linear_equivalence_check(ld: &LinearDeformation, other: &LinearDeformation, n: &LinearMap, ck: &Checker) -> Vec<CheckReport> {
    let (Ok(p), Ok(br)) = (product(&ld.base), bracket(&ld.base)) else {
        return alloc::vec![CheckReport::failed_with("linear-equivalence", String::from("the algebra needs a product and a bracket"))];
    };
    let (vp, om, vq, oq) = (&*ld.varpi, &*ld.omega, &*other.varpi, &*other.omega);
    let l = var(0, 1);
    let first = |r: &dyn Rule, s: &dyn Rule, base: &dyn Rule, a: &GenIndex, b: &GenIndex| -> Outcome {
        Ok(r.on_generators(a, b)?.sub(&s.on_generators(a, b)?).sub(&deformed(base, n, a, b)?))
    };
    let second = |r: &dyn Rule, s: &dyn Rule, base: &dyn Rule, a: &GenIndex, b: &GenIndex| -> Outcome {
        let lhs = n.apply(&r.on_generators(a, b)?)?;
        let mut rhs = eval_op(s, &n.lifted(a, 1)?, &lift(b, 1), &l)?;
        rhs.add_assign(&eval_op(s, &lift(a, 1), &n.lifted(b, 1)?, &l)?);
        rhs.add_assign(&eval_op(base, &n.lifted(a, 1)?, &n.lifted(b, 1)?, &l)?);
        Ok(lhs.sub(&rhs))
    };
    let killed = |s: &dyn Rule, a: &GenIndex, b: &GenIndex| eval_op(s, &n.lifted(a, 1)?, &n.lifted(b, 1)?, &l);
    let mut rep = pair_report(
        "linear-equivalence",
        &ld.base,
        ck,
        &[
            ("varpi - varpi' = o_N", &|a, b| first(vp, vq, p, a, b)),
            ("omega - omega' = [,]_N", &|a, b| first(om, oq, br, a, b)),
            ("N varpi", &|a, b| second(vp, vq, p, a, b)),
            ("varpi'(N, N) = 0", &|a, b| killed(vq, a, b)),
            ("N omega", &|a, b| second(om, oq, br, a, b)),
            ("omega'(N, N) = 0", &|a, b| killed(oq, a, b)),
        ],
    );
    rep.note = Some(String::from("N D = D N holds by construction"));
    // (omega + varpi) - (omega' + varpi') - d_FGV N
    let cx = Complex::new(ld.base.clone(), adjoint_module(&ld.base));
    let dn = d_fgv(&cx, &Graded::new(1).with(n.cochain()));
    let diff = Graded::new(2)
        .with(rule_cochain(&ld.varpi).sub(&rule_cochain(&other.varpi)).sub(&dn.parts[&(0, 2)]))
        .with(bracket_cochain(&ld.omega).sub(&bracket_cochain(&other.omega)).sub(&dn.parts[&(2, 0)]));
    let ts = tuples(&ld.base.gens.enumerate(ck.window), 2);
    let mut coh = CheckReport::new("equivalence-coboundary");
    for c in diff.parts.values() {
        let outcomes = ck.runner.run(ts.len(), &|i| c.value(&ts[i]));
        for (t, o) in ts.iter().zip(outcomes) {
            let (m, k) = c.bidegree();
            coh.record(t, o, &[], Some(format!("component ({}, {})", m, k)));
        }
    }
    alloc::vec![rep, coh]
}
