//! Truncated formal deformations `mu_0 + h mu_1 + ... + h^N mu_N` of a
//! commutative associative conformal algebra.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{cochain_rule, graded_rule, rule_cochain};
use crate::algebra::checks::{check_associativity, check_commutativity, check_leibniz, check_poisson, check_skew_symmetry};
use crate::algebra::eval::{dagger, eval_op, lift, sum, var};
use crate::algebra::runner::{names, tuples, Outcome};
use crate::algebra::{fn_rule, CheckReport, Checker, ConformalAlgebra, Rule, RuleRef};
use crate::cohomology::diff::{d_h, Graded};
use crate::cohomology::solve::{solve_preimage, Ansatz};
use crate::cohomology::{Cochain, Complex};
use crate::constructors::adjoint_module;
use crate::error::{EvalError, EvalResult};
use crate::symcore::{GenIndex, LambdaPoly};

#[derive(Clone)]
pub struct DeformationSeries {
    /// Commutative associative conformal algebra; its product is `mu_0`.
    pub base: ConformalAlgebra,
    /// `mu_1 .. mu_N`.
    pub terms: Vec<RuleRef>,
}

impl DeformationSeries {
    pub fn new(base: ConformalAlgebra) -> Self {
        assert!(base.product.is_some(), "a deformation needs a product to deform");
        DeformationSeries { base, terms: Vec::new() }
    }

    pub fn with_term(mut self, mu: RuleRef) -> Self {
        self.terms.push(mu);
        self
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    /// `mu_k`, with `mu_0` the base product and zero past the order.
    pub fn mu(&self, k: usize) -> RuleRef {
        if k == 0 {
            self.base.product.clone().unwrap()
        } else {
            self.terms.get(k - 1).cloned().unwrap_or_else(crate::algebra::rule::zero_rule)
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        DeformationSeries { base: self.base.clone(), terms: self.terms[..order.min(self.terms.len())].to_vec() }
    }

    fn complex(&self) -> Arc<Complex> {
        Complex::new(self.base.clone(), adjoint_module(&self.base))
    }
}

/// `(r(a_L s(b_M c)), r(s(a_L b)_{L+M} c))`.
fn compositions(r: &dyn Rule, s: &dyn Rule, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> EvalResult<(LambdaPoly, LambdaPoly)> {
    let bc = eval_op(s, &lift(b, 2), &lift(c, 2), &var(1, 2))?;
    let left = eval_op(r, &lift(a, 2), &bc, &var(0, 2))?;
    let ab = eval_op(s, &lift(a, 2), &lift(b, 2), &var(0, 2))?;
    let right = eval_op(r, &ab, &lift(c, 2), &sum(&[0, 1], 2))?;
    Ok((left, right))
}

/// Order-`n` part of associativity:
/// `sum_{r+s=n} mu_r(a_L mu_s(b_M c)) - mu_r(mu_s(a_L b)_{L+M} c)`.
fn order_residual(ds: &DeformationSeries, n: usize, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> Outcome {
    let mut out = LambdaPoly::zero(2);
    for r in 0..=n {
        let (l, rt) = compositions(&*ds.mu(r), &*ds.mu(n - r), a, b, c)?;
        out.add_assign(&l.sub(&rt));
    }
    Ok(out)
}

fn base_precondition(ds: &DeformationSeries, ck: &Checker) -> Option<String> {
    let assoc = check_associativity(&ds.base, ck);
    let comm = check_commutativity(&ds.base, ck);
    if assoc.passed() && comm.passed() {
        None
    } else {
        Some(format!("mu_0 is not commutative associative (associativity {}, commutativity {})", assoc.status.as_str(), comm.status.as_str()))
    }
}

/// Associativity of the truncated series order by order, on every triple of
/// window generators.
pub fn check_n_deformation(ds: &DeformationSeries, ck: &Checker) -> CheckReport {
    if let Some(note) = base_precondition(ds, ck) {
        return CheckReport::failed_with("n-deformation", note);
    }
    let ts = tuples(&ds.base.gens.enumerate(ck.window), 3);
    let orders = ds.order() + 1;
    let outcomes = ck.runner.run(ts.len() * orders, &|i| {
        let t = &ts[i / orders];
        order_residual(ds, i % orders, &t[0], &t[1], &t[2])
    });
    let mut rep = CheckReport::new("n-deformation");
    for (i, o) in outcomes.into_iter().enumerate() {
        rep.record(&ts[i / orders], o, &names(&["L", "M"]), Some(format!("order {}", i % orders)));
    }
    rep
}

/// The series as one product on `A[h]/h^(N+1)`, with powers of `h` carried
/// by the generators, checked for plain associativity. Independent of
/// [`check_n_deformation`].
pub fn series_associativity(ds: &DeformationSeries, ck: &Checker) -> CheckReport {
    let parts: Vec<RuleRef> = (0..=ds.order()).map(|k| ds.mu(k)).collect();
    let mut alg = ds.base.clone();
    alg.name = format!("{}[h]/h^{}", ds.base.name, ds.order() + 1);
    alg.product = Some(graded_rule(parts, 'h', ds.order() as u32));
    let mut rep = check_associativity(&alg, ck);
    rep.name = String::from("truncated-product-associativity");
    rep
}

/// First-order condition
/// `mu1(a_L (b o_M c)) + a o_L mu1(b_M c) = mu1((a o_L b)_{L+M} c) + mu1(a_L b) o_{L+M} c`,
/// computed directly and as `d_H mu_1`; the two are compared tuple by tuple.
pub fn infinitesimal_is_cocycle(ds: &DeformationSeries, ck: &Checker) -> CheckReport {
    let mut rep = CheckReport::new("infinitesimal-cocycle");
    if ds.order() < 1 {
        rep.fail_with(String::from("the series has no first-order term"));
        return rep;
    }
    let p = ds.mu(0);
    let mu1 = ds.mu(1);
    let dh = d_h(&ds.complex(), &rule_cochain(&mu1));
    let ts = tuples(&ds.base.gens.enumerate(ck.window), 3);
    let outcomes: Vec<(Outcome, Outcome)> = {
        let direct = ck.runner.run(ts.len(), &|i| {
            let (a, b, c) = (&ts[i][0], &ts[i][1], &ts[i][2]);
            let (t1, t3) = compositions(&*mu1, &*p, a, b, c)?;
            let (t2, t4) = compositions(&*p, &*mu1, a, b, c)?;
            Ok(t1.add(&t2).sub(&t3).sub(&t4))
        });
        let via = ck.runner.run(ts.len(), &|i| dh.value(&ts[i]));
        direct.into_iter().zip(via).collect()
    };
    let mut mismatch = None;
    for (t, (d, v)) in ts.iter().zip(outcomes) {
        if let (Ok(x), Ok(y)) = (&d, &v) {
            if x != y && mismatch.is_none() {
                mismatch = Some(format!("direct and d_H computations differ on {:?}", t.iter().map(|g| g.to_text()).collect::<Vec<_>>()));
            }
        }
        rep.record(t, d, &names(&["L", "M"]), None);
    }
    if let Some(m) = mismatch {
        rep.fail_with(m);
    }
    rep
}

/// `phi` as a map on generators, extended `C[D]`-linearly.
pub type GeneratorMap = Arc<dyn Fn(&GenIndex) -> EvalResult<crate::symcore::ModElement> + Send + Sync>;

/// Whether `Id + h phi` is a homomorphism modulo `h^2` from the first series
/// to the second: `mu1 - mu1' = a o phi(b) + phi(a) o b - phi(a o b)`,
/// computed directly and as `d_H phi`, on every pair of window generators.
pub fn equivalence_check(ds: &DeformationSeries, other: &DeformationSeries, phi: &GeneratorMap, ck: &Checker) -> CheckReport {
    let p = ds.mu(0);
    let (m1, m1p) = (ds.mu(1), other.mu(1));
    let phi_c = {
        let phi = phi.clone();
        Cochain::new(0, 1, move |t| Ok(LambdaPoly::from_mod(&phi(&t[0])?, 0)))
    };
    let dh = d_h(&ds.complex(), &phi_c);
    let ts = tuples(&ds.base.gens.enumerate(ck.window), 2);
    let apply = |v: &LambdaPoly| v.map_generators(|g| phi(g));
    let direct = ck.runner.run(ts.len(), &|i| {
        let (a, b) = (&ts[i][0], &ts[i][1]);
        let l = var(0, 1);
        let pa = LambdaPoly::from_mod(&phi(a)?, 1);
        let pb = LambdaPoly::from_mod(&phi(b)?, 1);
        let mut rhs = eval_op(&*p, &lift(a, 1), &pb, &l)?;
        rhs.add_assign(&eval_op(&*p, &pa, &lift(b, 1), &l)?);
        rhs = rhs.sub(&apply(&p.on_generators(a, b)?)?);
        let lhs = m1.on_generators(a, b)?.sub(&m1p.on_generators(a, b)?);
        Ok(lhs.sub(&rhs))
    });
    let mut rep = CheckReport::new("equivalence");
    let mut mismatch = None;
    for (t, o) in ts.iter().zip(direct) {
        if let Ok(r) = &o {
            let lhs = m1.on_generators(&t[0], &t[1]).and_then(|x| Ok(x.sub(&m1p.on_generators(&t[0], &t[1])?)));
            if let (Ok(lhs), Ok(dv)) = (lhs, dh.value(t)) {
                // r = lhs - d_H phi, computed two ways
                if lhs.sub(&dv) != *r && mismatch.is_none() {
                    mismatch = Some(format!("direct and d_H computations differ on ({}, {})", t[0], t[1]));
                }
            }
        }
        rep.record(t, o, &names(&["L"]), None);
    }
    if let Some(m) = mismatch {
        rep.fail_with(m);
    }
    rep
}

/// `theta_n(a, b, c) = sum_{r+s=n+1, r,s>=1} mu_r(mu_s(a_L b)_{L+M} c) - mu_r(a_L mu_s(b_M c))`
/// as a Hochschild 3-cochain.
pub fn obstruction(ds: &DeformationSeries) -> Cochain {
    let ds = ds.clone();
    let n = ds.order();
    Cochain::new(0, 3, move |t| {
        let mut out = LambdaPoly::zero(2);
        for r in 1..=n {
            let s = n + 1 - r;
            if s < 1 {
                continue;
            }
            let (l, rt) = compositions(&*ds.mu(r), &*ds.mu(s), &t[0], &t[1], &t[2])?;
            out.add_assign(&rt.sub(&l));
        }
        Ok(out)
    })
}

/// A next term `mu_{n+1}` with `d_H mu_{n+1} = theta_n` within the ansatz,
/// or `None` when there is none within bounds. The extended series is
/// re-checked; a failure there is reported as `PreconditionFailed`.
pub fn extend_deformation(ds: &DeformationSeries, ck: &Checker, ansatz: &Ansatz) -> EvalResult<Option<DeformationSeries>> {
    if let Some(note) = base_precondition(ds, ck) {
        return Err(EvalError::PreconditionFailed(note));
    }
    let cx = ds.complex();
    let target = Graded::new(3).with(obstruction(ds));
    let cx2 = cx.clone();
    let apply = move |g: &Graded| {
        let mut out = Graded::new(3);
        for c in g.parts.values() {
            out.insert(d_h(&cx2, c));
        }
        out
    };
    let gens = &ds.base.gens;
    let Some(sol) = solve_preimage(gens, gens, &[(0, 2)], false, &apply, &target, ck.window, ansatz)? else {
        return Ok(None);
    };
    let next = ds.clone().with_term(cochain_rule(&sol.preimage.parts[&(0, 2)]));
    let rep = check_n_deformation(&next, ck);
    if !rep.passed() {
        return Err(EvalError::PreconditionFailed(format!("extended series fails: {} failures", rep.failures)));
    }
    Ok(Some(next))
}

/// `[a_L b] = mu1(a_L b) - mu1(b_{-L-D} a)` with the base product.
pub fn semiclassical_limit(ds: &DeformationSeries, ck: &Checker) -> EvalResult<ConformalAlgebra> {
    if ds.order() < 2 {
        return Err(EvalError::PreconditionFailed(String::from("the semi-classical limit needs the series through order 2")));
    }
    let rep = check_n_deformation(&ds.truncate(2), ck);
    if !rep.passed() {
        return Err(EvalError::PreconditionFailed(format!("the series is not a deformation through order 2 ({})", rep.status.as_str())));
    }
    Ok(limit_unchecked(ds))
}

fn limit_unchecked(ds: &DeformationSeries) -> ConformalAlgebra {
    let mu1 = ds.mu(1);
    let bracket = fn_rule(move |a, b| {
        let ab = mu1.on_generators(a, b)?;
        let ba = eval_op(&*mu1, &lift(b, 1), &lift(a, 1), &dagger(&[0], 1))?;
        Ok(ab.sub(&ba))
    });
    let mut alg = ds.base.clone();
    alg.name = format!("limit({})", ds.base.name);
    alg.bracket = Some(bracket);
    alg
}

/// The Poisson suite on the semi-classical limit. With only a first-order
/// term the Jacobi identity is not implied, so only skew-symmetry and
/// Leibniz are run and the reports say so.
pub fn semiclassical_report(ds: &DeformationSeries, ck: &Checker) -> Vec<CheckReport> {
    if ds.order() == 0 {
        return alloc::vec![CheckReport::failed_with("semiclassical", String::from("the series has no first-order term"))];
    }
    let alg = limit_unchecked(ds);
    if ds.order() == 1 {
        let note = "order 1 only: Jacobi needs the second-order term and is not checked";
        return alloc::vec![check_skew_symmetry(&alg, ck).with_note(note), check_leibniz(&alg, ck).with_note(note)];
    }
    let mut reps = alloc::vec![check_n_deformation(&ds.truncate(2), ck)];
    reps.extend(check_poisson(&alg, ck));
    reps
}
