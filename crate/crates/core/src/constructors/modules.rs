//! Modules over conformal algebras, the adjoint module and semidirect
//! products.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::conformal::{BlockRule, RenamedRule, Renaming};
use crate::algebra::eval::{eval_op, lift, sum, var};
use crate::algebra::runner::{names, Checker, Outcome};
use crate::algebra::{fn_rule, CheckReport, ConformalAlgebra, GeneratorSet, Rule, RuleRef};
use crate::error::{EvalError, EvalResult};
use crate::symcore::{GenIndex, LambdaPoly, OpPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Assoc,
    Lie,
    Poisson,
}

/// A free `C[D]`-module `V` with actions of an algebra.
///
/// `left(a, v)` is `a o_L v`, `right(v, a)` is `v o_L a` and `lie(a, v)` is
/// `a_L v`. The paper's `r(a)_L v = v o_{-L-D} a` is [`ConformalModule::r_action`].
#[derive(Clone)]
pub struct ConformalModule {
    pub name: String,
    pub carrier: GeneratorSet,
    pub left: Option<RuleRef>,
    pub right: Option<RuleRef>,
    pub lie: Option<RuleRef>,
    pub kind: ModuleKind,
}

impl ConformalModule {
    pub fn left_rule(&self) -> EvalResult<&dyn Rule> {
        self.left.as_deref().ok_or_else(|| EvalError::MissingStructure(String::from("left action")))
    }

    pub fn right_rule(&self) -> EvalResult<&dyn Rule> {
        self.right.as_deref().ok_or_else(|| EvalError::MissingStructure(String::from("right action")))
    }

    pub fn lie_rule(&self) -> EvalResult<&dyn Rule> {
        self.lie.as_deref().ok_or_else(|| EvalError::MissingStructure(String::from("lie action")))
    }

    /// `r(a)_nu v = v o_{-nu-D} a`.
    pub fn r_action(&self, a: &LambdaPoly, v: &LambdaPoly, nu: &OpPoly) -> EvalResult<LambdaPoly> {
        let n = nu.nvars();
        let flipped = nu.neg().sub(&OpPoly::d(n));
        eval_op(self.right_rule()?, v, a, &flipped)
    }

    /// Module with all actions zero on the given carrier.
    pub fn trivial(carrier: GeneratorSet, kind: ModuleKind) -> Self {
        let z = crate::algebra::rule::zero_rule();
        ConformalModule {
            name: String::from("trivial"),
            carrier,
            left: Some(z.clone()),
            right: Some(z.clone()),
            lie: Some(z),
            kind,
        }
    }
}

/// `(A; L, R, ad)`: left and right multiplication and the adjoint action.
pub fn adjoint_module(alg: &ConformalAlgebra) -> ConformalModule {
    let kind = match (&alg.product, &alg.bracket) {
        (Some(_), Some(_)) => ModuleKind::Poisson,
        (Some(_), None) => ModuleKind::Assoc,
        _ => ModuleKind::Lie,
    };
    ConformalModule {
        name: alloc::format!("ad({})", alg.name),
        carrier: alg.gens.clone(),
        left: alg.product.clone(),
        right: alg.product.clone(),
        lie: alg.bracket.clone(),
        kind,
    }
}

fn structure<'a>(r: &'a Option<RuleRef>, what: &str) -> EvalResult<&'a dyn Rule> {
    r.as_deref().ok_or_else(|| EvalError::MissingStructure(String::from(what)))
}

/// `(a o_L b) o_{L+M} v - a o_L (b o_M v)`.
pub fn assoc_left_residual(alg: &ConformalAlgebra, m: &ConformalModule, a: &GenIndex, b: &GenIndex, v: &GenIndex) -> Outcome {
    let p = structure(&alg.product, "product")?;
    let l = m.left_rule()?;
    let ab = eval_op(p, &lift(a, 2), &lift(b, 2), &var(0, 2))?;
    let t1 = eval_op(l, &ab, &lift(v, 2), &sum(&[0, 1], 2))?;
    let bv = eval_op(l, &lift(b, 2), &lift(v, 2), &var(1, 2))?;
    let t2 = eval_op(l, &lift(a, 2), &bv, &var(0, 2))?;
    Ok(t1.sub(&t2))
}

/// `(v o_L b) o_{L+M} a - v o_L (b o_M a)`.
pub fn assoc_right_residual(alg: &ConformalAlgebra, m: &ConformalModule, v: &GenIndex, b: &GenIndex, a: &GenIndex) -> Outcome {
    let p = structure(&alg.product, "product")?;
    let r = m.right_rule()?;
    let vb = eval_op(r, &lift(v, 2), &lift(b, 2), &var(0, 2))?;
    let t1 = eval_op(r, &vb, &lift(a, 2), &sum(&[0, 1], 2))?;
    let ba = eval_op(p, &lift(b, 2), &lift(a, 2), &var(1, 2))?;
    let t2 = eval_op(r, &lift(v, 2), &ba, &var(0, 2))?;
    Ok(t1.sub(&t2))
}

/// `(a o_L v) o_{L+M} b - a o_L (v o_M b)`.
pub fn assoc_middle_residual(m: &ConformalModule, a: &GenIndex, v: &GenIndex, b: &GenIndex) -> Outcome {
    let l = m.left_rule()?;
    let r = m.right_rule()?;
    let av = eval_op(l, &lift(a, 2), &lift(v, 2), &var(0, 2))?;
    let t1 = eval_op(r, &av, &lift(b, 2), &sum(&[0, 1], 2))?;
    let vb = eval_op(r, &lift(v, 2), &lift(b, 2), &var(1, 2))?;
    let t2 = eval_op(l, &lift(a, 2), &vb, &var(0, 2))?;
    Ok(t1.sub(&t2))
}

/// `[a_L b]_{L+M} v - a_L (b_M v) + b_M (a_L v)`.
pub fn lie_module_residual(alg: &ConformalAlgebra, m: &ConformalModule, a: &GenIndex, b: &GenIndex, v: &GenIndex) -> Outcome {
    let br = structure(&alg.bracket, "bracket")?;
    let rho = m.lie_rule()?;
    let ab = eval_op(br, &lift(a, 2), &lift(b, 2), &var(0, 2))?;
    let t1 = eval_op(rho, &ab, &lift(v, 2), &sum(&[0, 1], 2))?;
    let bv = eval_op(rho, &lift(b, 2), &lift(v, 2), &var(1, 2))?;
    let t2 = eval_op(rho, &lift(a, 2), &bv, &var(0, 2))?;
    let av = eval_op(rho, &lift(a, 2), &lift(v, 2), &var(0, 2))?;
    let t3 = eval_op(rho, &lift(b, 2), &av, &var(1, 2))?;
    Ok(t1.sub(&t2).add(&t3))
}

/// `[a_L b] o_{L+M} v - a_L (b o_M v) + b o_M (a_L v)`.
pub fn poisson_module_first(alg: &ConformalAlgebra, m: &ConformalModule, a: &GenIndex, b: &GenIndex, v: &GenIndex) -> Outcome {
    let br = structure(&alg.bracket, "bracket")?;
    let (l, rho) = (m.left_rule()?, m.lie_rule()?);
    let ab = eval_op(br, &lift(a, 2), &lift(b, 2), &var(0, 2))?;
    let t1 = eval_op(l, &ab, &lift(v, 2), &sum(&[0, 1], 2))?;
    let bv = eval_op(l, &lift(b, 2), &lift(v, 2), &var(1, 2))?;
    let t2 = eval_op(rho, &lift(a, 2), &bv, &var(0, 2))?;
    let av = eval_op(rho, &lift(a, 2), &lift(v, 2), &var(0, 2))?;
    let t3 = eval_op(l, &lift(b, 2), &av, &var(1, 2))?;
    Ok(t1.sub(&t2).add(&t3))
}

/// `v o_M [a_L b] - a_L (v o_M b) + (a_L v) o_{L+M} b`.
pub fn poisson_module_second(alg: &ConformalAlgebra, m: &ConformalModule, a: &GenIndex, b: &GenIndex, v: &GenIndex) -> Outcome {
    let br = structure(&alg.bracket, "bracket")?;
    let (r, rho) = (m.right_rule()?, m.lie_rule()?);
    let ab = eval_op(br, &lift(a, 2), &lift(b, 2), &var(0, 2))?;
    let t1 = eval_op(r, &lift(v, 2), &ab, &var(1, 2))?;
    let vb = eval_op(r, &lift(v, 2), &lift(b, 2), &var(1, 2))?;
    let t2 = eval_op(rho, &lift(a, 2), &vb, &var(0, 2))?;
    let av = eval_op(rho, &lift(a, 2), &lift(v, 2), &var(0, 2))?;
    let t3 = eval_op(r, &av, &lift(b, 2), &sum(&[0, 1], 2))?;
    Ok(t1.sub(&t2).add(&t3))
}

/// `(a o_L b)_{-M-D} v - a o_L (b_{-M-D} v) - (a_{-M-D} v) o_{L+M} b`, each
/// `D` acting on the action it appears in.
pub fn poisson_module_third(alg: &ConformalAlgebra, m: &ConformalModule, a: &GenIndex, b: &GenIndex, v: &GenIndex) -> Outcome {
    let p = structure(&alg.product, "product")?;
    let (l, r, rho) = (m.left_rule()?, m.right_rule()?, m.lie_rule()?);
    let flip = OpPoly::dagger_of(&[1], 2);
    let ab = eval_op(p, &lift(a, 2), &lift(b, 2), &var(0, 2))?;
    let t1 = eval_op(rho, &ab, &lift(v, 2), &flip)?;
    let bv = eval_op(rho, &lift(b, 2), &lift(v, 2), &flip)?;
    let t2 = eval_op(l, &lift(a, 2), &bv, &var(0, 2))?;
    let av = eval_op(rho, &lift(a, 2), &lift(v, 2), &flip)?;
    let t3 = eval_op(r, &av, &lift(b, 2), &sum(&[0, 1], 2))?;
    Ok(t1.sub(&t2).sub(&t3))
}

fn mixed_tuples(first: &[GenIndex], second: &[GenIndex], third: &[GenIndex]) -> Vec<Vec<GenIndex>> {
    let mut out = Vec::new();
    for a in first {
        for b in second {
            for c in third {
                out.push(alloc::vec![a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out.sort_by_key(|t| t.iter().map(GenIndex::degree).sum::<i64>());
    out
}

/// The module identities for the module's declared kind.
pub fn check_module(alg: &ConformalAlgebra, m: &ConformalModule, ck: &Checker) -> Vec<CheckReport> {
    let ga = alg.gens.enumerate(ck.window);
    let gv = m.carrier.enumerate(ck.window);
    let vars = names(&["L", "M"]);
    let aav = mixed_tuples(&ga, &ga, &gv);
    let vaa = mixed_tuples(&gv, &ga, &ga);
    let ava = mixed_tuples(&ga, &gv, &ga);
    let mut out = Vec::new();
    if matches!(m.kind, ModuleKind::Assoc | ModuleKind::Poisson) {
        out.push(ck.run_tuples("module-assoc-left", &aav, &vars, &|t| assoc_left_residual(alg, m, &t[0], &t[1], &t[2])));
        out.push(ck.run_tuples("module-assoc-right", &vaa, &vars, &|t| assoc_right_residual(alg, m, &t[0], &t[1], &t[2])));
        out.push(ck.run_tuples("module-assoc-middle", &ava, &vars, &|t| assoc_middle_residual(m, &t[0], &t[1], &t[2])));
    }
    if matches!(m.kind, ModuleKind::Lie | ModuleKind::Poisson) {
        out.push(ck.run_tuples("module-lie", &aav, &vars, &|t| lie_module_residual(alg, m, &t[0], &t[1], &t[2])));
    }
    if m.kind == ModuleKind::Poisson {
        out.push(ck.run_tuples("module-bracket-product", &aav, &vars, &|t| poisson_module_first(alg, m, &t[0], &t[1], &t[2])));
        out.push(ck.run_tuples("module-product-bracket", &aav, &vars, &|t| poisson_module_second(alg, m, &t[0], &t[1], &t[2])));
        out.push(ck.run_tuples("module-product-action", &aav, &vars, &|t| poisson_module_third(alg, m, &t[0], &t[1], &t[2])));
    }
    out
}

struct NegDaggerRule(RuleRef);

impl Rule for NegDaggerRule {
    /// `(v, b) -> -b_{-L-D} v`.
    fn on_generators(&self, v: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly> {
        let bv = self.0.on_generators(b, v)?;
        Ok(bv.substitute(&[OpPoly::dagger_of(&[0], 1)], 1).neg())
    }
}

/// `A + V` with `(a+u) o_L (b+v) = a o_L b + a o_L v + u o_L b` and
/// `[(a+u)_L (b+v)] = [a_L b] + a_L v - b_{-L-D} u`, without checking the
/// module axioms. V's families are suffixed with `_v` if they clash with A's.
pub fn semidirect_product_unchecked(alg: &ConformalAlgebra, m: &ConformalModule) -> ConformalAlgebra {
    let clash = m.carrier.families.iter().any(|f| alg.gens.family(&f.name).is_some());
    let pairs: Vec<(Arc<str>, Arc<str>)> = if clash {
        m.carrier.families.iter().map(|f| (f.name.clone(), Arc::from(alloc::format!("{}_v", f.name).as_str()))).collect()
    } else {
        Vec::new()
    };
    let to_outer = Renaming::new(&pairs);
    let to_inner = to_outer.inverse();
    let carrier = to_outer.gens(&m.carrier);
    let wrap = |r: RuleRef| -> RuleRef { Arc::new(RenamedRule { inner: r, to_inner: to_inner.clone(), to_outer: to_outer.clone() }) };
    let a_set = alg.gens.clone();
    let v_set = carrier.clone();
    let zero = crate::algebra::rule::zero_rule();
    let route = |aa: Option<RuleRef>, av: Option<RuleRef>, va: Option<RuleRef>| -> RuleRef {
        let aa = aa.unwrap_or_else(|| zero.clone());
        let av = av.map(|r| wrap(r)).unwrap_or_else(|| zero.clone());
        let va = va.map(|r| wrap(r)).unwrap_or_else(|| zero.clone());
        let (a_set, v_set) = (a_set.clone(), v_set.clone());
        let all = BlockRule { blocks: alloc::vec![(a_set.union(&v_set), zero.clone())] };
        fn_rule(move |x, y| {
            // Unknown generators escape through the block rule.
            all.on_generators(x, y)?;
            match (a_set.contains(x), a_set.contains(y)) {
                (true, true) => aa.on_generators(x, y),
                (true, false) => av.on_generators(x, y),
                (false, true) => va.on_generators(x, y),
                (false, false) => Ok(LambdaPoly::zero(1)),
            }
        })
    };
    let product = alg.product.as_ref().map(|p| route(Some(p.clone()), m.left.clone(), m.right.clone()));
    let bracket = alg.bracket.as_ref().map(|b| {
        let neg: Option<RuleRef> = m.lie.clone().map(|r| Arc::new(NegDaggerRule(r)) as RuleRef);
        route(Some(b.clone()), m.lie.clone(), neg)
    });
    ConformalAlgebra {
        name: alloc::format!("{}|x{}", alg.name, m.name),
        gens: alg.gens.union(&carrier),
        product,
        bracket,
        commutative: false,
    }
}

/// Semidirect product after verifying the module axioms.
pub fn semidirect_product(alg: &ConformalAlgebra, m: &ConformalModule, ck: &Checker) -> EvalResult<ConformalAlgebra> {
    let reps = check_module(alg, m, ck);
    let failing: Vec<String> = reps.iter().filter(|r| !r.passed()).map(|r| r.name.clone()).collect();
    if !failing.is_empty() {
        return Err(EvalError::PreconditionFailed(alloc::format!("module: {}", failing.join(", "))));
    }
    Ok(semidirect_product_unchecked(alg, m))
}
