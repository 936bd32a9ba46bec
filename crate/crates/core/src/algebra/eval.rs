//! Sesquilinear extension of a rule to arbitrary arguments.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::rule::Rule;
use crate::error::EvalResult;
use crate::symcore::{GenIndex, LambdaPoly, ModElement, OpPoly, Scalar};

/// `a_nu b` where `a`, `b` are polynomials over a common context and `nu` is
/// a linear form over that context (possibly containing `D`, which then acts
/// on the result). Uses `(D a)_nu b = -nu a_nu b` and
/// `a_nu (D b) = (D + nu) a_nu b`.
pub fn eval_op(rule: &dyn Rule, a: &LambdaPoly, b: &LambdaPoly, nu: &OpPoly) -> EvalResult<LambdaPoly> {
    let n = a.nvars();
    assert_eq!(b.nvars(), n, "context mismatch");
    assert_eq!(nu.nvars(), n, "context mismatch");
    // Group by (gen_a, d_a, gen_b, d_b), collecting the scalar polynomial.
    let mut groups: BTreeMap<(&GenIndex, u32, &GenIndex, u32), OpPoly> = BTreeMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let e = ma.lam.iter().zip(mb.lam.iter()).map(|(x, y)| x + y).collect();
            groups
                .entry((&ma.gen, ma.d, &mb.gen, mb.d))
                .or_insert_with(|| OpPoly::zero(n))
                .add_term(e, 0, ca * cb);
        }
    }
    let mut base_cache: BTreeMap<(&GenIndex, &GenIndex), LambdaPoly> = BTreeMap::new();
    let minus_nu = nu.neg();
    let d_plus_nu = OpPoly::d(n).add(nu);
    let mut left_pows: Vec<OpPoly> = alloc::vec![OpPoly::one(n)];
    let mut right_pows: Vec<OpPoly> = alloc::vec![OpPoly::one(n)];
    let mut out = LambdaPoly::zero(n);
    for ((ga, da, gb, db), coef) in groups {
        if coef.is_zero() {
            continue;
        }
        if !base_cache.contains_key(&(ga, gb)) {
            let v = rule.on_generators(ga, gb)?;
            base_cache.insert((ga, gb), v.substitute(core::slice::from_ref(nu), n));
        }
        let base = &base_cache[&(ga, gb)];
        if base.is_zero() {
            continue;
        }
        while left_pows.len() <= da as usize {
            let next = left_pows.last().unwrap().mul(&minus_nu);
            left_pows.push(next);
        }
        while right_pows.len() <= db as usize {
            let next = right_pows.last().unwrap().mul(&d_plus_nu);
            right_pows.push(next);
        }
        let op = coef.mul(&left_pows[da as usize]).mul(&right_pows[db as usize]);
        out.add_assign(&base.apply_op(&op));
    }
    Ok(out)
}

/// `a_L b` for module elements, as a polynomial in one variable.
pub fn eval_elements(rule: &dyn Rule, a: &ModElement, b: &ModElement) -> EvalResult<LambdaPoly> {
    eval_op(rule, &LambdaPoly::from_mod(a, 1), &LambdaPoly::from_mod(b, 1), &OpPoly::var(0, 1))
}

/// A generator as a constant polynomial over `n` variables.
pub fn lift(g: &GenIndex, n: usize) -> LambdaPoly {
    LambdaPoly::generator(g.clone(), n)
}

/// The variable `i` of an `n`-variable context, as a linear form.
pub fn var(i: usize, n: usize) -> OpPoly {
    OpPoly::var(i, n)
}

/// `sum of vars`.
pub fn sum(vars: &[usize], n: usize) -> OpPoly {
    OpPoly::sum_of(vars, n)
}

/// `-(sum of vars) - D`.
pub fn dagger(vars: &[usize], n: usize) -> OpPoly {
    OpPoly::dagger_of(vars, n)
}

/// The `n`-th products `a_(j) b = j! [L^j] a_L b` that are nonzero.
pub fn nth_products(rule: &dyn Rule, a: &GenIndex, b: &GenIndex) -> EvalResult<Vec<(u32, ModElement)>> {
    let v = rule.on_generators(a, b)?;
    let top = v.degree_in(0);
    let mut out = Vec::new();
    for j in 0..=top {
        let m = v.extract_nth(0, j).to_mod();
        if !m.is_zero() {
            out.push((j, m));
        }
    }
    Ok(out)
}

/// Rebuild `a_L b = sum L^j / j! a_(j) b` from n-th products.
pub fn from_nth_products(prods: &[(u32, ModElement)]) -> LambdaPoly {
    let mut out = LambdaPoly::zero(1);
    for (j, m) in prods {
        let inv = Scalar::factorial(*j).recip();
        for (g, d, c) in m.monomials() {
            out.add_mono(smallvec::smallvec![*j], g.clone(), d, c * &inv);
        }
    }
    out
}
