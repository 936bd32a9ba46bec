//! The defining identities of (noncommutative) Poisson conformal algebras,
//! evaluated exactly on generator tuples.

use alloc::vec::Vec;

use super::eval::{dagger, eval_op, lift, nth_products, sum, var};
use super::report::CheckReport;
use super::rule::Rule;
use super::runner::{names, tuples, Checker, Outcome};
use super::ConformalAlgebra;
use crate::symcore::{GenIndex, LambdaPoly, Scalar};

/// `a o_L (b o_M c) - (a o_L b) o_{L+M} c`.
pub fn associativity_residual(p: &dyn Rule, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> Outcome {
    let bc = eval_op(p, &lift(b, 2), &lift(c, 2), &var(1, 2))?;
    let left = eval_op(p, &lift(a, 2), &bc, &var(0, 2))?;
    let ab = eval_op(p, &lift(a, 2), &lift(b, 2), &var(0, 2))?;
    let right = eval_op(p, &ab, &lift(c, 2), &sum(&[0, 1], 2))?;
    Ok(left.sub(&right))
}

/// `a o_L b - b o_{-L-D} a`.
pub fn commutativity_residual(p: &dyn Rule, a: &GenIndex, b: &GenIndex) -> Outcome {
    let ab = eval_op(p, &lift(a, 1), &lift(b, 1), &var(0, 1))?;
    let ba = eval_op(p, &lift(b, 1), &lift(a, 1), &dagger(&[0], 1))?;
    Ok(ab.sub(&ba))
}

/// `[a_L b] + [b_{-L-D} a]`.
pub fn skew_residual(br: &dyn Rule, a: &GenIndex, b: &GenIndex) -> Outcome {
    let ab = eval_op(br, &lift(a, 1), &lift(b, 1), &var(0, 1))?;
    let ba = eval_op(br, &lift(b, 1), &lift(a, 1), &dagger(&[0], 1))?;
    Ok(ab.add(&ba))
}

/// `[a_L [b_M c]] - [[a_L b]_{L+M} c] - [b_M [a_L c]]`.
pub fn jacobi_residual(br: &dyn Rule, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> Outcome {
    let bc = eval_op(br, &lift(b, 2), &lift(c, 2), &var(1, 2))?;
    let t1 = eval_op(br, &lift(a, 2), &bc, &var(0, 2))?;
    let ab = eval_op(br, &lift(a, 2), &lift(b, 2), &var(0, 2))?;
    let t2 = eval_op(br, &ab, &lift(c, 2), &sum(&[0, 1], 2))?;
    let ac = eval_op(br, &lift(a, 2), &lift(c, 2), &var(0, 2))?;
    let t3 = eval_op(br, &lift(b, 2), &ac, &var(1, 2))?;
    Ok(t1.sub(&t2).sub(&t3))
}

/// `[a_L (b o_M c)] - [a_L b] o_{L+M} c - b o_M [a_L c]`.
pub fn leibniz_residual(p: &dyn Rule, br: &dyn Rule, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> Outcome {
    let bc = eval_op(p, &lift(b, 2), &lift(c, 2), &var(1, 2))?;
    let t1 = eval_op(br, &lift(a, 2), &bc, &var(0, 2))?;
    let ab = eval_op(br, &lift(a, 2), &lift(b, 2), &var(0, 2))?;
    let t2 = eval_op(p, &ab, &lift(c, 2), &sum(&[0, 1], 2))?;
    let ac = eval_op(br, &lift(a, 2), &lift(c, 2), &var(0, 2))?;
    let t3 = eval_op(p, &lift(b, 2), &ac, &var(1, 2))?;
    Ok(t1.sub(&t2).sub(&t3))
}

/// Jacobi through n-th products:
/// `a_(m)(b_(n) c) - b_(n)(a_(m) c) - sum_j C(m,j) (a_(j) b)_(m+n-j) c`,
/// for all `m, n` up to the degrees that occur. Independent of
/// [`jacobi_residual`]; returns the first nonzero residual as a constant
/// polynomial.
pub fn jacobi_nth_residual(br: &dyn Rule, a: &GenIndex, b: &GenIndex, c: &GenIndex, top: u32) -> Outcome {
    use super::eval::eval_elements;
    use crate::symcore::ModElement;
    let nth = |x: &ModElement, y: &ModElement, n: u32| -> Outcome {
        let v = eval_elements(br, x, y)?;
        Ok(v.extract_nth(0, n))
    };
    let ga = ModElement::generator(a.clone());
    let gb = ModElement::generator(b.clone());
    let gc = ModElement::generator(c.clone());
    for m in 0..=top {
        for n in 0..=top {
            let bc = nth(&gb, &gc, n)?.to_mod();
            let mut res = nth(&ga, &bc, m)?;
            let ac = nth(&ga, &gc, m)?.to_mod();
            res = res.sub(&nth(&gb, &ac, n)?);
            for (j, abj) in nth_products(br, a, b)? {
                if j > m {
                    continue;
                }
                let t = nth(&abj, &gc, m + n - j)?;
                res.add_scaled(&t, &-Scalar::binomial(m as i64, j));
            }
            if !res.is_zero() {
                return Ok(res);
            }
        }
    }
    Ok(LambdaPoly::zero(0))
}

fn missing(name: &str, what: &str) -> CheckReport {
    CheckReport::failed_with(name, alloc::format!("the algebra has no {}", what))
}

pub fn check_associativity(alg: &ConformalAlgebra, ck: &Checker) -> CheckReport {
    let Some(p) = alg.product.as_deref() else { return missing("associativity", "product") };
    let ts = tuples(&alg.gens.enumerate(ck.window), 3);
    ck.run_tuples("associativity", &ts, &names(&["L", "M"]), &|t| associativity_residual(p, &t[0], &t[1], &t[2]))
}

pub fn check_commutativity(alg: &ConformalAlgebra, ck: &Checker) -> CheckReport {
    let Some(p) = alg.product.as_deref() else { return missing("commutativity", "product") };
    let ts = tuples(&alg.gens.enumerate(ck.window), 2);
    ck.run_tuples("commutativity", &ts, &names(&["L"]), &|t| commutativity_residual(p, &t[0], &t[1]))
}

pub fn check_skew_symmetry(alg: &ConformalAlgebra, ck: &Checker) -> CheckReport {
    let Some(br) = alg.bracket.as_deref() else { return missing("skew-symmetry", "bracket") };
    let ts = tuples(&alg.gens.enumerate(ck.window), 2);
    ck.run_tuples("skew-symmetry", &ts, &names(&["L"]), &|t| skew_residual(br, &t[0], &t[1]))
}

pub fn check_jacobi(alg: &ConformalAlgebra, ck: &Checker) -> CheckReport {
    let Some(br) = alg.bracket.as_deref() else { return missing("jacobi", "bracket") };
    let ts = tuples(&alg.gens.enumerate(ck.window), 3);
    ck.run_tuples("jacobi", &ts, &names(&["L", "M"]), &|t| jacobi_residual(br, &t[0], &t[1], &t[2]))
}

pub fn check_leibniz(alg: &ConformalAlgebra, ck: &Checker) -> CheckReport {
    let (Some(p), Some(br)) = (alg.product.as_deref(), alg.bracket.as_deref()) else {
        return missing("leibniz", "product or bracket");
    };
    let ts = tuples(&alg.gens.enumerate(ck.window), 3);
    ck.run_tuples("leibniz", &ts, &names(&["L", "M"]), &|t| leibniz_residual(p, br, &t[0], &t[1], &t[2]))
}

/// The full suite for the algebra's declared kind: associativity,
/// commutativity (commutative kind only), skew-symmetry, Jacobi, Leibniz.
pub fn check_poisson(alg: &ConformalAlgebra, ck: &Checker) -> Vec<CheckReport> {
    let mut out = alloc::vec![check_associativity(alg, ck)];
    if alg.commutative {
        out.push(check_commutativity(alg, ck));
    }
    out.push(check_skew_symmetry(alg, ck));
    out.push(check_jacobi(alg, ck));
    out.push(check_leibniz(alg, ck));
    out
}

/// Lie conformal part only: skew-symmetry and Jacobi.
pub fn check_lie(alg: &ConformalAlgebra, ck: &Checker) -> Vec<CheckReport> {
    alloc::vec![check_skew_symmetry(alg, ck), check_jacobi(alg, ck)]
}
