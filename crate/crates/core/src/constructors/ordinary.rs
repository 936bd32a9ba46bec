//! Ordinary (non-conformal) algebras on a generator basis, and the identity
//! checks for Poisson, Novikov, GD and PGD structures.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::runner::{tuples, Checker, Outcome};
use crate::algebra::{CheckReport, GeneratorSet};
use crate::error::EvalResult;
use crate::symcore::{GenIndex, LambdaPoly, ModElement};

/// A bilinear map given on pairs of basis elements.
pub trait Bilinear: Send + Sync {
    fn apply(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<ModElement>;
}

/// A linear map given on basis elements.
pub trait Linear: Send + Sync {
    fn apply(&self, a: &GenIndex) -> EvalResult<ModElement>;
}

pub struct FnBilinear<F>(pub F);

impl<F> Bilinear for FnBilinear<F>
where
    F: Fn(&GenIndex, &GenIndex) -> EvalResult<ModElement> + Send + Sync,
{
    fn apply(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<ModElement> {
        (self.0)(a, b)
    }
}

pub struct FnLinear<F>(pub F);

impl<F> Linear for FnLinear<F>
where
    F: Fn(&GenIndex) -> EvalResult<ModElement> + Send + Sync,
{
    fn apply(&self, a: &GenIndex) -> EvalResult<ModElement> {
        (self.0)(a)
    }
}

pub fn bilinear<F>(f: F) -> Arc<dyn Bilinear>
where
    F: Fn(&GenIndex, &GenIndex) -> EvalResult<ModElement> + Send + Sync + 'static,
{
    Arc::new(FnBilinear(f))
}

pub fn linear<F>(f: F) -> Arc<dyn Linear>
where
    F: Fn(&GenIndex) -> EvalResult<ModElement> + Send + Sync + 'static,
{
    Arc::new(FnLinear(f))
}

#[derive(Clone)]
pub struct OrdinaryAlgebra {
    pub name: String,
    pub basis: GeneratorSet,
    pub product: Option<Arc<dyn Bilinear>>,
    pub bracket: Option<Arc<dyn Bilinear>>,
    pub novikov: Option<Arc<dyn Bilinear>>,
    pub derivation: Option<Arc<dyn Linear>>,
    /// Commutative (Poisson) as opposed to noncommutative Poisson.
    pub commutative: bool,
}

impl OrdinaryAlgebra {
    pub fn new(name: &str, basis: GeneratorSet) -> Self {
        OrdinaryAlgebra {
            name: String::from(name),
            basis,
            product: None,
            bracket: None,
            novikov: None,
            derivation: None,
            commutative: true,
        }
    }
}

/// Extend a bilinear map to linear combinations (constant coefficients).
pub fn apply2(op: &dyn Bilinear, x: &ModElement, y: &ModElement) -> EvalResult<ModElement> {
    let mut out = ModElement::zero();
    for (g, _, c) in x.monomials() {
        for (h, _, k) in y.monomials() {
            out = out.add(&op.apply(g, h)?.scale(&(c * k)));
        }
    }
    Ok(out)
}

pub fn apply1(op: &dyn Linear, x: &ModElement) -> EvalResult<ModElement> {
    let mut out = ModElement::zero();
    for (g, _, c) in x.monomials() {
        out = out.add(&op.apply(g)?.scale(c));
    }
    Ok(out)
}

fn e(g: &GenIndex) -> ModElement {
    ModElement::generator(g.clone())
}

fn zero_op() -> Arc<dyn Bilinear> {
    bilinear(|_, _| Ok(ModElement::zero()))
}

fn res(m: ModElement) -> Outcome {
    Ok(LambdaPoly::from_mod(&m, 0))
}

/// Ordinary identities as residual functions on basis tuples.
pub mod identities {
    use super::*;

    pub fn associator(p: &dyn Bilinear, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> EvalResult<ModElement> {
        let l = apply2(p, &p.apply(a, b)?, &e(c))?;
        let r = apply2(p, &e(a), &p.apply(b, c)?)?;
        Ok(l.sub(&r))
    }

    pub fn commutator(p: &dyn Bilinear, a: &GenIndex, b: &GenIndex) -> EvalResult<ModElement> {
        Ok(p.apply(a, b)?.sub(&p.apply(b, a)?))
    }

    pub fn skew(br: &dyn Bilinear, a: &GenIndex, b: &GenIndex) -> EvalResult<ModElement> {
        Ok(br.apply(a, b)?.add(&br.apply(b, a)?))
    }

    /// `[a,[b,c]] - [[a,b],c] - [b,[a,c]]`.
    pub fn jacobi(br: &dyn Bilinear, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> EvalResult<ModElement> {
        let t1 = apply2(br, &e(a), &br.apply(b, c)?)?;
        let t2 = apply2(br, &br.apply(a, b)?, &e(c))?;
        let t3 = apply2(br, &e(b), &br.apply(a, c)?)?;
        Ok(t1.sub(&t2).sub(&t3))
    }

    /// `[a, b c] - [a,b] c - b [a,c]`.
    pub fn leibniz(p: &dyn Bilinear, br: &dyn Bilinear, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> EvalResult<ModElement> {
        let t1 = apply2(br, &e(a), &p.apply(b, c)?)?;
        let t2 = apply2(p, &br.apply(a, b)?, &e(c))?;
        let t3 = apply2(p, &e(b), &br.apply(a, c)?)?;
        Ok(t1.sub(&t2).sub(&t3))
    }

    /// `(a*b)*c - (a*c)*b`.
    pub fn novikov_right_commutative(n: &dyn Bilinear, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> EvalResult<ModElement> {
        Ok(apply2(n, &n.apply(a, b)?, &e(c))?.sub(&apply2(n, &n.apply(a, c)?, &e(b))?))
    }

    /// `(a*b)*c - a*(b*c) - (b*a)*c + b*(a*c)`.
    pub fn novikov_left_symmetric(n: &dyn Bilinear, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> EvalResult<ModElement> {
        let l = apply2(n, &n.apply(a, b)?, &e(c))?.sub(&apply2(n, &e(a), &n.apply(b, c)?)?);
        let r = apply2(n, &n.apply(b, a)?, &e(c))?.sub(&apply2(n, &e(b), &n.apply(a, c)?)?);
        Ok(l.sub(&r))
    }

    /// `[a*b,c] + [a,b]*c - a*[b,c] - [a*c,b] - [a,c]*b`.
    pub fn gd_condition(n: &dyn Bilinear, br: &dyn Bilinear, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> EvalResult<ModElement> {
        let t1 = apply2(br, &n.apply(a, b)?, &e(c))?;
        let t2 = apply2(n, &br.apply(a, b)?, &e(c))?;
        let t3 = apply2(n, &e(a), &br.apply(b, c)?)?;
        let t4 = apply2(br, &n.apply(a, c)?, &e(b))?;
        let t5 = apply2(n, &br.apply(a, c)?, &e(b))?;
        Ok(t1.add(&t2).sub(&t3).sub(&t4).sub(&t5))
    }

    /// `(b o c)*a - b o (c*a)`.
    pub fn pgd_first(p: &dyn Bilinear, n: &dyn Bilinear, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> EvalResult<ModElement> {
        Ok(apply2(n, &p.apply(b, c)?, &e(a))?.sub(&apply2(p, &e(b), &n.apply(c, a)?)?))
    }

    /// `b o (c*a) - (b*a) o c`.
    pub fn pgd_second(p: &dyn Bilinear, n: &dyn Bilinear, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> EvalResult<ModElement> {
        Ok(apply2(p, &e(b), &n.apply(c, a)?)?.sub(&apply2(p, &n.apply(b, a)?, &e(c))?))
    }

    /// `a*(b o c) - (a*b) o c - b o (a*c)`.
    pub fn pgd_third(p: &dyn Bilinear, n: &dyn Bilinear, a: &GenIndex, b: &GenIndex, c: &GenIndex) -> EvalResult<ModElement> {
        let t1 = apply2(n, &e(a), &p.apply(b, c)?)?;
        let t2 = apply2(p, &n.apply(a, b)?, &e(c))?;
        let t3 = apply2(p, &e(b), &n.apply(a, c)?)?;
        Ok(t1.sub(&t2).sub(&t3))
    }

    /// `D(a o b) - D(a) o b - a o D(b)`.
    pub fn derivation(op: &dyn Bilinear, d: &dyn Linear, a: &GenIndex, b: &GenIndex) -> EvalResult<ModElement> {
        let l = apply1(d, &op.apply(a, b)?)?;
        let r1 = apply2(op, &d.apply(a)?, &e(b))?;
        let r2 = apply2(op, &e(a), &d.apply(b)?)?;
        Ok(l.sub(&r1).sub(&r2))
    }
}

use identities as id;

fn run2(ck: &Checker, name: &str, gens: &[GenIndex], f: &(dyn Fn(&GenIndex, &GenIndex) -> EvalResult<ModElement> + Sync)) -> CheckReport {
    let ts = tuples(gens, 2);
    ck.run_tuples(name, &ts, &[], &|t| res(f(&t[0], &t[1])?))
}

fn run3(
    ck: &Checker,
    name: &str,
    gens: &[GenIndex],
    f: &(dyn Fn(&GenIndex, &GenIndex, &GenIndex) -> EvalResult<ModElement> + Sync),
) -> CheckReport {
    let ts = tuples(gens, 3);
    ck.run_tuples(name, &ts, &[], &|t| res(f(&t[0], &t[1], &t[2])?))
}

fn product_of(ord: &OrdinaryAlgebra) -> Arc<dyn Bilinear> {
    ord.product.clone().unwrap_or_else(zero_op)
}

fn bracket_of(ord: &OrdinaryAlgebra) -> Arc<dyn Bilinear> {
    ord.bracket.clone().unwrap_or_else(zero_op)
}

fn novikov_of(ord: &OrdinaryAlgebra) -> Arc<dyn Bilinear> {
    ord.novikov.clone().unwrap_or_else(zero_op)
}

/// Ordinary (noncommutative) Poisson axioms: associativity, commutativity for
/// the commutative kind, skew-symmetry, Jacobi, Leibniz.
pub fn check_ordinary_poisson(ord: &OrdinaryAlgebra, ck: &Checker) -> Vec<CheckReport> {
    let gens = ord.basis.enumerate(ck.window);
    let p = product_of(ord);
    let br = bracket_of(ord);
    let (p, br) = (&*p, &*br);
    let mut out = alloc::vec![run3(ck, "ordinary-associativity", &gens, &|a, b, c| id::associator(p, a, b, c))];
    if ord.commutative {
        out.push(run2(ck, "ordinary-commutativity", &gens, &|a, b| id::commutator(p, a, b)));
    }
    out.push(run2(ck, "ordinary-skew-symmetry", &gens, &|a, b| id::skew(br, a, b)));
    out.push(run3(ck, "ordinary-jacobi", &gens, &|a, b, c| id::jacobi(br, a, b, c)));
    out.push(run3(ck, "ordinary-leibniz", &gens, &|a, b, c| id::leibniz(p, br, a, b, c)));
    out
}

/// Novikov axioms, Lie axioms and the GD compatibility condition.
pub fn gd_checks(ord: &OrdinaryAlgebra, ck: &Checker) -> Vec<CheckReport> {
    let gens = ord.basis.enumerate(ck.window);
    let n = novikov_of(ord);
    let br = bracket_of(ord);
    let (n, br) = (&*n, &*br);
    alloc::vec![
        run3(ck, "novikov-right-commutativity", &gens, &|a, b, c| id::novikov_right_commutative(n, a, b, c)),
        run3(ck, "novikov-left-symmetry", &gens, &|a, b, c| id::novikov_left_symmetric(n, a, b, c)),
        run2(ck, "ordinary-skew-symmetry", &gens, &|a, b| id::skew(br, a, b)),
        run3(ck, "ordinary-jacobi", &gens, &|a, b, c| id::jacobi(br, a, b, c)),
        run3(ck, "gd-compatibility", &gens, &|a, b, c| id::gd_condition(n, br, a, b, c)),
    ]
}

/// GD checks plus ordinary Poisson axioms plus the two mixed identities
/// relating the Novikov product to the associative product.
pub fn pgd_checks(ord: &OrdinaryAlgebra, ck: &Checker) -> Vec<CheckReport> {
    let gens = ord.basis.enumerate(ck.window);
    let mut out = gd_checks(ord, ck);
    for r in check_ordinary_poisson(ord, ck) {
        if !out.iter().any(|o| o.name == r.name) {
            out.push(r);
        }
    }
    let n = novikov_of(ord);
    let p = product_of(ord);
    let (n, p) = (&*n, &*p);
    out.push(run3(ck, "pgd-right-module-left", &gens, &|a, b, c| id::pgd_first(p, n, a, b, c)));
    out.push(run3(ck, "pgd-right-module-right", &gens, &|a, b, c| id::pgd_second(p, n, a, b, c)));
    out.push(run3(ck, "pgd-derivation-law", &gens, &|a, b, c| id::pgd_third(p, n, a, b, c)));
    out
}

/// Merge sub-reports into one, labelling witnesses by sub-check.
pub fn merge(name: &str, parts: Vec<CheckReport>) -> CheckReport {
    let mut out = CheckReport::new(name);
    let mut failing: Vec<String> = Vec::new();
    for mut p in parts {
        for w in p.witnesses.iter_mut() {
            w.label = Some(p.name.clone());
        }
        if !p.passed() {
            failing.push(p.name.clone());
        }
        p.note = None;
        out.absorb(p);
    }
    if !failing.is_empty() {
        out.note = Some(alloc::format!("failing: {}", failing.join(", ")));
    }
    out
}

pub fn check_gd(ord: &OrdinaryAlgebra, ck: &Checker) -> CheckReport {
    merge("gd", gd_checks(ord, ck))
}

pub fn check_pgd(ord: &OrdinaryAlgebra, ck: &Checker) -> CheckReport {
    merge("pgd", pgd_checks(ord, ck))
}

/// `D` is a derivation of the product and of the bracket.
pub fn check_derivation(ord: &OrdinaryAlgebra, ck: &Checker) -> CheckReport {
    let gens = ord.basis.enumerate(ck.window);
    let Some(d) = ord.derivation.clone() else {
        return CheckReport::failed_with("derivation", String::from("no derivation supplied"));
    };
    let p = product_of(ord);
    let br = bracket_of(ord);
    let (d, p, br) = (&*d, &*p, &*br);
    merge(
        "derivation",
        alloc::vec![
            run2(ck, "derivation-of-product", &gens, &|a, b| id::derivation(p, d, a, b)),
            run2(ck, "derivation-of-bracket", &gens, &|a, b| id::derivation(br, d, a, b)),
        ],
    )
}
