//! The coefficient algebra: modes `a_n` (`n` any integer) of the generators,
//! with `[a_m, b_n] = sum_j C(m,j) (a_(j) b)_{m+n-j}` and the analogous
//! product, modulo `(D a)_n + n a_{n-1}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spin::Mutex;

use crate::algebra::runner::{Outcome, Runner};
use crate::algebra::{eval_elements, nth_products, CheckReport, ConformalAlgebra, Rule};
use crate::error::{EvalError, EvalResult};
use crate::symcore::{DPoly, GenIndex, LambdaPoly, ModElement, Scalar};

/// A finite linear combination of modes `g_n`, with no `D` left.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct CoeffElement {
    terms: BTreeMap<(GenIndex, i64), Scalar>,
}

impl CoeffElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn mode(g: GenIndex, n: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(g, n, Scalar::ONE);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &GenIndex, n: i64) -> Scalar {
        self.terms.get(&(g.clone(), n)).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn add_term(&mut self, g: GenIndex, n: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (g, n);
        let v = self.terms.entry(key.clone()).or_insert(Scalar::ZERO);
        *v += &c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &CoeffElement, c: &Scalar) {
        for ((g, n), v) in &other.terms {
            self.add_term(g.clone(), *n, v * c);
        }
    }

    pub fn add(&self, other: &CoeffElement) -> CoeffElement {
        let mut r = self.clone();
        r.add_scaled(other, &Scalar::ONE);
        r
    }

    pub fn sub(&self, other: &CoeffElement) -> CoeffElement {
        let mut r = self.clone();
        r.add_scaled(other, &-Scalar::ONE);
        r
    }

    pub fn scale(&self, c: &Scalar) -> CoeffElement {
        let mut r = Self::zero();
        r.add_scaled(self, c);
        r
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GenIndex, i64, &Scalar)> {
        self.terms.iter().map(|((g, n), c)| (g, *n, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Modes appear as generators named `g_(n)`, so a coefficient element can
    /// travel in a check report as a constant polynomial.
    pub fn to_lambda(&self) -> LambdaPoly {
        let mut out = LambdaPoly::zero(0);
        for (g, n, c) in self.iter() {
            out.add_mono(Default::default(), mode_symbol(g, n), 0, c.clone());
        }
        out
    }
}

impl fmt::Display for CoeffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_lambda().render(&[]))
    }
}

impl fmt::Debug for CoeffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn mode_symbol(g: &GenIndex, n: i64) -> GenIndex {
    GenIndex::named(&format!("{}_({})", g, n))
}

/// `(D^k g)_n = (-1)^k n (n-1) ... (n-k+1) g_{n-k}`, summed over a formal
/// combination of module elements at given modes.
pub fn coeff_normalize(parts: &[(ModElement, i64)]) -> CoeffElement {
    let mut out = CoeffElement::zero();
    for (x, n) in parts {
        normalize_into(&mut out, x, *n, &Scalar::ONE);
    }
    out
}

fn normalize_into(out: &mut CoeffElement, x: &ModElement, n: i64, scale: &Scalar) {
    for (g, k, c) in x.monomials() {
        let mut f = Scalar::falling(n, k);
        if k % 2 == 1 {
            f = -f;
        }
        out.add_term(g.clone(), n - k as i64, &(c * &f) * scale);
    }
}

/// Which of the two operations of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Op {
    Product,
    Bracket,
}

impl Op {
    fn rule<'a>(self, alg: &'a ConformalAlgebra) -> EvalResult<&'a dyn Rule> {
        let r = match self {
            Op::Product => alg.product.as_deref(),
            Op::Bracket => alg.bracket.as_deref(),
        };
        r.ok_or_else(|| {
            EvalError::MissingStructure(String::from(match self {
                Op::Product => "product",
                Op::Bracket => "bracket",
            }))
        })
    }
}

type NthTable = Arc<Vec<(u32, ModElement)>>;

/// Operations of the coefficient algebra of `alg`, with the n-th products of
/// generator pairs memoized.
pub struct CoeffAlgebra<'a> {
    pub alg: &'a ConformalAlgebra,
    cache: Mutex<BTreeMap<(Op, GenIndex, GenIndex), NthTable>>,
}

impl<'a> CoeffAlgebra<'a> {
    pub fn new(alg: &'a ConformalAlgebra) -> Self {
        CoeffAlgebra { alg, cache: Mutex::new(BTreeMap::new()) }
    }

    fn nth(&self, op: Op, a: &GenIndex, b: &GenIndex) -> EvalResult<NthTable> {
        let key = (op, a.clone(), b.clone());
        if let Some(t) = self.cache.lock().get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(nth_products(op.rule(self.alg)?, a, b)?);
        self.cache.lock().insert(key, t.clone());
        Ok(t)
    }

    /// `a_m . b_n` for generators.
    pub fn on_modes(&self, op: Op, a: &GenIndex, m: i64, b: &GenIndex, n: i64) -> EvalResult<CoeffElement> {
        let mut out = CoeffElement::zero();
        for (j, x) in self.nth(op, a, b)?.iter() {
            normalize_into(&mut out, x, m + n - *j as i64, &Scalar::binomial(m, *j));
        }
        Ok(out)
    }

    pub fn apply(&self, op: Op, x: &CoeffElement, y: &CoeffElement) -> EvalResult<CoeffElement> {
        let mut out = CoeffElement::zero();
        for (a, m, c) in x.iter() {
            for (b, n, d) in y.iter() {
                out.add_scaled(&self.on_modes(op, a, m, b, n)?, &(c * d));
            }
        }
        Ok(out)
    }

    pub fn bracket(&self, x: &CoeffElement, y: &CoeffElement) -> EvalResult<CoeffElement> {
        self.apply(Op::Bracket, x, y)
    }

    pub fn product(&self, x: &CoeffElement, y: &CoeffElement) -> EvalResult<CoeffElement> {
        self.apply(Op::Product, x, y)
    }

    /// `D(a_n) = -n a_{n-1}`.
    pub fn derivation(&self, x: &CoeffElement) -> CoeffElement {
        let mut out = CoeffElement::zero();
        for (g, n, c) in x.iter() {
            out.add_term(g.clone(), n - 1, c * &Scalar::from_int(-n));
        }
        out
    }
}

/// `[a_m, b_n]` in the coefficient algebra.
pub fn coeff_bracket(alg: &ConformalAlgebra, a: (&GenIndex, i64), b: (&GenIndex, i64)) -> EvalResult<CoeffElement> {
    CoeffAlgebra::new(alg).on_modes(Op::Bracket, a.0, a.1, b.0, b.1)
}

/// `a_m o b_n` in the coefficient algebra.
pub fn coeff_product(alg: &ConformalAlgebra, a: (&GenIndex, i64), b: (&GenIndex, i64)) -> EvalResult<CoeffElement> {
    CoeffAlgebra::new(alg).on_modes(Op::Product, a.0, a.1, b.0, b.1)
}

/// The same operation for arbitrary module elements, computed directly from
/// the sesquilinear extension of the rule (not through the mode table).
pub fn on_elements(alg: &ConformalAlgebra, op: Op, x: &ModElement, m: i64, y: &ModElement, n: i64) -> EvalResult<CoeffElement> {
    let v = eval_elements(op.rule(alg)?, x, y)?;
    let mut out = CoeffElement::zero();
    for j in 0..=v.degree_in(0) {
        let xy = v.extract_nth(0, j).to_mod();
        normalize_into(&mut out, &xy, m + n - j as i64, &Scalar::binomial(m, j));
    }
    Ok(out)
}

/// Modes `lo..=hi` of the generators of degree at most `window`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModeWindow {
    pub lo: i64,
    pub hi: i64,
    pub window: i64,
}

impl ModeWindow {
    pub fn new(lo: i64, hi: i64, window: i64) -> Self {
        assert!(lo <= hi, "empty mode window");
        ModeWindow { lo, hi, window }
    }

    pub fn basis(&self, alg: &ConformalAlgebra) -> Vec<(GenIndex, i64)> {
        let mut out = Vec::new();
        for g in alg.gens.enumerate(self.window) {
            for n in self.lo..=self.hi {
                out.push((g.clone(), n));
            }
        }
        out
    }
}

type ModeResidual<'r> = dyn Fn(&[(GenIndex, i64)]) -> EvalResult<CoeffElement> + Sync + 'r;

fn run_modes(name: &str, runner: &dyn Runner, tuples: &[Vec<(GenIndex, i64)>], residual: &ModeResidual) -> CheckReport {
    let outcomes = runner.run(tuples.len(), &|i| -> Outcome { residual(&tuples[i]).map(|r| r.to_lambda()) });
    let mut rep = CheckReport::new(name);
    for (t, o) in tuples.iter().zip(outcomes) {
        let syms: Vec<GenIndex> = t.iter().map(|(g, n)| mode_symbol(g, *n)).collect();
        rep.record(&syms, o, &[], None);
    }
    rep
}

fn mode_tuples(basis: &[(GenIndex, i64)], k: usize) -> Vec<Vec<(GenIndex, i64)>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * basis.len());
        for t in &out {
            for u in basis {
                let mut v: Vec<(GenIndex, i64)> = t.clone();
                v.push(u.clone());
                next.push(v);
            }
        }
        out = next;
    }
    // graded by generator degree plus |mode|
    out.sort_by_key(|t| t.iter().map(|(g, n)| g.degree() + n.abs()).sum::<i64>());
    out
}

fn el(u: &(GenIndex, i64)) -> CoeffElement {
    CoeffElement::mode(u.0.clone(), u.1)
}

/// Antisymmetry, Jacobi, associativity, commutativity (commutative kind only)
/// and Leibniz of the coefficient algebra on all mode tuples of the window.
pub fn check_coeff_poisson(alg: &ConformalAlgebra, win: &ModeWindow, runner: &dyn Runner) -> Vec<CheckReport> {
    let ca = CoeffAlgebra::new(alg);
    let basis = win.basis(alg);
    let pairs = mode_tuples(&basis, 2);
    let triples = mode_tuples(&basis, 3);
    let mut out = Vec::new();
    out.push(run_modes("coeff-antisymmetry", runner, &pairs, &|t| {
        let (u, v) = (el(&t[0]), el(&t[1]));
        Ok(ca.bracket(&u, &v)?.add(&ca.bracket(&v, &u)?))
    }));
    out.push(run_modes("coeff-jacobi", runner, &triples, &|t| {
        let (u, v, w) = (el(&t[0]), el(&t[1]), el(&t[2]));
        let a = ca.bracket(&u, &ca.bracket(&v, &w)?)?;
        let b = ca.bracket(&ca.bracket(&u, &v)?, &w)?;
        let c = ca.bracket(&v, &ca.bracket(&u, &w)?)?;
        Ok(a.sub(&b).sub(&c))
    }));
    out.push(run_modes("coeff-associativity", runner, &triples, &|t| {
        let (u, v, w) = (el(&t[0]), el(&t[1]), el(&t[2]));
        Ok(ca.product(&u, &ca.product(&v, &w)?)?.sub(&ca.product(&ca.product(&u, &v)?, &w)?))
    }));
    if alg.commutative {
        out.push(run_modes("coeff-commutativity", runner, &pairs, &|t| {
            let (u, v) = (el(&t[0]), el(&t[1]));
            Ok(ca.product(&u, &v)?.sub(&ca.product(&v, &u)?))
        }));
    }
    out.push(run_modes("coeff-leibniz", runner, &triples, &|t| {
        let (u, v, w) = (el(&t[0]), el(&t[1]), el(&t[2]));
        let a = ca.bracket(&u, &ca.product(&v, &w)?)?;
        let b = ca.product(&ca.bracket(&u, &v)?, &w)?;
        let c = ca.product(&v, &ca.bracket(&u, &w)?)?;
        Ok(a.sub(&b).sub(&c))
    }));
    out
}

/// `D` is a derivation of both operations of the coefficient algebra.
pub fn coeff_derivation_check(alg: &ConformalAlgebra, win: &ModeWindow, runner: &dyn Runner) -> CheckReport {
    let ca = CoeffAlgebra::new(alg);
    let pairs = mode_tuples(&win.basis(alg), 2);
    let ops: Vec<Op> = [Op::Product, Op::Bracket].into_iter().filter(|op| op.rule(alg).is_ok()).collect();
    run_modes("coeff-derivation", runner, &pairs, &|t| {
        let (u, v) = (el(&t[0]), el(&t[1]));
        let mut res = CoeffElement::zero();
        for &op in &ops {
            let lhs = ca.derivation(&ca.apply(op, &u, &v)?);
            let rhs = ca.apply(op, &ca.derivation(&u), &v)?.add(&ca.apply(op, &u, &ca.derivation(&v))?);
            res = res.add(&lhs.sub(&rhs));
        }
        Ok(res)
    })
}

/// `sum_i C(m,i) C(n,i'+j'-i) C(i,i') = C(m,i') C(m+n-i',j')` for all
/// `m, n` in the ranges and all `i', j'` up to `m + n + 1`.
pub fn binomial_identity_check(ms: core::ops::RangeInclusive<i64>, ns: core::ops::RangeInclusive<i64>) -> CheckReport {
    let mut rep = CheckReport::new("binomial-identity");
    let b = |t: i64, k: i64| if k < 0 { Scalar::ZERO } else { Scalar::binomial(t, k as u32) };
    for m in ms {
        for n in ns.clone() {
            for ip in 0..=m + n + 1 {
                for jp in 0..=m + n + 1 {
                    let mut lhs = Scalar::ZERO;
                    for i in 0..=m {
                        lhs += &(&b(m, i) * &b(n, ip + jp - i)) * &b(i, ip);
                    }
                    let rhs = &b(m, ip) * &b(m + n - ip, jp);
                    let diff = &lhs - &rhs;
                    let mut r = LambdaPoly::zero(0);
                    r.add_mono(Default::default(), GenIndex::named("1"), 0, diff);
                    rep.record(&[], Ok(r), &[], Some(format!("m={} n={} i'={} j'={}", m, n, ip, jp)));
                }
            }
        }
    }
    rep
}

fn random_element(rng: &mut ChaCha8Rng, gens: &[GenIndex], max_d: u32) -> ModElement {
    let mut x = ModElement::zero();
    let terms = 1 + rng.next_u32() % 3;
    for _ in 0..terms {
        let g = gens[rng.next_u32() as usize % gens.len()].clone();
        let k = rng.next_u32() % (max_d + 1);
        let c = Scalar::from_int((rng.next_u32() % 7) as i64 - 3);
        x.add_term(g, &DPoly::monomial(c, k));
    }
    x
}

/// The relations `(c a)_n = c a_n`, `(a+b)_n = a_n + b_n` and
/// `(D a)_n = -n a_{n-1}` are compatible with the operations: computing an
/// operation directly on module elements agrees with computing it on their
/// normal forms. Covers every generator pair with one `D` on either side, and
/// `samples` seeded random elements of `D`-degree at most 3.
pub fn annihilation_relations_check(alg: &ConformalAlgebra, win: &ModeWindow, runner: &dyn Runner, samples: usize, seed: u64) -> CheckReport {
    let ca = CoeffAlgebra::new(alg);
    let gens = alg.gens.enumerate(win.window);
    let ops: Vec<Op> = [Op::Product, Op::Bracket].into_iter().filter(|op| op.rule(alg).is_ok()).collect();
    let mut cases: Vec<(ModElement, i64, ModElement, i64)> = Vec::new();
    for a in &gens {
        for b in &gens {
            for m in win.lo..=win.hi {
                for n in win.lo..=win.hi {
                    let (ga, gb) = (ModElement::generator(a.clone()), ModElement::generator(b.clone()));
                    cases.push((ga.d_pow(1), m, gb.clone(), n));
                    cases.push((ga, m, gb.d_pow(1), n));
                }
            }
        }
    }
    if !gens.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let span = (win.hi - win.lo + 1) as u32;
        for _ in 0..samples {
            let x = random_element(&mut rng, &gens, 3);
            let y = random_element(&mut rng, &gens, 3);
            let m = win.lo + (rng.next_u32() % span) as i64;
            let n = win.lo + (rng.next_u32() % span) as i64;
            cases.push((x, m, y, n));
        }
    }
    let outcomes = runner.run(cases.len(), &|i| -> Outcome {
        let (x, m, y, n) = &cases[i];
        let (nx, ny) = (coeff_normalize(&[(x.clone(), *m)]), coeff_normalize(&[(y.clone(), *n)]));
        let mut res = CoeffElement::zero();
        for &op in &ops {
            let direct = on_elements(alg, op, x, *m, y, *n)?;
            res = res.add(&direct.sub(&ca.apply(op, &nx, &ny)?));
        }
        Ok(res.to_lambda())
    });
    let mut rep = CheckReport::new("coeff-relations");
    for ((x, m, y, n), o) in cases.iter().zip(outcomes) {
        let label = format!("({})_({}) , ({})_({})", render_mod(x), m, render_mod(y), n);
        rep.record(&[], o, &[], Some(label));
    }
    rep
}

fn render_mod(x: &ModElement) -> String {
    LambdaPoly::from_mod(x, 0).render(&[])
}

/// Compare the bracket of the coefficient algebra with a closed formula on
/// all mode pairs; a mismatch is recorded as the difference computed - expected.
pub fn compare_bracket(
    alg: &ConformalAlgebra,
    win: &ModeWindow,
    runner: &dyn Runner,
    expected: &(dyn Fn(&GenIndex, i64, &GenIndex, i64) -> EvalResult<CoeffElement> + Sync),
) -> CheckReport {
    let ca = CoeffAlgebra::new(alg);
    let pairs = mode_tuples(&win.basis(alg), 2);
    run_modes("coeff-reference", runner, &pairs, &|t| {
        let got = ca.on_modes(Op::Bracket, &t[0].0, t[0].1, &t[1].0, t[1].1)?;
        Ok(got.sub(&expected(&t[0].0, t[0].1, &t[1].0, t[1].1)?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::catalog::{polynomial_conformal, x};

    #[test]
    fn normalize_examples() {
        let a = GenIndex::named("a");
        let ga = ModElement::generator(a.clone());
        assert_eq!(coeff_normalize(&[(ga.d_pow(1), 3)]), CoeffElement::mode(a.clone(), 2).scale(&Scalar::from_int(-3)));
        assert!(coeff_normalize(&[(ga.d_pow(1), 0)]).is_zero());
        assert_eq!(coeff_normalize(&[(ga.d_pow(2), 2)]), CoeffElement::mode(a.clone(), 0).scale(&Scalar::from_int(2)));
        assert_eq!(coeff_normalize(&[(ga.clone(), 1), (ga.scale(&Scalar::from_int(-1)), 1)]), CoeffElement::zero());
    }

    #[test]
    fn polynomial_modes() {
        let p = polynomial_conformal();
        let ca = CoeffAlgebra::new(&p);
        for k in 0..4 {
            for l in 0..4 {
                for m in -3..=3 {
                    for n in -3..=3 {
                        let pr = ca.on_modes(Op::Product, &x(k), m, &x(l), n).unwrap();
                        assert_eq!(pr, CoeffElement::mode(x(k + l), m + n));
                        let br = ca.on_modes(Op::Bracket, &x(k), m, &x(l), n).unwrap();
                        let c = Scalar::from_int(l * m - k * n);
                        let want = if k + l >= 1 { CoeffElement::mode(x(k + l - 1), m + n - 1).scale(&c) } else { CoeffElement::zero() };
                        assert_eq!(br, want, "{k} {m} {l} {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn binomials_small() {
        assert!(binomial_identity_check(0..=0, 0..=0).passed());
        assert!(binomial_identity_check(2..=2, 1..=1).passed());
    }

    #[test]
    fn rendering() {
        let e = CoeffElement::mode(x(2), -1).scale(&Scalar::from_int(3));
        assert_eq!(alloc::format!("{}", e), "3*x[2]_(-1)");
    }
}
