//! Cochains of multi-slot brackets, the Hochschild, Chevalley-Eilenberg and
//! total differentials, the action of an algebra on Hochschild cochains,
//! and a bounded coboundary solver.
//!
//! A cochain of bidegree `(m, n)` takes `m + n` arguments: `m` "bracket"
//! slots followed by `n` "product" slots. Its values live over `m + n - 1`
//! spectral variables (`L1..Lm, M1..M(n-1)`); the last slot carries none.
//! Values are given on generator tuples and extended sesquilinearly: `D` in
//! slot `i` of the first `m + n - 1` gives `-var_i`, `D` in the last slot
//! gives `(sum of vars + D)`.

pub mod action;
pub mod checks;
pub mod diff;
pub mod linalg;
pub mod random;
pub mod solve;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use spin::Mutex;

use crate::algebra::{ConformalAlgebra, Rule};
use crate::constructors::ConformalModule;
use crate::error::{EvalError, EvalResult};
use crate::symcore::{Exps, GenIndex, LambdaPoly, OpPoly, Scalar};

pub use action::{act, check_action_laws, tilde_d};
pub use checks::{check_complex_identities, is_cocycle, IdentityConfig};
pub use diff::{d_ce, d_ce_literal, d_ce_zero, d_fgv, d_h, Graded};
pub use random::{random_cochain, symmetric, RandomSpec};
pub use solve::{coboundary_solve, Ansatz, Solution};

/// An algebra together with a module over it.
#[derive(Clone)]
pub struct Complex {
    pub alg: ConformalAlgebra,
    pub module: ConformalModule,
}

impl Complex {
    pub fn new(alg: ConformalAlgebra, module: ConformalModule) -> Arc<Self> {
        Arc::new(Complex { alg, module })
    }

    pub fn product(&self) -> EvalResult<&dyn Rule> {
        self.alg.product.as_deref().ok_or_else(|| EvalError::MissingStructure(String::from("product")))
    }

    pub fn bracket(&self) -> EvalResult<&dyn Rule> {
        self.alg.bracket.as_deref().ok_or_else(|| EvalError::MissingStructure(String::from("bracket")))
    }
}

pub type ValueFn = dyn Fn(&[GenIndex]) -> EvalResult<LambdaPoly> + Send + Sync;

struct Inner {
    m: usize,
    n: usize,
    params: usize,
    shift: Vec<Scalar>,
    values: Box<ValueFn>,
    memo: Mutex<BTreeMap<Vec<GenIndex>, LambdaPoly>>,
}

/// A cochain given by its values on generator tuples. Cloning is cheap and
/// shares the memo table.
///
/// A cochain may carry `params` leading variables (used by the action on
/// Hochschild cochains, whose values depend on the spectral parameters of the
/// acting elements). `shift` is a linear form in those parameters added to
/// the last-slot rule: `D` in the last slot gives `(sum of vars + shift + D)`.
#[derive(Clone)]
pub struct Cochain {
    inner: Arc<Inner>,
}

impl core::fmt::Debug for Cochain {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Cochain({}, {})", self.inner.m, self.inner.n)
    }
}

impl Cochain {
    pub fn new<F>(m: usize, n: usize, values: F) -> Self
    where
        F: Fn(&[GenIndex]) -> EvalResult<LambdaPoly> + Send + Sync + 'static,
    {
        Self::with_params(m, n, 0, Vec::new(), values)
    }

    pub fn with_params<F>(m: usize, n: usize, params: usize, shift: Vec<Scalar>, values: F) -> Self
    where
        F: Fn(&[GenIndex]) -> EvalResult<LambdaPoly> + Send + Sync + 'static,
    {
        assert!(m + n >= 1, "cochains take at least one argument");
        assert_eq!(shift.len(), params);
        Cochain {
            inner: Arc::new(Inner { m, n, params, shift, values: Box::new(values), memo: Mutex::new(BTreeMap::new()) }),
        }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        let nv = m + n - 1;
        Self::new(m, n, move |_| Ok(LambdaPoly::zero(nv)))
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.inner.m, self.inner.n)
    }

    pub fn arity(&self) -> usize {
        self.inner.m + self.inner.n
    }

    pub fn params(&self) -> usize {
        self.inner.params
    }

    pub fn shift(&self) -> &[Scalar] {
        &self.inner.shift
    }

    /// Number of variables of a value: parameters plus spectral variables.
    pub fn nvars(&self) -> usize {
        self.inner.params + self.arity() - 1
    }

    /// Value on a generator tuple.
    pub fn value(&self, tuple: &[GenIndex]) -> EvalResult<LambdaPoly> {
        if tuple.len() != self.arity() {
            return Err(EvalError::Shape(alloc::format!("{} arguments for a {}-slot cochain", tuple.len(), self.arity())));
        }
        if let Some(v) = self.inner.memo.lock().get(tuple) {
            return Ok(v.clone());
        }
        let v = (self.inner.values)(tuple)?;
        debug_assert_eq!(v.nvars(), self.nvars());
        self.inner.memo.lock().insert(tuple.to_vec(), v.clone());
        Ok(v)
    }

    /// Value on arbitrary arguments over an outer context: `params` are the
    /// forms substituted for the parameters, `spec` the spectral forms of
    /// all slots but the last.
    pub fn eval(&self, params: &[OpPoly], args: &[LambdaPoly], spec: &[OpPoly]) -> EvalResult<LambdaPoly> {
        assert_eq!(params.len(), self.inner.params);
        assert_eq!(args.len(), self.arity());
        let n = args[0].nvars();
        let mut shift = OpPoly::zero(n);
        for (c, p) in self.inner.shift.iter().zip(params) {
            shift = shift.add(&p.scale(c));
        }
        eval_multi(&|t| self.value(t), params, &shift, args, spec)
    }

    /// Plain evaluation with no parameters.
    pub fn eval0(&self, args: &[LambdaPoly], spec: &[OpPoly]) -> EvalResult<LambdaPoly> {
        self.eval(&[], args, spec)
    }

    /// The natural inclusion of `(m, 0)` into `(m - 1, 1)`: same values.
    pub fn include(&self) -> Cochain {
        let (m, n) = self.bidegree();
        assert!(n == 0 && m >= 1, "inclusion is defined on (m, 0) cochains");
        self.relabel(m - 1, 1)
    }

    /// The same values under another bidegree of equal arity.
    pub fn relabel(&self, m: usize, n: usize) -> Cochain {
        assert_eq!(m + n, self.arity());
        let me = self.clone();
        Cochain::new(m, n, move |t| me.value(t))
    }

    /// `sum c_i gamma_i`; all terms must share bidegree and parameters.
    pub fn combination(terms: Vec<(Scalar, Cochain)>) -> Cochain {
        assert!(!terms.is_empty());
        let (m, n) = terms[0].1.bidegree();
        let p = terms[0].1.params();
        let shift = terms[0].1.shift().to_vec();
        for (_, c) in &terms {
            assert_eq!(c.bidegree(), (m, n), "bidegree mismatch");
            assert_eq!(c.params(), p);
        }
        let nv = terms[0].1.nvars();
        Cochain::with_params(m, n, p, shift, move |t| {
            let mut out = LambdaPoly::zero(nv);
            for (c, g) in &terms {
                out.add_scaled(&g.value(t)?, c);
            }
            Ok(out)
        })
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        Self::combination(alloc::vec![(Scalar::ONE, self.clone()), (Scalar::ONE, other.clone())])
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        Self::combination(alloc::vec![(Scalar::ONE, self.clone()), (-Scalar::ONE, other.clone())])
    }

    pub fn scale(&self, c: Scalar) -> Cochain {
        Self::combination(alloc::vec![(c, self.clone())])
    }
}

/// Sesquilinear extension of multi-slot values to arbitrary arguments.
pub fn eval_multi(
    value: &dyn Fn(&[GenIndex]) -> EvalResult<LambdaPoly>,
    params: &[OpPoly],
    shift: &OpPoly,
    args: &[LambdaPoly],
    spec: &[OpPoly],
) -> EvalResult<LambdaPoly> {
    let k = args.len();
    assert!(k >= 1);
    assert_eq!(spec.len(), k - 1, "one spectral form per slot but the last");
    let n = args[0].nvars();
    // Expand the product of the arguments, grouped by (generators, D-powers).
    let mut partial: Vec<(Vec<GenIndex>, Vec<u32>, Exps, Scalar)> =
        alloc::vec![(Vec::new(), Vec::new(), Exps::from_elem(0, n), Scalar::ONE)];
    for a in args {
        assert_eq!(a.nvars(), n, "context mismatch");
        let mut next = Vec::with_capacity(partial.len() * a.len());
        for (gs, ds, e, c) in &partial {
            for (mono, v) in a.terms() {
                let mut gs2 = gs.clone();
                gs2.push(mono.gen.clone());
                let mut ds2 = ds.clone();
                ds2.push(mono.d);
                let e2: Exps = e.iter().zip(mono.lam.iter()).map(|(x, y)| x + y).collect();
                next.push((gs2, ds2, e2, c * v));
            }
        }
        partial = next;
        if partial.is_empty() {
            return Ok(LambdaPoly::zero(n));
        }
    }
    let mut groups: BTreeMap<(Vec<GenIndex>, Vec<u32>), OpPoly> = BTreeMap::new();
    for (gs, ds, e, c) in partial {
        groups.entry((gs, ds)).or_insert_with(|| OpPoly::zero(n)).add_term(e, 0, c);
    }
    let subs: Vec<OpPoly> = params.iter().chain(spec.iter()).cloned().collect();
    let mut factors: Vec<OpPoly> = spec.iter().map(|s| s.neg()).collect();
    let mut last = shift.add(&OpPoly::d(n));
    for s in spec {
        last = last.add(s);
    }
    factors.push(last);
    let mut powers: Vec<Vec<OpPoly>> = factors.iter().map(|f| alloc::vec![OpPoly::one(n), f.clone()]).collect();
    let mut bases: BTreeMap<Vec<GenIndex>, LambdaPoly> = BTreeMap::new();
    let mut out = LambdaPoly::zero(n);
    for ((gs, ds), coef) in groups {
        if coef.is_zero() {
            continue;
        }
        if !bases.contains_key(&gs) {
            let v = value(&gs)?;
            let b = v.substitute(&subs, n);
            bases.insert(gs.clone(), b);
        }
        let base = &bases[&gs];
        if base.is_zero() {
            continue;
        }
        let mut op = coef;
        for (i, &d) in ds.iter().enumerate() {
            if d == 0 {
                continue;
            }
            while powers[i].len() <= d as usize {
                let next = powers[i].last().unwrap().mul(&factors[i]);
                powers[i].push(next);
            }
            op = op.mul(&powers[i][d as usize]);
        }
        out.add_assign(&base.apply_op(&op));
    }
    Ok(out)
}

/// Pad an operator polynomial over the first variables of a larger context.
pub fn widen(op: &OpPoly, target: usize) -> OpPoly {
    let mut out = OpPoly::zero(target);
    for (e, d, c) in op.terms() {
        let mut e2 = Exps::from_elem(0, target);
        e2[..e.len()].copy_from_slice(e);
        out.add_term(e2, d, c.clone());
    }
    out
}

/// Pad a polynomial over the first variables of a larger context.
pub fn widen_poly(p: &LambdaPoly, target: usize) -> LambdaPoly {
    let pos: Vec<usize> = (0..p.nvars()).collect();
    p.embed(&pos, target)
}

pub(crate) fn vars(idx: impl IntoIterator<Item = usize>, n: usize) -> Vec<OpPoly> {
    idx.into_iter().map(|i| OpPoly::var(i, n)).collect()
}

pub(crate) fn lifts(gs: &[GenIndex], n: usize) -> Vec<LambdaPoly> {
    gs.iter().map(|g| LambdaPoly::generator(g.clone(), n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: i64) -> GenIndex {
        GenIndex::new("x", &[i])
    }

    #[test]
    fn sesquilinear_slots() {
        // gamma(a, b) = L * b-ish constant value x[9]
        let c = Cochain::new(0, 2, |_| {
            let mut v = LambdaPoly::zero(1);
            v.add_mono(Exps::from_elem(1, 1), g(9), 0, Scalar::ONE);
            Ok(v)
        });
        let spec = vars([0], 1);
        let da = LambdaPoly::generator(g(1), 1).d_pow(1);
        let b = LambdaPoly::generator(g(2), 1);
        let left = c.eval0(&[da, b.clone()], &spec).unwrap();
        let base = c.eval0(&[LambdaPoly::generator(g(1), 1), b.clone()], &spec).unwrap();
        assert_eq!(left, base.apply_op(&OpPoly::var(0, 1).neg()));
        let right = c.eval0(&[LambdaPoly::generator(g(1), 1), b.d_pow(1)], &spec).unwrap();
        assert_eq!(right, base.apply_op(&OpPoly::var(0, 1).add(&OpPoly::d(1))));
    }
}
