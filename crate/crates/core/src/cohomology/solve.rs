//! Preimages under a differential, by exact linear algebra on a bounded
//! ansatz.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use spin::Mutex;

use super::diff::{d_fgv, Graded};
use super::linalg::{Echelon, SparseRow};
use super::random::{raw_nvars, symmetric};
use super::{Complex, ValueFn};
use crate::algebra::runner::tuples;
use crate::algebra::GeneratorSet;
use crate::error::{EvalError, EvalResult};
use crate::symcore::{Exps, GenIndex, LambdaPoly, ModElement, Mono, Scalar};

/// Bounds on the values of a candidate preimage on each tuple: powers of `D`
/// up to `ddeg`, total degree in the variables up to `ldeg`, and output
/// generators of degree at most the total degree of the arguments plus
/// `degree_slack`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ansatz {
    pub ddeg: u32,
    pub ldeg: u32,
    pub degree_slack: i64,
}

impl Default for Ansatz {
    fn default() -> Self {
        Ansatz { ddeg: 2, ldeg: 2, degree_slack: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub preimage: Graded,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
}

type Bidegree = (usize, usize);
type Key = (Bidegree, Vec<GenIndex>);

fn exps_up_to(nv: usize, deg: u32) -> Vec<Exps> {
    let mut out = alloc::vec![Exps::from_elem(0, nv)];
    for _ in 0..deg {
        let mut next = Vec::new();
        for e in &out {
            for i in 0..nv {
                let mut f = e.clone();
                f[i] += 1;
                next.push(f);
            }
        }
        out.extend(next);
    }
    out.sort();
    out.dedup();
    out
}

fn table_cochain(bd: Bidegree, table: BTreeMap<Vec<GenIndex>, LambdaPoly>) -> super::Cochain {
    let nv = raw_nvars(bd.0, bd.1);
    let raw: Arc<ValueFn> = Arc::new(move |t: &[GenIndex]| Ok(table.get(t).cloned().unwrap_or_else(|| LambdaPoly::zero(nv))));
    symmetric(bd.0, bd.1, raw)
}

/// A cochain that records which sorted tuples its values are asked for.
fn tracer(bd: Bidegree, seen: Arc<Mutex<BTreeSet<Key>>>) -> super::Cochain {
    let nv = raw_nvars(bd.0, bd.1);
    let raw: Arc<ValueFn> = Arc::new(move |t: &[GenIndex]| {
        seen.lock().insert((bd, t.to_vec()));
        Ok(LambdaPoly::zero(nv))
    });
    symmetric(bd.0, bd.1, raw)
}

/// Find `x` of degree `target.degree - 1`, with components of the given
/// bidegrees (and a `V / D V` part if `with_zero`), such that
/// `apply(x) = target` on all tuples of window generators. Returns `None`
/// when no preimage exists within the ansatz.
#[allow(clippy::too_many_arguments)]
pub fn solve_preimage(
    alg_gens: &GeneratorSet,
    carrier: &GeneratorSet,
    source: &[Bidegree],
    with_zero: bool,
    apply: &dyn Fn(&Graded) -> Graded,
    target: &Graded,
    window: i64,
    ansatz: &Ansatz,
) -> EvalResult<Option<Solution>> {
    let k = target.degree;
    if k == 0 {
        return Err(EvalError::Shape(alloc::string::String::from("nothing maps onto degree 0")));
    }
    let gens = alg_gens.enumerate(window);
    let checks = tuples(&gens, k);
    // Which sorted tuples each check tuple depends on.
    let mut refs: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
    for (ci, t) in checks.iter().enumerate() {
        let seen = Arc::new(Mutex::new(BTreeSet::new()));
        let mut g = Graded::new(k - 1);
        for &bd in source {
            g.parts.insert(bd, tracer(bd, seen.clone()));
        }
        for c in apply(&g).parts.values() {
            c.value(t)?;
        }
        for key in seen.lock().iter() {
            refs.entry(key.clone()).or_default().push(ci);
        }
    }
    // Unknowns: one per (tuple, monomial).
    enum Unknown {
        Mono(Key, Exps, u32, GenIndex),
        Zero(GenIndex),
    }
    let mut unknowns: Vec<Unknown> = Vec::new();
    for (key, _) in &refs {
        let (bd, t) = key;
        let nv = raw_nvars(bd.0, bd.1);
        let deg: i64 = t.iter().map(|g| g.degree()).sum::<i64>() + ansatz.degree_slack;
        for g in carrier.enumerate(deg.max(0)) {
            for d in 0..=ansatz.ddeg {
                for e in exps_up_to(nv, ansatz.ldeg) {
                    unknowns.push(Unknown::Mono(key.clone(), e, d, g.clone()));
                }
            }
        }
    }
    if with_zero {
        for g in carrier.enumerate(window + ansatz.degree_slack) {
            unknowns.push(Unknown::Zero(g));
        }
    }
    // Equations are indexed by (check tuple, component, monomial).
    let mut eq_index: BTreeMap<(usize, Bidegree, Mono), usize> = BTreeMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let mut eq = |key: (usize, Bidegree, Mono), rows: &mut Vec<SparseRow>, rhs: &mut Vec<Scalar>| -> usize {
        *eq_index.entry(key).or_insert_with(|| {
            rows.push(SparseRow::new());
            rhs.push(Scalar::ZERO);
            rows.len() - 1
        })
    };
    for (ci, t) in checks.iter().enumerate() {
        for (&bd, c) in &target.parts {
            for (mono, v) in c.value(t)?.terms() {
                let r = eq((ci, bd, mono.clone()), &mut rows, &mut rhs);
                rhs[r] += v;
            }
        }
    }
    for (ui, u) in unknowns.iter().enumerate() {
        let mut g = Graded::new(k - 1);
        let relevant: Vec<usize> = match u {
            Unknown::Mono(key, e, d, gen) => {
                let (bd, t) = key;
                let mut val = LambdaPoly::zero(raw_nvars(bd.0, bd.1));
                val.add_mono(e.clone(), gen.clone(), *d, Scalar::ONE);
                let mut table = BTreeMap::new();
                table.insert(t.clone(), val);
                g.parts.insert(*bd, table_cochain(*bd, table));
                refs[key].clone()
            }
            Unknown::Zero(gen) => {
                g.zero = Some(ModElement::generator(gen.clone()));
                (0..checks.len()).collect()
            }
        };
        let img = apply(&g);
        for ci in relevant {
            for (&bd, c) in &img.parts {
                for (mono, v) in c.value(&checks[ci])?.terms() {
                    let r = eq((ci, bd, mono.clone()), &mut rows, &mut rhs);
                    let e = rows[r].entry(ui).or_insert(Scalar::ZERO);
                    *e += v;
                }
            }
        }
    }
    let mut ech = Echelon::new();
    let equations = rows.len();
    for (row, b) in rows.into_iter().zip(rhs) {
        ech.push(row, b);
    }
    let Some(x) = ech.solve(unknowns.len()) else { return Ok(None) };
    let mut tables: BTreeMap<Bidegree, BTreeMap<Vec<GenIndex>, LambdaPoly>> = BTreeMap::new();
    let mut zero = ModElement::zero();
    for (u, c) in unknowns.iter().zip(&x) {
        if c.is_zero() {
            continue;
        }
        match u {
            Unknown::Mono((bd, t), e, d, gen) => {
                let nv = raw_nvars(bd.0, bd.1);
                let entry = tables.entry(*bd).or_default().entry(t.clone()).or_insert_with(|| LambdaPoly::zero(nv));
                entry.add_mono(e.clone(), gen.clone(), *d, c.clone());
            }
            Unknown::Zero(gen) => {
                zero = zero.add(&ModElement::generator(gen.clone()).scale(c));
            }
        }
    }
    let mut pre = Graded::new(k - 1);
    for &bd in source {
        pre.parts.insert(bd, table_cochain(bd, tables.remove(&bd).unwrap_or_default()));
    }
    if with_zero {
        pre.zero = Some(zero);
    }
    // Cross-check the image.
    let img = apply(&pre);
    for t in &checks {
        for bd in img.parts.keys().chain(target.parts.keys()) {
            let a = match img.parts.get(bd) {
                Some(c) => c.value(t)?,
                None => LambdaPoly::zero(bd.0 + bd.1 - 1),
            };
            let b = match target.parts.get(bd) {
                Some(c) => c.value(t)?,
                None => LambdaPoly::zero(bd.0 + bd.1 - 1),
            };
            if a != b {
                return Err(EvalError::PreconditionFailed(alloc::format!("solver image mismatch at {:?}", t)));
            }
        }
    }
    Ok(Some(Solution { preimage: pre, unknowns: unknowns.len(), equations, rank: ech.rank() }))
}

/// Preimage under the total differential of a degree-`k` cochain, within the
/// ansatz and checked on all tuples of window generators.
pub fn coboundary_solve(cx: &Arc<Complex>, target: &Graded, window: i64, ansatz: &Ansatz) -> EvalResult<Option<Solution>> {
    let k = target.degree;
    if k == 0 {
        return Err(EvalError::Shape(alloc::string::String::from("degree-0 cochains are never coboundaries")));
    }
    let source: Vec<Bidegree> = Graded::bidegrees(k - 1).into_iter().filter(|&(m, n)| m + n > 0).collect();
    let cx2 = cx.clone();
    solve_preimage(&cx.alg.gens, &cx.module.carrier, &source, k == 1, &move |g| d_fgv(&cx2, g), target, window, ansatz)
}
