//! Cochains with the required symmetry, built from values on sorted tuples:
//! seeded random cochains and one-hot basis cochains.

use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Cochain, ValueFn};
use crate::algebra::GeneratorSet;
use crate::error::EvalResult;
use crate::symcore::{Exps, GenIndex, LambdaPoly, OpPoly, Scalar};

/// Permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub fn parity(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

/// Number of variables of the raw (sorted-tuple) values of an `(m, n)`
/// cochain: `m` for `n = 0` (all bracket slots carry a variable before the
/// last is eliminated), otherwise `m + n - 1`.
pub fn raw_nvars(m: usize, n: usize) -> usize {
    if n == 0 {
        m
    } else {
        m + n - 1
    }
}

/// A cochain of bidegree `(m, n)` from values on tuples whose first `m`
/// generators are sorted.
///
/// The bracket slots are made skew: the value on a sorted tuple is averaged
/// with sign over the permutations fixing it, and other orders are obtained
/// by permuting generators and their variables together. For `n = 0` the raw
/// values carry a variable for every slot and the last one is then replaced
/// by `-(sum of the others) - D`.
pub fn symmetric(m: usize, n: usize, raw: Arc<ValueFn>) -> Cochain {
    let rv = raw_nvars(m, n);
    let perms = permutations(m);
    Cochain::new(m, n, move |t| {
        let (xs, rest) = t.split_at(m);
        // order[c] = original slot of the c-th smallest generator
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| xs[a].cmp(&xs[b]).then(a.cmp(&b)));
        let mut sorted: Vec<GenIndex> = order.iter().map(|&i| xs[i].clone()).collect();
        sorted.extend(rest.iter().cloned());
        let base = raw(&sorted)?;
        let mut canon = LambdaPoly::zero(rv);
        for p in &perms {
            if (0..m).any(|i| sorted[p[i]] != sorted[i]) {
                continue;
            }
            // slot i takes the variable of slot p[i]
            let mut pos: Vec<usize> = (0..rv).collect();
            for i in 0..m {
                pos[p[i]] = i;
            }
            let term = base.embed(&pos, rv);
            canon.add_scaled(&term, &sign(parity(p)));
        }
        // back to the original order: canonical slot c sits at order[c]
        let mut pos: Vec<usize> = (0..rv).collect();
        for c in 0..m {
            pos[c] = order[c];
        }
        let mut v = canon.embed(&pos, rv).scale(&sign(parity(&order)));
        if n == 0 {
            let nv = m - 1;
            let mut subs: Vec<OpPoly> = (0..nv).map(|i| OpPoly::var(i, nv)).collect();
            subs.push(OpPoly::dagger_of(&(0..nv).collect::<Vec<_>>(), nv));
            v = v.substitute(&subs, nv);
        }
        Ok(v)
    })
}

fn sign(p: usize) -> Scalar {
    if p % 2 == 0 {
        Scalar::ONE
    } else {
        -Scalar::ONE
    }
}

/// Shape of random values.
#[derive(Clone, Debug)]
pub struct RandomSpec {
    /// Generators of the coefficient module the values may use.
    pub carrier: GeneratorSet,
    /// Largest power of `D`.
    pub ddeg: u32,
    /// Largest total degree in the variables.
    pub ldeg: u32,
    /// Largest number of terms of a value.
    pub terms: u32,
    pub seed: u64,
}

fn fnv(seed: u64, t: &[GenIndex]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    let mut eat = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    for g in t {
        for b in g.family.bytes() {
            eat(b);
        }
        eat(0xff);
        for p in &g.params {
            for b in p.to_le_bytes() {
                eat(b);
            }
        }
        eat(0xfe);
    }
    h
}

/// Random monomial exponents of total degree at most `ldeg`.
fn random_exps(rng: &mut ChaCha8Rng, nv: usize, ldeg: u32) -> Exps {
    let mut e = Exps::from_elem(0, nv);
    if nv == 0 {
        return e;
    }
    let total = rng.next_u32() % (ldeg + 1);
    for _ in 0..total {
        e[rng.next_u32() as usize % nv] += 1;
    }
    e
}

/// Seeded random raw values; output generators have degree at most the total
/// degree of the arguments (at least the lowest available).
pub fn random_raw(spec: &RandomSpec, nv: usize) -> Arc<ValueFn> {
    let spec = spec.clone();
    Arc::new(move |t: &[GenIndex]| -> EvalResult<LambdaPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(fnv(spec.seed, t));
        let deg: i64 = t.iter().map(|g| g.degree().max(0)).sum();
        let mut outs = spec.carrier.enumerate(deg);
        if outs.is_empty() {
            outs = spec.carrier.enumerate(0);
        }
        let mut v = LambdaPoly::zero(nv);
        if outs.is_empty() {
            return Ok(v);
        }
        let k = 1 + rng.next_u32() % spec.terms.max(1);
        for _ in 0..k {
            let g = outs[rng.next_u32() as usize % outs.len()].clone();
            let d = rng.next_u32() % (spec.ddeg + 1);
            let e = random_exps(&mut rng, nv, spec.ldeg);
            let c = (rng.next_u32() % 6) as i64 - 3;
            let c = if c >= 0 { c + 1 } else { c };
            v.add_mono(e, g, d, Scalar::from_int(c));
        }
        Ok(v)
    })
}

pub fn random_cochain(m: usize, n: usize, spec: &RandomSpec) -> Cochain {
    symmetric(m, n, random_raw(spec, raw_nvars(m, n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Family;

    fn spec(seed: u64) -> RandomSpec {
        RandomSpec { carrier: GeneratorSet::new(alloc::vec![Family::naturals("x", 1)]), ddeg: 2, ldeg: 2, terms: 3, seed }
    }

    fn x(i: i64) -> GenIndex {
        GenIndex::new("x", &[i])
    }

    #[test]
    fn permutation_basics() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(parity(&[1, 0, 2]), 1);
        assert_eq!(parity(&[1, 2, 0]), 0);
    }

    #[test]
    fn mixed_cochains_are_skew_in_bracket_slots() {
        let c = random_cochain(2, 1, &spec(3));
        let ab = c.value(&[x(1), x(2), x(0)]).unwrap();
        let ba = c.value(&[x(2), x(1), x(0)]).unwrap();
        // swap L1 <-> L2
        assert_eq!(ab, ba.embed(&[1, 0], 2).neg());
        let aa = c.value(&[x(1), x(1), x(0)]).unwrap();
        assert_eq!(aa, aa.embed(&[1, 0], 2).neg());
    }

    #[test]
    fn lie_cochains_satisfy_dagger_symmetry() {
        let c = random_cochain(2, 0, &spec(5));
        let ab = c.value(&[x(1), x(3)]).unwrap();
        let ba = c.value(&[x(3), x(1)]).unwrap();
        assert_eq!(ab, ba.subst_dagger(0, &[0]).neg());
        let c3 = random_cochain(3, 0, &spec(6));
        let v = c3.value(&[x(0), x(1), x(2)]).unwrap();
        let w = c3.value(&[x(1), x(0), x(2)]).unwrap();
        assert_eq!(v, w.embed(&[1, 0], 2).neg());
    }
}
