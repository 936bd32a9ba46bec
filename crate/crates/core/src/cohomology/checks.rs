//! Identities of the complexes on seeded random cochains, and cocycle checks.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::diff::{d_ce, d_ce_zero, d_fgv, d_h, Graded};
use super::random::{random_cochain, RandomSpec};
use super::{Cochain, Complex};
use crate::algebra::runner::{tuples, Outcome, Runner};
use crate::algebra::CheckReport;
use crate::symcore::{GenIndex, LambdaPoly, ModElement, Scalar};

#[derive(Clone, Debug)]
pub struct IdentityConfig {
    /// Random cochains per bidegree.
    pub samples: usize,
    /// Generators of the evaluation tuples have degree at most this.
    pub window: i64,
    /// Largest `m + n` of the sampled cochains.
    pub max_total: usize,
    pub ddeg: u32,
    pub ldeg: u32,
    pub terms: u32,
    pub seed: u64,
}

impl Default for IdentityConfig {
    fn default() -> Self {
        IdentityConfig { samples: 100, window: 2, max_total: 4, ddeg: 2, ldeg: 2, terms: 3, seed: 0 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Identity {
    CeSquared,
    HSquared,
    Square,
    FgvSquared,
}

struct Case {
    identity: Identity,
    bidegree: (usize, usize),
    sample: usize,
    graded: Graded,
    tuple: Vec<GenIndex>,
}

fn random_tuple(rng: &mut ChaCha8Rng, gens: &[GenIndex], k: usize) -> Vec<GenIndex> {
    (0..k).map(|_| gens[rng.next_u32() as usize % gens.len()].clone()).collect()
}

fn single(c: &Graded) -> &Cochain {
    c.parts.values().next().expect("one component")
}

fn total_residual(g: &Graded, t: &[GenIndex]) -> Outcome {
    // first nonzero component
    for c in g.parts.values() {
        let v = c.value(t)?;
        if !v.is_zero() {
            return Ok(v);
        }
    }
    Ok(LambdaPoly::zero(0))
}

/// `d_CE^2 = 0`, `d_H^2 = 0`, the commuting squares `d_H d_CE = d_CE d_H`
/// (on `(m, 0)` with the inclusion, and on `(m, n >= 1)`), and `d_FGV^2 = 0`
/// on random cochains of every bidegree with `1 <= m + n <= max_total`, each
/// evaluated on one random tuple of window generators.
pub fn check_complex_identities(cx: &Arc<Complex>, cfg: &IdentityConfig, runner: &dyn Runner) -> Vec<CheckReport> {
    let gens = cx.alg.gens.enumerate(cfg.window);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let spec = |s: u64| RandomSpec {
        carrier: cx.module.carrier.clone(),
        ddeg: cfg.ddeg,
        ldeg: cfg.ldeg,
        terms: cfg.terms,
        seed: s,
    };
    let mut cases = Vec::new();
    let mut next_seed = cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for total in 1..=cfg.max_total {
        for n in 0..=total {
            let m = total - n;
            for sample in 0..cfg.samples {
                next_seed = next_seed.wrapping_add(1);
                let c = random_cochain(m, n, &spec(next_seed));
                let g = Graded::new(total).with(c.clone());
                let mut push = |identity, extra: usize, graded: Graded, rng: &mut ChaCha8Rng| {
                    let tuple = random_tuple(rng, &gens, total + extra);
                    cases.push(Case { identity, bidegree: (m, n), sample, graded, tuple });
                };
                push(Identity::CeSquared, 2, g.clone(), &mut rng);
                push(Identity::HSquared, 2, g.clone(), &mut rng);
                push(Identity::Square, 2, g.clone(), &mut rng);
                if n != 1 {
                    push(Identity::FgvSquared, 2, g, &mut rng);
                }
            }
        }
    }
    // Degree 0: random classes in V / D V.
    let carrier = cx.module.carrier.enumerate(cfg.window);
    if !carrier.is_empty() {
        for sample in 0..cfg.samples {
            let mut v = ModElement::zero();
            for _ in 0..=(rng.next_u32() % cfg.terms.max(1)) {
                let g = carrier[rng.next_u32() as usize % carrier.len()].clone();
                v = v.add(&ModElement::generator(g).scale(&Scalar::from_int(1 + (rng.next_u32() % 3) as i64)));
            }
            let mut graded = Graded::new(0);
            graded.zero = Some(v);
            let tuple = random_tuple(&mut rng, &gens, 2);
            cases.push(Case { identity: Identity::FgvSquared, bidegree: (0, 0), sample, graded, tuple });
        }
    }
    let outcomes = runner.run(cases.len(), &|i| -> Outcome {
        let case = &cases[i];
        let t = &case.tuple;
        match case.identity {
            Identity::CeSquared => d_ce(cx, &d_ce(cx, single(&case.graded))).value(t),
            Identity::HSquared => d_h(cx, &d_h(cx, single(&case.graded))).value(t),
            Identity::Square => {
                let g = single(&case.graded);
                let a = d_h(cx, &d_ce(cx, g)).value(t)?;
                let b = d_ce(cx, &d_h(cx, g)).value(t)?;
                Ok(a.sub(&b))
            }
            Identity::FgvSquared => {
                if let Some(v) = &case.graded.zero {
                    let mut g = Graded::new(1);
                    g.insert(d_ce_zero(cx, v));
                    return total_residual(&d_fgv(cx, &g), t);
                }
                total_residual(&d_fgv(cx, &d_fgv(cx, &case.graded)), t)
            }
        }
    });
    let mut reps = [
        CheckReport::new("d_ce-squared"),
        CheckReport::new("d_h-squared"),
        CheckReport::new("d_ce-d_h-commute"),
        CheckReport::new("d_fgv-squared"),
    ];
    for (case, o) in cases.iter().zip(outcomes) {
        let idx = match case.identity {
            Identity::CeSquared => 0,
            Identity::HSquared => 1,
            Identity::Square => 2,
            Identity::FgvSquared => 3,
        };
        let (m, n) = case.bidegree;
        let label = format!("bidegree ({}, {}) sample {}", m, n, case.sample);
        reps[idx].record(&case.tuple, o, &[], Some(label));
    }
    reps.into_iter().collect()
}

/// Whether `d_FGV g` vanishes on all tuples of window generators.
pub fn is_cocycle(cx: &Arc<Complex>, g: &Graded, window: i64, runner: &dyn Runner) -> CheckReport {
    let gens = cx.alg.gens.enumerate(window);
    let k = g.degree + 1;
    let ts = tuples(&gens, k);
    let dg = d_fgv(cx, g);
    let comps: Vec<((usize, usize), Cochain)> = dg.parts.iter().map(|(b, c)| (*b, c.clone())).collect();
    let jobs: Vec<(usize, usize)> = (0..comps.len()).flat_map(|c| (0..ts.len()).map(move |t| (c, t))).collect();
    let outcomes = runner.run(jobs.len(), &|i| {
        let (c, t) = jobs[i];
        comps[c].1.value(&ts[t])
    });
    let mut rep = CheckReport::new("cocycle");
    for (&(c, t), o) in jobs.iter().zip(outcomes) {
        let (m, n) = comps[c].0;
        let label: String = format!("component ({}, {})", m, n);
        rep.record(&ts[t], o, &[], Some(label));
    }
    rep
}
