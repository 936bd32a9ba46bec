//! The action of the algebra (as a Lie conformal algebra) on Hochschild
//! cochains:
//!
//! ```text
//! (x_nu g)(a1..an) = x_nu g(a1..an) - sum_i g(.., [x_nu ai]_{nu+Li}, ..)
//! ```

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::random::{random_cochain, RandomSpec};
use super::{lifts, vars, widen, widen_poly, Cochain, Complex};
use crate::algebra::eval::eval_op;
use crate::algebra::runner::{Outcome, Runner};
use crate::algebra::CheckReport;
use crate::symcore::{GenIndex, LambdaPoly, OpPoly, Scalar};

/// `x_nu g` for a Hochschild cochain `g` (bidegree `(0, n)`). `x` and `nu`
/// live over a parameter context of `p` variables, which must extend the
/// parameters of `g`; the result has `p` parameters.
pub fn act(cx: &Arc<Complex>, x: &LambdaPoly, nu: &OpPoly, g: &Cochain) -> Cochain {
    let (m, n) = g.bidegree();
    assert_eq!(m, 0, "the action is defined on Hochschild cochains");
    let p = x.nvars();
    assert_eq!(nu.nvars(), p);
    assert!(g.params() <= p);
    let mut shift = g.shift().to_vec();
    shift.resize(p, Scalar::ZERO);
    for (e, d, c) in nu.terms() {
        assert_eq!(d, 0, "acting parameter must not contain D");
        if let Some(i) = e.iter().position(|&k| k == 1) {
            shift[i] += c;
        }
    }
    let cx = cx.clone();
    let g = g.clone();
    let x = x.clone();
    let nu = nu.clone();
    Cochain::with_params(0, n, p, shift, move |t| {
        let nv = p + n - 1;
        let xw = widen_poly(&x, nv);
        let nuw = widen(&nu, nv);
        let params = vars(0..g.params(), nv);
        let al = lifts(t, nv);
        let lam = vars(p..nv, nv);
        let br = cx.bracket()?;
        let rho = cx.module.lie_rule()?;
        let v = g.eval(&params, &al, &lam)?;
        let mut out = eval_op(rho, &xw, &v, &nuw)?;
        for i in 0..n {
            let b = eval_op(br, &xw, &al[i], &nuw)?;
            let mut args = al.clone();
            args[i] = b;
            let mut spec = lam.clone();
            if i + 1 < n {
                spec[i] = nuw.add(&lam[i]);
            }
            out = out.sub(&g.eval(&params, &args, &spec)?);
        }
        Ok(out)
    })
}

/// `(sum of spectral variables + D) g`, the `C[D]`-module structure on
/// Hochschild cochains (without parameters).
pub fn tilde_d(g: &Cochain) -> Cochain {
    assert_eq!(g.params(), 0);
    let (m, n) = g.bidegree();
    let g = g.clone();
    let nv = m + n - 1;
    let op = OpPoly::sum_of(&(0..nv).collect::<Vec<_>>(), nv).add(&OpPoly::d(nv));
    Cochain::new(m, n, move |t| Ok(g.value(t)?.apply_op(&op)))
}

/// The three module laws of the action on `samples` seeded random
/// Hochschild cochains of arity `1..=max_arity`, each evaluated on one random
/// tuple of window generators:
/// `(D x)_L g = -L x_L g`, `x_L (D~ g) = (L + D~)(x_L g)` and
/// `[x_L y]_{L+M} g = x_L (y_M g) - y_M (x_L g)`.
pub fn check_action_laws(
    cx: &Arc<Complex>,
    window: i64,
    spec: &RandomSpec,
    samples: usize,
    max_arity: usize,
    runner: &dyn Runner,
) -> Vec<CheckReport> {
    let gens = cx.alg.gens.enumerate(window);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut cases = Vec::new();
    for s in 0..samples {
        let n = 1 + (rng.next_u32() as usize % max_arity);
        let pick = |r: &mut ChaCha8Rng| gens[r.next_u32() as usize % gens.len()].clone();
        let x = pick(&mut rng);
        let y = pick(&mut rng);
        let t: Vec<GenIndex> = (0..n).map(|_| pick(&mut rng)).collect();
        let sp = RandomSpec { seed: spec.seed.wrapping_add(1000 + s as u64), ..spec.clone() };
        cases.push((random_cochain(0, n, &sp), x, y, t));
    }
    let names = ["action-d-acting", "action-d-cochain", "action-jacobi"];
    let mut reps: Vec<CheckReport> = names.iter().map(|n| CheckReport::new(n)).collect();
    for (law, rep) in reps.iter_mut().enumerate() {
        let outcomes = runner.run(cases.len(), &|i| -> Outcome {
            let (g, x, y, t) = &cases[i];
            match law {
                0 => {
                    let xl = LambdaPoly::generator(x.clone(), 1);
                    let nu = OpPoly::var(0, 1);
                    let lhs = act(cx, &xl.d_pow(1), &nu, g).value(t)?;
                    let rhs = act(cx, &xl, &nu, g).value(t)?;
                    let nv = rhs.nvars();
                    Ok(lhs.add(&rhs.apply_op(&OpPoly::var(0, nv))))
                }
                1 => {
                    let xl = LambdaPoly::generator(x.clone(), 1);
                    let nu = OpPoly::var(0, 1);
                    let lhs = act(cx, &xl, &nu, &tilde_d(g)).value(t)?;
                    let v = act(cx, &xl, &nu, g).value(t)?;
                    let nv = v.nvars();
                    let op = OpPoly::sum_of(&(0..nv).collect::<Vec<_>>(), nv).add(&OpPoly::d(nv));
                    Ok(lhs.sub(&v.apply_op(&op)))
                }
                _ => {
                    let xl = LambdaPoly::generator(x.clone(), 2);
                    let yl = LambdaPoly::generator(y.clone(), 2);
                    let (l, mu) = (OpPoly::var(0, 2), OpPoly::var(1, 2));
                    let xy = eval_op(cx.bracket()?, &xl, &yl, &l)?;
                    let t1 = act(cx, &xy, &l.add(&mu), g).value(t)?;
                    let t2 = act(cx, &xl, &l, &act(cx, &yl, &mu, g)).value(t)?;
                    let t3 = act(cx, &yl, &mu, &act(cx, &xl, &l, g)).value(t)?;
                    Ok(t1.sub(&t2).add(&t3))
                }
            }
        });
        for (i, o) in outcomes.into_iter().enumerate() {
            let (g, x, y, t) = &cases[i];
            let mut tuple = alloc::vec![x.clone()];
            if law == 2 {
                tuple.push(y.clone());
            }
            tuple.extend(t.iter().cloned());
            let label = format!("sample {} arity {}", i, g.arity());
            rep.record(&tuple, o, &[], Some(label));
        }
    }
    reps
}
