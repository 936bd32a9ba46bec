//! The differentials.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{lifts, vars, Cochain, Complex};
use crate::algebra::eval::{eval_op, lift};
use crate::error::EvalResult;
use crate::symcore::{GenIndex, LambdaPoly, ModElement, OpPoly, Scalar};

fn sign(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::ONE
    } else {
        -Scalar::ONE
    }
}

fn without<T: Clone>(v: &[T], skip: &[usize]) -> Vec<T> {
    v.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, x)| x.clone()).collect()
}

/// Hochschild differential `(m, n) -> (m, n + 1)` for `n >= 1`; on `(m, 0)`
/// it is applied after the inclusion into `(m - 1, 1)`.
///
/// ```text
/// d g(x.., a1..a(n+1)) = a1 o_{M1} g(x.., a2..)
///     + sum_i (-1)^i g(x.., .., (ai o_{Mi} a(i+1))_{Mi+M(i+1)}, ..)
///     + (-1)^(n+1) g(x.., a1..an) o_{sum of all vars} a(n+1)
/// ```
pub fn d_h(cx: &Arc<Complex>, g: &Cochain) -> Cochain {
    let (m, n) = g.bidegree();
    assert_eq!(g.params(), 0);
    if n == 0 {
        return d_h(cx, &g.include());
    }
    let cx = cx.clone();
    let g = g.clone();
    let nv = m + n;
    Cochain::new(m, n + 1, move |t| {
        let (xs, as_) = t.split_at(m);
        let xl = lifts(xs, nv);
        let al = lifts(as_, nv);
        let lam = vars(0..m, nv);
        let mu = vars(m..m + n, nv);
        let prod = cx.product()?;
        let left = cx.module.left_rule()?;
        let right = cx.module.right_rule()?;
        // a1 o_{M1} g(x.., a2..a(n+1))
        let mut args = xl.clone();
        args.extend(al[1..].iter().cloned());
        let mut spec = lam.clone();
        spec.extend(mu[1..].iter().cloned());
        let inner = g.eval0(&args, &spec)?;
        let mut out = eval_op(left, &al[0], &inner, &mu[0])?;
        for i in 0..n {
            let p = eval_op(prod, &al[i], &al[i + 1], &mu[i])?;
            let mut args = xl.clone();
            args.extend(al[..i].iter().cloned());
            args.push(p);
            args.extend(al[i + 2..].iter().cloned());
            let mut spec = lam.clone();
            spec.extend(mu[..i].iter().cloned());
            if i + 1 < n {
                spec.push(mu[i].add(&mu[i + 1]));
                spec.extend(mu[i + 2..].iter().cloned());
            }
            out.add_scaled(&g.eval0(&args, &spec)?, &sign(i + 1));
        }
        let mut args = xl.clone();
        args.extend(al[..n].iter().cloned());
        let mut spec = lam.clone();
        spec.extend(mu[..n - 1].iter().cloned());
        let v = g.eval0(&args, &spec)?;
        let flat = OpPoly::sum_of(&(0..nv).collect::<Vec<_>>(), nv);
        out.add_scaled(&eval_op(right, &v, &al[n], &flat)?, &sign(n + 1));
        Ok(out)
    })
}

/// Chevalley-Eilenberg differential `(m, n) -> (m + 1, n)`.
///
/// For `n = 0` this is the Lie conformal differential with the pair terms
/// written with the bracket in front, `(-1)^(i+j) g([ai_{Li} aj], ..)`,
/// which equals the form with the bracket in the last slot by the symmetry
/// of `(m, 0)` cochains (see [`d_ce_literal`]). For `n >= 1` the bracket
/// slots are acted on by the adjoint action, the product slots by the
/// bracket.
pub fn d_ce(cx: &Arc<Complex>, g: &Cochain) -> Cochain {
    let (_, n) = g.bidegree();
    assert_eq!(g.params(), 0);
    if n == 0 {
        d_ce_lie(cx, g, false)
    } else {
        d_ce_mixed(cx, g)
    }
}

/// The `n = 0` differential with pair terms in the literal last-slot form
/// `(-1)^(k+i+j+1) g(.., a(k+1)_{L(k+1)^dagger}, [ai_{Li} aj])`.
pub fn d_ce_literal(cx: &Arc<Complex>, g: &Cochain) -> Cochain {
    assert_eq!(g.bidegree().1, 0);
    d_ce_lie(cx, g, true)
}

fn d_ce_lie(cx: &Arc<Complex>, g: &Cochain, literal: bool) -> Cochain {
    let (k, _) = g.bidegree();
    let cx = cx.clone();
    let g = g.clone();
    // Output: k + 1 arguments over k variables.
    let nv = k;
    Cochain::new(k + 1, 0, move |t| {
        let al = lifts(t, nv);
        let lam = vars(0..k, nv);
        let br = cx.bracket()?;
        let rho = cx.module.lie_rule()?;
        let mut out = LambdaPoly::zero(nv);
        // a_i acting on g with a_i omitted.
        for i in 0..k {
            let v = g.eval0(&without(&al, &[i]), &without(&lam, &[i]))?;
            out.add_scaled(&eval_op(rho, &al[i], &v, &lam[i])?, &sign(i));
        }
        for i in 0..k {
            for j in i + 1..k {
                let b = eval_op(br, &al[i], &al[j], &lam[i])?;
                if literal {
                    let mut args = without(&al[..k], &[i, j]);
                    args.push(al[k].clone());
                    args.push(b);
                    let mut spec = without(&lam, &[i, j]);
                    spec.push(OpPoly::dagger_of(&(0..k).collect::<Vec<_>>(), nv));
                    out.add_scaled(&g.eval0(&args, &spec)?, &sign(k + i + j + 1 + 2));
                } else {
                    let mut args = alloc::vec![b];
                    args.extend(without(&al, &[i, j]));
                    let mut spec = alloc::vec![lam[i].add(&lam[j])];
                    spec.extend(without(&lam, &[i, j]));
                    out.add_scaled(&g.eval0(&args, &spec)?, &sign(i + j));
                }
            }
        }
        // a(k+1) acting with L^dagger.
        if k >= 1 {
            let v = g.eval0(&al[..k], &lam[..k - 1])?;
            let dag = OpPoly::dagger_of(&(0..k).collect::<Vec<_>>(), nv);
            out.add_scaled(&eval_op(rho, &al[k], &v, &dag)?, &sign(k));
        }
        for i in 0..k {
            let b = eval_op(br, &al[i], &al[k], &lam[i])?;
            let mut args = without(&al[..k], &[i]);
            args.push(b);
            out.add_scaled(&g.eval0(&args, &without(&lam, &[i]))?, &sign(i + 1));
        }
        Ok(out)
    })
}

fn d_ce_mixed(cx: &Arc<Complex>, g: &Cochain) -> Cochain {
    let (m, n) = g.bidegree();
    let cx = cx.clone();
    let g = g.clone();
    // Output (m + 1, n): variables L1..L(m+1), M1..M(n-1).
    let nv = m + n;
    Cochain::new(m + 1, n, move |t| {
        let (xs, as_) = t.split_at(m + 1);
        let xl = lifts(xs, nv);
        let al = lifts(as_, nv);
        let lam = vars(0..m + 1, nv);
        let mu = vars(m + 1..nv, nv);
        let br = cx.bracket()?;
        let rho = cx.module.lie_rule()?;
        let mut out = LambdaPoly::zero(nv);
        for i in 0..=m {
            let rest_x = without(&xl, &[i]);
            let rest_l = without(&lam, &[i]);
            let mut args = rest_x.clone();
            args.extend(al.iter().cloned());
            let mut spec = rest_l.clone();
            spec.extend(mu.iter().cloned());
            let v = g.eval0(&args, &spec)?;
            let mut term = eval_op(rho, &xl[i], &v, &lam[i])?;
            for j in 0..n {
                let b = eval_op(br, &xl[i], &al[j], &lam[i])?;
                let mut args = rest_x.clone();
                args.extend(al.iter().cloned());
                args[m + j] = b;
                let mut spec = rest_l.clone();
                spec.extend(mu.iter().cloned());
                if j + 1 < n {
                    spec[m + j] = lam[i].add(&mu[j]);
                }
                term = term.sub(&g.eval0(&args, &spec)?);
            }
            out.add_scaled(&term, &sign(i));
        }
        for i in 0..=m {
            for j in i + 1..=m {
                let b = eval_op(br, &xl[i], &xl[j], &lam[i])?;
                let mut args = alloc::vec![b];
                args.extend(without(&xl, &[i, j]));
                args.extend(al.iter().cloned());
                let mut spec = alloc::vec![lam[i].add(&lam[j])];
                spec.extend(without(&lam, &[i, j]));
                spec.extend(mu.iter().cloned());
                out.add_scaled(&g.eval0(&args, &spec)?, &sign(i + j));
            }
        }
        Ok(out)
    })
}

/// Degree-zero differential: a class `v` in `V / D V` goes to the
/// homomorphism `a -> a_{-D} v`.
pub fn d_ce_zero(cx: &Arc<Complex>, v: &ModElement) -> Cochain {
    let cx = cx.clone();
    let v = LambdaPoly::from_mod(v, 0);
    Cochain::new(1, 0, move |t| {
        let rho = cx.module.lie_rule()?;
        eval_op(rho, &lift(&t[0], 0), &v, &OpPoly::d(0).neg())
    })
}

/// A cochain of mixed bidegree: components `(m, n)` with `m + n = degree`,
/// plus a class in `V / D V` in degree 0. Elements of the total complex have
/// no `(m, 1)` components.
#[derive(Clone, Debug, Default)]
pub struct Graded {
    pub degree: usize,
    pub zero: Option<ModElement>,
    pub parts: BTreeMap<(usize, usize), Cochain>,
}

impl Graded {
    pub fn new(degree: usize) -> Self {
        Graded { degree, zero: None, parts: BTreeMap::new() }
    }

    pub fn with(mut self, c: Cochain) -> Self {
        self.insert(c);
        self
    }

    pub fn insert(&mut self, c: Cochain) {
        let (m, n) = c.bidegree();
        assert_eq!(m + n, self.degree, "component of the wrong degree");
        let merged = match self.parts.remove(&(m, n)) {
            Some(old) => old.add(&c),
            None => c,
        };
        self.parts.insert((m, n), merged);
    }

    /// Bidegrees of the total complex in this degree.
    pub fn bidegrees(degree: usize) -> Vec<(usize, usize)> {
        (0..=degree).map(|n| (degree - n, n)).filter(|&(_, n)| n != 1).collect()
    }
}

/// Total differential: `d_CE` on every component plus `(-1)^m d_H` where
/// `m` is the first index of the Hochschild operator used (`d_H^{m,n}` on
/// `(m, n)` for `n >= 2`, `d_H^{m-1,1}` after inclusion for `(m, 0)`).
pub fn d_fgv(cx: &Arc<Complex>, g: &Graded) -> Graded {
    let mut out = Graded::new(g.degree + 1);
    if let Some(v) = &g.zero {
        out.insert(d_ce_zero(cx, v));
    }
    for (&(m, n), c) in &g.parts {
        assert!(n != 1, "bidegree (m, 1) is not part of the total complex");
        out.insert(d_ce(cx, c));
        if n >= 2 {
            out.insert(d_h(cx, c).scale(sign(m)));
        } else if m >= 1 {
            out.insert(d_h(cx, c).scale(sign(m - 1)));
        }
    }
    out
}

/// Evaluate every component of a graded cochain on a tuple.
pub fn graded_values(g: &Graded, t: &[GenIndex]) -> EvalResult<Vec<((usize, usize), LambdaPoly)>> {
    let mut out = Vec::new();
    for (&bd, c) in &g.parts {
        out.push((bd, c.value(t)?));
    }
    Ok(out)
}
