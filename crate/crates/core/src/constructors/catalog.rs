//! Concrete algebras used throughout the examples and tests.

use super::ordinary::{bilinear, linear, OrdinaryAlgebra};
use crate::algebra::{fn_rule, ConformalAlgebra, Family, GeneratorSet, RuleRef};
use crate::error::EvalError;
use crate::symcore::{DPoly, GenIndex, LambdaPoly, ModElement, Scalar};

pub fn x(n: i64) -> GenIndex {
    GenIndex::new("x", &[n])
}

pub fn monomial_family() -> GeneratorSet {
    GeneratorSet::new(alloc::vec![Family::naturals("x", 1)])
}

fn scaled(g: GenIndex, c: i64) -> ModElement {
    if c == 0 {
        ModElement::zero()
    } else {
        ModElement::term(g, DPoly::constant(Scalar::from_int(c)))
    }
}

/// `Q[x]` on monomials `x[m]`, zero bracket, `D = d/dx`.
pub fn polynomial_ring() -> OrdinaryAlgebra {
    let mut o = OrdinaryAlgebra::new("Q[x]", monomial_family());
    o.product = Some(bilinear(|a, b| Ok(ModElement::generator(x(a.params[0] + b.params[0])))));
    o.derivation = Some(linear(|a| {
        let m = a.params[0];
        Ok(if m == 0 { ModElement::zero() } else { scaled(x(m - 1), m) })
    }));
    o
}

/// `Q[x]/(x^n)`, zero bracket.
pub fn truncated_polynomial(n: i64) -> OrdinaryAlgebra {
    let fam = Family::bounded("x", &[(Some(0), Some(n - 1))]);
    let mut o = OrdinaryAlgebra::new("Q[x]/(x^n)", GeneratorSet::new(alloc::vec![fam]));
    o.product = Some(bilinear(move |a, b| {
        let s = a.params[0] + b.params[0];
        Ok(if s < n { ModElement::generator(x(s)) } else { ModElement::zero() })
    }));
    o
}

/// `Q[x1, x2]` on monomials `y[i,j]`, zero bracket,
/// `D = f1 d/dx1 + f2 d/dx2` with constants `f1`, `f2`.
pub fn polynomial_ring_2(f1: i64, f2: i64) -> OrdinaryAlgebra {
    let y = |i: i64, j: i64| GenIndex::new("y", &[i, j]);
    let mut o = OrdinaryAlgebra::new("Q[x1,x2]", GeneratorSet::new(alloc::vec![Family::naturals("y", 2)]));
    o.product = Some(bilinear(move |a, b| Ok(ModElement::generator(y(a.params[0] + b.params[0], a.params[1] + b.params[1])))));
    o.derivation = Some(linear(move |a| {
        let (i, j) = (a.params[0], a.params[1]);
        let mut out = ModElement::zero();
        if i > 0 {
            out = out.add(&scaled(y(i - 1, j), f1 * i));
        }
        if j > 0 {
            out = out.add(&scaled(y(i, j - 1), f2 * j));
        }
        Ok(out)
    }));
    o
}

/// `Q[q, p]` on monomials `z[i,j] = q^i p^j` with
/// `{f, g} = f_q g_p - f_p g_q` and `D = d/dq`.
pub fn canonical_poisson_plane() -> OrdinaryAlgebra {
    let z = |i: i64, j: i64| GenIndex::new("z", &[i, j]);
    let mut o = OrdinaryAlgebra::new("Q[q,p]", GeneratorSet::new(alloc::vec![Family::naturals("z", 2)]));
    o.product = Some(bilinear(move |a, b| Ok(ModElement::generator(z(a.params[0] + b.params[0], a.params[1] + b.params[1])))));
    o.bracket = Some(bilinear(move |a, b| {
        let (i, j, k, l) = (a.params[0], a.params[1], b.params[0], b.params[1]);
        let mut out = ModElement::zero();
        if i > 0 && l > 0 {
            out = out.add(&scaled(z(i + k - 1, j + l - 1), i * l));
        }
        if j > 0 && k > 0 {
            out = out.add(&scaled(z(i + k - 1, j + l - 1), -j * k));
        }
        Ok(out)
    }));
    o.derivation = Some(linear(move |a| {
        let (i, j) = (a.params[0], a.params[1]);
        Ok(if i == 0 { ModElement::zero() } else { scaled(z(i - 1, j), i) })
    }));
    o
}

/// Two-dimensional Poisson algebra with zero product and `[e1, e2] = e2`,
/// with the inner derivation `D = ad(e2)`.
pub fn two_dim_lie() -> OrdinaryAlgebra {
    let e = |n: &str| GenIndex::named(n);
    let mut o = OrdinaryAlgebra::new("aff", GeneratorSet::singles(&["e1", "e2"]));
    o.product = Some(bilinear(|_, _| Ok(ModElement::zero())));
    o.bracket = Some(bilinear(move |a, b| {
        Ok(match (&*a.family, &*b.family) {
            ("e1", "e2") => scaled(e("e2"), 1),
            ("e2", "e1") => scaled(e("e2"), -1),
            _ => ModElement::zero(),
        })
    }));
    o.derivation = Some(linear(move |a| Ok(if &*a.family == "e1" { scaled(e("e2"), -1) } else { ModElement::zero() })));
    o
}

/// 2x2 matrices on matrix units `e11, e12, e21, e22`, with the commutator
/// bracket; a noncommutative Poisson algebra.
pub fn matrix_algebra_2() -> OrdinaryAlgebra {
    fn idx(g: &GenIndex) -> (u8, u8) {
        let b = g.family.as_bytes();
        (b[1] - b'0', b[2] - b'0')
    }
    fn unit(i: u8, j: u8) -> GenIndex {
        GenIndex::named(&alloc::format!("e{}{}", i, j))
    }
    let mul = |a: &GenIndex, b: &GenIndex| -> ModElement {
        let ((i, j), (k, l)) = (idx(a), idx(b));
        if j == k {
            ModElement::generator(unit(i, l))
        } else {
            ModElement::zero()
        }
    };
    let mut o = OrdinaryAlgebra::new("M2", GeneratorSet::singles(&["e11", "e12", "e21", "e22"]));
    o.product = Some(bilinear(move |a, b| Ok(mul(a, b))));
    o.bracket = Some(bilinear(move |a, b| Ok(mul(a, b).sub(&mul(b, a)))));
    o.commutative = false;
    o
}

fn bracket_rule(printed: bool) -> RuleRef {
    fn_rule(move |a, b| {
        let (m, n) = (a.params[0], b.params[0]);
        let mut p = LambdaPoly::zero(1);
        if m + n >= 1 {
            let dc = if printed { n } else { m };
            p.add_mono(smallvec::smallvec![0], x(m + n - 1), 1, Scalar::from_int(dc));
            p.add_mono(smallvec::smallvec![1], x(m + n - 1), 0, Scalar::from_int(m + n));
        } else if m < 0 || n < 0 {
            return Err(EvalError::WindowEscape { gen: if m < 0 { a.clone() } else { b.clone() } });
        }
        Ok(p)
    })
}

fn product_rule() -> RuleRef {
    fn_rule(|a, b| Ok(LambdaPoly::generator(x(a.params[0] + b.params[0]), 1)))
}

/// The polynomial Poisson conformal algebra on `x[m]`, in closed form:
/// `x[m] o_L x[n] = x[m+n]`, `[x[m]_L x[n]] = (m D + (m+n) L) x[m+n-1]`.
/// This is what the derivation construction on `Q[x]` with `D = d/dx` yields.
pub fn polynomial_conformal() -> ConformalAlgebra {
    ConformalAlgebra::new("poly", monomial_family()).with_product(product_rule()).with_bracket(bracket_rule(false))
}

/// The same product with the bracket `(n D + (m+n) L) x[m+n-1]`, which
/// violates Jacobi and Leibniz.
pub fn polynomial_conformal_printed() -> ConformalAlgebra {
    ConformalAlgebra::new("poly-printed", monomial_family()).with_product(product_rule()).with_bracket(bracket_rule(true))
}

/// `k`-th term of the exponential star product on `Q[x]`:
/// `x[m] o_L x[n] -> L^k C(n,k) x[m+n-k]`, i.e. `(L^k / k!) a D^k(b)`.
pub fn star_product_term(k: u32) -> RuleRef {
    fn_rule(move |a, b| {
        let (m, n) = (a.params[0], b.params[0]);
        let c = Scalar::binomial(n, k);
        let mut p = LambdaPoly::zero(1);
        if !c.is_zero() {
            p.add_mono(smallvec::smallvec![k], x(m + n - k as i64), 0, c);
        }
        Ok(p)
    })
}

/// The current algebra of `Q[x]` (zero bracket).
pub fn polynomial_current() -> ConformalAlgebra {
    ConformalAlgebra::new("Cur(Q[x])", monomial_family())
        .with_product(product_rule())
        .with_bracket(crate::algebra::rule::zero_rule())
}
