//! Polynomials in the spectral variables and `D`, acting as operators on
//! module-valued polynomials. All variables commute; `D` acts on the module
//! coefficient it is applied to.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use smallvec::SmallVec;

use super::scalar::Scalar;

pub type Exps = SmallVec<[u32; 4]>;

pub(crate) fn zero_exps(n: usize) -> Exps {
    SmallVec::from_elem(0, n)
}

pub(crate) fn add_exps(a: &Exps, b: &Exps) -> Exps {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpPoly {
    nvars: usize,
    terms: BTreeMap<(Exps, u32), Scalar>,
}

impl OpPoly {
    pub fn zero(nvars: usize) -> Self {
        OpPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(zero_exps(nvars), 0, c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Scalar::one(), nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = zero_exps(nvars);
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, 0, Scalar::one());
        p
    }

    pub fn d(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(zero_exps(nvars), 1, Scalar::one());
        p
    }

    /// `sum c_i var_i + dc * D`.
    pub fn linear(nvars: usize, coeffs: &[(usize, Scalar)], dc: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs {
            let mut e = zero_exps(nvars);
            e[*i] = 1;
            p.add_term(e, 0, c.clone());
        }
        p.add_term(zero_exps(nvars), 1, dc);
        p
    }

    /// Sum of the listed variables.
    pub fn sum_of(vars: &[usize], nvars: usize) -> Self {
        let cs: Vec<(usize, Scalar)> = vars.iter().map(|&i| (i, Scalar::one())).collect();
        Self::linear(nvars, &cs, Scalar::zero())
    }

    /// `-(sum of vars) - D`.
    pub fn dagger_of(vars: &[usize], nvars: usize) -> Self {
        let cs: Vec<(usize, Scalar)> = vars.iter().map(|&i| (i, Scalar::from_int(-1))).collect();
        Self::linear(nvars, &cs, Scalar::from_int(-1))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exps, d: u32, c: Scalar) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let key = (e, d);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, u32, &Scalar)> {
        self.terms.iter().map(|((e, d), c)| (e, *d, c))
    }

    pub fn add(&self, other: &OpPoly) -> OpPoly {
        let mut out = self.clone();
        for ((e, d), c) in &other.terms {
            out.add_term(e.clone(), *d, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &OpPoly) -> OpPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> OpPoly {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> OpPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        OpPoly { nvars: self.nvars, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &OpPoly) -> OpPoly {
        assert_eq!(self.nvars, other.nvars, "context mismatch");
        let mut out = Self::zero(self.nvars);
        for ((e1, d1), c1) in &self.terms {
            for ((e2, d2), c2) in &other.terms {
                out.add_term(add_exps(e1, e2), d1 + d2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> OpPoly {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluate with `D` treated as an ordinary variable at the given
    /// position in an extended variable list; used only by tests.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|(e, d)| *d == 0 && e.iter().all(|&x| x == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_expansion_of_linear_form() {
        // (L + D)^2 = L^2 + 2 L D + D^2
        let p = OpPoly::linear(1, &[(0, Scalar::one())], Scalar::one()).pow(2);
        let coeffs: Vec<(u32, u32, Scalar)> = p.terms().map(|(e, d, c)| (e[0], d, c.clone())).collect();
        assert_eq!(coeffs.len(), 3);
        assert!(coeffs.contains(&(1, 1, Scalar::from_int(2))));
        assert!(coeffs.contains(&(2, 0, Scalar::one())));
        assert!(coeffs.contains(&(0, 2, Scalar::one())));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = OpPoly::var(0, 2);
        assert!(a.sub(&a).is_zero());
    }
}
