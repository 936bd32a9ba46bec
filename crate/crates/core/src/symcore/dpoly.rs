//! Polynomials in the derivation `D` with rational coefficients.

use alloc::vec::Vec;

use super::scalar::Scalar;

/// `sum c_k D^k`, stored densely with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DPoly {
    coeffs: Vec<Scalar>,
}

impl DPoly {
    pub fn zero() -> Self {
        DPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, k: u32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = alloc::vec![Scalar::zero(); k as usize + 1];
        coeffs[k as usize] = c;
        DPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: u32) -> Scalar {
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u32 - 1)
        }
    }

    pub fn add(&self, other: &DPoly) -> DPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k);
            let b = other.coeffs.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Scalar::zero(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &Scalar) -> DPoly {
        if c.is_zero() {
            return Self::zero();
        }
        DPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> DPoly {
        DPoly { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, other: &DPoly) -> DPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = alloc::vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Multiply by `D^k`.
    pub fn shift(&self, k: u32) -> DPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = alloc::vec![Scalar::zero(); k as usize];
        out.extend(self.coeffs.iter().cloned());
        DPoly { coeffs: out }
    }

    /// Iterate over nonzero `(power, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as u32, c))
    }
}
