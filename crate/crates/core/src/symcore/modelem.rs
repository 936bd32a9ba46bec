//! Elements of a free `Q[D]`-module: finite sums `p(D) g` over generators.

use alloc::collections::BTreeMap;

use super::dpoly::DPoly;
use super::gen::GenIndex;
use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ModElement {
    terms: BTreeMap<GenIndex, DPoly>,
}

impl ModElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: GenIndex) -> Self {
        Self::term(g, DPoly::constant(Scalar::one()))
    }

    pub fn term(g: GenIndex, p: DPoly) -> Self {
        let mut m = Self::zero();
        m.add_term(g, &p);
        m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, g: &GenIndex) -> DPoly {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, g: GenIndex, p: &DPoly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.terms.get(&g) {
            Some(q) => q.add(p),
            None => p.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, sum);
        }
    }

    pub fn add(&self, other: &ModElement) -> ModElement {
        let mut out = self.clone();
        for (g, p) in &other.terms {
            out.add_term(g.clone(), p);
        }
        out
    }

    pub fn sub(&self, other: &ModElement) -> ModElement {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> ModElement {
        if c.is_zero() {
            return Self::zero();
        }
        ModElement { terms: self.terms.iter().map(|(g, p)| (g.clone(), p.scale(c))).collect() }
    }

    /// Apply `D^k`.
    pub fn d_pow(&self, k: u32) -> ModElement {
        ModElement { terms: self.terms.iter().map(|(g, p)| (g.clone(), p.shift(k))).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GenIndex, &DPoly)> {
        self.terms.iter()
    }

    /// Iterate over `(generator, D-power, coefficient)` triples.
    pub fn monomials(&self) -> impl Iterator<Item = (&GenIndex, u32, &Scalar)> {
        self.terms.iter().flat_map(|(g, p)| p.terms().map(move |(k, c)| (g, k, c)))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl FromIterator<(GenIndex, DPoly)> for ModElement {
    fn from_iter<T: IntoIterator<Item = (GenIndex, DPoly)>>(iter: T) -> Self {
        let mut m = ModElement::zero();
        for (g, p) in iter {
            m.add_term(g, &p);
        }
        m
    }
}
