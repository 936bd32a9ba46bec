//! Module-valued polynomials in an ordered list of spectral variables.
//!
//! A `LambdaPoly` over `n` variables is a finite sum
//! `c * v_1^e_1 ... v_n^e_n * D^d g` with `g` a generator. `D` acts on the
//! generator part; the spectral variables are plain commuting scalars.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::dpoly::DPoly;
use super::gen::GenIndex;
use super::modelem::ModElement;
use super::oppoly::{add_exps, zero_exps, Exps, OpPoly};
use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub lam: Exps,
    pub gen: GenIndex,
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaPoly {
    nvars: usize,
    terms: BTreeMap<Mono, Scalar>,
}

impl LambdaPoly {
    pub fn zero(nvars: usize) -> Self {
        LambdaPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn generator(g: GenIndex, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_mono(zero_exps(nvars), g, 0, Scalar::one());
        p
    }

    pub fn from_mod(m: &ModElement, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        for (g, d, c) in m.monomials() {
            p.add_mono(zero_exps(nvars), g.clone(), d, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_mono(&mut self, lam: Exps, gen: GenIndex, d: u32, c: Scalar) {
        debug_assert_eq!(lam.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let key = Mono { lam, gen, d };
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

    pub fn add_assign(&mut self, other: &LambdaPoly) {
        assert_eq!(self.nvars, other.nvars, "context mismatch");
        for (m, c) in &other.terms {
            self.add_mono(m.lam.clone(), m.gen.clone(), m.d, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &LambdaPoly, s: &Scalar) {
        assert_eq!(self.nvars, other.nvars, "context mismatch");
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_mono(m.lam.clone(), m.gen.clone(), m.d, c * s);
        }
    }

    pub fn add(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, s: &Scalar) -> LambdaPoly {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        LambdaPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn neg(&self) -> LambdaPoly {
        self.scale(&Scalar::from_int(-1))
    }

    /// Apply `D^k` to every coefficient.
    pub fn d_pow(&self, k: u32) -> LambdaPoly {
        LambdaPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono { lam: m.lam.clone(), gen: m.gen.clone(), d: m.d + k }, c.clone()))
                .collect(),
        }
    }

    /// Multiply by an operator polynomial over the same variables.
    pub fn apply_op(&self, op: &OpPoly) -> LambdaPoly {
        assert_eq!(self.nvars, op.nvars(), "context mismatch");
        let mut out = Self::zero(self.nvars);
        for (e, d, c) in op.terms() {
            for (m, v) in &self.terms {
                out.add_mono(add_exps(&m.lam, e), m.gen.clone(), m.d + d, c * v);
            }
        }
        out
    }

    /// Substitute variable `i` by `subs[i]`, an operator polynomial over a
    /// target context of `target` variables. Any `D` occurring in a
    /// substitution acts on the coefficient (i.e. is moved to the left).
    pub fn substitute(&self, subs: &[OpPoly], target: usize) -> LambdaPoly {
        assert_eq!(subs.len(), self.nvars, "substitution arity mismatch");
        for s in subs {
            assert_eq!(s.nvars(), target, "substitution context mismatch");
        }
        let mut powers: Vec<Vec<OpPoly>> = subs.iter().map(|s| alloc::vec![OpPoly::one(target), s.clone()]).collect();
        let mut out = Self::zero(target);
        let mut cur_lam: Option<Exps> = None;
        let mut cur_op = OpPoly::one(target);
        for (m, c) in &self.terms {
            if cur_lam.as_ref() != Some(&m.lam) {
                let mut op = OpPoly::one(target);
                for (i, &e) in m.lam.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    while powers[i].len() <= e as usize {
                        let next = powers[i].last().unwrap().mul(&subs[i]);
                        powers[i].push(next);
                    }
                    op = op.mul(&powers[i][e as usize]);
                }
                cur_op = op;
                cur_lam = Some(m.lam.clone());
            }
            for (e, d, k) in cur_op.terms() {
                out.add_mono(e.clone(), m.gen.clone(), m.d + d, c * k);
            }
        }
        out
    }

    /// Re-express over `target` variables, sending variable `i` to
    /// `positions[i]`.
    pub fn embed(&self, positions: &[usize], target: usize) -> LambdaPoly {
        assert_eq!(positions.len(), self.nvars);
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = zero_exps(target);
            for (i, &p) in positions.iter().enumerate() {
                e[p] += m.lam[i];
            }
            out.add_mono(e, m.gen.clone(), m.d, c.clone());
        }
        out
    }

    /// Replace variable `var` by the sum of `targets` (other variables of the
    /// same context); the result keeps the context size.
    pub fn subst_sum(&self, var: usize, targets: &[usize]) -> LambdaPoly {
        let subs: Vec<OpPoly> = (0..self.nvars)
            .map(|i| if i == var { OpPoly::sum_of(targets, self.nvars) } else { OpPoly::var(i, self.nvars) })
            .collect();
        self.substitute(&subs, self.nvars)
    }

    /// Replace variable `var` by `-(sum of minus_vars) - D`, the `D` acting on
    /// the coefficient.
    pub fn subst_dagger(&self, var: usize, minus_vars: &[usize]) -> LambdaPoly {
        let subs: Vec<OpPoly> = (0..self.nvars)
            .map(|i| if i == var { OpPoly::dagger_of(minus_vars, self.nvars) } else { OpPoly::var(i, self.nvars) })
            .collect();
        self.substitute(&subs, self.nvars)
    }

    /// `n! * [var^n] self`, as a polynomial in the remaining variables.
    pub fn extract_nth(&self, var: usize, n: u32) -> LambdaPoly {
        let fact = Scalar::factorial(n);
        let mut out = Self::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            if m.lam[var] != n {
                continue;
            }
            let lam: Exps = m.lam.iter().enumerate().filter(|(i, _)| *i != var).map(|(_, e)| *e).collect();
            out.add_mono(lam, m.gen.clone(), m.d, c * &fact);
        }
        out
    }

    /// Coefficient of the given spectral monomial.
    pub fn coefficient(&self, lam: &[u32]) -> ModElement {
        let mut out = ModElement::zero();
        for (m, c) in &self.terms {
            if m.lam.as_slice() == lam {
                out.add_term(m.gen.clone(), &DPoly::monomial(c.clone(), m.d));
            }
        }
        out
    }

    /// The value as a module element; only meaningful with no variables.
    pub fn to_mod(&self) -> ModElement {
        self.coefficient(&zero_exps(self.nvars))
    }

    /// Highest power of `var` present.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.lam[var]).max().unwrap_or(0)
    }

    pub fn max_d_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.d).max().unwrap_or(0)
    }

    pub fn max_lambda_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.lam.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Apply a `Q[D]`-linear map given on generators.
    pub fn map_generators<F, E>(&self, mut f: F) -> Result<LambdaPoly, E>
    where
        F: FnMut(&GenIndex) -> Result<ModElement, E>,
    {
        let mut out = Self::zero(self.nvars);
        let mut cache: BTreeMap<GenIndex, ModElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            if !cache.contains_key(&m.gen) {
                let img = f(&m.gen)?;
                cache.insert(m.gen.clone(), img);
            }
            for (g, d, k) in cache[&m.gen].monomials() {
                out.add_mono(m.lam.clone(), g.clone(), d + m.d, c * k);
            }
        }
        Ok(out)
    }

    /// Generators appearing with nonzero coefficient.
    pub fn generators(&self) -> Vec<GenIndex> {
        let mut gs: Vec<GenIndex> = self.terms.keys().map(|m| m.gen.clone()).collect();
        gs.sort();
        gs.dedup();
        gs
    }

    /// Canonical text form, e.g. `2*D*L*x[0] - M^2*x[1]`. Terms are grouped
    /// by generator and ordered graded-lex over `(D, vars...)`, highest first.
    pub fn render(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut items: Vec<(&Mono, &Scalar)> = self.terms.iter().collect();
        items.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.d + a.lam.iter().sum::<u32>();
            let db: u32 = b.d + b.lam.iter().sum::<u32>();
            a.gen
                .cmp(&b.gen)
                .then(db.cmp(&da))
                .then(b.d.cmp(&a.d))
                .then(b.lam.cmp(&a.lam))
        });
        let mut s = String::new();
        for (i, (m, c)) in items.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -*c } else { (*c).clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                let _ = write!(s, "{}*", abs);
            }
            if m.d > 0 {
                s.push('D');
                if m.d > 1 {
                    let _ = write!(s, "^{}", m.d);
                }
                s.push('*');
            }
            for (j, &e) in m.lam.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                s.push_str(names.get(j).copied().unwrap_or("?"));
                if e > 1 {
                    let _ = write!(s, "^{}", e);
                }
                s.push('*');
            }
            let _ = write!(s, "{}", m.gen);
        }
        s
    }
}

/// Default variable names for a context of `n` variables.
pub fn default_names(n: usize) -> Vec<String> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![String::from("L")],
        2 => alloc::vec![String::from("L"), String::from("M")],
        _ => (1..=n).map(|i| alloc::format!("L{}", i)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: i64) -> GenIndex {
        GenIndex::new("x", &[n])
    }

    fn mono(p: &mut LambdaPoly, lam: &[u32], g: GenIndex, d: u32, c: i64) {
        p.add_mono(Exps::from_slice(lam), g, d, Scalar::from_int(c));
    }

    #[test]
    fn subst_sum_of_lambda_squared() {
        // p = L^2 x[0] over (L, M, N); L -> M + N gives M^2 + 2MN + N^2.
        let mut p = LambdaPoly::zero(3);
        mono(&mut p, &[2, 0, 0], x(0), 0, 1);
        let q = p.subst_sum(0, &[1, 2]);
        let mut want = LambdaPoly::zero(3);
        mono(&mut want, &[0, 2, 0], x(0), 0, 1);
        mono(&mut want, &[0, 1, 1], x(0), 0, 2);
        mono(&mut want, &[0, 0, 2], x(0), 0, 1);
        assert_eq!(q, want);
    }

    #[test]
    fn subst_dagger_moves_d_left() {
        // L x[1] with L -> -M - D gives -M x[1] - D x[1].
        let mut p = LambdaPoly::zero(2);
        mono(&mut p, &[1, 0], x(1), 0, 1);
        let q = p.subst_dagger(0, &[1]);
        let mut want = LambdaPoly::zero(2);
        mono(&mut want, &[0, 1], x(1), 0, -1);
        mono(&mut want, &[0, 0], x(1), 1, -1);
        assert_eq!(q, want);
    }

    #[test]
    fn extract_nth_scales_by_factorial() {
        // (2 D L + 3 L^2) x[1]: first product 2 D x[1], second 6 x[1].
        let mut p = LambdaPoly::zero(1);
        mono(&mut p, &[1], x(1), 1, 2);
        mono(&mut p, &[2], x(1), 0, 3);
        assert_eq!(p.extract_nth(0, 1).to_mod(), ModElement::term(x(1), DPoly::monomial(Scalar::from_int(2), 1)));
        assert_eq!(p.extract_nth(0, 2).to_mod(), ModElement::term(x(1), DPoly::constant(Scalar::from_int(6))));
        assert!(p.extract_nth(0, 3).is_zero());
    }

    #[test]
    fn rendering_is_canonical() {
        let mut p = LambdaPoly::zero(2);
        mono(&mut p, &[0, 1], x(0), 1, -2);
        mono(&mut p, &[1, 0], x(0), 1, 2);
        mono(&mut p, &[2, 0], x(0), 0, 2);
        mono(&mut p, &[0, 2], x(0), 0, -2);
        assert_eq!(p.render(&["L", "M"]), "2*D*L*x[0] - 2*D*M*x[0] + 2*L^2*x[0] - 2*M^2*x[0]");
    }
}
