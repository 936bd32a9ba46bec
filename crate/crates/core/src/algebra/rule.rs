//! Structure rules: bilinear operations given by their values on pairs of
//! generators, as polynomials in one spectral variable.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::gens::GeneratorSet;
use crate::error::{EvalError, EvalResult};
use crate::symcore::{GenIndex, LambdaPoly, OpPoly, Scalar};

pub trait Rule: Send + Sync {
    /// `a_L b` for generators `a`, `b`, as a polynomial in one variable.
    fn on_generators(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly>;
}

pub type RuleRef = Arc<dyn Rule>;

/// A rule given by a closure.
pub struct FnRule<F>(pub F);

impl<F> Rule for FnRule<F>
where
    F: Fn(&GenIndex, &GenIndex) -> EvalResult<LambdaPoly> + Send + Sync,
{
    fn on_generators(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly> {
        (self.0)(a, b)
    }
}

pub fn fn_rule<F>(f: F) -> RuleRef
where
    F: Fn(&GenIndex, &GenIndex) -> EvalResult<LambdaPoly> + Send + Sync + 'static,
{
    Arc::new(FnRule(f))
}

pub struct ZeroRule;

impl Rule for ZeroRule {
    fn on_generators(&self, _: &GenIndex, _: &GenIndex) -> EvalResult<LambdaPoly> {
        Ok(LambdaPoly::zero(1))
    }
}

pub fn zero_rule() -> RuleRef {
    Arc::new(ZeroRule)
}

/// Explicit table on a finite domain; pairs absent from the table are zero.
#[derive(Clone)]
pub struct TableRule {
    pub domain: GeneratorSet,
    pub entries: BTreeMap<(GenIndex, GenIndex), LambdaPoly>,
}

impl TableRule {
    pub fn new(domain: GeneratorSet) -> Self {
        TableRule { domain, entries: BTreeMap::new() }
    }

    pub fn set(&mut self, a: GenIndex, b: GenIndex, v: LambdaPoly) {
        self.entries.insert((a, b), v);
    }

    /// Tabulate any rule on the listed generators.
    pub fn tabulate(rule: &dyn Rule, domain: GeneratorSet, gens: &[GenIndex]) -> EvalResult<Self> {
        let mut t = TableRule::new(domain);
        for a in gens {
            for b in gens {
                let v = rule.on_generators(a, b)?;
                if !v.is_zero() {
                    t.set(a.clone(), b.clone(), v);
                }
            }
        }
        Ok(t)
    }
}

impl Rule for TableRule {
    fn on_generators(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly> {
        for g in [a, b] {
            if !self.domain.contains(g) {
                return Err(EvalError::WindowEscape { gen: g.clone() });
            }
        }
        Ok(self.entries.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(|| LambdaPoly::zero(1)))
    }
}

/// `sum c_i rule_i`.
pub struct LinearRule(pub Vec<(Scalar, RuleRef)>);

impl Rule for LinearRule {
    fn on_generators(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly> {
        let mut out = LambdaPoly::zero(1);
        for (c, r) in &self.0 {
            out.add_scaled(&r.on_generators(a, b)?, c);
        }
        Ok(out)
    }
}

/// `a_L b - b_{-L-D} a`: the commutator bracket of a product, and more
/// generally the skew part of any rule.
pub struct CommutatorRule(pub RuleRef);

impl Rule for CommutatorRule {
    fn on_generators(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly> {
        let ab = self.0.on_generators(a, b)?;
        let ba = self.0.on_generators(b, a)?;
        Ok(ab.sub(&ba.substitute(&[OpPoly::dagger_of(&[0], 1)], 1)))
    }
}

/// A rule with its arguments swapped: `(a, b) -> inner(b, a)`.
pub struct SwappedRule(pub RuleRef);

impl Rule for SwappedRule {
    fn on_generators(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly> {
        self.0.on_generators(b, a)
    }
}
