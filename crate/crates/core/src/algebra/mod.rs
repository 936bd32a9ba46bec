//! Conformal algebras given by structure rules, and their axiom checks.

pub mod checks;
pub mod eval;
pub mod gens;
pub mod report;
pub mod rule;
pub mod runner;

use alloc::string::String;
use alloc::sync::Arc;

pub use checks::check_poisson;
pub use eval::{eval_elements, eval_op, nth_products};
pub use gens::{Family, GeneratorSet};
pub use report::{overall as overall_status, CheckReport, Status, Witness};
pub use rule::{fn_rule, CommutatorRule, Rule, RuleRef, TableRule};
pub use runner::{Checker, Runner, Sequential};

/// A free `Q[D]`-module on `gens` with a product and/or a bracket.
#[derive(Clone)]
pub struct ConformalAlgebra {
    pub name: String,
    pub gens: GeneratorSet,
    pub product: Option<RuleRef>,
    pub bracket: Option<RuleRef>,
    /// Whether the product is meant to be commutative (Poisson kind) rather
    /// than only associative (noncommutative Poisson kind).
    pub commutative: bool,
}

impl ConformalAlgebra {
    pub fn new(name: &str, gens: GeneratorSet) -> Self {
        ConformalAlgebra { name: String::from(name), gens, product: None, bracket: None, commutative: true }
    }

    pub fn with_product(mut self, p: RuleRef) -> Self {
        self.product = Some(p);
        self
    }

    pub fn with_bracket(mut self, b: RuleRef) -> Self {
        self.bracket = Some(b);
        self
    }

    pub fn noncommutative(mut self) -> Self {
        self.commutative = false;
        self
    }

    /// The same algebra with the commutator bracket of its product.
    pub fn with_commutator_bracket(self) -> Self {
        let p = self.product.clone().expect("commutator bracket needs a product");
        self.with_bracket(Arc::new(CommutatorRule(p)))
    }
}
