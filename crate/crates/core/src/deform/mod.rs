//! Deformations: truncated formal deformations of commutative associative
//! conformal algebras, and linear deformations of noncommutative Poisson
//! conformal algebras with Nijenhuis operators.

pub mod linear;
pub mod series;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{fn_rule, RuleRef};
use crate::cohomology::Cochain;
use crate::symcore::{GenIndex, LambdaPoly, ModElement};

pub use linear::{
    check_homomorphism, linear_deformation_check, linear_equivalence_check, nijenhuis_check, nijenhuis_deform,
    nijenhuis_linear_deformation, trivial_deformation_check, LinearDeformation, LinearMap,
};
pub use series::{
    check_n_deformation, equivalence_check, extend_deformation, infinitesimal_is_cocycle, obstruction,
    semiclassical_limit, semiclassical_report, series_associativity, DeformationSeries,
};

/// `g` carrying a power `k` of a formal parameter named `sym`, encoded in
/// the family name (`x@t2`). Power 0 is `g` itself.
pub fn tag(g: &GenIndex, sym: char, k: u32) -> GenIndex {
    if k == 0 {
        g.clone()
    } else {
        g.renamed(Arc::from(format!("{}@{}{}", g.family, sym, k).as_str()))
    }
}

/// Inverse of [`tag`].
pub fn untag(g: &GenIndex, sym: char) -> (GenIndex, u32) {
    if let Some((base, power)) = g.family.rsplit_once('@') {
        if let Some(k) = power.strip_prefix(sym).and_then(|k| k.parse::<u32>().ok()) {
            return (g.renamed(Arc::from(base)), k);
        }
    }
    (g.clone(), 0)
}

/// The rule `sum_k s^k parts[k]` on the tagged module, dropping powers above
/// `cap`.
pub fn graded_rule(parts: Vec<RuleRef>, sym: char, cap: u32) -> RuleRef {
    fn_rule(move |a, b| {
        let (a0, i) = untag(a, sym);
        let (b0, j) = untag(b, sym);
        let mut out = LambdaPoly::zero(1);
        for (k, r) in parts.iter().enumerate() {
            let p = i + j + k as u32;
            if p > cap {
                break;
            }
            let v = r.on_generators(&a0, &b0)?;
            out.add_assign(&v.map_generators(|g| Ok::<_, crate::error::EvalError>(ModElement::generator(tag(g, sym, p))))?);
        }
        Ok(out)
    })
}

/// A bilinear rule viewed as a Hochschild 2-cochain.
pub fn rule_cochain(r: &RuleRef) -> Cochain {
    let r = r.clone();
    Cochain::new(0, 2, move |t| r.on_generators(&t[0], &t[1]))
}

/// A bilinear rule viewed as a skew `(2, 0)` cochain.
pub fn bracket_cochain(r: &RuleRef) -> Cochain {
    let r = r.clone();
    Cochain::new(2, 0, move |t| r.on_generators(&t[0], &t[1]))
}

/// A Hochschild 2-cochain viewed as a rule.
pub fn cochain_rule(c: &Cochain) -> RuleRef {
    assert_eq!(c.bidegree(), (0, 2));
    let c = c.clone();
    fn_rule(move |a, b| c.value(&[a.clone(), b.clone()]))
}
