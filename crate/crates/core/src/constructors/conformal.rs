//! Conformal algebras built from ordinary data.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::ordinary::{apply2, check_derivation, check_pgd, Bilinear, FnBilinear, OrdinaryAlgebra};
use crate::algebra::{fn_rule, Checker, ConformalAlgebra, Family, GeneratorSet, Rule, RuleRef};
use crate::error::{EvalError, EvalResult};
use crate::symcore::{GenIndex, LambdaPoly, ModElement};

fn constant_rule(op: Option<Arc<dyn Bilinear>>) -> RuleRef {
    match op {
        Some(op) => fn_rule(move |a, b| Ok(LambdaPoly::from_mod(&op.apply(a, b)?, 1))),
        None => crate::algebra::rule::zero_rule(),
    }
}

/// `C[D] (x) A` with `a o_L b = a o b` and `[a_L b] = [a, b]`.
pub fn current_algebra(ord: &OrdinaryAlgebra) -> ConformalAlgebra {
    ConformalAlgebra {
        name: alloc::format!("Cur({})", ord.name),
        gens: ord.basis.clone(),
        product: Some(constant_rule(ord.product.clone())),
        bracket: Some(constant_rule(ord.bracket.clone())),
        commutative: ord.commutative,
    }
}

/// `[a_L b] = D(b*a) + L(a*b + b*a) + [b,a]` with the current product.
fn quadratic_unchecked(ord: &OrdinaryAlgebra) -> ConformalAlgebra {
    let nov = ord.novikov.clone();
    let br = ord.bracket.clone();
    let bracket = fn_rule(move |a, b| {
        let mut out = LambdaPoly::zero(1);
        if let Some(n) = &nov {
            let ba = n.apply(b, a)?;
            let ab = n.apply(a, b)?;
            out.add_assign(&LambdaPoly::from_mod(&ba.d_pow(1), 1));
            let sym = LambdaPoly::from_mod(&ab.add(&ba), 1);
            out.add_assign(&sym.apply_op(&crate::symcore::OpPoly::var(0, 1)));
        }
        if let Some(l) = &br {
            out.add_assign(&LambdaPoly::from_mod(&l.apply(b, a)?, 1));
        }
        Ok(out)
    });
    ConformalAlgebra {
        name: alloc::format!("Quad({})", ord.name),
        gens: ord.basis.clone(),
        product: Some(constant_rule(ord.product.clone())),
        bracket: Some(bracket),
        commutative: ord.commutative,
    }
}

/// Quadratic (noncommutative) Poisson conformal algebra of a PGD-algebra.
/// Fails with `PreconditionFailed` if the PGD identities do not hold on the
/// checker's window.
pub fn quadratic_from_pgd(ord: &OrdinaryAlgebra, ck: &Checker) -> EvalResult<ConformalAlgebra> {
    let rep = check_pgd(ord, ck);
    if !rep.passed() {
        return Err(EvalError::PreconditionFailed(alloc::format!(
            "pgd: {}",
            rep.note.unwrap_or_else(|| String::from(rep.status.as_str()))
        )));
    }
    Ok(quadratic_unchecked(ord))
}

/// The Novikov product `a*b = a o D(b)` of a derivation.
pub fn novikov_from_derivation(ord: &OrdinaryAlgebra) -> EvalResult<Arc<dyn Bilinear>> {
    let p = ord.product.clone().ok_or_else(|| EvalError::MissingStructure(String::from("product")))?;
    let d = ord.derivation.clone().ok_or_else(|| EvalError::MissingStructure(String::from("derivation")))?;
    Ok(Arc::new(FnBilinear(move |a: &GenIndex, b: &GenIndex| {
        apply2(&*p, &ModElement::generator(a.clone()), &d.apply(b)?)
    })))
}

/// The PGD-algebra `(A, *, o, [,])` with `a*b = a o D(b)`, after verifying
/// that `D` is a derivation of both operations.
pub fn pgd_from_derivation(ord: &OrdinaryAlgebra, ck: &Checker) -> EvalResult<OrdinaryAlgebra> {
    let rep = check_derivation(ord, ck);
    if !rep.passed() {
        return Err(EvalError::PreconditionFailed(alloc::format!(
            "derivation: {}",
            rep.note.unwrap_or_else(|| String::from(rep.status.as_str()))
        )));
    }
    let mut out = ord.clone();
    out.novikov = Some(novikov_from_derivation(ord)?);
    Ok(out)
}

/// Quadratic algebra of a Poisson algebra with a derivation.
pub fn from_derivation(ord: &OrdinaryAlgebra, ck: &Checker) -> EvalResult<ConformalAlgebra> {
    let pgd = pgd_from_derivation(ord, ck)?;
    let mut out = quadratic_from_pgd(&pgd, ck)?;
    out.name = alloc::format!("Der({})", ord.name);
    Ok(out)
}

/// Renaming of generator families.
#[derive(Clone, Default)]
pub struct Renaming {
    map: BTreeMap<Arc<str>, Arc<str>>,
}

impl Renaming {
    pub fn new(pairs: &[(Arc<str>, Arc<str>)]) -> Self {
        Renaming { map: pairs.iter().cloned().collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    pub fn inverse(&self) -> Renaming {
        Renaming { map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect() }
    }

    pub fn gen(&self, g: &GenIndex) -> GenIndex {
        match self.map.get(&g.family) {
            Some(f) => g.renamed(f.clone()),
            None => g.clone(),
        }
    }

    pub fn poly(&self, p: &LambdaPoly) -> LambdaPoly {
        if self.is_identity() {
            return p.clone();
        }
        p.map_generators::<_, EvalError>(|g| Ok(ModElement::generator(self.gen(g)))).unwrap()
    }

    pub fn gens(&self, s: &GeneratorSet) -> GeneratorSet {
        GeneratorSet::new(
            s.families
                .iter()
                .map(|f| Family { name: self.map.get(&f.name).cloned().unwrap_or_else(|| f.name.clone()), bounds: f.bounds.clone() })
                .collect(),
        )
    }
}

/// A rule seen through a renaming of the families it is defined on.
pub struct RenamedRule {
    pub inner: RuleRef,
    /// outer -> inner names.
    pub to_inner: Renaming,
    pub to_outer: Renaming,
}

impl Rule for RenamedRule {
    fn on_generators(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly> {
        let v = self.inner.on_generators(&self.to_inner.gen(a), &self.to_inner.gen(b))?;
        Ok(self.to_outer.poly(&v))
    }
}

/// Routes a pair to the first rule whose domain holds both generators;
/// mixed or unknown pairs give zero (or an escape if a generator is unknown).
pub struct BlockRule {
    pub blocks: Vec<(GeneratorSet, RuleRef)>,
}

impl Rule for BlockRule {
    fn on_generators(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly> {
        for g in [a, b] {
            if !self.blocks.iter().any(|(s, _)| s.contains(g)) {
                return Err(EvalError::WindowEscape { gen: g.clone() });
            }
        }
        for (s, r) in &self.blocks {
            if s.contains(a) && s.contains(b) {
                return r.on_generators(a, b);
            }
        }
        Ok(LambdaPoly::zero(1))
    }
}

fn renamings(gens: &GeneratorSet, suffix: &str) -> (Renaming, Renaming) {
    let pairs: Vec<(Arc<str>, Arc<str>)> =
        gens.families.iter().map(|f| (f.name.clone(), Arc::from(alloc::format!("{}{}", f.name, suffix).as_str()))).collect();
    let fwd = Renaming::new(&pairs);
    (fwd.clone(), fwd.inverse())
}

fn renamed(rule: &Option<RuleRef>, to_outer: &Renaming, to_inner: &Renaming) -> RuleRef {
    match rule {
        Some(r) => Arc::new(RenamedRule { inner: r.clone(), to_inner: to_inner.clone(), to_outer: to_outer.clone() }),
        None => crate::algebra::rule::zero_rule(),
    }
}

/// Componentwise structure on the disjoint union of generators. If the two
/// summands share family names, they are renamed with suffixes `_1`, `_2`.
pub fn direct_sum(p1: &ConformalAlgebra, p2: &ConformalAlgebra) -> ConformalAlgebra {
    let clash = p1.gens.families.iter().any(|f| p2.gens.family(&f.name).is_some());
    let (o1, i1, o2, i2) = if clash {
        let (o1, i1) = renamings(&p1.gens, "_1");
        let (o2, i2) = renamings(&p2.gens, "_2");
        (o1, i1, o2, i2)
    } else {
        (Renaming::default(), Renaming::default(), Renaming::default(), Renaming::default())
    };
    let g1 = o1.gens(&p1.gens);
    let g2 = o2.gens(&p2.gens);
    let block = |r1: &Option<RuleRef>, r2: &Option<RuleRef>| -> RuleRef {
        Arc::new(BlockRule { blocks: alloc::vec![(g1.clone(), renamed(r1, &o1, &i1)), (g2.clone(), renamed(r2, &o2, &i2))] })
    };
    ConformalAlgebra {
        name: alloc::format!("{}+{}", p1.name, p2.name),
        gens: g1.union(&g2),
        product: Some(block(&p1.product, &p2.product)),
        bracket: Some(block(&p1.bracket, &p2.bracket)),
        commutative: p1.commutative && p2.commutative,
    }
}
