//! Turning a manifest into engine objects: the algebra, its deformation
//! series, Nijenhuis map, declared cochains and reference formula.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use conformal_core::algebra::{ConformalAlgebra, Family, GeneratorSet, Rule, RuleRef};
use conformal_core::coeff::{mode_symbol, CoeffElement};
use conformal_core::cohomology::{Cochain, Graded};
use conformal_core::deform::{DeformationSeries, LinearMap};
use conformal_core::symcore::{GenIndex, LambdaPoly, OpPoly, Scalar};
use conformal_core::{EvalError, EvalResult};

use crate::manifest::*;

type Bindings = Vec<(String, i64)>;

fn bad(msg: String) -> EvalError {
    EvalError::Shape(msg)
}

fn lookup(b: &Bindings, name: &str) -> Option<i64> {
    b.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
}

fn bind(b: &mut Bindings, name: &str, v: i64) -> bool {
    match lookup(b, name) {
        Some(old) => old == v,
        None => {
            b.push((name.to_string(), v));
            true
        }
    }
}

fn match_pattern(p: &Pattern, g: &GenIndex, b: &mut Bindings) -> bool {
    if *g.family != *p.family || g.params.len() != p.args.len() {
        return false;
    }
    p.args.iter().zip(&g.params).all(|(a, &v)| match a {
        PatArg::Int(k) => *k == v,
        PatArg::Var(name) => bind(b, name, v),
    })
}

enum Value {
    Op(OpPoly),
    Elem(LambdaPoly),
}

fn constant(op: &OpPoly) -> Option<Scalar> {
    if op.is_zero() {
        return Some(Scalar::zero());
    }
    if !op.is_constant() {
        return None;
    }
    op.terms().next().map(|(_, _, c)| c.clone())
}

/// Evaluation of expressions once the pattern variables are bound.
struct Eval<'a> {
    bind: &'a Bindings,
    spectral: &'a [String],
    nvars: usize,
    /// Mode symbols produced so far, for reference formulas.
    modes: RefCell<BTreeMap<GenIndex, (GenIndex, i64)>>,
}

impl<'a> Eval<'a> {
    fn new(bind: &'a Bindings, spectral: &'a [String]) -> Self {
        Eval { bind, spectral, nvars: spectral.len(), modes: RefCell::new(BTreeMap::new()) }
    }

    fn int(&self, e: &Expr) -> EvalResult<i64> {
        match self.value(e)? {
            Value::Op(op) => match constant(&op) {
                Some(c) if c.is_integer() => c.to_i64().ok_or_else(|| bad(format!("{} is too large", c))),
                _ => Err(bad(format!("`{}` is not an integer", e))),
            },
            Value::Elem(_) => Err(bad(format!("`{}` is not an integer", e))),
        }
    }

    fn scalar(&self, e: &Expr) -> EvalResult<Scalar> {
        match self.value(e)? {
            Value::Op(op) => constant(&op).ok_or_else(|| bad(format!("`{}` is not a constant", e))),
            Value::Elem(_) => Err(bad(format!("`{}` is not a constant", e))),
        }
    }

    fn value(&self, e: &Expr) -> EvalResult<Value> {
        let n = self.nvars;
        Ok(match e {
            Expr::Num(c) => Value::Op(OpPoly::constant(c.clone(), n)),
            Expr::Var(v) => {
                if let Some(x) = lookup(self.bind, v) {
                    Value::Op(OpPoly::constant(Scalar::from_int(x), n))
                } else if v == "D" {
                    Value::Op(OpPoly::d(n))
                } else if let Some(i) = self.spectral.iter().position(|s| s == v) {
                    Value::Op(OpPoly::var(i, n))
                } else {
                    return Err(bad(format!("unbound name `{}`", v)));
                }
            }
            Expr::Gen { family, args, mode } => {
                let ps = args.iter().map(|a| self.int(a)).collect::<EvalResult<Vec<i64>>>()?;
                let g = GenIndex::new(family, &ps);
                let g = match mode {
                    Some(m) => {
                        let k = self.int(m)?;
                        let sym = mode_symbol(&g, k);
                        self.modes.borrow_mut().insert(sym.clone(), (g, k));
                        sym
                    }
                    None => g,
                };
                Value::Elem(LambdaPoly::generator(g, n))
            }
            Expr::Call { func, args } => {
                debug_assert_eq!(func, "C");
                let (top, k) = (self.int(&args[0])?, self.int(&args[1])?);
                let c = if k < 0 { Scalar::zero() } else { Scalar::binomial(top, k as u32) };
                Value::Op(OpPoly::constant(c, n))
            }
            Expr::Neg(a) => match self.value(a)? {
                Value::Op(x) => Value::Op(x.neg()),
                Value::Elem(x) => Value::Elem(x.neg()),
            },
            Expr::Add(a, b) => add(self.value(a)?, self.value(b)?, false)?,
            Expr::Sub(a, b) => add(self.value(a)?, self.value(b)?, true)?,
            Expr::Mul(a, b) => match (self.value(a)?, self.value(b)?) {
                (Value::Op(x), Value::Op(y)) => Value::Op(x.mul(&y)),
                (Value::Op(x), Value::Elem(y)) | (Value::Elem(y), Value::Op(x)) => Value::Elem(y.apply_op(&x)),
                (Value::Elem(_), Value::Elem(_)) => return Err(bad(format!("`{}` multiplies two generators", e))),
            },
            Expr::Div(a, b) => {
                let d = self.scalar(b)?;
                if d.is_zero() {
                    return Err(bad(format!("division by zero in `{}`", e)));
                }
                let r = d.recip();
                match self.value(a)? {
                    Value::Op(x) => Value::Op(x.scale(&r)),
                    Value::Elem(x) => Value::Elem(x.scale(&r)),
                }
            }
            Expr::Pow(a, k) => match self.value(a)? {
                Value::Op(x) => Value::Op(x.pow(*k)),
                Value::Elem(_) => return Err(bad(format!("power of a generator in `{}`", e))),
            },
        })
    }

    /// The value of a rule body: an element, or a zero scalar.
    fn element(&self, e: &Expr) -> EvalResult<LambdaPoly> {
        match self.value(e)? {
            Value::Elem(p) => Ok(p),
            Value::Op(op) if op.is_zero() => Ok(LambdaPoly::zero(self.nvars)),
            Value::Op(_) => Err(bad(format!("`{}` has no generator", e))),
        }
    }

    fn holds(&self, guard: &Guard) -> EvalResult<bool> {
        for c in guard {
            let (l, r) = (self.scalar(&c.lhs)?, self.scalar(&c.rhs)?);
            let ok = match c.op {
                CmpOp::Lt => l < r,
                CmpOp::Le => l <= r,
                CmpOp::Gt => l > r,
                CmpOp::Ge => l >= r,
                CmpOp::Eq => l == r,
                CmpOp::Ne => l != r,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn add(a: Value, b: Value, minus: bool) -> EvalResult<Value> {
    let sign = |x: LambdaPoly| if minus { x.neg() } else { x };
    Ok(match (a, b) {
        (Value::Op(x), Value::Op(y)) => Value::Op(if minus { x.sub(&y) } else { x.add(&y) }),
        (Value::Elem(x), Value::Elem(y)) => Value::Elem(x.add(&sign(y))),
        (Value::Elem(x), Value::Op(y)) if y.is_zero() => Value::Elem(x),
        (Value::Op(x), Value::Elem(y)) if x.is_zero() => Value::Elem(sign(y)),
        _ => return Err(bad(String::from("a sum mixes scalars and generator terms"))),
    })
}

fn check_outputs(gens: &GeneratorSet, p: &LambdaPoly, what: &str) -> EvalResult<()> {
    for g in p.generators() {
        if !gens.contains(&g) {
            return Err(bad(format!("{} produces {}, outside the declared families", what, g)));
        }
    }
    Ok(())
}

pub fn generator_set(m: &Manifest) -> GeneratorSet {
    GeneratorSet::new(
        m.families
            .iter()
            .map(|f| Family::bounded(&f.name, &f.params.iter().map(|p| (p.lo, p.hi)).collect::<Vec<_>>()))
            .collect(),
    )
}

/// A rule given by manifest lines; the first line whose patterns match and
/// whose guard holds gives the value, no match gives zero.
pub struct ManifestRule {
    label: String,
    lines: Vec<RuleDecl>,
    gens: GeneratorSet,
    memo: Mutex<HashMap<(GenIndex, GenIndex), LambdaPoly>>,
}

impl ManifestRule {
    pub fn new(label: &str, lines: Vec<RuleDecl>, gens: GeneratorSet) -> Self {
        ManifestRule { label: label.to_string(), lines, gens, memo: Mutex::new(HashMap::new()) }
    }

    fn compute(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly> {
        let spectral = [String::from("L")];
        for line in &self.lines {
            let mut bd = Bindings::new();
            if !(match_pattern(&line.left, a, &mut bd) && match_pattern(&line.right, b, &mut bd)) {
                continue;
            }
            let ev = Eval::new(&bd, &spectral);
            if !ev.holds(&line.guard)? {
                continue;
            }
            let v = ev.element(&line.body)?;
            check_outputs(&self.gens, &v, &format!("{} on ({}, {})", self.label, a, b))?;
            return Ok(v);
        }
        Ok(LambdaPoly::zero(1))
    }
}

impl Rule for ManifestRule {
    fn on_generators(&self, a: &GenIndex, b: &GenIndex) -> EvalResult<LambdaPoly> {
        for g in [a, b] {
            if !self.gens.contains(g) {
                return Err(EvalError::WindowEscape { gen: g.clone() });
            }
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(a, b)?;
        self.memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }
}

fn op_rule(lines: &[RuleDecl], op: RuleOp, gens: &GeneratorSet) -> RuleRef {
    let picked: Vec<RuleDecl> = lines.iter().filter(|r| r.op == op).cloned().collect();
    Arc::new(ManifestRule::new(&op.to_string(), picked, gens.clone()))
}

/// The algebra of a manifest. Operations without rule lines are zero.
pub fn algebra(m: &Manifest) -> ConformalAlgebra {
    let gens = generator_set(m);
    let name = m.name.clone().unwrap_or_else(|| String::from("manifest"));
    let alg = ConformalAlgebra::new(&name, gens.clone())
        .with_product(op_rule(&m.rules, RuleOp::Product, &gens))
        .with_bracket(op_rule(&m.rules, RuleOp::Bracket, &gens));
    match m.kind {
        Kind::Poisson => alg,
        Kind::Noncommutative => alg.noncommutative(),
    }
}

/// The deformation series `mu_1 .. mu_N` over the manifest's algebra, `N`
/// the largest declared index; `None` without a deformation section.
pub fn series(m: &Manifest) -> Option<DeformationSeries> {
    if m.deformation.is_empty() {
        return None;
    }
    let alg = algebra(m);
    let top = m.deformation.iter().map(|r| if let RuleOp::Mu(k) = r.op { k } else { 0 }).max().unwrap_or(0);
    let mut ds = DeformationSeries::new(alg.clone());
    for k in 1..=top {
        ds = ds.with_term(op_rule(&m.deformation, RuleOp::Mu(k), &alg.gens));
    }
    Some(ds)
}

/// The Nijenhuis map; generators matching no line go to zero.
pub fn nijenhuis_map(m: &Manifest) -> Option<LinearMap> {
    if m.nijenhuis.is_empty() {
        return None;
    }
    let lines = m.nijenhuis.clone();
    let gens = generator_set(m);
    Some(LinearMap::new("N", move |g: &GenIndex| {
        for line in &lines {
            let mut bd = Bindings::new();
            if !match_pattern(&line.pattern, g, &mut bd) {
                continue;
            }
            let ev = Eval::new(&bd, &[]);
            if !ev.holds(&line.guard)? {
                continue;
            }
            let v = ev.element(&line.body)?;
            check_outputs(&gens, &v, &format!("the Nijenhuis map on {}", g))?;
            return Ok(v.to_mod());
        }
        Ok(Default::default())
    }))
}

/// Declared cochains, grouped by name into elements of the total complex,
/// in order of first appearance.
pub fn cochains(m: &Manifest) -> Vec<(String, Graded)> {
    let mut order: Vec<String> = Vec::new();
    let mut by: BTreeMap<(String, usize, usize), Vec<CochainDecl>> = BTreeMap::new();
    for c in &m.cochains {
        if !order.contains(&c.name) {
            order.push(c.name.clone());
        }
        by.entry((c.name.clone(), c.m, c.n)).or_default().push(c.clone());
    }
    let gens = generator_set(m);
    let mut out = Vec::new();
    for name in order {
        let mut g: Option<Graded> = None;
        for ((n, bm, bn), lines) in &by {
            if *n != name {
                continue;
            }
            let (bm, bn) = (*bm, *bn);
            let spectral = crate::manifest::cochain_vars(bm, bn);
            let gens = gens.clone();
            let lines = lines.clone();
            let c = Cochain::new(bm, bn, move |t: &[GenIndex]| {
                for line in &lines {
                    let mut bd = Bindings::new();
                    if !line.args.iter().zip(t).all(|(p, g)| match_pattern(p, g, &mut bd)) {
                        continue;
                    }
                    let ev = Eval::new(&bd, &spectral);
                    if !ev.holds(&line.guard)? {
                        continue;
                    }
                    let v = ev.element(&line.body)?;
                    check_outputs(&gens, &v, &format!("cochain {}", line.name))?;
                    return Ok(v);
                }
                Ok(LambdaPoly::zero(spectral.len()))
            });
            g.get_or_insert_with(|| Graded::new(bm + bn)).insert(c);
        }
        out.push((name, g.expect("at least one component")));
    }
    out
}

pub type ReferenceFn = Arc<dyn Fn(&GenIndex, i64, &GenIndex, i64) -> EvalResult<CoeffElement> + Send + Sync>;

/// The reference formula for the coefficient bracket; pairs matching no line
/// are expected to bracket to zero.
pub fn reference(m: &Manifest) -> Option<ReferenceFn> {
    if m.reference.is_empty() {
        return None;
    }
    let lines = m.reference.clone();
    Some(Arc::new(move |a: &GenIndex, ma: i64, b: &GenIndex, mb: i64| {
        for line in &lines {
            let mut bd = Bindings::new();
            if !(match_pattern(&line.left.0, a, &mut bd)
                && bind(&mut bd, &line.left.1, ma)
                && match_pattern(&line.right.0, b, &mut bd)
                && bind(&mut bd, &line.right.1, mb))
            {
                continue;
            }
            let ev = Eval::new(&bd, &[]);
            if !ev.holds(&line.guard)? {
                continue;
            }
            let v = ev.element(&line.body)?;
            let modes = ev.modes.borrow();
            let mut out = CoeffElement::zero();
            for (mono, c) in v.terms() {
                if mono.d != 0 {
                    return Err(bad(String::from("reference formulas cannot use D")));
                }
                let (g, k) = modes.get(&mono.gen).cloned().ok_or_else(|| bad(format!("{} has no mode", mono.gen)))?;
                out.add_term(g, k, c.clone());
            }
            return Ok(out);
        }
        Ok(CoeffElement::zero())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifest::parse;
    use conformal_core::symcore::Exps;

    fn x(i: i64) -> GenIndex {
        GenIndex::new("x", &[i])
    }

    #[test]
    fn rule_values() {
        let m = parse("[generators]\nx[m]\n[rules]\nbracket x[m] x[n] = (m*D + (m+n)*L) x[m+n-1]\n").unwrap();
        let alg = algebra(&m);
        let br = alg.bracket.unwrap();
        let v = br.on_generators(&x(2), &x(3)).unwrap();
        let mut want = LambdaPoly::zero(1);
        want.add_mono(Exps::from_elem(0, 1), x(4), 1, Scalar::from_int(2));
        want.add_mono(Exps::from_elem(1, 1), x(4), 0, Scalar::from_int(5));
        assert_eq!(v, want);
        // x[-1] appears with a zero coefficient only
        assert!(br.on_generators(&x(0), &x(0)).unwrap().is_zero());
        assert!(alg.product.unwrap().on_generators(&x(0), &x(1)).unwrap().is_zero());
    }

    #[test]
    fn guards_and_escapes() {
        let m = parse("[generators]\nx[m: 0..3]\n[rules]\nproduct x[m] x[n] = x[m+n] if m + n <= 3\n").unwrap();
        let p = algebra(&m).product.unwrap();
        assert_eq!(p.on_generators(&x(1), &x(2)).unwrap(), LambdaPoly::generator(x(3), 1));
        assert!(p.on_generators(&x(2), &x(2)).unwrap().is_zero());
        assert!(matches!(p.on_generators(&x(4), &x(0)), Err(EvalError::WindowEscape { .. })));
        let m = parse("[generators]\nx[m: 0..3]\n[rules]\nproduct x[m] x[n] = x[m+n]\n").unwrap();
        assert!(matches!(algebra(&m).product.unwrap().on_generators(&x(2), &x(2)), Err(EvalError::Shape(_))));
    }

    #[test]
    fn reference_values() {
        let m = parse("[generators]\nx[m]\n[reference]\ncoeff x[k]_(a) x[l]_b = (l*a - k*b) x[k+l-1]_(a+b-1) if k + l >= 1\n").unwrap();
        let f = reference(&m).unwrap();
        assert_eq!(f(&x(2), 3, &x(1), -1).unwrap(), CoeffElement::mode(x(2), 1).scale(&Scalar::from_int(5)));
        assert!(f(&x(0), 3, &x(0), -1).unwrap().is_zero());
    }

    #[test]
    fn binomials_and_fractions() {
        let m = parse("[generators]\nx[m]\n[deformation]\nmu2 x[m] x[n] = C(n, 2) L^2 x[m+n-2] / 2 if n >= 2\n").unwrap();
        let ds = series(&m).unwrap();
        assert_eq!(ds.order(), 2);
        assert!(ds.mu(1).on_generators(&x(1), &x(1)).unwrap().is_zero());
        let v = ds.mu(2).on_generators(&x(1), &x(3)).unwrap();
        let mut want = LambdaPoly::zero(1);
        want.add_mono(Exps::from_elem(2, 1), x(2), 0, Scalar::new(3, 2));
        assert_eq!(v, want);
    }
}
