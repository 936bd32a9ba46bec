use std::collections::BTreeMap;

use conformal_core::symcore::Scalar;

use super::lex::{lex_line, Tok, Token};
use super::*;

type PResult<T> = Result<T, ParseError>;

const RESERVED: &[&str] = &["D", "L", "C", "if", "and", "map", "coeff", "product", "bracket", "adjoint"];
const NON_RATIONAL: &[&str] = &["pi", "e", "inf", "nan", "sqrt", "exp", "log", "sin", "cos", "I"];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Algebra,
    Generators,
    Rules,
    Module,
    Deformation,
    Nijenhuis,
    Cochains,
    Reference,
    Options,
}

fn section(name: &str) -> Option<Section> {
    Some(match name {
        "algebra" => Section::Algebra,
        "generators" => Section::Generators,
        "rules" => Section::Rules,
        "module" => Section::Module,
        "deformation" => Section::Deformation,
        "nijenhuis" => Section::Nijenhuis,
        "cochains" => Section::Cochains,
        "reference" => Section::Reference,
        "options" => Section::Options,
        _ => return None,
    })
}

/// `D`, `L`, `M`, `L1`, `M2`, ...
fn is_spectral(name: &str) -> bool {
    let mut cs = name.chars();
    matches!(cs.next(), Some('D') | Some('L') | Some('M')) && (name == "D" || cs.all(|c| c.is_ascii_digit()))
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::SyntaxError { line, col, msg: msg.into() }
}

/// Names an expression may use besides literals and generators.
#[derive(Default)]
struct Scope {
    params: Vec<String>,
    spectral: Vec<String>,
    modes: bool,
}

impl Scope {
    fn knows(&self, name: &str) -> bool {
        self.params.iter().any(|p| p == name) || self.spectral.iter().any(|p| p == name)
    }
}

struct Cursor<'a> {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    /// Column just past the end of the line, for errors at end of input.
    end: usize,
    families: &'a BTreeMap<String, usize>,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.col)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        syntax(self.line, self.col(), msg)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", s)))
        }
    }

    fn ident(&mut self) -> PResult<(String, usize)> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                let c = self.col();
                self.pos += 1;
                Ok((s, c))
            }
            _ => Err(self.err("expected a name")),
        }
    }

    fn done(&self) -> PResult<()> {
        if self.pos < self.toks.len() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    fn signed_int(&mut self) -> PResult<i64> {
        let neg = self.eat_sym("-");
        match self.peek() {
            Some(Tok::Int(s)) => {
                let v: i64 = s.parse().map_err(|_| self.err("integer out of range"))?;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn family_arity(&self, name: &str, col: usize) -> PResult<usize> {
        self.families
            .get(name)
            .copied()
            .ok_or_else(|| ParseError::UndeclaredGenerator { line: self.line, col, name: name.into() })
    }

    fn pattern(&mut self, vars: &mut Vec<String>) -> PResult<Pattern> {
        let (family, col) = self.ident()?;
        let arity = self.family_arity(&family, col)?;
        let mut args = Vec::new();
        if self.eat_sym("[") {
            loop {
                match self.peek() {
                    Some(Tok::Ident(_)) => {
                        let (v, vc) = self.ident()?;
                        if RESERVED.contains(&v.as_str()) || self.families.contains_key(&v) || is_spectral(&v) {
                            return Err(syntax(self.line, vc, format!("`{}` cannot be a pattern variable", v)));
                        }
                        if !vars.contains(&v) {
                            vars.push(v.clone());
                        }
                        args.push(PatArg::Var(v));
                    }
                    _ => args.push(PatArg::Int(self.signed_int()?)),
                }
                if self.eat_sym("]") {
                    break;
                }
                self.expect_sym(",")?;
            }
        }
        if args.len() != arity {
            return Err(ParseError::ArityMismatch { line: self.line, col, family, expected: arity, found: args.len() });
        }
        Ok(Pattern { family, args })
    }

    fn mode_pattern(&mut self, vars: &mut Vec<String>) -> PResult<(Pattern, String)> {
        let p = self.pattern(vars)?;
        self.expect_sym("_")?;
        let paren = self.eat_sym("(");
        let (v, vc) = self.ident()?;
        if RESERVED.contains(&v.as_str()) || self.families.contains_key(&v) || vars.contains(&v) || is_spectral(&v) {
            return Err(syntax(self.line, vc, format!("`{}` cannot be a mode variable", v)));
        }
        if paren {
            self.expect_sym(")")?;
        }
        vars.push(v.clone());
        Ok((p, v))
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(Tok::Int(_)) => true,
            Some(Tok::Ident(s)) => s != "if" && s != "and",
            Some(Tok::Sym("(")) => true,
            _ => false,
        }
    }

    fn expr(&mut self, sc: &Scope) -> PResult<Expr> {
        let mut lhs = self.term(sc)?;
        loop {
            if self.eat_sym("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term(sc)?));
            } else if self.eat_sym("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term(sc)?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self, sc: &Scope) -> PResult<Expr> {
        let mut lhs = self.unary(sc)?;
        loop {
            if self.eat_sym("*") {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary(sc)?));
            } else if self.eat_sym("/") {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary(sc)?));
            } else if self.starts_atom() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power(sc)?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self, sc: &Scope) -> PResult<Expr> {
        if self.eat_sym("-") {
            Ok(Expr::Neg(Box::new(self.unary(sc)?)))
        } else if self.eat_sym("+") {
            self.unary(sc)
        } else {
            self.power(sc)
        }
    }

    fn power(&mut self, sc: &Scope) -> PResult<Expr> {
        let base = self.atom(sc)?;
        if self.eat_sym("^") {
            match self.peek() {
                Some(Tok::Int(s)) => {
                    let k: u32 = s.parse().map_err(|_| self.err("exponent out of range"))?;
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self, sc: &Scope) -> PResult<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let ten = Scalar::from_int(10);
                let mut v = Scalar::zero();
                for d in s.bytes() {
                    v = &(&v * &ten) + &Scalar::from_int((d - b'0') as i64);
                }
                Ok(Expr::Num(v))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr(sc)?;
                self.expect_sym(")")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                let col = self.col();
                self.pos += 1;
                self.resolve(name, col, sc)
            }
            _ => Err(self.err("expected an expression")),
        }
    }

    fn resolve(&mut self, name: String, col: usize, sc: &Scope) -> PResult<Expr> {
        if self.is_sym("[") {
            let arity = self.family_arity(&name, col)?;
            self.pos += 1;
            let mut args = Vec::new();
            if !self.eat_sym("]") {
                loop {
                    args.push(self.expr(sc)?);
                    if self.eat_sym("]") {
                        break;
                    }
                    self.expect_sym(",")?;
                }
            }
            if args.len() != arity {
                return Err(ParseError::ArityMismatch { line: self.line, col, family: name, expected: arity, found: args.len() });
            }
            return self.with_mode(name, args, sc);
        }
        if name == "C" && self.is_sym("(") {
            self.pos += 1;
            let a = self.expr(sc)?;
            self.expect_sym(",")?;
            let b = self.expr(sc)?;
            self.expect_sym(")")?;
            return Ok(Expr::Call { func: name, args: vec![a, b] });
        }
        if sc.knows(&name) {
            return Ok(Expr::Var(name));
        }
        if let Some(&arity) = self.families.get(&name) {
            if arity != 0 {
                return Err(ParseError::ArityMismatch { line: self.line, col, family: name, expected: arity, found: 0 });
            }
            return self.with_mode(name, Vec::new(), sc);
        }
        if NON_RATIONAL.contains(&name.as_str()) {
            return Err(ParseError::NonRationalLiteral { line: self.line, col, text: name });
        }
        if is_spectral(&name) {
            return Err(syntax(self.line, col, format!("spectral variable `{}` is not available here", name)));
        }
        Err(ParseError::UndeclaredGenerator { line: self.line, col, name })
    }

    fn with_mode(&mut self, family: String, args: Vec<Expr>, sc: &Scope) -> PResult<Expr> {
        let mode = if self.is_sym("_") {
            if !sc.modes {
                return Err(self.err("modes are only allowed in reference formulas"));
            }
            self.pos += 1;
            Some(Box::new(self.atom(sc)?))
        } else {
            None
        };
        Ok(Expr::Gen { family, args, mode })
    }

    fn guard(&mut self, sc: &Scope) -> PResult<Guard> {
        let mut out = Vec::new();
        if !self.is_ident("if") {
            return Ok(out);
        }
        self.pos += 1;
        loop {
            let lhs = self.expr(sc)?;
            let op = match self.bump().map(|t| t.tok) {
                Some(Tok::Sym("<")) => CmpOp::Lt,
                Some(Tok::Sym("<=")) => CmpOp::Le,
                Some(Tok::Sym(">")) => CmpOp::Gt,
                Some(Tok::Sym(">=")) => CmpOp::Ge,
                Some(Tok::Sym("==")) => CmpOp::Eq,
                Some(Tok::Sym("!=")) => CmpOp::Ne,
                _ => {
                    self.pos -= 1;
                    return Err(self.err("expected a comparison"));
                }
            };
            let rhs = self.expr(sc)?;
            out.push(Comparison { lhs, op, rhs });
            if !self.is_ident("and") {
                return Ok(out);
            }
            self.pos += 1;
        }
    }

    /// `= body [if guard]` to the end of the line.
    fn body(&mut self, sc: &Scope) -> PResult<(Expr, Guard)> {
        self.expect_sym("=")?;
        let e = self.expr(sc)?;
        let g = self.guard(sc)?;
        self.done()?;
        Ok((e, g))
    }
}

fn params_scope(vars: Vec<String>, spectral: &[&str]) -> Scope {
    Scope { params: vars, spectral: spectral.iter().map(|s| s.to_string()).collect(), modes: false }
}

/// Spectral variable names of a cochain of bidegree `(m, n)`.
pub fn cochain_vars(m: usize, n: usize) -> Vec<String> {
    if n == 0 {
        (1..m).map(|i| format!("L{}", i)).collect()
    } else {
        (1..=m).map(|i| format!("L{}", i)).chain((1..n).map(|i| format!("M{}", i))).collect()
    }
}

fn family_decl(c: &mut Cursor) -> PResult<FamilyDecl> {
    let (name, col) = c.ident()?;
    if RESERVED.contains(&name.as_str()) || NON_RATIONAL.contains(&name.as_str()) || is_spectral(&name) {
        return Err(syntax(c.line, col, format!("`{}` is reserved", name)));
    }
    let mut params = Vec::new();
    if c.eat_sym("[") {
        loop {
            let (p, _) = c.ident()?;
            let (mut lo, mut hi) = (Some(0), None);
            if c.eat_sym(":") {
                lo = if c.is_sym("..") { None } else { Some(c.signed_int()?) };
                c.expect_sym("..")?;
                hi = if c.is_sym(",") || c.is_sym("]") { None } else { Some(c.signed_int()?) };
            }
            if let (Some(a), Some(b)) = (lo, hi) {
                if a > b {
                    return Err(c.err(format!("empty range {}..{}", a, b)));
                }
            }
            params.push(ParamDecl { name: p, lo, hi });
            if c.eat_sym("]") {
                break;
            }
            c.expect_sym(",")?;
        }
    }
    Ok(FamilyDecl { name, params })
}

struct Line {
    no: usize,
    end: usize,
    toks: Vec<Token>,
}

/// Parse a manifest; families may be declared anywhere in the file.
pub fn parse(text: &str) -> Result<Manifest, ParseError> {
    let mut lines: Vec<(Option<Section>, Line)> = Vec::new();
    let mut current: Option<Section> = None;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let toks = lex_line(raw, no)?;
        if toks.is_empty() {
            continue;
        }
        if raw.trim_start().starts_with('[') {
            let name = match (&toks.get(1).map(|t| &t.tok), toks.get(2).map(|t| &t.tok), toks.len()) {
                (Some(Tok::Ident(n)), Some(Tok::Sym("]")), 3) => n.clone(),
                _ => return Err(syntax(no, toks[0].col, "malformed section header")),
            };
            current = Some(section(&name).ok_or_else(|| syntax(no, toks[1].col, format!("unknown section `{}`", name)))?);
            continue;
        }
        if current.is_none() {
            return Err(syntax(no, toks[0].col, "statement outside of any section"));
        }
        lines.push((current, Line { no, end: raw.chars().count() + 1, toks }));
    }

    let mut m = Manifest::default();
    let mut families: BTreeMap<String, usize> = BTreeMap::new();
    let empty = BTreeMap::new();
    for (s, l) in &lines {
        if *s != Some(Section::Generators) {
            continue;
        }
        let mut c = Cursor { toks: l.toks.clone(), pos: 0, line: l.no, end: l.end, families: &empty };
        while c.pos < c.toks.len() {
            let col = c.col();
            let f = family_decl(&mut c)?;
            if families.insert(f.name.clone(), f.params.len()).is_some() {
                return Err(syntax(l.no, col, format!("family `{}` declared twice", f.name)));
            }
            m.families.push(f);
            c.eat_sym(",");
        }
    }

    let mut cochain_degree: BTreeMap<String, usize> = BTreeMap::new();
    for (s, l) in &lines {
        let mut c = Cursor { toks: l.toks.clone(), pos: 0, line: l.no, end: l.end, families: &families };
        match s.unwrap() {
            Section::Generators => {}
            Section::Algebra => {
                let (key, col) = c.ident()?;
                c.expect_sym("=")?;
                match key.as_str() {
                    "name" => match c.bump().map(|t| t.tok) {
                        Some(Tok::Str(s)) => m.name = Some(s),
                        _ => return Err(syntax(l.no, col, "expected a quoted name")),
                    },
                    "kind" => {
                        let (k, kc) = c.ident()?;
                        m.kind = match k.as_str() {
                            "poisson" => Kind::Poisson,
                            "noncommutative" => Kind::Noncommutative,
                            _ => return Err(syntax(l.no, kc, format!("unknown kind `{}`", k))),
                        };
                    }
                    _ => return Err(syntax(l.no, col, format!("unknown key `{}`", key))),
                }
                c.done()?;
            }
            Section::Rules | Section::Deformation => {
                let (word, col) = c.ident()?;
                let op = match (s.unwrap(), word.as_str()) {
                    (Section::Rules, "product") => RuleOp::Product,
                    (Section::Rules, "bracket") => RuleOp::Bracket,
                    (Section::Deformation, w) if w.starts_with("mu") => match w[2..].parse::<u32>() {
                        Ok(k) if k >= 1 => RuleOp::Mu(k),
                        _ => return Err(syntax(l.no, col, "expected `mu1`, `mu2`, ...")),
                    },
                    (Section::Rules, _) => return Err(syntax(l.no, col, "expected `product` or `bracket`")),
                    _ => return Err(syntax(l.no, col, "expected `mu1`, `mu2`, ...")),
                };
                let mut vars = Vec::new();
                let left = c.pattern(&mut vars)?;
                let right = c.pattern(&mut vars)?;
                let (body, guard) = c.body(&params_scope(vars, &["D", "L"]))?;
                let decl = RuleDecl { op, left, right, body, guard };
                if s.unwrap() == Section::Rules {
                    m.rules.push(decl);
                } else {
                    m.deformation.push(decl);
                }
            }
            Section::Module => {
                let (w, col) = c.ident()?;
                if w != "adjoint" {
                    return Err(syntax(l.no, col, format!("unknown module `{}` (only `adjoint` is supported)", w)));
                }
                c.done()?;
                m.module = Some(ModuleDecl::Adjoint);
            }
            Section::Nijenhuis => {
                let (w, col) = c.ident()?;
                if w != "map" {
                    return Err(syntax(l.no, col, "expected `map`"));
                }
                let mut vars = Vec::new();
                let pattern = c.pattern(&mut vars)?;
                let (body, guard) = c.body(&params_scope(vars, &["D"]))?;
                m.nijenhuis.push(MapDecl { pattern, body, guard });
            }
            Section::Cochains => {
                let (name, col) = c.ident()?;
                if families.contains_key(&name) || RESERVED.contains(&name.as_str()) {
                    return Err(syntax(l.no, col, format!("`{}` cannot name a cochain", name)));
                }
                c.expect_sym("(")?;
                let bm = c.signed_int()?;
                c.expect_sym(",")?;
                let bn = c.signed_int()?;
                c.expect_sym(")")?;
                if bm < 0 || bn < 0 || bm + bn < 1 {
                    return Err(syntax(l.no, col, "a cochain needs a bidegree (m, n) with m + n >= 1"));
                }
                if bn == 1 {
                    return Err(syntax(l.no, col, "bidegree (m, 1) is not part of the total complex"));
                }
                let (bm, bn) = (bm as usize, bn as usize);
                if let Some(&d) = cochain_degree.get(&name) {
                    if d != bm + bn {
                        return Err(syntax(l.no, col, format!("cochain `{}` mixes degrees {} and {}", name, d, bm + bn)));
                    }
                }
                cochain_degree.insert(name.clone(), bm + bn);
                let mut vars = Vec::new();
                let mut args = Vec::new();
                while !c.is_sym("=") {
                    if c.pos >= c.toks.len() {
                        return Err(c.err("expected `=`"));
                    }
                    args.push(c.pattern(&mut vars)?);
                }
                if args.len() != bm + bn {
                    return Err(syntax(l.no, col, format!("bidegree ({}, {}) needs {} argument patterns, found {}", bm, bn, bm + bn, args.len())));
                }
                let spectral: Vec<String> = std::iter::once("D".to_string()).chain(cochain_vars(bm, bn)).collect();
                let sc = Scope { params: vars, spectral, modes: false };
                let (body, guard) = c.body(&sc)?;
                m.cochains.push(CochainDecl { name, m: bm, n: bn, args, body, guard });
            }
            Section::Reference => {
                let (w, col) = c.ident()?;
                if w != "coeff" {
                    return Err(syntax(l.no, col, "expected `coeff`"));
                }
                let mut vars = Vec::new();
                let left = c.mode_pattern(&mut vars)?;
                let right = c.mode_pattern(&mut vars)?;
                let sc = Scope { params: vars, spectral: Vec::new(), modes: true };
                let (body, guard) = c.body(&sc)?;
                m.reference.push(ReferenceDecl { left, right, body, guard });
            }
            Section::Options => {
                let col = c.col();
                let mut key = c.ident()?.0;
                while c.eat_sym("-") {
                    match c.bump().map(|t| t.tok) {
                        Some(Tok::Ident(s)) | Some(Tok::Int(s)) => {
                            key.push('-');
                            key.push_str(&s);
                        }
                        _ => return Err(syntax(l.no, col, "malformed option name")),
                    }
                }
                if !OPTION_KEYS.contains(&key.as_str()) {
                    return Err(syntax(l.no, col, format!("unknown option `{}`", key)));
                }
                c.expect_sym("=")?;
                let a = c.signed_int()?;
                let v = if c.eat_sym("..") {
                    let b = c.signed_int()?;
                    if a > b {
                        return Err(syntax(l.no, col, format!("empty range {}..{}", a, b)));
                    }
                    OptValue::Range(a, b)
                } else {
                    OptValue::Int(a)
                };
                c.done()?;
                let want_range = key == "modes";
                if want_range != matches!(v, OptValue::Range(..)) {
                    return Err(syntax(l.no, col, format!("option `{}` expects {}", key, if want_range { "a range a..b" } else { "an integer" })));
                }
                if !want_range && key != "seed" && matches!(v, OptValue::Int(x) if x < 0) {
                    return Err(syntax(l.no, col, format!("option `{}` must be nonnegative", key)));
                }
                m.options.insert(key, v);
            }
        }
    }
    Ok(m)
}
