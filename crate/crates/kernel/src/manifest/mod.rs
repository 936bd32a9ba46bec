//! The manifest format: a line-oriented text description of an algebra,
//! optional deformation data, Nijenhuis map, cochains, a reference formula
//! for the coefficient bracket and per-command options.
//!
//! See `docs/manifest-grammar.md` for the grammar.

mod lex;
mod parse;
mod print;

use std::collections::BTreeMap;

use conformal_core::symcore::Scalar;

pub use parse::{cochain_vars, parse};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: undeclared generator `{name}`")]
    UndeclaredGenerator { line: usize, col: usize, name: String },
    #[error("{line}:{col}: `{family}` takes {expected} parameter(s), found {found}")]
    ArityMismatch { line: usize, col: usize, family: String, expected: usize, found: usize },
    #[error("{line}:{col}: non-rational literal `{text}`")]
    NonRationalLiteral { line: usize, col: usize, text: String },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::SyntaxError { line, col, .. }
            | ParseError::UndeclaredGenerator { line, col, .. }
            | ParseError::ArityMismatch { line, col, .. }
            | ParseError::NonRationalLiteral { line, col, .. } => (*line, *col),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Kind {
    #[default]
    Poisson,
    Noncommutative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamDecl {
    pub name: String,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDecl {
    pub name: String,
    pub params: Vec<ParamDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatArg {
    Var(String),
    Int(i64),
}

/// A generator pattern such as `x[m]`, `y[i, 0]` or `e11`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub family: String,
    pub args: Vec<PatArg>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Scalar),
    Var(String),
    /// A generator `x[args]`, with a mode `_(e)` in reference formulas.
    Gen { family: String, args: Vec<Expr>, mode: Option<Box<Expr>> },
    Call { func: String, args: Vec<Expr> },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub lhs: Expr,
    pub op: CmpOp,
    pub rhs: Expr,
}

/// Conjunction of comparisons; empty means always.
pub type Guard = Vec<Comparison>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleOp {
    Product,
    Bracket,
    /// `mu_k`, `k >= 1`, of a deformation series.
    Mu(u32),
}

/// `op left right = body [if guard]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleDecl {
    pub op: RuleOp,
    pub left: Pattern,
    pub right: Pattern,
    pub body: Expr,
    pub guard: Guard,
}

/// `map pattern = body [if guard]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapDecl {
    pub pattern: Pattern,
    pub body: Expr,
    pub guard: Guard,
}

/// `name (m, n) patterns... = body [if guard]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainDecl {
    pub name: String,
    pub m: usize,
    pub n: usize,
    pub args: Vec<Pattern>,
    pub body: Expr,
    pub guard: Guard,
}

/// `coeff x[k]_(m) x[l]_(n) = body [if guard]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceDecl {
    pub left: (Pattern, String),
    pub right: (Pattern, String),
    pub body: Expr,
    pub guard: Guard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleDecl {
    Adjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptValue {
    Int(i64),
    Range(i64, i64),
}

pub const OPTION_KEYS: &[&str] = &[
    "window",
    "modes",
    "family-window",
    "table-window",
    "ansatz-ddeg",
    "ansatz-ldeg",
    "d2-samples",
    "d2-window",
    "d2-max-total",
    "action-samples",
    "seed",
    "truncate",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Manifest {
    pub name: Option<String>,
    pub kind: Kind,
    pub families: Vec<FamilyDecl>,
    pub rules: Vec<RuleDecl>,
    pub module: Option<ModuleDecl>,
    pub deformation: Vec<RuleDecl>,
    pub nijenhuis: Vec<MapDecl>,
    pub cochains: Vec<CochainDecl>,
    pub reference: Vec<ReferenceDecl>,
    pub options: BTreeMap<String, OptValue>,
}

impl Manifest {
    pub fn option_int(&self, key: &str) -> Option<i64> {
        match self.options.get(key) {
            Some(OptValue::Int(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn option_range(&self, key: &str) -> Option<(i64, i64)> {
        match self.options.get(key) {
            Some(OptValue::Range(a, b)) => Some((*a, *b)),
            _ => None,
        }
    }
}
