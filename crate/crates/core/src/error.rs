use alloc::string::String;
use core::fmt;

use crate::symcore::GenIndex;

/// Failures of an evaluation or construction. A `WindowEscape` makes the
/// affected check inconclusive rather than failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    /// A rule was asked about a generator outside the range where it is defined.
    WindowEscape { gen: GenIndex },
    /// A required structure (product, bracket, module action, ...) is absent.
    MissingStructure(String),
    /// A constructor's hypotheses do not hold; the message names the failing check.
    PreconditionFailed(String),
    /// Arguments of the wrong shape (arity, context size, bidegree).
    Shape(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::WindowEscape { gen } => write!(f, "generator {} is outside the window", gen),
            EvalError::MissingStructure(s) => write!(f, "missing structure: {}", s),
            EvalError::PreconditionFailed(s) => write!(f, "precondition failed: {}", s),
            EvalError::Shape(s) => write!(f, "shape mismatch: {}", s),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EvalError {}

pub type EvalResult<T> = Result<T, EvalError>;
