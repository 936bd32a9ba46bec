//! Generator indices: a family name plus integer parameters.

use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use smallvec::SmallVec;

pub type Params = SmallVec<[i64; 2]>;

/// A basis element of a free `Q[D]`-module, e.g. `x[3]` or `e1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenIndex {
    pub family: Arc<str>,
    pub params: Params,
}

impl GenIndex {
    pub fn new(family: &str, params: &[i64]) -> Self {
        GenIndex { family: Arc::from(family), params: SmallVec::from_slice(params) }
    }

    pub fn with_family(family: Arc<str>, params: &[i64]) -> Self {
        GenIndex { family, params: SmallVec::from_slice(params) }
    }

    pub fn named(name: &str) -> Self {
        Self::new(name, &[])
    }

    /// Sum of parameters; used for windows and gradings.
    pub fn degree(&self) -> i64 {
        self.params.iter().sum()
    }

    pub fn renamed(&self, family: Arc<str>) -> Self {
        GenIndex { family, params: self.params.clone() }
    }

    pub fn to_text(&self) -> String {
        alloc::format!("{}", self)
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if !self.params.is_empty() {
            write!(f, "[")?;
            for (i, p) in self.params.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
