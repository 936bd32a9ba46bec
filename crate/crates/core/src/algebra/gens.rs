//! Generator sets: finitely many indexed families, each with parameter bounds.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::symcore::GenIndex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: Arc<str>,
    /// Inclusive bounds per parameter; `None` means unbounded on that side.
    pub bounds: Vec<(Option<i64>, Option<i64>)>,
}

impl Family {
    /// A single generator with no parameters.
    pub fn single(name: &str) -> Self {
        Family { name: Arc::from(name), bounds: Vec::new() }
    }

    /// Parameters `>= 0`, unbounded above.
    pub fn naturals(name: &str, arity: usize) -> Self {
        Family { name: Arc::from(name), bounds: alloc::vec![(Some(0), None); arity] }
    }

    pub fn bounded(name: &str, bounds: &[(Option<i64>, Option<i64>)]) -> Self {
        Family { name: Arc::from(name), bounds: bounds.to_vec() }
    }

    pub fn arity(&self) -> usize {
        self.bounds.len()
    }

    pub fn contains(&self, g: &GenIndex) -> bool {
        *g.family == *self.name
            && g.params.len() == self.bounds.len()
            && g.params.iter().zip(&self.bounds).all(|(p, (lo, hi))| {
                lo.map_or(true, |l| *p >= l) && hi.map_or(true, |h| *p <= h)
            })
    }

    /// Members with `sum |p_i| <= window`, in lexicographic order.
    pub fn enumerate(&self, window: i64) -> Vec<GenIndex> {
        let mut out = Vec::new();
        let mut cur: Vec<i64> = Vec::with_capacity(self.arity());
        self.rec(window, &mut cur, &mut out);
        out
    }

    fn rec(&self, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<GenIndex>) {
        let i = cur.len();
        if i == self.arity() {
            out.push(GenIndex::with_family(self.name.clone(), cur));
            return;
        }
        let (lo, hi) = self.bounds[i];
        let lo = lo.map_or(-budget, |l| l.max(-budget));
        let hi = hi.map_or(budget, |h| h.min(budget));
        let mut p = lo;
        while p <= hi {
            cur.push(p);
            self.rec(budget - p.abs(), cur, out);
            cur.pop();
            p += 1;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorSet {
    pub families: Vec<Family>,
}

impl GeneratorSet {
    pub fn new(families: Vec<Family>) -> Self {
        GeneratorSet { families }
    }

    pub fn singles(names: &[&str]) -> Self {
        GeneratorSet { families: names.iter().map(|n| Family::single(n)).collect() }
    }

    pub fn contains(&self, g: &GenIndex) -> bool {
        self.families.iter().any(|f| f.contains(g))
    }

    pub fn family(&self, name: &str) -> Option<&Family> {
        self.families.iter().find(|f| &*f.name == name)
    }

    /// All generators inside the window, sorted.
    pub fn enumerate(&self, window: i64) -> Vec<GenIndex> {
        let mut out: Vec<GenIndex> = self.families.iter().flat_map(|f| f.enumerate(window)).collect();
        out.sort();
        out
    }

    pub fn names(&self) -> Vec<String> {
        self.families.iter().map(|f| String::from(&*f.name)).collect()
    }

    /// Disjoint union; panics on a family-name clash.
    pub fn union(&self, other: &GeneratorSet) -> GeneratorSet {
        for f in &other.families {
            assert!(self.family(&f.name).is_none(), "family {} declared twice", f.name);
        }
        let mut families = self.families.clone();
        families.extend(other.families.iter().cloned());
        GeneratorSet { families }
    }
}
