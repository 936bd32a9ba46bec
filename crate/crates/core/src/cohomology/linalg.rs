//! Sparse exact linear systems over the rationals.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::symcore::Scalar;

pub type SparseRow = BTreeMap<usize, Scalar>;

/// Row echelon form built one equation at a time. Each stored row has its
/// pivot as its smallest column, with coefficient 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, (SparseRow, Scalar)>,
    inconsistent: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add the equation `row . x = rhs`.
    pub fn push(&mut self, mut row: SparseRow, mut rhs: Scalar) {
        row.retain(|_, v| !v.is_zero());
        while let Some((&c, v)) = row.iter().next() {
            let v = v.clone();
            match self.pivots.get(&c) {
                Some((prow, prhs)) => {
                    for (j, pv) in prow {
                        let e = row.entry(*j).or_insert(Scalar::ZERO);
                        *e -= &(&v * pv);
                        if e.is_zero() {
                            row.remove(j);
                        }
                    }
                    rhs -= &(&v * prhs);
                }
                None => {
                    let inv = v.recip();
                    let row: SparseRow = row.into_iter().map(|(j, x)| (j, &x * &inv)).collect();
                    self.pivots.insert(c, (row, &rhs * &inv));
                    return;
                }
            }
        }
        if !rhs.is_zero() {
            self.inconsistent = true;
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// A solution with all free variables zero, if the system is consistent.
    pub fn solve(&self, ncols: usize) -> Option<Vec<Scalar>> {
        if self.inconsistent {
            return None;
        }
        let mut x = alloc::vec![Scalar::ZERO; ncols];
        for (&c, (row, rhs)) in self.pivots.iter().rev() {
            let mut v = rhs.clone();
            for (j, a) in row.iter() {
                if *j != c {
                    v -= &(a * &x[*j]);
                }
            }
            x[c] = v;
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(j, v)| (j, Scalar::from_int(v))).collect()
    }

    #[test]
    fn solves_small_system() {
        let mut e = Echelon::new();
        e.push(row(&[(0, 1), (1, 1)]), Scalar::from_int(3));
        e.push(row(&[(0, 1), (1, -1)]), Scalar::from_int(1));
        e.push(row(&[(0, 2), (1, 2)]), Scalar::from_int(6));
        let x = e.solve(2).unwrap();
        assert_eq!(x, alloc::vec![Scalar::from_int(2), Scalar::from_int(1)]);
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn detects_inconsistency() {
        let mut e = Echelon::new();
        e.push(row(&[(0, 1), (1, 1)]), Scalar::from_int(3));
        e.push(row(&[(0, 2), (1, 2)]), Scalar::from_int(5));
        assert!(e.solve(2).is_none());
    }

    #[test]
    fn underdetermined_picks_zero_free_vars() {
        let mut e = Echelon::new();
        e.push(row(&[(1, 2), (2, 4)]), Scalar::from_int(2));
        let x = e.solve(3).unwrap();
        assert_eq!(x, alloc::vec![Scalar::ZERO, Scalar::ONE, Scalar::ZERO]);
    }
}
