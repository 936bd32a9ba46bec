//! Evaluation of independent residual computations, possibly in parallel.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use super::report::CheckReport;
use crate::error::EvalError;
use crate::symcore::{GenIndex, LambdaPoly};

pub type Outcome = Result<LambdaPoly, EvalError>;

/// Maps a job over `0..n`, returning results in index order.
pub trait Runner: Sync {
    fn run(&self, n: usize, job: &(dyn Fn(usize) -> Outcome + Sync)) -> Vec<Outcome>;
}

pub struct Sequential;

impl Runner for Sequential {
    fn run(&self, n: usize, job: &(dyn Fn(usize) -> Outcome + Sync)) -> Vec<Outcome> {
        (0..n).map(job).collect()
    }
}

/// Window and runner shared by the checks.
#[derive(Clone, Copy)]
pub struct Checker<'a> {
    pub window: i64,
    pub runner: &'a dyn Runner,
}

impl<'a> Checker<'a> {
    pub fn new(window: i64, runner: &'a dyn Runner) -> Self {
        Checker { window, runner }
    }

    /// Evaluate `residual` on every tuple and collect a report.
    pub fn run_tuples(
        &self,
        name: &str,
        tuples: &[Vec<GenIndex>],
        vars: &[String],
        residual: &(dyn Fn(&[GenIndex]) -> Outcome + Sync),
    ) -> CheckReport {
        let outcomes = self.runner.run(tuples.len(), &|i| residual(&tuples[i]));
        let mut rep = CheckReport::new(name);
        for (t, o) in tuples.iter().zip(outcomes) {
            rep.record(t, o, vars, None);
        }
        rep
    }
}

pub fn sequential() -> &'static dyn Runner {
    &Sequential
}

/// All ordered `k`-tuples over `gens` in graded-lex order: by total degree,
/// then lexicographically in the order of `gens`.
pub fn tuples(gens: &[GenIndex], k: usize) -> Vec<Vec<GenIndex>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * gens.len());
        for t in &out {
            for g in gens {
                let mut u = t.clone();
                u.push(g.clone());
                next.push(u);
            }
        }
        out = next;
    }
    out.sort_by_key(|t| t.iter().map(GenIndex::degree).sum::<i64>());
    out
}

pub fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| String::from(*s)).collect()
}

/// Boxed residual closure type for callers that build check lists.
pub type Residual<'a> = Box<dyn Fn(&[GenIndex]) -> Outcome + Sync + 'a>;
