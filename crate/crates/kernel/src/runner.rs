//! A work-stealing runner for check batches. Results come back in index
//! order, so reports do not depend on scheduling.

use conformal_core::algebra::runner::{Outcome, Runner};
use rayon::prelude::*;

pub struct Parallel;

impl Runner for Parallel {
    fn run(&self, n: usize, job: &(dyn Fn(usize) -> Outcome + Sync)) -> Vec<Outcome> {
        (0..n).into_par_iter().map(job).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use conformal_core::algebra::runner::Sequential;
    use conformal_core::symcore::{GenIndex, LambdaPoly};

    #[test]
    fn same_order_as_sequential() {
        let job = |i: usize| -> Outcome { Ok(LambdaPoly::generator(GenIndex::new("x", &[i as i64]), 0)) };
        assert_eq!(Parallel.run(500, &job), Sequential.run(500, &job));
    }
}
