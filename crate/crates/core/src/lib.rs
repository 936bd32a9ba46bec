//! Exact computations with Poisson conformal algebras: structure checks,
//! coefficient algebras, Hochschild/Chevalley-Eilenberg/Flato-Gerstenhaber-
//! Voronov style cohomology, and formal and linear deformations.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod symcore;
pub mod algebra;
pub mod coeff;
pub mod cohomology;
pub mod constructors;
pub mod deform;
pub mod error;

pub use error::{EvalError, EvalResult};
