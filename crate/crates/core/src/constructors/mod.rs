//! Constructions of conformal algebras and modules from ordinary data.

pub mod catalog;
pub mod conformal;
pub mod modules;
pub mod ordinary;

pub use conformal::{current_algebra, direct_sum, from_derivation, pgd_from_derivation, quadratic_from_pgd};
pub use modules::{adjoint_module, check_module, semidirect_product, semidirect_product_unchecked, ConformalModule, ModuleKind};
pub use ordinary::{check_derivation, check_gd, check_ordinary_poisson, check_pgd, OrdinaryAlgebra};
