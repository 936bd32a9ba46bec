//! Exact symbolic layer: scalars, `D`-polynomials, generators, module
//! elements and polynomials in spectral variables.

pub mod dpoly;
pub mod gen;
pub mod lambda;
pub mod modelem;
pub mod oppoly;
pub mod scalar;

pub use dpoly::DPoly;
pub use gen::GenIndex;
pub use lambda::{default_names, LambdaPoly, Mono};
pub use modelem::ModElement;
pub use oppoly::{Exps, OpPoly};
pub use scalar::Scalar;
