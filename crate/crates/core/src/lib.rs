//! Subsonic Rayleigh surface waves in isotropic elastic materials with
//! micro-voids, computed through the surface impedance matrix.
//!
//! The pipeline is: [`material`] parameters → [`stroh::StrohSystem`] →
//! [`impedance::compute`] → [`secular::solve`] → [`wavefield::RayleighSolution`].

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bulk;
pub mod error;
pub mod expm;
pub mod impedance;
pub mod linalg;
pub mod material;
pub mod quadrature;
pub mod roots;
pub mod secular;
pub mod stroh;
pub mod wavefield;

pub use error::{Error, Result};
pub use material::{MicroVoidParams, RelaxedParams};
pub use stroh::StrohSystem;
