//! Spacetime-algebra electromagnetics.
//!
//! Multivectors of Cl(1,3), closed-form Maxwell fields, discrete Dirac
//! calculus on grids, the energy-momentum extensor, Cauchy and aperture
//! propagation, and the Riemann-Silberstein photon picture.

pub mod algebra;
pub mod calculus;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod extensor;
pub mod jet;
pub mod photon;
pub mod propagation;
pub mod quadrature;

pub use algebra::{Multivector, PauliSplit};
pub use catalog::{FieldClosure, ScalarClosure, SpacetimePoint};
pub use error::{Error, Result};
