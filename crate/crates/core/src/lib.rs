//! Clifford algebra of physical space (Cl(3,0)) with relativistic eigenspinor
//! dynamics, projector-based spin states, the bridge to Dirac bispinors, and a
//! Stern-Gerlach beam model.
//!
//! Natural units are used throughout the kernels (`c = ħ = 1`); SI constants
//! only enter through explicit parameters.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diff;
pub mod dirac;
pub mod dynamics;
pub mod error;
pub mod fermion;
pub mod ga;
pub mod sampling;
pub mod spacetime;
pub mod spin;
pub mod stern_gerlach;

pub use error::{Error, Result};
pub use ga::{MatrixRep, Multivector};
