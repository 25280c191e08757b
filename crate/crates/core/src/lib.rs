//! Torus 1-point functions of the simple affine sl(2) vertex operator algebra.
//!
//! The crate computes exact q-expansions of the cyclic vector-valued modular
//! form generators in dimensions 1 to 3, weight and fusion data, BGG
//! characters, classification of the attached `SL(2, Z)` representations, and
//! the categorical modular action built from quantum 6j-symbols.

pub mod bgg;
pub mod error;
pub mod generators;
pub mod mtc;
pub mod rational;
pub mod rep;
pub mod series;
pub mod sl2;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
pub use series::QExpansion;

/// Module aliases following the component names used in the documentation.
pub mod exact_series {
    pub use crate::series::*;
}
pub mod sl2_core {
    pub use crate::sl2::*;
}
pub mod rep_analysis {
    pub use crate::rep::*;
}
pub mod mtc_sl2 {
    pub use crate::mtc::*;
}
