//! Fine gradings on matrix algebras with and without an anti-automorphism,
//! and Weyl groups of the induced gradings on simple Lie algebras of series
//! A, B, C and D.

pub mod automorphism;
pub mod diag;
pub mod division;
pub mod enumerate;
pub mod error;
pub mod extension;
pub mod grading;
pub mod involution;
pub mod matrix;
pub mod presentation;
pub mod scalar;
pub mod symplectic;
pub mod weyl;
pub mod torsion;

pub use error::{Error, Result};
pub use scalar::Cyclotomic;
pub use torsion::{TorsionElement, TorsionGroup};
