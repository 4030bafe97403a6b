//! Hyers-Ulam stability of operators on Hilbert space.
//!
//! Operators are modeled as diagonal operators on ℓ² with exact symbolic
//! tails, dense complex matrices, or 2×2 block operator matrices built from
//! either. For every model the crate computes the reduced minimum modulus
//! γ(T), the stability constant `M_T = 1/γ(T)`, kernels, witnesses and the
//! operator constructions (adjoints, generalized inverses, transforms,
//! Schur and quadratic complements) whose stability behaviour is studied.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod blockmat;
pub mod calculus;
pub mod diagonal;
pub mod error;
pub mod matrix;
pub mod model;
pub mod scalar;
pub mod stability;
mod svd;
pub mod symbolic;
pub mod tail;
pub mod tolerance;
pub mod zoo;

pub use blockmat::{BlockMatrix, Complement, EquivalenceReport};
pub use calculus::RelativeBoundCertificate;
pub use diagonal::{DiagonalOperator, KernelSupport};
pub use error::{Error, Result};
pub use matrix::MatrixOperator;
pub use model::OperatorModel;
pub use scalar::{KernelDim, Scalar};
pub use stability::{StabilityReport, WitnessResult};
pub use tail::TailRule;
pub use tolerance::ToleranceConfig;
