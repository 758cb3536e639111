//! Exact orbifold cohomology of symmetric products `Xⁿ/Sₙ` over a graded
//! Frobenius algebra, with the Heisenberg/Fock, Jucys–Murphy, vertex operator
//! and deformed-product machinery built on top of it.
//!
//! The engine is generic over the coefficient field ([`Scalar`]); the
//! aliases below fix the exact rational instances used throughout.

#![allow(clippy::type_complexity, clippy::too_many_arguments, clippy::needless_range_loop)]

pub mod dictionary;
pub mod error;
pub mod fock;
pub mod frobenius;
pub mod jucys;
pub mod linalg;
pub mod orbiring;
pub mod report;
pub mod scalar;
pub mod stablering;
pub mod suites;
pub mod symgroup;
pub mod vertexw;

pub use error::{Error, Result};
pub use frobenius::{AlgebraElement, FrobeniusAlgebra, TensorElement};
pub use orbiring::{OrbElement, ProductRule, TransferSign};
pub use scalar::{GaussQ, Scalar, Q};

pub type AlgebraElementQ = AlgebraElement<Q>;
pub type TensorElementQ = TensorElement<Q>;
pub type OrbElementQ = OrbElement<Q>;
