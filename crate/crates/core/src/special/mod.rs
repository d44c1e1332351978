//! Scalar kernels shared by every other module.
//!
//! Every routine takes a [`PrecisionContext`] and is deterministic for fixed
//! inputs and precision. Internal work runs with a few guard bits above the
//! requested precision and the result is rounded back to it.

mod agm;
mod bessel;
mod combinatorics;
mod complex;
mod dilog;
mod precision;

pub use agm::{agm, elliptic_k, elliptic_k_complementary};
pub use bessel::{bessel_j0, bessel_j0_f64};
pub use combinatorics::{binomial, harmonic, multinomial};
pub use complex::ComplexValue;
pub use dilog::{bernoulli_even, bloch_wigner, dilog};
pub use precision::PrecisionContext;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("{op}: argument outside the domain ({reason})")]
    Domain { op: &'static str, reason: String },
    #[error("precision of {0} bits is below the 64-bit minimum")]
    Precision(u32),
}

impl SpecialError {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        SpecialError::Domain {
            op,
            reason: reason.into(),
        }
    }
}
