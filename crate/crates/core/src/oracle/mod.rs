//! Independent reference values: the Cassaigne–Maillot closed form,
//! direct torus quadrature, oscillatory quadrature of the ramble integral
//! and Monte Carlo walks.

mod cm;
mod oscillatory;
pub mod quadrature;
mod torus;
mod validate;
mod walk;

use thiserror::Error;

use crate::ramble::RambleError;
use crate::series::SeriesError;
use crate::special::SpecialError;

pub use cm::{mahler_cm, triangle_geometry, TriangleGeometry};
pub use oscillatory::{ramble_quadrature, OscillatoryEstimate};
pub use torus::mahler_quadrature;
pub use validate::{run_validation, Check, ValidationOptions, ValidationReport};
pub use walk::{
    bin_average_density, compare_histogram, simulate_walk, total_probability, Histogram,
    HistogramComparison,
};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Estimation(String),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Ramble(#[from] RambleError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
