//! Concrete four-dimensional metrics with the quadratic curvature property,
//! built from closed formulas or from solved profile equations, together with
//! their predicted spectral data and the verification drivers that compare
//! prediction against measured curvature.

pub mod family;
pub mod fields;
pub mod gamma;
pub mod homogeneous;
pub mod predict;
pub mod split;

pub use family::{fibre_chart, harmonic_family, profile_family, profile_surface};
pub use gamma::{ansatz_chart, constant_gamma_surface, gamma_probe};
pub use homogeneous::{homogeneous, homogeneous_isometry_residual, FrameMap};
pub use predict::{ConstructedMetric, ConstructionCheck, EShape, Predictions, WShape};
pub use split::{assemble31, product31_verify, resplit31, SplitData, SplitReport, VectorFn};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error(transparent)]
    Ode(#[from] ode_solver::OdeError),
    #[error(transparent)]
    Chart(#[from] metric_field::ChartError),
    #[error(transparent)]
    Signature(#[from] weakly_einstein::SigError),
    /// The requested data sits on a degenerate stratum where the construction
    /// collapses (wrong family, vanishing denominators, truncated flow).
    #[error("degenerate input: {what}")]
    Degenerate { what: String },
}
