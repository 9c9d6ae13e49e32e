//! Charts and curvature.
//!
//! A [`MetricChart`] is a coordinate box with symmetric component fields;
//! [`curvature_at`] turns it into a [`CurvaturePack`] holding Christoffel
//! symbols, Riemann/Ricci/Einstein/scalar/Weyl data at a point. Covariant
//! Hessians and Laplacians of scalar fields live in [`scalars`], the
//! divergence-of-Ricci diagnostic in [`codazzi`], chart assembly (products,
//! conformal rescaling, warped products) in [`build`], and ready-made charts
//! in [`catalog`].
//!
//! Charts are immutable once constructed and all evaluation entry points are
//! pure, so batch work can fan out across threads freely.

pub mod build;
pub mod catalog;
pub mod chart;
pub mod codazzi;
pub mod pack;
pub mod scalars;

pub use build::{conformal_scale, product_chart, warped_chart, EmbedField};
pub use catalog::builtin;
pub use chart::MetricChart;
pub use codazzi::curvature_divergence_residual;
pub use pack::{curvature_at, curvature_at_fd, pack_from_jets, CurvaturePack};
pub use scalars::{
    christoffel_at, covariant_data, grad_sq, grad_sq_from, hessian_from, hessian_of,
    laplacian_from, laplacian_of, CovariantData,
};

use scalar_dsl::{EvalError, ParseError};
use tensor_core::TensorError;

#[derive(Debug, thiserror::Error)]
pub enum ChartError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("point {point} outside the chart domain")]
    OutOfDomain { point: String },
    #[error("coordinate name {name:?} used twice")]
    NameCollision { name: String },
    #[error("parameter {name:?} bound to different values")]
    ParamConflict { name: String },
    #[error("component ({i},{j}) disagrees with ({j},{i})")]
    AsymmetricComponents { i: usize, j: usize },
    #[error("{what} fails to stay positive on the domain")]
    NotPositive { what: String },
    #[error("no chart named {label:?} in the catalog")]
    UnknownLabel { label: String },
    #[error("expected {want} entries, got {got}")]
    BadShape { want: usize, got: usize },
}
