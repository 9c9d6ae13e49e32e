//! Synthetic curvature tensors with prescribed spectral data.
//!
//! A four dimensional algebraic curvature tensor on the identity metric is
//! determined by the scalar curvature, the eigenvalues of the traceless Ricci
//! tensor, and the eigenvalues of the two Weyl blocks on self dual and anti
//! self dual bivectors.  This crate builds such tensors from a small parameter
//! set, checks the quadratic curvature condition on them algebraically, and
//! emits the table of closed form solution rows used by the classifier.

mod build;
mod data;
mod table;

pub use build::{build, verify_we_algebraic, we_residual_pair};
pub use data::{CaseKind, SpectralData};
pub use table::{nine_case_table, table_csv, TableRow, FLIP_PAIRS};

/// Errors from constructing or evaluating spectral data.
#[derive(Debug, thiserror::Error)]
pub enum KitError {
    /// A parameter set violates one of the structural constraints.
    #[error("constraint violated: {what}")]
    Constraint { what: String },
    /// The solution table is not defined for zero scalar curvature.
    #[error("table rows are multiples of the scalar curvature; s must be nonzero")]
    ZeroScalar,
    /// Wrapped linear-algebra failure.
    #[error(transparent)]
    Tensor(#[from] tensor_core::TensorError),
}
