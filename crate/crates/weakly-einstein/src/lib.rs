//! The quadratic curvature condition and its pointwise spectral classifier.
//!
//! A metric is weakly Einstein when the full contraction R_{ipqr}R_j{}^{pqr}
//! is a multiple of the metric at every point.  In dimension four this is
//! equivalent to a linear relation between the Weyl action on the traceless
//! Ricci tensor and the scalar curvature, which makes the condition cheap to
//! test and gives every solution a small spectral fingerprint: the traceless
//! Ricci eigenvalues plus the eigenvalues of the two Weyl blocks in the Ricci
//! eigenframe.  This crate computes those fingerprints from curvature packs
//! and matches them against the closed-form solution shapes.

mod matching;
mod residuals;
mod signature;

pub use matching::{match_case, CaseLabel, CaseMatch};
pub use residuals::we_residuals;
pub use signature::{algebraic_pack, signature_at, ResidualPair, SignatureRecord, SpectralSignature};

/// Errors from residual evaluation and signature extraction.
#[derive(Debug, thiserror::Error)]
pub enum SigError {
    /// The spectral machinery is specific to dimension four.
    #[error("signature requires a 4-dimensional pack, got n = {got}")]
    WrongDimension { got: usize },
    /// The pack fails the quadratic condition at the requested tolerance; pass
    /// `force` to extract a signature anyway.
    #[error("quadratic condition residual {residual:e} exceeds tolerance {tol:e}")]
    NotWeaklyEinstein { residual: f64, tol: f64 },
    #[error(transparent)]
    Tensor(#[from] tensor_core::TensorError),
}
