//! Pointwise multilinear algebra in dimension ≤ 4: symmetric matrices with a
//! metric, generalized eigenproblems, curvature-type tensors, and the
//! self-dual/anti-self-dual bivector machinery.
//!
//! All types are plain `Copy` values; every operation is pure.

pub mod bivec;
pub mod curv;
pub mod eigen;
pub mod mat;

pub use bivec::{biv_inner, spectrum3, weyl_action, weyl_blocks, Bivector, BivectorFrame, WeylBlocks};
pub use curv::{
    einstein_of, ricci_of, scalar_of, trace_residual, triple_contract, weyl_of, CurvTensor,
};
pub use eigen::{jacobi, sym_eigen, Eigen};
pub use mat::{det_general, Chol, SymMat, NMAX};

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum TensorError {
    #[error("matrix is not positive definite (failed at minor {minor})")]
    NotPositiveDefinite { minor: usize },
    #[error("dimension mismatch: {a} vs {b}")]
    DimensionMismatch { a: usize, b: usize },
    #[error("frame is not orthonormal (Gram residual {residual:.3e})")]
    FrameNotOrthonormal { residual: f64 },
    #[error("frame is negatively oriented")]
    FrameNotPositive,
    #[error("tensor is not trace-free (residual {residual:.3e})")]
    NotTraceFree { residual: f64 },
}
