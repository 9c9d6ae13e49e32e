//! Adaptive one-step integration with continuous output, plus the two
//! scalar-profile equations and the conformal-exponent equation used by the
//! metric constructions in this workspace.
//!
//! The core solver is an embedded Dormand-Prince 5(4) pair with proportional
//! step control and a piecewise cubic Hermite interpolant.  The step size is
//! capped so that the interpolant defect stays within a fixed multiple of the
//! requested tolerance; see [`solver::solve_ivp`].

pub mod exponent;
pub mod profile;
pub mod solver;

pub use exponent::{
    exponent_csv, exponent_defect, log_deviation, log_deviation_rate, solve_exponent,
    ExponentSolution, POLE_MARGIN,
};
pub use profile::{
    classify_family, exponent_slope, profile_csv, profile_defect, solve_profile,
    third_derivative, FamilyClass, Variant,
};
pub use solver::{solve_ivp, Monitor, StopReason, Trajectory};

use thiserror::Error;

/// Input and runtime failures of the integrators.
#[derive(Debug, Error)]
pub enum OdeError {
    /// The initial state violates a precondition of the chosen equation.
    #[error("bad initial data: {what}")]
    BadInit { what: String },
    /// The requested span is empty, reversed, or leaves the admissible domain.
    #[error("bad span: {what}")]
    BadSpan { what: String },
    /// A monitored quantity vanishes already at the initial point.
    #[error("monitor {name} vanishes at the initial point")]
    MonitorAtStart { name: String },
}
