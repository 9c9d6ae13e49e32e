//! Second-order equation for the conformal exponent of the boundary-type
//! family: `kappa'' + c e^{2 kappa} = 2 sec^2 y` on a subinterval of
//! `(-pi/2, pi/2)`.
//!
//! The solution `kappa = -log cos y` (for `c = 1`, rest data at the origin)
//! is degenerate: its deviation `kappa' - tan y` vanishes identically and the
//! construction built on it collapses.  [`ExponentSolution::log_type`] flags
//! that situation.

use crate::solver::{solve_ivp, Trajectory};
use crate::OdeError;
use std::f64::consts::FRAC_PI_2;

/// Margin kept from the poles of `sec y`.
pub const POLE_MARGIN: f64 = 1e-3;

/// An exponent trajectory (state `(kappa, kappa')`) plus the degeneracy flag.
#[derive(Debug, Clone)]
pub struct ExponentSolution {
    pub trajectory: Trajectory,
    /// Set when `|kappa' - tan y| < 100 tol` uniformly along the flow.
    pub log_type: bool,
    pub c: f64,
}

/// Deviation of a state from the degenerate log profile.
pub fn log_deviation(y: f64, state: &[f64]) -> f64 {
    state[1] - y.tan()
}

/// Slope of [`log_deviation`] along any exact solution; equals
/// `sec^2 y - c e^{2 kappa}`.
pub fn log_deviation_rate(c: f64, y: f64, state: &[f64]) -> f64 {
    let sec = 1.0 / y.cos();
    sec * sec - c * (2.0 * state[0]).exp()
}

/// Integrates the exponent equation from `init = (kappa, kappa')` over
/// `y_span`, which must stay `POLE_MARGIN` away from `±pi/2`.
pub fn solve_exponent(
    c: f64,
    init: (f64, f64),
    y_span: (f64, f64),
    tol: f64,
) -> Result<ExponentSolution, OdeError> {
    let (y0, y1) = y_span;
    if y0 < -FRAC_PI_2 + POLE_MARGIN || y1 > FRAC_PI_2 - POLE_MARGIN {
        return Err(OdeError::BadSpan {
            what: format!(
                "span [{y0}, {y1}] must stay {POLE_MARGIN} inside (-pi/2, pi/2)"
            ),
        });
    }
    let rhs = move |y: f64, s: &[f64], ds: &mut [f64]| {
        let sec = 1.0 / y.cos();
        ds[0] = s[1];
        ds[1] = 2.0 * sec * sec - c * (2.0 * s[0]).exp();
    };
    let trajectory = solve_ivp(&rhs, y_span, &[init.0, init.1], tol, &[])?;

    let mut sup = 0.0f64;
    let n = 400;
    let (ta, tb) = (trajectory.t_start(), trajectory.t_end());
    for i in 0..=n {
        let y = ta + (tb - ta) * i as f64 / n as f64;
        let s = trajectory.state_at(y);
        sup = sup.max(log_deviation(y, &s).abs());
    }
    Ok(ExponentSolution {
        trajectory,
        log_type: sup < 100.0 * tol,
        c,
    })
}

/// Defect of the interpolant against the exponent equation at `y`.
pub fn exponent_defect(c: f64, traj: &Trajectory, y: f64) -> f64 {
    let s = traj.state_at(y);
    let d = traj.deriv_at(y);
    let sec = 1.0 / y.cos();
    let f = [s[1], 2.0 * sec * sec - c * (2.0 * s[0]).exp()];
    let scale = 1.0 + f[0].abs().max(f[1].abs());
    ((d[0] - f[0]).abs()).max((d[1] - f[1]).abs()) / scale
}

/// CSV dump mirroring [`crate::profile::profile_csv`].
pub fn exponent_csv(sol: &ExponentSolution) -> String {
    let traj = &sol.trajectory;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "kappa", "kappa_prime", "residual"])
        .expect("csv header");
    let m = traj.grid.len();
    for i in 0..m {
        let tm = if i + 1 < m {
            0.5 * (traj.grid[i] + traj.grid[i + 1])
        } else {
            0.5 * (traj.grid[i - 1] + traj.grid[i])
        };
        let row = [
            traj.grid[i].to_string(),
            traj.states[i][0].to_string(),
            traj.states[i][1].to_string(),
            exponent_defect(sol.c, traj, tm).to_string(),
        ];
        w.write_record(&row).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
}
