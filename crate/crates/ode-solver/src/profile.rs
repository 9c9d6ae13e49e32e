//! The two third-order scalar-profile equations behind the warped metric
//! families, integrated together with the fibre exponent.
//!
//! State layout: `(phi, phi', phi'')`, extended by a fourth quadrature
//! component `chi` with `chi(t0) = 0` after integration.

use crate::solver::{solve_ivp, Monitor, StopReason, Trajectory};
use crate::OdeError;

/// Which of the two profile equations to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    I,
    II,
}

/// Coarse type of a profile solution, decided by which degeneracy relations
/// hold uniformly along the flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyClass {
    /// Neither degeneracy relation holds: the metric built on this profile is
    /// weakly Einstein without being Einstein.
    Proper,
    Einstein,
    ConformallyFlat,
    /// Variant I with `c = 0` and constant slope; the resulting metric is the
    /// homogeneous model.
    Homogeneous,
}

impl std::fmt::Display for FamilyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FamilyClass::Proper => "proper",
            FamilyClass::Einstein => "einstein",
            FamilyClass::ConformallyFlat => "conformally-flat",
            FamilyClass::Homogeneous => "homogeneous",
        };
        f.write_str(s)
    }
}

/// phi''' as dictated by the profile equation.  Variant I divides by
/// `phi * phi'`, variant II by `phi^2`; callers keep both factors away from
/// zero (the solver monitors them).
pub fn third_derivative(variant: Variant, c: f64, phi: f64, dphi: f64, ddphi: f64) -> f64 {
    match variant {
        Variant::I => (2.0 * (phi * ddphi - dphi * dphi) * ddphi + c * phi * dphi * dphi) / (phi * dphi),
        Variant::II => (2.0 * phi * ddphi - 2.0 * dphi * dphi + c * phi * phi) * dphi / (phi * phi),
    }
}

/// Slope of the fibre exponent along the profile.
pub fn exponent_slope(variant: Variant, phi: f64, dphi: f64, ddphi: f64) -> f64 {
    match variant {
        Variant::I => 2.0 * dphi / phi - ddphi / dphi,
        Variant::II => ddphi / dphi,
    }
}

/// Integrates the chosen profile equation from `init = (phi, phi', phi'')`
/// over `t_span` and appends the fibre exponent as a fourth component.
/// Both `phi` and `phi'` are monitored; the flow stops just before either
/// reaches zero.
pub fn solve_profile(
    variant: Variant,
    c: f64,
    init: (f64, f64, f64),
    t_span: (f64, f64),
    tol: f64,
) -> Result<Trajectory, OdeError> {
    let (p0, d0, dd0) = init;
    if p0 == 0.0 || d0 == 0.0 {
        return Err(OdeError::BadInit {
            what: format!("profile needs phi(t0) != 0 and phi'(t0) != 0, got ({p0}, {d0}, {dd0})"),
        });
    }
    let rhs = move |_t: f64, y: &[f64], dy: &mut [f64]| {
        dy[0] = y[1];
        dy[1] = y[2];
        dy[2] = third_derivative(variant, c, y[0], y[1], y[2]);
    };
    let phi = |_t: f64, y: &[f64]| y[0];
    let dphi = |_t: f64, y: &[f64]| y[1];
    let monitors = [
        Monitor { name: "phi", f: &phi },
        Monitor { name: "phi-dot", f: &dphi },
    ];
    let mut traj = solve_ivp(&rhs, t_span, &[p0, d0, dd0], tol, &monitors)?;
    let slope = move |_t: f64, y: &[f64]| exponent_slope(variant, y[0], y[1], y[2]);
    traj.push_quadrature_component(&slope);
    Ok(traj)
}

/// Defect of the interpolant against the profile system at `t`, including the
/// exponent channel when present.  Scaled by the size of the right-hand side.
pub fn profile_defect(variant: Variant, c: f64, traj: &Trajectory, t: f64) -> f64 {
    let y = traj.state_at(t);
    let d = traj.deriv_at(t);
    let mut f = [
        y[1],
        y[2],
        third_derivative(variant, c, y[0], y[1], y[2]),
        0.0,
    ];
    let mut m = y.len().min(3);
    if y.len() == 4 {
        f[3] = exponent_slope(variant, y[0], y[1], y[2]);
        m = 4;
    }
    let scale = 1.0 + f[..m].iter().fold(0.0f64, |a, v| a.max(v.abs()));
    (0..m).map(|k| (d[k] - f[k]).abs()).fold(0.0, f64::max) / scale
}

/// Decides the family type from the degeneracy relations, tested uniformly on
/// a dense sample with margin `100 * tol`.
pub fn classify_family(variant: Variant, traj: &Trajectory, c: f64, tol: f64) -> FamilyClass {
    let (t0, t1) = (traj.t_start(), traj.t_end());
    let mut sup_a = 0.0f64;
    let mut sup_b = 0.0f64;
    let mut sup_dd = 0.0f64;
    let mut sz_a = 0.0f64;
    let mut sz_b = 0.0f64;
    let mut sz_d = 0.0f64;
    let n = 512;
    for i in 0..=n {
        let t = t0 + (t1 - t0) * i as f64 / n as f64;
        let y = traj.state_at(t);
        let (p, d, dd) = (y[0], y[1], y[2]);
        sup_a = sup_a.max((p * dd - d * d).abs());
        sup_b = sup_b.max((d * d - c * p * p).abs());
        sup_dd = sup_dd.max(dd.abs());
        sz_a = sz_a.max((p * dd).abs().max(d * d));
        sz_b = sz_b.max((d * d).max((c * p * p).abs()));
        sz_d = sz_d.max(d.abs());
    }
    let thr = 100.0 * tol;
    let rel_a = sup_a / (1.0 + sz_a);
    let rel_b = sup_b / (1.0 + sz_b);
    let rel_d = sup_dd / (1.0 + sz_d);
    let (einstein, conf_flat) = match variant {
        Variant::I => (rel_a <= thr, rel_b <= thr),
        Variant::II => (rel_b <= thr, rel_a <= thr),
    };
    if einstein {
        FamilyClass::Einstein
    } else if conf_flat {
        FamilyClass::ConformallyFlat
    } else if variant == Variant::I && c == 0.0 && rel_d <= thr {
        FamilyClass::Homogeneous
    } else {
        FamilyClass::Proper
    }
}

/// CSV dump of a profile trajectory.  The residual column holds the
/// interpolant defect at the midpoint of the segment after each node (the
/// defect at the nodes themselves vanishes by construction).
pub fn profile_csv(variant: Variant, c: f64, traj: &Trajectory) -> String {
    let labels: &[&str] = if traj.dim() == 4 {
        &["phi", "phi_dot", "phi_ddot", "chi"]
    } else {
        &["phi", "phi_dot", "phi_ddot"]
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["t"];
    header.extend_from_slice(labels);
    header.push("residual");
    w.write_record(&header).expect("csv header");
    let m = traj.grid.len();
    for i in 0..m {
        let tm = if i + 1 < m {
            0.5 * (traj.grid[i] + traj.grid[i + 1])
        } else {
            0.5 * (traj.grid[i - 1] + traj.grid[i])
        };
        let mut row = vec![traj.grid[i].to_string()];
        row.extend(traj.states[i].iter().map(|v| v.to_string()));
        row.push(profile_defect(variant, c, traj, tm).to_string());
        w.write_record(&row).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
}

/// True when the trajectory stopped on its own span end.
pub fn ran_to_end(traj: &Trajectory) -> bool {
    traj.stop_reason == StopReason::ReachedEnd
}
