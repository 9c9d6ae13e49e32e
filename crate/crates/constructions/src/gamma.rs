//! The cubic curvature combination on surfaces and the constant-combination
//! ansatz metric whose Ricci tensor satisfies the Codazzi equation.
//!
//! For a surface with curvature `K` and a constant `c`, the combination is
//! `γ = (K+c)³ + 3(K+c)ΔK − 6 g(∇K, ∇K)`.  The four-dimensional ansatz
//! `(K+c)^{-2}(g₂ ⊕ fibre_c)` has divergence-free curvature exactly when γ is
//! constant, which the surface flow below enforces algebraically.

use std::sync::Arc;

use metric_field::{christoffel_at, conformal_scale, curvature_at, product_chart, MetricChart};
use ode_solver::solver::Trajectory;
use ode_solver::{solve_ivp, Monitor};
use scalar_dsl::{fn_field, ScalarField};

use crate::family::fibre_chart;
use crate::fields::slot_jet;
use crate::BuildError;

/// Gauss curvature at a surface point: half the scalar curvature.
fn gauss(chart: &MetricChart, point: &[f64]) -> Result<f64, BuildError> {
    Ok(curvature_at(chart, point)?.scalar * 0.5)
}

/// Measures γ at one interior point of a surface chart.  The gradient and
/// Hessian of `K` come from central differences over curvature evaluations;
/// the point must sit at least `2·eps^{1/4}·(1+|x|)` inside the domain.
pub fn gamma_probe(chart: &MetricChart, c: f64, point: &[f64]) -> Result<f64, BuildError> {
    assert_eq!(chart.n(), 2, "γ is a surface quantity");
    let k0 = gauss(chart, point)?;
    let (_, ginv, gamma_sym) = christoffel_at(chart, point)?;

    let mut h = [0.0f64; 2];
    for i in 0..2 {
        h[i] = f64::EPSILON.powf(0.25) * (1.0 + point[i].abs());
    }
    let shift = |di: f64, dj: f64| {
        let mut p = point.to_vec();
        p[0] += di;
        p[1] += dj;
        p
    };
    let kpp = gauss(chart, &shift(h[0], 0.0))?;
    let kmm = gauss(chart, &shift(-h[0], 0.0))?;
    let kp2 = gauss(chart, &shift(0.0, h[1]))?;
    let km2 = gauss(chart, &shift(0.0, -h[1]))?;
    let dk = [(kpp - kmm) / (2.0 * h[0]), (kp2 - km2) / (2.0 * h[1])];
    let mut hess = [[0.0f64; 2]; 2];
    hess[0][0] = (kpp - 2.0 * k0 + kmm) / (h[0] * h[0]);
    hess[1][1] = (kp2 - 2.0 * k0 + km2) / (h[1] * h[1]);
    let kc = gauss(chart, &shift(h[0], h[1]))?
        - gauss(chart, &shift(h[0], -h[1]))?
        - gauss(chart, &shift(-h[0], h[1]))?
        + gauss(chart, &shift(-h[0], -h[1]))?;
    hess[0][1] = kc / (4.0 * h[0] * h[1]);
    hess[1][0] = hess[0][1];

    let mut lap = 0.0;
    let mut grad_sq = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut cov = hess[i][j];
            for k in 0..2 {
                cov -= gamma_sym[k][i][j] * dk[k];
            }
            lap += ginv.m[i][j] * cov;
            grad_sq += ginv.m[i][j] * dk[i] * dk[j];
        }
    }
    let u = k0 + c;
    Ok(u * u * u + 3.0 * u * lap - 6.0 * grad_sq)
}

/// Second derivative of `K` implied by a constant γ, given `c` and the state
/// `(χ, χ', K, K')`.
fn k_curve(c: f64, gamma0: f64, s: &[f64]) -> f64 {
    let u = s[2] + c;
    (gamma0 - u * u * u + 6.0 * s[3] * s[3] - 3.0 * u * s[1] * s[3]) / (3.0 * u)
}

/// Integrates the surface flow `(χ, χ', K, K')` that keeps γ equal to
/// `gamma0`, and wraps it as the chart `dt² + e^{2χ}dy²`.  The flow stops
/// before `K + c` reaches zero.
pub fn constant_gamma_surface(
    c: f64,
    init: [f64; 4],
    gamma0: f64,
    t_span: (f64, f64),
    tol: f64,
) -> Result<(MetricChart, Arc<Trajectory>), BuildError> {
    if init[2] + c == 0.0 {
        return Err(BuildError::Degenerate {
            what: "K + c vanishes at the initial point".to_string(),
        });
    }
    let rhs = move |_t: f64, s: &[f64], ds: &mut [f64]| {
        ds[0] = s[1];
        ds[1] = -(s[2] + s[1] * s[1]); // K = -(χ'' + χ'^2)
        ds[2] = s[3];
        ds[3] = k_curve(c, gamma0, s);
    };
    let guard = move |_t: f64, s: &[f64]| s[2] + c;
    let monitors = [Monitor { name: "curvature-shift", f: &guard }];
    let traj = Arc::new(solve_ivp(&rhs, t_span, &init, tol, &monitors)?);
    if traj.grid.len() < 8 {
        return Err(BuildError::Degenerate {
            what: format!("flow stopped almost immediately: {:?}", traj.stop_reason),
        });
    }
    let tr = traj.clone();
    let warp: Arc<dyn ScalarField> = Arc::new(fn_field(2, move |x: &[f64]| {
        let s = tr.state_at(x[0]);
        let chi = slot_jet(2, 0, s[0], s[1], -(s[2] + s[1] * s[1]));
        Ok(chi.scale(2.0).exp())
    }));
    let one: Arc<dyn ScalarField> = Arc::new(scalar_dsl::ConstField { dim: 2, v: 1.0 });
    let zero: Arc<dyn ScalarField> = Arc::new(scalar_dsl::ConstField { dim: 2, v: 0.0 });
    let m = 0.005 * (traj.t_end() - traj.t_start());
    let chart = MetricChart::from_fields(
        "constant-gamma-surface",
        vec!["t".to_string(), "y".to_string()],
        vec![one, zero.clone(), zero, warp],
        vec![(traj.t_start() + m, traj.t_end() - m), (-1.0, 1.0)],
        Default::default(),
    )?;
    Ok((chart, traj))
}

/// The four-dimensional ansatz `(K+c)^{-2}(dt² + e^{2χ}dy² + fibre_c)` over a
/// constant-γ surface flow.  Requires `K + c > 0` along the flow.
pub fn ansatz_chart(
    c: f64,
    gamma0: f64,
    surface: &MetricChart,
    traj: &Arc<Trajectory>,
) -> Result<MetricChart, BuildError> {
    let fibre = fibre_chart(c)?;
    let product = product_chart(surface, &fibre)?;
    let tr = traj.clone();
    let phi: Arc<dyn ScalarField> = Arc::new(fn_field(4, move |x: &[f64]| {
        let s = tr.state_at(x[0]);
        Ok(slot_jet(4, 0, s[2] + c, s[3], k_curve(c, gamma0, &s)))
    }));
    Ok(conformal_scale(&product, phi)?.with_label("constant-gamma-ansatz"))
}
