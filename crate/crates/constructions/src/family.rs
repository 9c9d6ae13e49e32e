//! The two trajectory-driven families: metrics of the form
//! `(base ⊕ fibre)/φ²` with a surface base carrying the profile and a
//! constant-curvature fibre.

use std::sync::Arc;

use metric_field::{conformal_scale, product_chart, MetricChart};
use ode_solver::solver::Trajectory;
use ode_solver::{
    classify_family, log_deviation, log_deviation_rate, solve_exponent, solve_profile,
    FamilyClass, Variant,
};
use scalar_dsl::{fn_field, ExprField, ScalarField};

use crate::fields::{channel_field, chi_jet, kappa_jet, phi_jet, slot_jet};
use crate::predict::{ConstructedMetric, EShape, Predictions, WShape};
use crate::BuildError;

/// Margin kept from the conical points of the positively curved fibre.
const CONE_MARGIN: f64 = 1e-2;

/// Surface of constant curvature `c` in geodesic polar form
/// `dη² + f_c(η)² dζ²`.
pub fn fibre_chart(c: f64) -> Result<MetricChart, BuildError> {
    let coords = ["eta", "zeta"];
    let chart = if c == 0.0 {
        MetricChart::from_exprs("fibre-flat", &coords, &["1", "0", "0", "1"], &[(-1.0, 1.0), (-1.0, 1.0)], &[])?
    } else if c > 0.0 {
        let q = c.sqrt();
        MetricChart::from_exprs(
            "fibre-round",
            &coords,
            &["1", "0", "0", "sin(q*eta)^2/c"],
            &[(CONE_MARGIN, std::f64::consts::PI / q - CONE_MARGIN), (-1.0, 1.0)],
            &[("c", c), ("q", q)],
        )?
    } else {
        let q = (-c).sqrt();
        MetricChart::from_exprs(
            "fibre-pseudo",
            &coords,
            &["1", "0", "0", "((exp(q*eta)-exp(-q*eta))/2)^2/mc"],
            &[(CONE_MARGIN, 1.5), (-1.0, 1.0)],
            &[("mc", -c), ("q", q)],
        )?
    };
    Ok(chart)
}

fn shrunk(a: f64, b: f64) -> (f64, f64) {
    let m = 0.005 * (b - a);
    (a + m, b - m)
}

/// Base surface `dt² + e^{2χ(t)} dy²` over the usable part of the flow.
pub fn profile_surface(
    variant: Variant,
    c: f64,
    traj: &Arc<Trajectory>,
) -> Result<MetricChart, BuildError> {
    let jet = chi_jet(variant, c);
    let tr = traj.clone();
    let warp: Arc<dyn ScalarField> = Arc::new(fn_field(2, move |x: &[f64]| {
        let s = tr.state_at(x[0]);
        let (v, d, dd) = jet(x[0], &s);
        Ok(slot_jet(2, 0, v, d, dd).scale(2.0).exp())
    }));
    let one: Arc<dyn ScalarField> = Arc::new(scalar_dsl::ConstField { dim: 2, v: 1.0 });
    let zero: Arc<dyn ScalarField> = Arc::new(scalar_dsl::ConstField { dim: 2, v: 0.0 });
    let t_dom = shrunk(traj.t_start(), traj.t_end());
    Ok(MetricChart::from_fields(
        "profile-base",
        vec!["t".to_string(), "y".to_string()],
        vec![one, zero.clone(), zero, warp],
        vec![t_dom, (-1.0, 1.0)],
        Default::default(),
    )?)
}

/// Solves the chosen profile equation and assembles the four-dimensional
/// metric `(dt² + e^{2χ}dy² + fibre_c)/φ²` with its predictions.
pub fn profile_family(
    variant: Variant,
    c: f64,
    init: (f64, f64, f64),
    t_span: (f64, f64),
    tol: f64,
) -> Result<ConstructedMetric, BuildError> {
    let traj = Arc::new(solve_profile(variant, c, init, t_span, tol)?);
    if traj.grid.len() < 8 {
        return Err(BuildError::Degenerate {
            what: format!("flow stopped almost immediately: {:?}", traj.stop_reason),
        });
    }
    let class = classify_family(variant, &traj, c, tol);
    let base = profile_surface(variant, c, &traj)?;
    let fibre = fibre_chart(c)?;
    let product = product_chart(&base, &fibre)?;
    let phi = channel_field(traj.clone(), 4, 0, phi_jet());
    let label = match variant {
        Variant::I => "profile-i",
        Variant::II => "profile-ii",
    };
    let chart = conformal_scale(&product, phi)?.with_label(label);

    let (sc, lam): (
        Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
        Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    ) = match variant {
        Variant::I => {
            let t1 = traj.clone();
            let t2 = traj.clone();
            (
                Arc::new(move |x: &[f64]| {
                    let s = t1.state_at(x[0]);
                    4.0 * (c * s[0] * s[0] - s[1] * s[1])
                }),
                Arc::new(move |x: &[f64]| {
                    let s = t2.state_at(x[0]);
                    2.0 * (s[0] * s[2] - s[1] * s[1]).abs()
                }),
            )
        }
        Variant::II => {
            let t1 = traj.clone();
            let t2 = traj.clone();
            (
                Arc::new(move |x: &[f64]| {
                    let s = t1.state_at(x[0]);
                    8.0 * (s[0] * s[2] - s[1] * s[1])
                }),
                Arc::new(move |x: &[f64]| {
                    let s = t2.state_at(x[0]);
                    (s[1] * s[1] - c * s[0] * s[0]).abs()
                }),
            )
        }
    };
    let (e_shape, w_shape) = match variant {
        Variant::I => (EShape::AxisPair, WShape::SixthFold),
        Variant::II => (EShape::DoublePair, WShape::TwelfthFold),
    };
    Ok(ConstructedMetric {
        chart,
        family: label.to_string(),
        class,
        predicted: Predictions::new(sc, lam, e_shape, w_shape),
    })
}

/// Solves the exponent equation and assembles the boundary-type metric
/// `(e^{2κ(y)}(dx² + dy²) + fibre_c)/φ²` with `φ = e^{-x} sec y`.  Rejects
/// the degenerate log solution and flows along which the deviation
/// `κ' - tan y` or its slope gets within 1e-6 of zero.
pub fn harmonic_family(
    c: f64,
    init: (f64, f64),
    y_span: (f64, f64),
    x_range: (f64, f64),
    tol: f64,
) -> Result<ConstructedMetric, BuildError> {
    let sol = solve_exponent(c, init, y_span, tol)?;
    if sol.log_type {
        return Err(BuildError::Degenerate {
            what: "the exponent follows the log profile; the construction collapses".to_string(),
        });
    }
    let traj = Arc::new(sol.trajectory);
    let (ya, yb) = (traj.t_start(), traj.t_end());
    let mut inf_dev = f64::INFINITY;
    let mut inf_rate = f64::INFINITY;
    for i in 0..=200 {
        let y = ya + (yb - ya) * i as f64 / 200.0;
        let s = traj.state_at(y);
        inf_dev = inf_dev.min(log_deviation(y, &s).abs());
        inf_rate = inf_rate.min(log_deviation_rate(c, y, &s).abs());
    }
    if inf_dev < 1e-6 || inf_rate < 1e-6 {
        return Err(BuildError::Degenerate {
            what: format!("deviation bounds too small: {inf_dev:.2e}, {inf_rate:.2e}"),
        });
    }

    let jet = kappa_jet(c);
    let tr = traj.clone();
    let conf: Arc<dyn ScalarField> = Arc::new(fn_field(2, move |x: &[f64]| {
        let s = tr.state_at(x[1]);
        let (v, d, dd) = jet(x[1], &s);
        Ok(slot_jet(2, 1, v, d, dd).scale(2.0).exp())
    }));
    let zero: Arc<dyn ScalarField> = Arc::new(scalar_dsl::ConstField { dim: 2, v: 0.0 });
    let y_dom = shrunk(ya, yb);
    let base = MetricChart::from_fields(
        "harmonic-base",
        vec!["x".to_string(), "y".to_string()],
        vec![conf.clone(), zero.clone(), zero, conf],
        vec![x_range, y_dom],
        Default::default(),
    )?;
    let fibre = fibre_chart(c)?;
    let product = product_chart(&base, &fibre)?;
    let coords4 = ["x", "y", "eta", "zeta"];
    let phi: Arc<dyn ScalarField> =
        Arc::new(ExprField::parse("exp(-x)*sec(y)", &coords4).expect("phi formula"));
    let chart = conformal_scale(&product, phi)?.with_label("harmonic");

    let t1 = traj.clone();
    let t2 = traj.clone();
    let scalar = Arc::new(move |x: &[f64]| {
        let s = t1.state_at(x[1]);
        let phi2 = (-2.0 * x[0]).exp() / (x[1].cos() * x[1].cos());
        -4.0 * log_deviation_rate(c, x[1], &s) * (-2.0 * s[0]).exp() * phi2
    });
    let lambda = Arc::new(move |x: &[f64]| {
        let s = t2.state_at(x[1]);
        let phi2 = (-2.0 * x[0]).exp() / (x[1].cos() * x[1].cos());
        (2.0 * log_deviation(x[1], &s) * (-2.0 * s[0]).exp() * phi2 / x[1].cos()).abs()
    });
    Ok(ConstructedMetric {
        chart,
        family: "harmonic".to_string(),
        class: FamilyClass::Proper,
        predicted: Predictions::new(scalar, lambda, EShape::AxisPair, WShape::SixthFold),
    })
}
