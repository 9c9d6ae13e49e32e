//! The homogeneous model: a curvature-homogeneous metric with a single local
//! type for each value of the parameter, and its frame maps.

use std::sync::Arc;

use metric_field::catalog;
use ode_solver::FamilyClass;

use crate::predict::{ConstructedMetric, EShape, Predictions, WShape};

/// Builds the homogeneous chart `4a²g = dϑ² + e^{-ϑ}dξ² + e^{ϑ}(dη² + dζ²)`
/// with its predicted data: scalar curvature `-4a²`, trace-adjusted Ricci
/// spectrum `(-2a², 0, 0, 2a²)` and both Weyl halves folded on `σ = s/6`.
pub fn homogeneous(a: f64) -> ConstructedMetric {
    assert!(a != 0.0, "the parameter must be nonzero");
    let chart = catalog::homogeneous(a);
    let s = -4.0 * a * a;
    let lam = 2.0 * a * a;
    ConstructedMetric {
        chart,
        family: "homogeneous".to_string(),
        class: FamilyClass::Homogeneous,
        predicted: Predictions::new(
            Arc::new(move |_x: &[f64]| s),
            Arc::new(move |_x: &[f64]| lam),
            EShape::AxisPair,
            WShape::SixthFold,
        ),
    }
}

/// A self-map of the homogeneous chart: a shift `c` along the first axis,
/// combined with the compensating dilation of `ξ`, a unit rotation `w` of the
/// last two axes, and translations `p`, `q = (q1, q2)`.
#[derive(Debug, Clone, Copy)]
pub struct FrameMap {
    pub c: f64,
    pub p: f64,
    /// Unit complex number acting on `(η, ζ)`.
    pub w: (f64, f64),
    pub q: (f64, f64),
}

impl FrameMap {
    pub fn apply(&self, x: &[f64]) -> [f64; 4] {
        let (wr, wi) = self.w;
        let ec = self.c.exp();
        let emc = (-self.c).exp();
        [
            x[0] + 2.0 * self.c,
            ec * x[1] + self.p,
            emc * (wr * x[2] - wi * x[3]) + self.q.0,
            emc * (wi * x[2] + wr * x[3]) + self.q.1,
        ]
    }

    /// Constant Jacobian of the map.
    pub fn jacobian(&self) -> [[f64; 4]; 4] {
        let (wr, wi) = self.w;
        let ec = self.c.exp();
        let emc = (-self.c).exp();
        let mut j = [[0.0; 4]; 4];
        j[0][0] = 1.0;
        j[1][1] = ec;
        j[2][2] = emc * wr;
        j[2][3] = -emc * wi;
        j[3][2] = emc * wi;
        j[3][3] = emc * wr;
        j
    }
}

/// Largest componentwise defect of `J^T g(F(x)) J = g(x)` over `samples`
/// deterministic points, relative to the size of `g`.  The rotation part is
/// normalized to unit modulus first; a zero modulus panics.
pub fn homogeneous_isometry_residual(a: f64, map: FrameMap, samples: usize, seed: u64) -> f64 {
    let norm = (map.w.0 * map.w.0 + map.w.1 * map.w.1).sqrt();
    assert!(norm > 0.0, "rotation factor must be nonzero");
    let map = FrameMap { w: (map.w.0 / norm, map.w.1 / norm), ..map };
    let chart = catalog::homogeneous(a);
    let jac = map.jacobian();
    let mut worst = 0.0f64;
    for x in chart.sample_points(samples, seed) {
        let fx = map.apply(&x);
        // Component fields are global formulas, so evaluate them directly:
        // the image point may leave the chart's nominal box.
        let mut g_here = [[0.0; 4]; 4];
        let mut g_there = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                g_here[i][j] = chart.component(i, j).value(&x).expect("component value");
                g_there[i][j] = chart.component(i, j).value(&fx).expect("component value");
            }
        }
        let mut scale = 0.0f64;
        for row in &g_here {
            for v in row {
                scale = scale.max(v.abs());
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                let mut pulled = 0.0;
                for k in 0..4 {
                    for l in 0..4 {
                        pulled += jac[k][i] * g_there[k][l] * jac[l][j];
                    }
                }
                worst = worst.max((pulled - g_here[i][j]).abs() / scale);
            }
        }
    }
    worst
}
