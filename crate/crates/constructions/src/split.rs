//! Three-plus-one splittings: a three-dimensional factor `(N, g)` with a
//! function `φ`, a marked vector field `v` and a function `θ` subject to four
//! pointwise conditions, under which `(g ⊕ dw²)/φ²` has the quadratic
//! curvature property.  With `b = 2∇dφ + φr`, the conditions are
//!
//!   i)   b has g-spectrum `(-|v|², -|v|², 0)`,
//!   ii)  b(v, ·) = 0,
//!   iii) [(s - 6θ)φ + 6Δφ]φ = 12|∇φ|²,
//!   iv)  e(v, ·) = θ g(v, ·),
//!
//! equivalent (i and ii) to the rank-one form `b - (Δφ + sφ/2)g = ω ⊗ ω`
//! with `ω = g(v, ·)`.  The second profile variant supplies such data when
//! reread as a 3+1 product: the same metric is
//! `[e^{-2χ}(dt² + fibre_c) ⊕ dy²] / (φe^{-χ})²`, with `v` along `∂t`.

use std::sync::Arc;

use metric_field::{
    conformal_scale, covariant_data, curvature_at, product_chart, EmbedField, MetricChart,
};
use ode_solver::solver::Trajectory;
use ode_solver::Variant;
use scalar_dsl::{fn_field, ScalarField};
use tensor_core::{sym_eigen, SymMat, NMAX};
use weakly_einstein::we_residuals;

use crate::family::fibre_chart;
use crate::fields::{chi_jet, slot_jet};
use crate::BuildError;

/// Pointwise value of a vector field on the three-dimensional factor.
pub type VectorFn = Arc<dyn Fn(&[f64]) -> [f64; 3] + Send + Sync>;

/// A three-dimensional chart with the splitting data on it.  Only the values
/// of `v` and `theta` enter the conditions, so they are plain closures.
pub struct SplitData {
    pub chart3: MetricChart,
    pub phi: Arc<dyn ScalarField>,
    pub v: VectorFn,
    pub theta: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
}

/// Worst-case residuals of the splitting conditions over the sample, the
/// observed ranges of `θ` and `|v|²`, and the residuals of the assembled
/// four-dimensional metric.
#[derive(Debug, Clone)]
pub struct SplitReport {
    /// Spectrum of `b = 2∇dφ + φr` against `(-|v|², -|v|², 0)`.
    pub spectrum: f64,
    /// `b(v, ·) = 0`.
    pub kernel: f64,
    /// `[(s - 6θ)φ + 6Δφ]φ = 12|∇φ|²`.
    pub balance: f64,
    /// `(e - θg)(v, ·) = 0`.
    pub eigen: f64,
    /// `b - (Δφ + sφ/2)g = ω ⊗ ω`.
    pub rank_one: f64,
    pub theta: (f64, f64),
    /// Range of `|v|²`; a positive lower bound rules the metric out of the
    /// Einstein subfamily.
    pub v_sq: (f64, f64),
    /// Worst (direct, contracted-Weyl) residual of the assembled metric.
    pub we: (f64, f64),
}

/// Rereads a second-variant profile flow as 3+1 splitting data.  The first
/// variant admits no such data: its `b` tensor has no zero eigenvalue off the
/// degenerate subfamilies.  The sign of `φ` is chosen so that the doubled
/// eigenvalue of `b` is nonpositive.
pub fn resplit31(c: f64, traj: &Arc<Trajectory>) -> Result<SplitData, BuildError> {
    let fibre = fibre_chart(c)?;
    let chi = chi_jet(Variant::II, c);
    let n = 3usize;
    let mut comps: Vec<Arc<dyn ScalarField>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let chi = chi.clone();
            let tr = traj.clone();
            let inner: Option<Arc<dyn ScalarField>> = if i == 0 && j == 0 {
                None // bare e^{-2χ} dt²
            } else if i >= 1 && j >= 1 {
                Some(Arc::new(EmbedField::new(fibre.component(i - 1, j - 1).clone(), 3, 1)))
            } else {
                comps.push(Arc::new(scalar_dsl::ConstField { dim: 3, v: 0.0 }));
                continue;
            };
            comps.push(Arc::new(fn_field(3, move |x: &[f64]| {
                let s = tr.state_at(x[0]);
                let (v, d, dd) = chi(x[0], &s);
                let damp = slot_jet(3, 0, v, d, dd).scale(-2.0).exp();
                match &inner {
                    None => Ok(damp),
                    Some(f) => Ok(f.jet2(x)?.mul(damp)),
                }
            })));
        }
    }
    let m = 0.005 * (traj.t_end() - traj.t_start());
    let t_dom = (traj.t_start() + m, traj.t_end() - m);
    let mut domain = vec![t_dom];
    domain.extend_from_slice(fibre.domain());
    let mut coords = vec!["t".to_string()];
    coords.extend(fibre.coords().iter().cloned());
    let chart3 = MetricChart::from_fields("resplit-factor", coords, comps, domain, Default::default())?;

    // Doubled eigenvalue of b at the start; its sign is constant along a
    // proper flow, and the sign of φ is flipped to make it nonpositive.
    let s0 = traj.state_at(traj.t_start());
    let mu0 = 2.0 * s0[3].exp() * (c * s0[0] * s0[0] - s0[1] * s0[1]) / s0[0];
    let sigma = if mu0 > 0.0 { -1.0 } else { 1.0 };

    let chi = chi_jet(Variant::II, c);
    let tr = traj.clone();
    let phi: Arc<dyn ScalarField> = Arc::new(fn_field(3, move |x: &[f64]| {
        let s = tr.state_at(x[0]);
        let p = slot_jet(3, 0, s[0], s[1], s[2]).scale(sigma);
        let (v, d, dd) = chi(x[0], &s);
        Ok(p.mul(slot_jet(3, 0, v, d, dd).neg().exp()))
    }));

    let tr = traj.clone();
    let v: VectorFn = Arc::new(move |x: &[f64]| {
        let s = tr.state_at(x[0]);
        let mu = 2.0 * s[3].exp() * (c * s[0] * s[0] - s[1] * s[1]) / s[0];
        [s[3].exp() * mu.abs().sqrt(), 0.0, 0.0]
    });
    let tr = traj.clone();
    let theta: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync> = Arc::new(move |x: &[f64]| {
        let s = tr.state_at(x[0]);
        4.0 / 3.0 * (2.0 * s[3]).exp() * (s[0] * s[2] - s[1] * s[1]) / (s[0] * s[0])
    });
    Ok(SplitData { chart3, phi, v, theta })
}

/// `(g₃ ⊕ dw²)/φ²` on the product coordinates, with the line coordinate
/// appended last.
pub fn assemble31(data: &SplitData) -> Result<MetricChart, BuildError> {
    let line = MetricChart::from_exprs("line", &["w"], &["1"], &[(-1.0, 1.0)], &[])?;
    let product = product_chart(&data.chart3, &line)?;
    let phi4: Arc<dyn ScalarField> = Arc::new(EmbedField::new(data.phi.clone(), 4, 0));
    Ok(conformal_scale(&product, phi4)?.with_label("split-product"))
}

/// Checks the four splitting conditions and the rank-one refinement on the
/// three-dimensional data, then measures the quadratic-property residuals of
/// the assembled metric at the same points.
pub fn product31_verify(data: &SplitData, points: &[Vec<f64>]) -> Result<SplitReport, BuildError> {
    let chart = &data.chart3;
    let n = chart.n();
    assert_eq!(n, 3, "the factor must be three-dimensional");
    let mut report = SplitReport {
        spectrum: 0.0,
        kernel: 0.0,
        balance: 0.0,
        eigen: 0.0,
        rank_one: 0.0,
        theta: (f64::INFINITY, f64::NEG_INFINITY),
        v_sq: (f64::INFINITY, f64::NEG_INFINITY),
        we: (0.0, 0.0),
    };
    let assembled = assemble31(data)?;
    for x in points {
        let pack = curvature_at(chart, x)?;
        let cov = covariant_data(chart, data.phi.as_ref(), x)?;
        let phi = cov.value;
        let s = pack.scalar;
        let v = (data.v)(x);
        let theta = (data.theta)(x);

        let mut q_v = 0.0;
        for i in 0..n {
            for j in 0..n {
                q_v += pack.g.m[i][j] * v[i] * v[j];
            }
        }
        report.v_sq = (report.v_sq.0.min(q_v), report.v_sq.1.max(q_v));
        report.theta = (report.theta.0.min(theta), report.theta.1.max(theta));

        let b = cov.hessian.scale(2.0).add(&pack.ricci.scale(phi));
        let b_norm = b.norm_with(&pack.ginv);

        let eig = sym_eigen(&b, &pack.g).map_err(metric_field::ChartError::from)?;
        let target = [-q_v, -q_v, 0.0];
        let mut sp = 0.0f64;
        for k in 0..3 {
            sp = sp.max((eig.values[k] - target[k]).abs());
        }
        report.spectrum = report.spectrum.max(sp / (1.0 + q_v));

        let one_form_norm = |w: &[f64; NMAX]| {
            let mut acc = 0.0;
            for i in 0..n {
                for j in 0..n {
                    acc += pack.ginv.m[i][j] * w[i] * w[j];
                }
            }
            acc.max(0.0).sqrt()
        };

        let mut bv = [0.0; NMAX];
        for i in 0..n {
            for j in 0..n {
                bv[i] += b.m[i][j] * v[j];
            }
        }
        report.kernel = report
            .kernel
            .max(one_form_norm(&bv) / (1.0 + b_norm * q_v.sqrt()));

        let e = pack.ricci.sub(&pack.g.scale(s / n as f64));
        let e_norm = e.norm_with(&pack.ginv);
        let mut ev = [0.0; NMAX];
        for i in 0..n {
            for j in 0..n {
                ev[i] += (e.m[i][j] - theta * pack.g.m[i][j]) * v[j];
            }
        }
        report.eigen = report
            .eigen
            .max(one_form_norm(&ev) / (1.0 + e_norm * q_v.sqrt()));

        let q = cov.grad_sq;
        let lhs = ((s - 6.0 * theta) * phi + 6.0 * cov.laplacian) * phi;
        let scale = 1.0
            + (s * phi * phi).abs()
            + (6.0 * theta * phi * phi).abs()
            + (6.0 * cov.laplacian * phi).abs()
            + 12.0 * q;
        report.balance = report.balance.max((lhs - 12.0 * q).abs() / scale);

        let mut omega = [0.0; NMAX];
        for i in 0..n {
            for j in 0..n {
                omega[i] += pack.g.m[i][j] * v[j];
            }
        }
        let m = b.sub(&pack.g.scale(cov.laplacian + s * phi / 2.0));
        let rank1 = SymMat::from_fn(n, |i, j| omega[i] * omega[j]);
        report.rank_one = report
            .rank_one
            .max(m.sub(&rank1).norm_with(&pack.ginv) / (1.0 + m.norm_with(&pack.ginv)));

        let mut x4 = x.clone();
        x4.push(0.0);
        let pack4 = curvature_at(&assembled, &x4)?;
        let (dr, wr) = we_residuals(&pack4)?;
        report.we = (report.we.0.max(dr), report.we.1.max(wr));
    }
    Ok(report)
}
