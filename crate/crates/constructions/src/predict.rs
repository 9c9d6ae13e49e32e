//! Predicted spectral data of a constructed metric and the comparison with
//! what the curvature pipeline actually measures.

use std::sync::Arc;

use metric_field::{curvature_at, MetricChart};
use ode_solver::FamilyClass;
use weakly_einstein::{signature_at, SpectralSignature};

use crate::BuildError;

/// Shape of the trace-adjusted Ricci spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EShape {
    /// `(-λ, 0, 0, λ)`
    AxisPair,
    /// `(-λ, -λ, λ, λ)`
    DoublePair,
}

/// Shape of both half-Weyl spectra, written as the fold `(σ, -σ/2, -σ/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WShape {
    /// `σ = s/6`, i.e. `(-s/12, -s/12, s/6)`.
    SixthFold,
    /// `σ = -s/12`, i.e. `(-s/12, s/24, s/24)`.
    TwelfthFold,
}

/// Closed-form predictions attached to a construction; `scalar` and `lambda`
/// are functions of the chart point.
#[derive(Clone)]
pub struct Predictions {
    pub(crate) scalar: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    pub(crate) lambda: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
    pub e_shape: EShape,
    pub w_shape: WShape,
}

impl Predictions {
    pub fn new(
        scalar: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
        lambda: Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>,
        e_shape: EShape,
        w_shape: WShape,
    ) -> Self {
        Predictions { scalar, lambda, e_shape, w_shape }
    }

    pub fn scalar_at(&self, point: &[f64]) -> f64 {
        (self.scalar)(point)
    }

    pub fn lambda_at(&self, point: &[f64]) -> f64 {
        (self.lambda)(point)
    }

    /// Predicted trace-adjusted Ricci spectrum, ascending.
    pub fn e_spec_at(&self, point: &[f64]) -> [f64; 4] {
        let l = self.lambda_at(point).abs();
        match self.e_shape {
            EShape::AxisPair => [-l, 0.0, 0.0, l],
            EShape::DoublePair => [-l, -l, l, l],
        }
    }

    /// Predicted spectrum of each Weyl half, ascending.
    pub fn w_spec_at(&self, point: &[f64]) -> [f64; 3] {
        let s = self.scalar_at(point);
        let sigma = match self.w_shape {
            WShape::SixthFold => s / 6.0,
            WShape::TwelfthFold => -s / 12.0,
        };
        let mut w = [sigma, -sigma / 2.0, -sigma / 2.0];
        w.sort_by(|a, b| a.partial_cmp(b).unwrap());
        w
    }
}

/// A chart plus its provenance and predictions.
pub struct ConstructedMetric {
    pub chart: MetricChart,
    /// One of "homogeneous", "profile-i", "profile-ii", "harmonic".
    pub family: String,
    pub class: FamilyClass,
    pub predicted: Predictions,
}

/// Measured signature next to the prediction errors at one point.
pub struct ConstructionCheck {
    pub signature: SpectralSignature,
    pub scalar_err: f64,
    pub e_err: f64,
    pub w_err: f64,
}

impl ConstructedMetric {
    /// Measures the curvature signature at `point` (requiring the quadratic
    /// property to hold within `tol`) and compares it with the predictions.
    pub fn check_at(&self, point: &[f64], tol: f64) -> Result<ConstructionCheck, BuildError> {
        let pack = curvature_at(&self.chart, point)?;
        let sig = signature_at(&pack, tol, false)?;
        let s_pred = self.predicted.scalar_at(point);
        let scalar_err = (sig.scalar - s_pred).abs() / (1.0 + s_pred.abs());
        let e_pred = self.predicted.e_spec_at(point);
        let mut e_err = 0.0f64;
        for k in 0..4 {
            e_err = e_err.max((sig.e_spec[k] - e_pred[k]).abs());
        }
        e_err /= 1.0 + self.predicted.lambda_at(point).abs();
        let w_pred = self.predicted.w_spec_at(point);
        let mut w_err = 0.0f64;
        for k in 0..3 {
            w_err = w_err.max((sig.wplus_spec[k] - w_pred[k]).abs());
            w_err = w_err.max((sig.wminus_spec[k] - w_pred[k]).abs());
        }
        w_err /= 1.0 + s_pred.abs();
        Ok(ConstructionCheck { signature: sig, scalar_err, e_err, w_err })
    }
}
