//! Coordinate charts carrying a metric.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scalar_dsl::{ExprField, Jet2, ScalarField};
use tensor_core::{SymMat, NMAX};

use crate::ChartError;

/// A metric written in one coordinate box: `n` coordinate names, a symmetric
/// `n`×`n` grid of component fields, a closed product-interval domain, and the
/// parameter values the components were built with.
///
/// The domain must stay clear of metric degeneracies; positive definiteness
/// is certified at sampled points on construction, not globally.
pub struct MetricChart {
    n: usize,
    coords: Vec<String>,
    comps: Vec<Arc<dyn ScalarField>>,
    domain: Vec<(f64, f64)>,
    params: BTreeMap<String, f64>,
    label: String,
}

impl std::fmt::Debug for MetricChart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MetricChart")
            .field("label", &self.label)
            .field("coords", &self.coords)
            .field("domain", &self.domain)
            .field("params", &self.params)
            .finish()
    }
}

impl MetricChart {
    /// Build a chart from component expressions, given row-major with all
    /// `n*n` entries. Parameters are baked into the parsed expressions and
    /// recorded on the chart.
    pub fn from_exprs(
        label: &str,
        coords: &[&str],
        entries: &[&str],
        domain: &[(f64, f64)],
        params: &[(&str, f64)],
    ) -> Result<Self, ChartError> {
        let n = coords.len();
        if entries.len() != n * n {
            return Err(ChartError::BadShape { want: n * n, got: entries.len() });
        }
        let mut comps: Vec<Arc<dyn ScalarField>> = Vec::with_capacity(n * n);
        for src in entries {
            let f = ExprField::parse_with_consts(src, coords, params)?;
            comps.push(Arc::new(f));
        }
        let params = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        Self::from_fields(label, coords.iter().map(|c| c.to_string()).collect(), comps, domain.to_vec(), params)
    }

    /// Build a chart from already-constructed fields (row-major, `n*n`).
    /// Checks shape, coordinate-name uniqueness, numeric symmetry of the
    /// component grid and positive definiteness at sampled points.
    pub fn from_fields(
        label: &str,
        coords: Vec<String>,
        comps: Vec<Arc<dyn ScalarField>>,
        domain: Vec<(f64, f64)>,
        params: BTreeMap<String, f64>,
    ) -> Result<Self, ChartError> {
        let n = coords.len();
        assert!((1..=NMAX).contains(&n), "chart dimension must be 1..=4");
        if comps.len() != n * n {
            return Err(ChartError::BadShape { want: n * n, got: comps.len() });
        }
        if domain.len() != n {
            return Err(ChartError::BadShape { want: n, got: domain.len() });
        }
        for i in 0..n {
            if coords[i + 1..].contains(&coords[i]) {
                return Err(ChartError::NameCollision { name: coords[i].clone() });
            }
        }
        for (i, &(lo, hi)) in domain.iter().enumerate() {
            assert!(lo.is_finite() && hi.is_finite() && lo < hi, "domain interval {i} is empty");
        }
        let chart = MetricChart { n, coords, comps, domain, params, label: label.to_string() };
        chart.certify()?;
        Ok(chart)
    }

    /// Symmetry and positive definiteness at a fixed deterministic sample.
    fn certify(&self) -> Result<(), ChartError> {
        for p in self.sample_points(16, 0x11) {
            let mut g = [[0.0; NMAX]; NMAX];
            for i in 0..self.n {
                for j in 0..self.n {
                    g[i][j] = self.comps[i * self.n + j].value(&p)?;
                }
            }
            for i in 0..self.n {
                for j in i + 1..self.n {
                    if (g[i][j] - g[j][i]).abs() > 1e-12 * (1.0 + g[i][j].abs()) {
                        return Err(ChartError::AsymmetricComponents { i, j });
                    }
                }
            }
            let m = SymMat::from_fn(self.n, |i, j| g[i][j]);
            if m.cholesky().is_err() {
                return Err(ChartError::NotPositive { what: format!("metric {:?}", self.label) });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn component(&self, i: usize, j: usize) -> &Arc<dyn ScalarField> {
        &self.comps[i * self.n + j]
    }

    pub fn domain(&self) -> &[(f64, f64)] {
        &self.domain
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Same chart under a new label.
    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn in_domain(&self, point: &[f64]) -> bool {
        point.len() == self.n
            && point
                .iter()
                .zip(&self.domain)
                .all(|(x, &(lo, hi))| x.is_finite() && lo <= *x && *x <= hi)
    }

    pub(crate) fn require_in_domain(&self, point: &[f64]) -> Result<(), ChartError> {
        if self.in_domain(point) {
            Ok(())
        } else {
            Err(ChartError::OutOfDomain { point: format!("{point:?}") })
        }
    }

    /// Metric components at `point`, values only.
    pub fn metric_at(&self, point: &[f64]) -> Result<SymMat, ChartError> {
        self.require_in_domain(point)?;
        let mut g = SymMat::zero(self.n);
        for i in 0..self.n {
            for j in i..self.n {
                let v = self.comps[i * self.n + j].value(point)?;
                g.m[i][j] = v;
                g.m[j][i] = v;
            }
        }
        Ok(g)
    }

    /// Order-2 jets of every component at `point`, row-major. The lower
    /// triangle reuses the upper-triangle jets.
    pub fn jets_at(&self, point: &[f64]) -> Result<Vec<Jet2>, ChartError> {
        self.require_in_domain(point)?;
        let mut jets = vec![Jet2::constant(self.n, 0.0); self.n * self.n];
        for i in 0..self.n {
            for j in i..self.n {
                let jet = self.comps[i * self.n + j].jet2(point)?;
                jets[i * self.n + j] = jet;
                jets[j * self.n + i] = jet;
            }
        }
        Ok(jets)
    }

    /// Deterministic interior sample, uniform per interval with a relative
    /// margin of 1e-3 kept from each endpoint.
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        sample_box(&self.domain, count, seed)
    }
}

/// Uniform deterministic sample of a product interval, staying a relative
/// margin of 1e-3 away from each endpoint.
pub(crate) fn sample_box(domain: &[(f64, f64)], count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let p = domain
            .iter()
            .map(|&(lo, hi)| {
                let m = 1e-3 * (hi - lo);
                rng.gen_range(lo + m..hi - m)
            })
            .collect();
        out.push(p);
    }
    out
}
