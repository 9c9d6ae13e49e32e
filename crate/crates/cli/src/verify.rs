//! `verify`: sample a chart, extract spectral signatures, classify, and
//! check the quadratic curvature condition at the requested tolerance.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use metric_field::{curvature_at, curvature_at_fd, MetricChart};
use weakly_einstein::{match_case, signature_at, SignatureRecord};

use crate::{fmt17, input_err, numeric_err, to_json_17, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Jet {
    Ad,
    Fd,
}

impl Jet {
    pub fn name(self) -> &'static str {
        match self {
            Jet::Ad => "ad",
            Jet::Fd => "fd",
        }
    }

    /// Exact jets warrant a tight default; finite differences carry ~1e-8
    /// truncation noise, so their default is looser.
    pub fn default_tol(self) -> f64 {
        match self {
            Jet::Ad => 1e-10,
            Jet::Fd => 1e-5,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Sampling {
    Points(usize),
    Grid(usize),
}

const GRID_CAP: usize = 200_000;

/// Sample points per the sampling mode: seeded uniform draws, or a lattice
/// with a five-percent margin per axis.
fn sample(chart: &MetricChart, sampling: Sampling, seed: u64) -> Result<Vec<Vec<f64>>, CliError> {
    match sampling {
        Sampling::Points(count) => {
            if count == 0 {
                return Err(input_err("--points must be at least 1"));
            }
            Ok(chart.sample_points(count, seed))
        }
        Sampling::Grid(k) => {
            if k == 0 {
                return Err(input_err("--grid must be at least 1"));
            }
            let n = chart.n();
            let total = k.checked_pow(n as u32).filter(|&t| t <= GRID_CAP);
            let total = total
                .ok_or_else(|| input_err(format!("grid {k}^{n} exceeds the {GRID_CAP} cap")))?;
            let axis = |i: usize, step: usize| {
                let (lo, hi) = chart.domain()[i];
                let frac = if k == 1 {
                    0.5
                } else {
                    0.05 + 0.9 * step as f64 / (k - 1) as f64
                };
                lo + frac * (hi - lo)
            };
            let mut out = Vec::with_capacity(total);
            let mut idx = vec![0usize; n];
            loop {
                out.push((0..n).map(|i| axis(i, idx[i])).collect());
                let mut i = n;
                loop {
                    if i == 0 {
                        return Ok(out);
                    }
                    i -= 1;
                    idx[i] += 1;
                    if idx[i] < k {
                        break;
                    }
                    idx[i] = 0;
                }
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifySummary {
    pub points: usize,
    pub residual_min: f64,
    pub residual_max: f64,
    pub direct_max: f64,
    pub weyl_max: f64,
    pub cases: BTreeMap<String, usize>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub spec: String,
    pub label: String,
    pub dim: usize,
    pub jet: String,
    pub tol: f64,
    pub seed: u64,
    pub sampling: String,
    pub records: Vec<SignatureRecord>,
    pub summary: VerifySummary,
}

/// Runs the verification; the boolean is the overall pass flag.
pub fn run_verify(
    spec_name: &str,
    chart: &MetricChart,
    sampling: Sampling,
    seed: u64,
    tol: f64,
    jet: Jet,
) -> Result<(VerifyReport, bool), CliError> {
    if !(tol > 0.0) {
        return Err(input_err("--tol must be positive"));
    }
    let points = sample(chart, sampling, seed)?;
    let records: Vec<SignatureRecord> = points
        .par_iter()
        .map(|x| {
            let pack = match jet {
                Jet::Ad => curvature_at(chart, x),
                Jet::Fd => curvature_at_fd(chart, x),
            }
            .map_err(numeric_err)?;
            let sig = signature_at(&pack, tol, true).map_err(numeric_err)?;
            let matched = match_case(&sig, tol);
            Ok(SignatureRecord::new(x, &sig, &matched))
        })
        .collect::<Result<_, CliError>>()?;

    let mut residual_min = f64::INFINITY;
    let mut residual_max = 0.0f64;
    let mut direct_max = 0.0f64;
    let mut weyl_max = 0.0f64;
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    for r in &records {
        let worst = r.residuals.direct.max(r.residuals.weyl_form);
        residual_min = residual_min.min(worst);
        residual_max = residual_max.max(worst);
        direct_max = direct_max.max(r.residuals.direct);
        weyl_max = weyl_max.max(r.residuals.weyl_form);
        *cases.entry(r.case.clone()).or_insert(0) += 1;
    }
    let pass = residual_max <= tol;
    let report = VerifyReport {
        spec: spec_name.to_string(),
        label: chart.label().to_string(),
        dim: chart.n(),
        jet: jet.name().to_string(),
        tol,
        seed,
        sampling: match sampling {
            Sampling::Points(p) => format!("points:{p}"),
            Sampling::Grid(k) => format!("grid:{k}"),
        },
        records,
        summary: VerifySummary {
            points: points.len(),
            residual_min,
            residual_max,
            direct_max,
            weyl_max,
            cases,
            pass,
        },
    };
    Ok((report, pass))
}

pub fn render_json(report: &VerifyReport) -> Result<String, CliError> {
    Ok(to_json_17(report)? + "\n")
}

/// Flat table of the per-point records; the summary stays JSON-only.
pub fn render_csv(report: &VerifyReport) -> Result<String, CliError> {
    let n = report.dim;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    header.push("s".into());
    for k in 1..=4 {
        header.push(format!("e{k}"));
    }
    for k in 1..=3 {
        header.push(format!("wp{k}"));
    }
    for k in 1..=3 {
        header.push(format!("wm{k}"));
    }
    header.extend(["direct", "weyl_form", "case"].map(String::from));
    w.write_record(&header).map_err(numeric_err)?;
    for r in &report.records {
        let mut row: Vec<String> = r.point.iter().map(|&v| fmt17(v)).collect();
        row.push(fmt17(r.s));
        row.extend(r.e_spec.iter().map(|&v| fmt17(v)));
        row.extend(r.wp_spec.iter().map(|&v| fmt17(v)));
        row.extend(r.wm_spec.iter().map(|&v| fmt17(v)));
        row.push(fmt17(r.residuals.direct));
        row.push(fmt17(r.residuals.weyl_form));
        row.push(r.case.clone());
        w.write_record(&row).map_err(numeric_err)?;
    }
    let buf = w.into_inner().map_err(|e| numeric_err(e.to_string()))?;
    String::from_utf8(buf).map_err(numeric_err)
}
