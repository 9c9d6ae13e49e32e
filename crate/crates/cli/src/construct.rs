//! `construct`: build one family member, verify it against its closed-form
//! predictions, and write `chart.json`, `trajectory.csv` (for flow-backed
//! families) and `report.json` into the output directory.

use std::path::Path;

use serde::{Deserialize, Serialize};

use constructions::{harmonic_family, homogeneous, profile_family, ConstructedMetric};
use metric_field::curvature_at;
use ode_solver::{
    exponent_defect, profile_defect, solve_exponent, solve_profile, FamilyClass, Trajectory,
    Variant,
};
use weakly_einstein::{match_case, signature_at, SignatureRecord};

use crate::{fmt17, input_err, numeric_err, to_json_17, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Homogeneous,
    ProfileI,
    ProfileII,
    Harmonic,
}

impl Family {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "homogeneous" => Ok(Family::Homogeneous),
            "profile-i" => Ok(Family::ProfileI),
            "profile-ii" => Ok(Family::ProfileII),
            "harmonic" => Ok(Family::Harmonic),
            other => Err(input_err(format!(
                "unknown family {other:?}; expected homogeneous, profile-i, profile-ii or harmonic"
            ))),
        }
    }
}

fn default_solver_tol() -> f64 {
    1e-9
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomogeneousParams {
    a: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileParams {
    c: f64,
    init: [f64; 3],
    span: [f64; 2],
    #[serde(default = "default_solver_tol")]
    tol: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HarmonicParams {
    c: f64,
    init: [f64; 2],
    span: [f64; 2],
    x_range: [f64; 2],
    #[serde(default = "default_solver_tol")]
    tol: f64,
}

/// Inline JSON object, or the contents of the file at the given path.
pub fn params_value(src: &str) -> Result<serde_json::Value, CliError> {
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        std::fs::read_to_string(src)
            .map_err(|e| input_err(format!("cannot read params {src:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| input_err(format!("params are not valid JSON: {e}")))
}

fn from_value<T: serde::de::DeserializeOwned>(v: &serde_json::Value) -> Result<T, CliError> {
    serde_json::from_value(v.clone())
        .map_err(|e| input_err(format!("params do not match the family schema: {e}")))
}

/// The built metric plus the flow behind it, when there is one.
pub struct Built {
    pub metric: ConstructedMetric,
    pub trajectory: Option<(Trajectory, TrajectoryKind)>,
    pub solver_tol: f64,
}

pub enum TrajectoryKind {
    Profile(Variant, f64),
    Exponent(f64),
}

pub fn build(family: Family, params: &serde_json::Value) -> Result<Built, CliError> {
    match family {
        Family::Homogeneous => {
            let p: HomogeneousParams = from_value(params)?;
            if p.a == 0.0 {
                return Err(input_err("parameter \"a\" must be nonzero"));
            }
            Ok(Built { metric: homogeneous(p.a), trajectory: None, solver_tol: 0.0 })
        }
        Family::ProfileI | Family::ProfileII => {
            let p: ProfileParams = from_value(params)?;
            let variant =
                if family == Family::ProfileI { Variant::I } else { Variant::II };
            let init = (p.init[0], p.init[1], p.init[2]);
            let span = (p.span[0], p.span[1]);
            let metric =
                profile_family(variant, p.c, init, span, p.tol).map_err(numeric_err)?;
            let traj =
                solve_profile(variant, p.c, init, span, p.tol).map_err(numeric_err)?;
            Ok(Built {
                metric,
                trajectory: Some((traj, TrajectoryKind::Profile(variant, p.c))),
                solver_tol: p.tol,
            })
        }
        Family::Harmonic => {
            let p: HarmonicParams = from_value(params)?;
            let init = (p.init[0], p.init[1]);
            let span = (p.span[0], p.span[1]);
            let x_range = (p.x_range[0], p.x_range[1]);
            let metric =
                harmonic_family(p.c, init, span, x_range, p.tol).map_err(numeric_err)?;
            let sol = solve_exponent(p.c, init, span, p.tol).map_err(numeric_err)?;
            Ok(Built {
                metric,
                trajectory: Some((sol.trajectory, TrajectoryKind::Exponent(p.c))),
                solver_tol: p.tol,
            })
        }
    }
}

#[derive(Debug, Serialize)]
struct ChartMeta {
    label: String,
    family: String,
    class: String,
    dim: usize,
    coords: Vec<String>,
    domain: Vec<[f64; 2]>,
    params: serde_json::Value,
}

#[derive(Debug, Serialize)]
pub struct ConstructRecord {
    #[serde(flatten)]
    pub signature: SignatureRecord,
    pub predicted_s: f64,
    pub predicted_lambda: f64,
    pub scalar_err: f64,
    pub e_err: f64,
    pub w_err: f64,
}

#[derive(Debug, Serialize)]
pub struct ConstructSummary {
    pub we_max: f64,
    pub scalar_err_max: f64,
    pub e_err_max: f64,
    pub w_err_max: f64,
    /// Prediction errors count toward the pass flag only for classes with
    /// nondegenerate closed forms.
    pub proper_checks: bool,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct ConstructReport {
    pub family: String,
    pub class: String,
    pub params: serde_json::Value,
    pub solver_tol: f64,
    pub tol: f64,
    pub seed: u64,
    pub points: usize,
    pub records: Vec<ConstructRecord>,
    pub summary: ConstructSummary,
}

/// Measures the built metric at sampled points against its predictions.
pub fn report(
    built: &Built,
    params: &serde_json::Value,
    seed: u64,
    points: usize,
    tol: f64,
) -> Result<ConstructReport, CliError> {
    if points == 0 {
        return Err(input_err("--points must be at least 1"));
    }
    if !(tol > 0.0) {
        return Err(input_err("--tol must be positive"));
    }
    let m = &built.metric;
    let mut records = Vec::with_capacity(points);
    let mut we_max = 0.0f64;
    let mut scalar_err_max = 0.0f64;
    let mut e_err_max = 0.0f64;
    let mut w_err_max = 0.0f64;
    for x in m.chart.sample_points(points, seed) {
        let pack = curvature_at(&m.chart, &x).map_err(numeric_err)?;
        let sig = signature_at(&pack, tol, true).map_err(numeric_err)?;
        let matched = match_case(&sig, tol.max(1e-8));
        let s_pred = m.predicted.scalar_at(&x);
        let lambda_pred = m.predicted.lambda_at(&x);
        let scalar_err = (sig.scalar - s_pred).abs() / (1.0 + s_pred.abs());
        let e_pred = m.predicted.e_spec_at(&x);
        let mut e_err = 0.0f64;
        for k in 0..4 {
            e_err = e_err.max((sig.e_spec[k] - e_pred[k]).abs());
        }
        e_err /= 1.0 + lambda_pred.abs();
        let w_pred = m.predicted.w_spec_at(&x);
        let mut w_err = 0.0f64;
        for k in 0..3 {
            w_err = w_err.max((sig.wplus_spec[k] - w_pred[k]).abs());
            w_err = w_err.max((sig.wminus_spec[k] - w_pred[k]).abs());
        }
        w_err /= 1.0 + s_pred.abs();

        we_max = we_max.max(sig.we_residual);
        scalar_err_max = scalar_err_max.max(scalar_err);
        e_err_max = e_err_max.max(e_err);
        w_err_max = w_err_max.max(w_err);
        records.push(ConstructRecord {
            signature: SignatureRecord::new(&x, &sig, &matched),
            predicted_s: s_pred,
            predicted_lambda: lambda_pred,
            scalar_err,
            e_err,
            w_err,
        });
    }
    let proper_checks =
        matches!(m.class, FamilyClass::Proper | FamilyClass::Homogeneous);
    let pred_max = scalar_err_max.max(e_err_max).max(w_err_max);
    let pass = we_max <= tol && (!proper_checks || pred_max <= tol);
    Ok(ConstructReport {
        family: m.family.clone(),
        class: m.class.to_string(),
        params: params.clone(),
        solver_tol: built.solver_tol,
        tol,
        seed,
        points,
        records,
        summary: ConstructSummary {
            we_max,
            scalar_err_max,
            e_err_max,
            w_err_max,
            proper_checks,
            pass,
        },
    })
}

/// Trajectory table: node states plus the interpolant defect at the midpoint
/// of the following segment.
pub fn trajectory_csv(traj: &Trajectory, kind: &TrajectoryKind) -> Result<String, CliError> {
    let (t_label, channels): (&str, &[&str]) = match kind {
        TrajectoryKind::Profile(..) => ("t", &["phi", "dphi", "ddphi", "chi"]),
        TrajectoryKind::Exponent(_) => ("y", &["kappa", "dkappa"]),
    };
    let dim = traj.dim();
    if dim != channels.len() {
        return Err(numeric_err(format!("trajectory carries {dim} channels")));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![t_label.to_string()];
    header.extend(channels.iter().map(|s| s.to_string()));
    header.push("defect".into());
    w.write_record(&header).map_err(numeric_err)?;
    for (i, (t, y)) in traj.grid.iter().zip(&traj.states).enumerate() {
        let defect = if i + 1 < traj.grid.len() {
            let mid = 0.5 * (traj.grid[i] + traj.grid[i + 1]);
            match kind {
                TrajectoryKind::Profile(variant, c) => profile_defect(*variant, *c, traj, mid),
                TrajectoryKind::Exponent(c) => exponent_defect(*c, traj, mid),
            }
        } else {
            0.0
        };
        let mut row = vec![fmt17(*t)];
        row.extend(y.iter().map(|&v| fmt17(v)));
        row.push(fmt17(defect));
        w.write_record(&row).map_err(numeric_err)?;
    }
    let buf = w.into_inner().map_err(|e| numeric_err(e.to_string()))?;
    String::from_utf8(buf).map_err(numeric_err)
}

/// Writes the three output files; returns the list actually written.
pub fn write_files(
    built: &Built,
    report: &ConstructReport,
    out_dir: &Path,
) -> Result<Vec<String>, CliError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| input_err(format!("cannot create {}: {e}", out_dir.display())))?;
    let write = |name: &str, text: &str| -> Result<(), CliError> {
        std::fs::write(out_dir.join(name), text)
            .map_err(|e| input_err(format!("cannot write {name}: {e}")))
    };
    let chart = &built.metric.chart;
    let meta = ChartMeta {
        label: chart.label().to_string(),
        family: report.family.clone(),
        class: report.class.clone(),
        dim: chart.n(),
        coords: chart.coords().to_vec(),
        domain: chart.domain().iter().map(|&(lo, hi)| [lo, hi]).collect(),
        params: report.params.clone(),
    };
    let mut files = Vec::new();
    write("chart.json", &(to_json_17(&meta)? + "\n"))?;
    files.push("chart.json".to_string());
    if let Some((traj, kind)) = &built.trajectory {
        write("trajectory.csv", &trajectory_csv(traj, kind)?)?;
        files.push("trajectory.csv".to_string());
    }
    write("report.json", &(to_json_17(report)? + "\n"))?;
    files.push("report.json".to_string());
    Ok(files)
}
