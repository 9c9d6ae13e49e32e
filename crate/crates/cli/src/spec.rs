//! Metric-spec files: either a built-in catalog reference or an explicit
//! component grid of expression strings.  The upper triangle is sufficient;
//! when both triangles are given they must agree numerically.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use metric_field::{catalog, MetricChart};
use scalar_dsl::{ExprField, ScalarField};

use crate::{input_err, CliError};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BuiltinSpec {
    builtin: String,
    #[serde(default)]
    params: BTreeMap<String, f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitSpec {
    name: String,
    dim: usize,
    coords: Vec<String>,
    components: Vec<Vec<String>>,
    domain: Vec<[f64; 2]>,
    #[serde(default)]
    params: BTreeMap<String, f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SpecFile {
    Builtin(BuiltinSpec),
    Explicit(ExplicitSpec),
}

/// Loads a chart from a positional spec argument: a path to a JSON file, or
/// the label of a catalog metric with `--param key=value` overrides.
pub fn resolve_chart(spec: &str, overrides: &[String]) -> Result<MetricChart, CliError> {
    let path = Path::new(spec);
    if path.exists() {
        if !overrides.is_empty() {
            return Err(input_err("--param only applies to catalog labels, not spec files"));
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
        return chart_from_json(&text);
    }
    if catalog::labels().contains(&spec) {
        let params = parse_overrides(overrides)?;
        return catalog::builtin(spec, &params).map_err(|e| input_err(e.to_string()));
    }
    Err(input_err(format!(
        "{spec:?} is neither a readable file nor a catalog label; labels: {}",
        catalog::labels().join(", ")
    )))
}

fn parse_overrides(overrides: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    let mut params = BTreeMap::new();
    for kv in overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| input_err(format!("malformed --param {kv:?}, expected key=value")))?;
        let v: f64 = v
            .parse()
            .map_err(|_| input_err(format!("parameter {k:?} has a non-numeric value {v:?}")))?;
        params.insert(k.to_string(), v);
    }
    Ok(params)
}

/// Parses and validates a spec document, producing a chart.
pub fn chart_from_json(text: &str) -> Result<MetricChart, CliError> {
    let parsed: SpecFile = serde_json::from_str(text)
        .map_err(|e| input_err(format!("spec does not match the schema: {e}")))?;
    match parsed {
        SpecFile::Builtin(b) => {
            catalog::builtin(&b.builtin, &b.params).map_err(|e| input_err(e.to_string()))
        }
        SpecFile::Explicit(e) => explicit_chart(&e),
    }
}

fn explicit_chart(spec: &ExplicitSpec) -> Result<MetricChart, CliError> {
    let n = spec.dim;
    if n < 1 || n > tensor_core::NMAX {
        return Err(input_err(format!("dim must be 1..={}, got {n}", tensor_core::NMAX)));
    }
    if spec.coords.len() != n {
        return Err(input_err(format!("coords lists {} names for dim {n}", spec.coords.len())));
    }
    for (i, c) in spec.coords.iter().enumerate() {
        if c.is_empty() || spec.coords[..i].contains(c) {
            return Err(input_err(format!("coordinate names must be distinct and nonempty: {c:?}")));
        }
    }
    if spec.domain.len() != n {
        return Err(input_err(format!("domain lists {} intervals for dim {n}", spec.domain.len())));
    }
    for &[lo, hi] in &spec.domain {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(input_err(format!("domain interval [{lo}, {hi}] is not a finite range")));
        }
    }
    if spec.components.len() != n || spec.components.iter().any(|row| row.len() != n) {
        return Err(input_err(format!("components must be a {n}x{n} grid of strings")));
    }

    let coords: Vec<&str> = spec.coords.iter().map(|s| s.as_str()).collect();
    let consts: Vec<(&str, f64)> = spec.params.iter().map(|(k, &v)| (k.as_str(), v)).collect();

    // fill the grid from whichever triangle is present
    let mut grid = vec![String::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let upper = spec.components[i][j].trim();
            let mirror = spec.components[j][i].trim();
            let chosen = if !upper.is_empty() { upper } else { mirror };
            if chosen.is_empty() {
                if i == j {
                    return Err(input_err(format!("diagonal component ({i},{i}) is missing")));
                }
                return Err(input_err(format!("component ({i},{j}) is given in neither triangle")));
            }
            grid[i * n + j] = chosen.to_string();
            if i < j && !upper.is_empty() && !mirror.is_empty() && upper != mirror {
                triangle_consistent(spec, &coords, &consts, i, j, upper, mirror)?;
            }
        }
    }

    let grid_refs: Vec<&str> = grid.iter().map(|s| s.as_str()).collect();
    let domain: Vec<(f64, f64)> = spec.domain.iter().map(|&[lo, hi]| (lo, hi)).collect();
    MetricChart::from_exprs(&spec.name, &coords, &grid_refs, &domain, &consts)
        .map_err(|e| input_err(format!("spec {:?}: {e}", spec.name)))
}

// Both triangles given with different text: evaluate on a fixed interior
// lattice and require numeric agreement.
fn triangle_consistent(
    spec: &ExplicitSpec,
    coords: &[&str],
    consts: &[(&str, f64)],
    i: usize,
    j: usize,
    upper: &str,
    mirror: &str,
) -> Result<(), CliError> {
    let parse = |src: &str| {
        ExprField::parse_with_consts(src, coords, consts)
            .map_err(|e| input_err(format!("component ({i},{j}): {e}")))
    };
    let fu = parse(upper)?;
    let fm = parse(mirror)?;
    let fracs = [0.15, 0.35, 0.5, 0.65, 0.85];
    for m in 0..fracs.len() {
        let x: Vec<f64> = spec
            .domain
            .iter()
            .enumerate()
            .map(|(k, &[lo, hi])| lo + fracs[(m + k) % fracs.len()] * (hi - lo))
            .collect();
        let a = fu.value(&x).map_err(|e| input_err(format!("component ({i},{j}): {e}")))?;
        let b = fm.value(&x).map_err(|e| input_err(format!("component ({j},{i}): {e}")))?;
        if (a - b).abs() > 1e-12 * (1.0 + a.abs()) {
            return Err(input_err(format!(
                "components ({i},{j}) and ({j},{i}) disagree at {x:?}: {a} vs {b}"
            )));
        }
    }
    Ok(())
}
