//! `sweep`: cartesian product over parameter value lists, one table row per
//! (parameter combination, sample point).

use serde::Serialize;
use serde_json::{Map, Value};

use metric_field::curvature_at;
use weakly_einstein::{match_case, signature_at, ResidualPair};

use crate::construct::{build, Family};
use crate::{fmt17, input_err, numeric_err, to_json_17, CliError};

/// Parameter names to value lists; names iterate in sorted order and the
/// last name varies fastest.
pub struct Grid {
    names: Vec<String>,
    values: Vec<Vec<Value>>,
}

pub fn parse_grid(src: &str) -> Result<Grid, CliError> {
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        std::fs::read_to_string(src)
            .map_err(|e| input_err(format!("cannot read grid {src:?}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| input_err(format!("grid is not valid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| input_err("grid must be a JSON object of value lists"))?;
    let mut names = Vec::new();
    let mut values = Vec::new();
    for (k, list) in obj {
        let list = list
            .as_array()
            .ok_or_else(|| input_err(format!("grid entry {k:?} must be an array of values")))?;
        if list.is_empty() {
            return Err(input_err(format!("grid entry {k:?} is empty")));
        }
        let width = flat_width(&list[0])
            .ok_or_else(|| input_err(format!("grid entry {k:?} holds a non-numeric value")))?;
        for v in list {
            if flat_width(v) != Some(width) {
                return Err(input_err(format!(
                    "grid entry {k:?} mixes value shapes; all entries must match"
                )));
            }
        }
        names.push(k.clone());
        values.push(list.clone());
    }
    if names.is_empty() {
        return Err(input_err("grid must name at least one parameter"));
    }
    Ok(Grid { names, values })
}

// A value is a number (width 1 as itself) or a flat array of numbers.
fn flat_width(v: &Value) -> Option<usize> {
    match v {
        Value::Number(_) => Some(0),
        Value::Array(a) if !a.is_empty() && a.iter().all(|x| x.is_number()) => Some(a.len()),
        _ => None,
    }
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub params: Map<String, Value>,
    pub point: Vec<f64>,
    pub s: f64,
    pub e_spec: [f64; 4],
    pub wp_spec: [f64; 3],
    pub wm_spec: [f64; 3],
    pub residuals: ResidualPair,
    pub case: String,
}

pub fn run_sweep(
    family: Family,
    grid: &Grid,
    seed: u64,
    points: usize,
    tol: f64,
) -> Result<Vec<SweepRow>, CliError> {
    if points == 0 {
        return Err(input_err("--points must be at least 1"));
    }
    let mut rows = Vec::new();
    let mut idx = vec![0usize; grid.names.len()];
    loop {
        let mut params = Map::new();
        for (k, name) in grid.names.iter().enumerate() {
            params.insert(name.clone(), grid.values[k][idx[k]].clone());
        }
        let built = build(family, &Value::Object(params.clone()))?;
        let chart = &built.metric.chart;
        for x in chart.sample_points(points, seed) {
            let pack = curvature_at(chart, &x).map_err(numeric_err)?;
            let sig = signature_at(&pack, tol, true).map_err(numeric_err)?;
            let matched = match_case(&sig, tol.max(1e-8));
            rows.push(SweepRow {
                params: params.clone(),
                point: x,
                s: sig.scalar,
                e_spec: sig.e_spec,
                wp_spec: sig.wplus_spec,
                wm_spec: sig.wminus_spec,
                residuals: ResidualPair {
                    direct: sig.direct_residual,
                    weyl_form: sig.weyl_residual,
                },
                case: matched.label.to_string(),
            });
        }
        let mut i = grid.names.len();
        loop {
            if i == 0 {
                return Ok(rows);
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < grid.values[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

fn param_columns(grid: &Grid) -> Vec<(String, Option<usize>)> {
    let mut cols = Vec::new();
    for (k, name) in grid.names.iter().enumerate() {
        match flat_width(&grid.values[k][0]).expect("validated on parse") {
            0 => cols.push((name.clone(), None)),
            w => {
                for j in 0..w {
                    cols.push((format!("{name}_{j}"), Some(j)));
                }
            }
        }
    }
    cols
}

pub fn render_csv(grid: &Grid, rows: &[SweepRow], dim: usize) -> Result<String, CliError> {
    let cols = param_columns(grid);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = cols.iter().map(|(name, _)| name.clone()).collect();
    header.extend((0..dim).map(|i| format!("x{i}")));
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
    for row in rows {
        let mut rec: Vec<String> = Vec::with_capacity(header.len());
        for (col, part) in &cols {
            let name = match part {
                None => col.clone(),
                Some(_) => col.rsplit_once('_').expect("indexed column").0.to_string(),
            };
            let v = &row.params[&name];
            let num = match part {
                None => v.as_f64(),
                Some(j) => v.as_array().and_then(|a| a.get(*j)).and_then(Value::as_f64),
            }
            .ok_or_else(|| numeric_err(format!("parameter {name:?} lost its shape")))?;
            rec.push(fmt17(num));
        }
        rec.extend(row.point.iter().map(|&v| fmt17(v)));
        rec.push(fmt17(row.s));
        rec.extend(row.e_spec.iter().map(|&v| fmt17(v)));
        rec.extend(row.wp_spec.iter().map(|&v| fmt17(v)));
        rec.extend(row.wm_spec.iter().map(|&v| fmt17(v)));
        rec.push(fmt17(row.residuals.direct));
        rec.push(fmt17(row.residuals.weyl_form));
        rec.push(row.case.clone());
        w.write_record(&rec).map_err(numeric_err)?;
    }
    let buf = w.into_inner().map_err(|e| numeric_err(e.to_string()))?;
    String::from_utf8(buf).map_err(numeric_err)
}

pub fn render_json(rows: &[SweepRow]) -> Result<String, CliError> {
    Ok(to_json_17(&rows)? + "\n")
}
