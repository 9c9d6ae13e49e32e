//! Covariant second-order data of scalar fields on a chart.

use scalar_dsl::{Jet2, ScalarField};
use tensor_core::{SymMat, NMAX};

use crate::chart::MetricChart;
use crate::ChartError;

/// Metric, inverse and Christoffel symbols at a point; the cheap part of a
/// curvature pack, enough for covariant derivatives of scalars.
pub fn christoffel_at(
    chart: &MetricChart,
    point: &[f64],
) -> Result<(SymMat, SymMat, [[[f64; NMAX]; NMAX]; NMAX]), ChartError> {
    let n = chart.n();
    let jets = chart.jets_at(point)?;
    let g = SymMat::from_fn(n, |i, j| jets[i * n + j].v);
    let ginv = g.inverse_spd()?;
    let mut gamma = [[[0.0; NMAX]; NMAX]; NMAX];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += ginv.m[k][l]
                        * (jets[j * n + l].d[i] + jets[i * n + l].d[j] - jets[i * n + j].d[l]);
                }
                gamma[k][i][j] = 0.5 * s;
            }
        }
    }
    Ok((g, ginv, gamma))
}

/// Covariant Hessian from Christoffel symbols and a scalar jet:
/// H_ij = ∂_i∂_j f − Γ^k_ij ∂_k f.
pub fn hessian_from(n: usize, gamma: &[[[f64; NMAX]; NMAX]; NMAX], fjet: &Jet2) -> SymMat {
    SymMat::from_fn(n, |i, j| {
        let mut h = fjet.dd[i][j];
        for k in 0..n {
            h -= gamma[k][i][j] * fjet.d[k];
        }
        h
    })
}

pub fn laplacian_from(ginv: &SymMat, hess: &SymMat) -> f64 {
    hess.trace_with(ginv)
}

pub fn grad_sq_from(n: usize, ginv: &SymMat, fjet: &Jet2) -> f64 {
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            q += ginv.m[i][j] * fjet.d[i] * fjet.d[j];
        }
    }
    q
}

/// Value, differential, covariant Hessian, Laplacian and squared gradient of
/// one scalar field at one point.
#[derive(Clone, Debug)]
pub struct CovariantData {
    pub value: f64,
    pub df: [f64; NMAX],
    pub hessian: SymMat,
    pub laplacian: f64,
    pub grad_sq: f64,
}

pub fn covariant_data(
    chart: &MetricChart,
    f: &dyn ScalarField,
    point: &[f64],
) -> Result<CovariantData, ChartError> {
    let n = chart.n();
    let (_, ginv, gamma) = christoffel_at(chart, point)?;
    let fjet = f.jet2(point)?;
    let hessian = hessian_from(n, &gamma, &fjet);
    Ok(CovariantData {
        value: fjet.v,
        df: fjet.d,
        hessian,
        laplacian: laplacian_from(&ginv, &hessian),
        grad_sq: grad_sq_from(n, &ginv, &fjet),
    })
}

pub fn hessian_of(
    chart: &MetricChart,
    f: &dyn ScalarField,
    point: &[f64],
) -> Result<SymMat, ChartError> {
    Ok(covariant_data(chart, f, point)?.hessian)
}

pub fn laplacian_of(
    chart: &MetricChart,
    f: &dyn ScalarField,
    point: &[f64],
) -> Result<f64, ChartError> {
    Ok(covariant_data(chart, f, point)?.laplacian)
}

pub fn grad_sq(
    chart: &MetricChart,
    f: &dyn ScalarField,
    point: &[f64],
) -> Result<f64, ChartError> {
    Ok(covariant_data(chart, f, point)?.grad_sq)
}
