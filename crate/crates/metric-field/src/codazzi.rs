//! Divergence-of-curvature diagnostic.
//!
//! A metric has harmonic curvature exactly when its Ricci tensor satisfies
//! the Codazzi equation ∇_i r_jk = ∇_j r_ik; the g-norm of the antisymmetrized
//! covariant derivative is returned as a residual. The coordinate derivative
//! of the Ricci tensor is taken by central differences over exact-jet packs
//! at neighboring points, so the residual is third-order data with
//! finite-difference accuracy.

use tensor_core::NMAX;

use crate::chart::MetricChart;
use crate::pack::curvature_at;
use crate::ChartError;

pub fn curvature_divergence_residual(
    chart: &MetricChart,
    point: &[f64],
) -> Result<f64, ChartError> {
    let n = chart.n();
    let center = curvature_at(chart, point)?;

    let mut dr = [[[0.0; NMAX]; NMAX]; NMAX];
    for m in 0..n {
        let h = f64::EPSILON.powf(1.0 / 3.0) * (1.0 + point[m].abs());
        let mut fwd = point.to_vec();
        fwd[m] += h;
        let mut bwd = point.to_vec();
        bwd[m] -= h;
        let pf = curvature_at(chart, &fwd)?;
        let pb = curvature_at(chart, &bwd)?;
        for j in 0..n {
            for k in 0..n {
                dr[m][j][k] = (pf.ricci.m[j][k] - pb.ricci.m[j][k]) / (2.0 * h);
            }
        }
    }

    let mut cov = [[[0.0; NMAX]; NMAX]; NMAX];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut v = dr[i][j][k];
                for p in 0..n {
                    v -= center.gamma[p][i][j] * center.ricci.m[p][k];
                    v -= center.gamma[p][i][k] * center.ricci.m[j][p];
                }
                cov[i][j][k] = v;
            }
        }
    }

    let gi = &center.ginv;
    let mut sq = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = cov[i][j][k] - cov[j][i][k];
                for a in 0..n {
                    for b in 0..n {
                        for c2 in 0..n {
                            let d = cov[a][b][c2] - cov[b][a][c2];
                            sq += gi.m[i][a] * gi.m[j][b] * gi.m[k][c2] * c * d;
                        }
                    }
                }
            }
        }
    }
    Ok(sq.max(0.0).sqrt())
}
