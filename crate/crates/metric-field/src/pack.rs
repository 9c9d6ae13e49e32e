//! Pointwise curvature data assembled from component jets.

use scalar_dsl::{fd_jet2, Jet2};
use tensor_core::{
    einstein_of, ricci_of, scalar_of, weyl_of, CurvTensor, SymMat, NMAX,
};

use crate::chart::MetricChart;
use crate::ChartError;

/// Everything curvature-shaped at one point. Sign conventions: the Ricci
/// tensor is the contraction r_ij = g^pq R_ipjq, the Einstein tensor the
/// trace-free part r - (s/n) g, and for n = 4 the Weyl tensor is stored in
/// fully covariant form.
#[derive(Clone, Debug)]
pub struct CurvaturePack {
    pub point: Vec<f64>,
    pub g: SymMat,
    pub ginv: SymMat,
    /// Christoffel symbols, indexed gamma[k][i][j] = Γ^k_ij.
    pub gamma: [[[f64; NMAX]; NMAX]; NMAX],
    pub riemann: CurvTensor,
    pub ricci: SymMat,
    pub einstein: SymMat,
    pub scalar: f64,
    pub weyl: Option<CurvTensor>,
}

impl CurvaturePack {
    pub fn n(&self) -> usize {
        self.g.n
    }
}

/// Core pipeline: metric jets at one point to the full curvature pack.
///
/// `jets` is the row-major `n*n` grid of order-2 component jets. Indices:
/// dg[m][i][j] = ∂_m g_ij, and the curvature operator
/// ρ^m_lij = ∂_i Γ^m_jl − ∂_j Γ^m_il + Γ^m_ip Γ^p_jl − Γ^m_jp Γ^p_il
/// is lowered through g to R_ijkl = g_km ρ^m_lij, which makes
/// r_ij = g^pq R_ipjq come out positive on round spheres.
pub fn pack_from_jets(n: usize, point: &[f64], jets: &[Jet2]) -> Result<CurvaturePack, ChartError> {
    assert_eq!(jets.len(), n * n);
    let g = SymMat::from_fn(n, |i, j| jets[i * n + j].v);
    let ginv = g.inverse_spd()?;

    let mut dg = [[[0.0; NMAX]; NMAX]; NMAX];
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                dg[m][i][j] = jets[i * n + j].d[m];
            }
        }
    }

    let mut gamma = [[[0.0; NMAX]; NMAX]; NMAX];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += ginv.m[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                }
                gamma[k][i][j] = 0.5 * s;
            }
        }
    }

    // ∂_m g^kl = −g^ka (∂_m g_ab) g^bl
    let mut dginv = [[[0.0; NMAX]; NMAX]; NMAX];
    for m in 0..n {
        for k in 0..n {
            for l in 0..n {
                let mut s = 0.0;
                for a in 0..n {
                    for b in 0..n {
                        s -= ginv.m[k][a] * dg[m][a][b] * ginv.m[b][l];
                    }
                }
                dginv[m][k][l] = s;
            }
        }
    }

    // ∂_m ∂_i g_jl from the component Hessians.
    let ddg = |m: usize, i: usize, j: usize, l: usize| jets[j * n + l].dd[m][i];

    let mut dgamma = [[[[0.0; NMAX]; NMAX]; NMAX]; NMAX];
    for m in 0..n {
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0.0;
                    for l in 0..n {
                        s += dginv[m][k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                        s += ginv.m[k][l]
                            * (ddg(m, i, j, l) + ddg(m, j, i, l) - ddg(m, l, i, j));
                    }
                    dgamma[m][k][i][j] = 0.5 * s;
                }
            }
        }
    }

    let mut riemann = CurvTensor::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut rm = 0.0;
                    for m in 0..n {
                        let mut rho = dgamma[i][m][j][l] - dgamma[j][m][i][l];
                        for p in 0..n {
                            rho += gamma[m][i][p] * gamma[p][j][l]
                                - gamma[m][j][p] * gamma[p][i][l];
                        }
                        rm += g.m[k][m] * rho;
                    }
                    riemann.r[i][j][k][l] = rm;
                }
            }
        }
    }

    let ricci = ricci_of(&riemann, &ginv);
    let scalar = scalar_of(&ricci, &ginv);
    let einstein = einstein_of(&ricci, &g, scalar);
    let weyl = if n == 4 { Some(weyl_of(&riemann, &g, &ricci, scalar)) } else { None };

    Ok(CurvaturePack {
        point: point.to_vec(),
        g,
        ginv,
        gamma,
        riemann,
        ricci,
        einstein,
        scalar,
        weyl,
    })
}

/// Curvature pack from exact (forward-mode) component jets.
pub fn curvature_at(chart: &MetricChart, point: &[f64]) -> Result<CurvaturePack, ChartError> {
    let jets = chart.jets_at(point)?;
    pack_from_jets(chart.n(), point, &jets)
}

/// Curvature pack with component jets taken by central finite differences of
/// the component values. Slower and less accurate than [`curvature_at`]; kept
/// as an independent oracle for the exact-jet path.
pub fn curvature_at_fd(chart: &MetricChart, point: &[f64]) -> Result<CurvaturePack, ChartError> {
    chart.require_in_domain(point)?;
    let n = chart.n();
    let mut jets = vec![Jet2::constant(n, 0.0); n * n];
    for i in 0..n {
        for j in i..n {
            let comp = chart.component(i, j);
            let jet = fd_jet2(&|x: &[f64]| comp.value(x), point)?;
            jets[i * n + j] = jet;
            jets[j * n + i] = jet;
        }
    }
    pack_from_jets(n, point, &jets)
}
