use crate::{KitError, SpectralData};
use tensor_core::{
    einstein_of, ricci_of, scalar_of, triple_contract, weyl_of, Bivector, BivectorFrame,
    CurvTensor, SymMat, NMAX,
};

// W += weight · β_low ⊗ β_low for a unit bivector; with the half-contraction
// pairing ⟨α,β⟩ = ½α_ij β^ij this makes β an eigenvector with eigenvalue
// exactly `weight`.
fn accumulate(w: &mut CurvTensor, beta: &Bivector, g: &SymMat, weight: f64) {
    let low = beta.lower(g);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    w.r[i][j][k][l] += weight * low[i][j] * low[k][l];
                }
            }
        }
    }
}

/// Assembles the algebraic curvature tensor on the identity metric whose
/// scalar curvature, traceless Ricci eigenvalues (in the standard frame) and
/// Weyl block eigenvalues are the ones prescribed by `data`.
///
/// Recomputing Ricci, scalar and the Weyl blocks from the result reproduces
/// the inputs to machine precision.
pub fn build(data: &SpectralData) -> Result<CurvTensor, KitError> {
    let g = SymMat::identity(4);
    let mut u = [[0.0; NMAX]; NMAX];
    for k in 0..4 {
        u[k][k] = 1.0;
    }
    let frame = BivectorFrame::from_frame(&u, &g)?;

    let wp = data.wplus_slots();
    let wm = data.wminus_slots();
    let mut w = CurvTensor::zero(4);
    for k in 0..3 {
        accumulate(&mut w, &frame.plus[k], &g, wp[k]);
        accumulate(&mut w, &frame.minus[k], &g, wm[k]);
    }

    // invert the Weyl decomposition: R = W + (g ∧ r)/2 − (s/12)(g ∧ g)
    let mut ricci = SymMat::diag(&data.e_diag);
    for k in 0..4 {
        ricci.m[k][k] += data.s / 4.0;
    }
    let ricci_term = CurvTensor::kulkarni_nomizu(&g, &ricci).scale(0.5);
    let scalar_term = CurvTensor::kulkarni_nomizu(&g, &g).scale(-data.s / 12.0);
    Ok(w.add(&ricci_term).add(&scalar_term))
}

/// Both quadratic-condition residuals of an algebraic curvature tensor on the
/// identity metric.
///
/// The first is the deviation of R_{ipqr}R_j{}^{pqr} from a pure-trace tensor,
/// the second the deviation of the contracted Weyl form from −s·e/6, each
/// scale-normalized.
pub fn we_residual_pair(r: &CurvTensor) -> (f64, f64) {
    assert_eq!(r.n, 4, "algebraic check is specific to dimension 4");
    let g = SymMat::identity(4);
    let ginv = g;
    let ricci = ricci_of(r, &ginv);
    let s = scalar_of(&ricci, &ginv);
    let e = einstein_of(&ricci, &g, s);
    let w = weyl_of(r, &g, &ricci, s);

    let t = triple_contract(r, &ginv);
    let trace = t.trace_with(&ginv);
    let mut defect = t;
    for k in 0..4 {
        defect.m[k][k] -= trace / 4.0;
    }
    let direct = defect.norm_with(&ginv) / (1.0 + t.norm_with(&ginv));

    // (We)_ij = W_ipjq e^{pq}; identity metric, so no raising needed
    let mut we = SymMat::zero(4);
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for p in 0..4 {
                for q in 0..4 {
                    acc += w.r[i][p][j][q] * e.m[p][q];
                }
            }
            we.m[i][j] = acc;
        }
    }
    let lhs = we.scale(6.0).add(&e.scale(s));
    let weyl_form = lhs.norm_with(&ginv) / (1.0 + e.norm_with(&ginv) * (1.0 + s.abs()));
    (direct, weyl_form)
}

/// Worst of the two residuals from [`we_residual_pair`].
pub fn verify_we_algebraic(r: &CurvTensor) -> f64 {
    let (a, b) = we_residual_pair(r);
    a.max(b)
}
