use crate::SigError;
use metric_field::CurvaturePack;
use tensor_core::{triple_contract, SymMat};

/// Both scale-normalized residuals of the quadratic curvature condition.
///
/// The first entry tests the defining form: the g-norm of the trace-free part
/// of T_ij = R_{ipqr}R_j{}^{pqr}, divided by 1 + ‖T‖.  The second tests the
/// equivalent four-dimensional reformulation 6·W(e) = −s·e, normalized by
/// 1 + ‖e‖(1 + |s|).  Both vanish together on exact solutions.
pub fn we_residuals(pack: &CurvaturePack) -> Result<(f64, f64), SigError> {
    if pack.n() != 4 {
        return Err(SigError::WrongDimension { got: pack.n() });
    }
    let ginv = &pack.ginv;

    let t = triple_contract(&pack.riemann, ginv);
    let trace = t.trace_with(ginv);
    let defect = t.sub(&pack.g.scale(trace / 4.0));
    let direct = defect.norm_with(ginv) / (1.0 + t.norm_with(ginv));

    let w = pack.weyl.as_ref().expect("4-dimensional packs carry a Weyl tensor");
    let e = &pack.einstein;
    // raise both slots of e, then contract into the Weyl tensor
    let mut eup = [[0.0; 4]; 4];
    for p in 0..4 {
        for q in 0..4 {
            let mut acc = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    acc += ginv.m[p][a] * ginv.m[q][b] * e.m[a][b];
                }
            }
            eup[p][q] = acc;
        }
    }
    let mut we = SymMat::zero(4);
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for p in 0..4 {
                for q in 0..4 {
                    acc += w.r[i][p][j][q] * eup[p][q];
                }
            }
            we.m[i][j] = acc;
        }
    }
    for i in 0..4 {
        for j in 0..i {
            let v = 0.5 * (we.m[i][j] + we.m[j][i]);
            we.m[i][j] = v;
            we.m[j][i] = v;
        }
    }
    let s = pack.scalar;
    let lhs = we.scale(6.0).add(&e.scale(s));
    let weyl_form = lhs.norm_with(ginv) / (1.0 + e.norm_with(ginv) * (1.0 + s.abs()));
    Ok((direct, weyl_form))
}
