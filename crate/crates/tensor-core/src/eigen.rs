use crate::mat::{det_general, SymMat, NMAX};
use crate::TensorError;

/// Cyclic Jacobi for a small symmetric matrix. Returns eigenvalues and the
/// matching eigenvectors (`vectors[k]` belongs to `values[k]`), unsorted.
pub fn jacobi<const N: usize>(mut a: [[f64; N]; N]) -> ([f64; N], [[f64; N]; N]) {
    let mut v = [[0.0; N]; N];
    for i in 0..N {
        v[i][i] = 1.0;
    }
    let scale: f64 = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..N {
            for q in (p + 1)..N {
                off = off.max(a[p][q].abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                if a[p][q].abs() <= 1e-18 * scale {
                    continue;
                }
                // standard stable rotation choice
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let apq = a[p][q];
                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for k in 0..N {
                    if k != p && k != q {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[p][k] = a[k][p];
                        a[k][q] = s * akp + c * akq;
                        a[q][k] = a[k][q];
                    }
                }
                for k in 0..N {
                    let vkp = v[p][k];
                    let vkq = v[q][k];
                    v[p][k] = c * vkp - s * vkq;
                    v[q][k] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut vals = [0.0; N];
    for i in 0..N {
        vals[i] = a[i][i];
    }
    (vals, v)
}

/// Generalized symmetric eigendata: ascending eigenvalues with a
/// metric-orthonormal, positively oriented eigenframe.
#[derive(Clone, Copy, Debug)]
pub struct Eigen {
    pub n: usize,
    pub values: [f64; NMAX],
    /// vectors[k] holds the coordinate components of the k-th eigenvector.
    pub vectors: [[f64; NMAX]; NMAX],
}

/// Solves m·v = λ·metric·v for symmetric m and positive-definite metric:
/// Cholesky-reduce to an ordinary symmetric problem, Jacobi, map back.
///
/// Determinism conventions: eigenvalues ascending with stable tie order; each
/// vector's largest-magnitude component is made positive; if the resulting
/// coordinate frame is negatively oriented the last vector is flipped.
pub fn sym_eigen(m: &SymMat, metric: &SymMat) -> Result<Eigen, TensorError> {
    let n = m.n;
    if metric.n != n {
        return Err(TensorError::DimensionMismatch { a: n, b: metric.n });
    }
    let ch = metric.cholesky()?;

    // B = L⁻¹ · m · L⁻ᵀ, computed by triangular solves, then symmetrized.
    let mut c = [[0.0; NMAX]; NMAX];
    for col in 0..n {
        let mut b = [0.0; NMAX];
        for r in 0..n {
            b[r] = m.m[r][col];
        }
        let y = ch.forward(&b);
        for r in 0..n {
            c[r][col] = y[r];
        }
    }
    let mut bb = [[0.0; NMAX]; NMAX];
    for row in 0..n {
        let mut b = [0.0; NMAX];
        for r in 0..n {
            b[r] = c[row][r];
        }
        let y = ch.forward(&b);
        for r in 0..n {
            bb[row][r] = y[r];
        }
    }
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (bb[i][j] + bb[j][i]);
            bb[i][j] = v;
            bb[j][i] = v;
        }
    }

    let (vals, vecs) = match n {
        1 => {
            let a = [[bb[0][0]]];
            let (w, u) = jacobi::<1>(a);
            (vec![w[0]], vec![vec![u[0][0]]])
        }
        2 => {
            let a = [[bb[0][0], bb[0][1]], [bb[1][0], bb[1][1]]];
            let (w, u) = jacobi::<2>(a);
            (w.to_vec(), u.iter().map(|r| r.to_vec()).collect())
        }
        3 => {
            let mut a = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    a[i][j] = bb[i][j];
                }
            }
            let (w, u) = jacobi::<3>(a);
            (w.to_vec(), u.iter().map(|r| r.to_vec()).collect())
        }
        4 => {
            let mut a = [[0.0; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    a[i][j] = bb[i][j];
                }
            }
            let (w, u) = jacobi::<4>(a);
            (w.to_vec(), u.iter().map(|r| r.to_vec()).collect())
        }
        _ => return Err(TensorError::DimensionMismatch { a: n, b: NMAX }),
    };

    // back-substitute: eigenvectors of the pencil are L⁻ᵀ · y
    let mut out = Eigen { n, values: [0.0; NMAX], vectors: [[0.0; NMAX]; NMAX] };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
    for (slot, &k) in order.iter().enumerate() {
        out.values[slot] = vals[k];
        let mut y = [0.0; NMAX];
        for r in 0..n {
            y[r] = vecs[k][r];
        }
        let x = ch.backward(&y);
        out.vectors[slot][..n].copy_from_slice(&x[..n]);
    }

    for k in 0..n {
        let mut imax = 0;
        let mut best = -1.0;
        for i in 0..n {
            if out.vectors[k][i].abs() > best {
                best = out.vectors[k][i].abs();
                imax = i;
            }
        }
        if out.vectors[k][imax] < 0.0 {
            for i in 0..n {
                out.vectors[k][i] = -out.vectors[k][i];
            }
        }
    }

    // positive orientation with respect to coordinate order
    let mut cols = [[0.0; NMAX]; NMAX];
    for i in 0..n {
        for k in 0..n {
            cols[i][k] = out.vectors[k][i];
        }
    }
    if det_general(n, &cols) < 0.0 {
        for i in 0..n {
            out.vectors[n - 1][i] = -out.vectors[n - 1][i];
        }
    }
    Ok(out)
}
