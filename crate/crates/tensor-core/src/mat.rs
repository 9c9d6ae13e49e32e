use crate::TensorError;

pub const NMAX: usize = 4;

/// Symmetric matrix in dimension n ≤ 4, stored dense.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymMat {
    pub n: usize,
    pub m: [[f64; NMAX]; NMAX],
}

impl SymMat {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1 && n <= NMAX);
        SymMat { n, m: [[0.0; NMAX]; NMAX] }
    }

    pub fn identity(n: usize) -> Self {
        let mut s = Self::zero(n);
        for i in 0..n {
            s.m[i][i] = 1.0;
        }
        s
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut s = Self::zero(d.len());
        for (i, v) in d.iter().enumerate() {
            s.m[i][i] = *v;
        }
        s
    }

    /// Builds from an arbitrary closure, symmetrizing: (f(i,j)+f(j,i))/2.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut s = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                s.m[i][j] = 0.5 * (f(i, j) + f(j, i));
            }
        }
        s
    }

    pub fn add(&self, o: &SymMat) -> SymMat {
        debug_assert_eq!(self.n, o.n);
        let mut r = *self;
        for i in 0..self.n {
            for j in 0..self.n {
                r.m[i][j] += o.m[i][j];
            }
        }
        r
    }

    pub fn sub(&self, o: &SymMat) -> SymMat {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, k: f64) -> SymMat {
        let mut r = *self;
        for i in 0..self.n {
            for j in 0..self.n {
                r.m[i][j] *= k;
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[f64; NMAX]) -> [f64; NMAX] {
        let mut out = [0.0; NMAX];
        for i in 0..self.n {
            for j in 0..self.n {
                out[i] += self.m[i][j] * v[j];
            }
        }
        out
    }

    pub fn trace_with(&self, ginv: &SymMat) -> f64 {
        let mut t = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                t += ginv.m[i][j] * self.m[i][j];
            }
        }
        t
    }

    /// ‖T‖_g = sqrt(T_ij T_kl g^ik g^jl); needs the inverse metric.
    pub fn norm_with(&self, ginv: &SymMat) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        acc += self.m[i][j] * self.m[k][l] * ginv.m[i][k] * ginv.m[j][l];
                    }
                }
            }
        }
        acc.max(0.0).sqrt()
    }

    pub fn frobenius(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                acc += self.m[i][j] * self.m[i][j];
            }
        }
        acc.sqrt()
    }

    pub fn sup(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                m = m.max(self.m[i][j].abs());
            }
        }
        m
    }

    pub fn cholesky(&self) -> Result<Chol, TensorError> {
        let n = self.n;
        let mut l = [[0.0; NMAX]; NMAX];
        for i in 0..n {
            for j in 0..=i {
                let mut sum = self.m[i][j];
                for k in 0..j {
                    sum -= l[i][k] * l[j][k];
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(TensorError::NotPositiveDefinite { minor: i });
                    }
                    l[i][i] = sum.sqrt();
                } else {
                    l[i][j] = sum / l[j][j];
                }
            }
        }
        Ok(Chol { n, l })
    }

    /// Inverse of a positive-definite matrix via its Cholesky factor.
    pub fn inverse_spd(&self) -> Result<SymMat, TensorError> {
        let ch = self.cholesky()?;
        let n = self.n;
        let mut inv = SymMat::zero(n);
        for c in 0..n {
            let mut e = [0.0; NMAX];
            e[c] = 1.0;
            let x = ch.solve(&e);
            for r in 0..n {
                inv.m[r][c] = x[r];
            }
        }
        // symmetrize away the last bits of roundoff
        for i in 0..n {
            for j in 0..i {
                let v = 0.5 * (inv.m[i][j] + inv.m[j][i]);
                inv.m[i][j] = v;
                inv.m[j][i] = v;
            }
        }
        Ok(inv)
    }

    pub fn det_spd(&self) -> Result<f64, TensorError> {
        let ch = self.cholesky()?;
        let mut d = 1.0;
        for i in 0..self.n {
            d *= ch.l[i][i] * ch.l[i][i];
        }
        Ok(d)
    }
}

/// Lower-triangular Cholesky factor: A = L·Lᵀ.
#[derive(Clone, Copy, Debug)]
pub struct Chol {
    pub n: usize,
    pub l: [[f64; NMAX]; NMAX],
}

impl Chol {
    /// Solves A x = b.
    pub fn solve(&self, b: &[f64; NMAX]) -> [f64; NMAX] {
        let y = self.forward(b);
        self.backward(&y)
    }

    /// Solves L y = b.
    pub fn forward(&self, b: &[f64; NMAX]) -> [f64; NMAX] {
        let mut y = [0.0; NMAX];
        for i in 0..self.n {
            let mut s = b[i];
            for k in 0..i {
                s -= self.l[i][k] * y[k];
            }
            y[i] = s / self.l[i][i];
        }
        y
    }

    /// Solves Lᵀ x = y.
    pub fn backward(&self, y: &[f64; NMAX]) -> [f64; NMAX] {
        let mut x = [0.0; NMAX];
        for ii in 0..self.n {
            let i = self.n - 1 - ii;
            let mut s = y[i];
            for k in (i + 1)..self.n {
                s -= self.l[k][i] * x[k];
            }
            x[i] = s / self.l[i][i];
        }
        x
    }
}

/// Determinant of a general small matrix, used for orientation checks.
pub fn det_general(n: usize, a: &[[f64; NMAX]; NMAX]) -> f64 {
    match n {
        1 => a[0][0],
        2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
        3 => {
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        }
        4 => {
            let mut d = 0.0;
            for c in 0..4 {
                let mut sub = [[0.0; NMAX]; NMAX];
                let mut cc = 0;
                for j in 0..4 {
                    if j == c {
                        continue;
                    }
                    for i in 1..4 {
                        sub[i - 1][cc] = a[i][j];
                    }
                    cc += 1;
                }
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                d += sign * a[0][c] * det_general(3, &sub);
            }
            d
        }
        _ => panic!("dimension {n} out of range"),
    }
}
