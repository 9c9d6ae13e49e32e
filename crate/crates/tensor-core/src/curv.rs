use crate::mat::{SymMat, NMAX};

/// Type (0,4) curvature-like tensor; entry [i][j][k][l] is R_{ijkl},
/// antisymmetric in (i,j) and (k,l), symmetric under pair exchange, with the
/// sign fixed so that r_{ij} = g^{pq} R_{ipjq} makes round spheres positively
/// curved.
#[derive(Clone, Copy)]
pub struct CurvTensor {
    pub n: usize,
    pub r: [[[[f64; NMAX]; NMAX]; NMAX]; NMAX],
}

impl std::fmt::Debug for CurvTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CurvTensor(n={}, ‖·‖={:.3e})", self.n, self.frobenius())
    }
}

impl CurvTensor {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1 && n <= NMAX);
        CurvTensor { n, r: [[[[0.0; NMAX]; NMAX]; NMAX]; NMAX] }
    }

    /// R = K·(g_ik g_jl − g_il g_jk): constant sectional curvature K.
    pub fn constant_curvature(k: f64, g: &SymMat) -> Self {
        let n = g.n;
        let mut t = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                for p in 0..n {
                    for q in 0..n {
                        t.r[i][j][p][q] =
                            k * (g.m[i][p] * g.m[j][q] - g.m[i][q] * g.m[j][p]);
                    }
                }
            }
        }
        t
    }

    /// Kulkarni–Nomizu product of two symmetric tensors:
    /// (a ∧ b)_{ijkl} = a_ik b_jl + a_jl b_ik − a_il b_jk − a_jk b_il.
    pub fn kulkarni_nomizu(a: &SymMat, b: &SymMat) -> Self {
        let n = a.n;
        let mut t = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        t.r[i][j][k][l] = a.m[i][k] * b.m[j][l] + a.m[j][l] * b.m[i][k]
                            - a.m[i][l] * b.m[j][k]
                            - a.m[j][k] * b.m[i][l];
                    }
                }
            }
        }
        t
    }

    /// Writes `v` into all eight symmetry images of the slot (i,j,k,l).
    pub fn set_sym(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        self.r[i][j][k][l] = v;
        self.r[j][i][k][l] = -v;
        self.r[i][j][l][k] = -v;
        self.r[j][i][l][k] = v;
        self.r[k][l][i][j] = v;
        self.r[l][k][i][j] = -v;
        self.r[k][l][j][i] = -v;
        self.r[l][k][j][i] = v;
    }

    pub fn add(&self, o: &CurvTensor) -> CurvTensor {
        let mut t = *self;
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    for l in 0..self.n {
                        t.r[i][j][k][l] += o.r[i][j][k][l];
                    }
                }
            }
        }
        t
    }

    pub fn scale(&self, s: f64) -> CurvTensor {
        let mut t = *self;
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    for l in 0..self.n {
                        t.r[i][j][k][l] *= s;
                    }
                }
            }
        }
        t
    }

    pub fn frobenius(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    for l in 0..self.n {
                        acc += self.r[i][j][k][l] * self.r[i][j][k][l];
                    }
                }
            }
        }
        acc.sqrt()
    }

    pub fn sup(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    for l in 0..self.n {
                        m = m.max(self.r[i][j][k][l].abs());
                    }
                }
            }
        }
        m
    }

    /// Worst violation among: antisymmetry in each pair, pair-exchange
    /// symmetry, and the cyclic first-Bianchi sum over the last three slots.
    pub fn symmetry_residual(&self) -> f64 {
        let n = self.n;
        let r = &self.r;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        worst = worst.max((r[i][j][k][l] + r[j][i][k][l]).abs());
                        worst = worst.max((r[i][j][k][l] + r[i][j][l][k]).abs());
                        worst = worst.max((r[i][j][k][l] - r[k][l][i][j]).abs());
                        worst = worst
                            .max((r[i][j][k][l] + r[i][k][l][j] + r[i][l][j][k]).abs());
                    }
                }
            }
        }
        worst
    }
}

/// r_{ij} = g^{pq} R_{ipjq}.
pub fn ricci_of(r: &CurvTensor, ginv: &SymMat) -> SymMat {
    let n = r.n;
    let mut out = SymMat::zero(n);
    for a in 0..n {
        for b in 0..n {
            let mut acc = 0.0;
            for p in 0..n {
                for q in 0..n {
                    acc += ginv.m[p][q] * r.r[a][p][b][q];
                }
            }
            out.m[a][b] = acc;
        }
    }
    // exact symmetry can be off by roundoff; restore it
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (out.m[i][j] + out.m[j][i]);
            out.m[i][j] = v;
            out.m[j][i] = v;
        }
    }
    out
}

pub fn scalar_of(ricci: &SymMat, ginv: &SymMat) -> f64 {
    ricci.trace_with(ginv)
}

/// Trace-free Ricci part e = r − (s/n)·g.
pub fn einstein_of(ricci: &SymMat, g: &SymMat, scalar: f64) -> SymMat {
    ricci.sub(&g.scale(scalar / ricci.n as f64))
}

/// Weyl tensor for n ≥ 3:
/// W = R − (g ∧ r)/(n−2) + s·(g ∧ g)/(2(n−1)(n−2))
/// written out in components with the same slot conventions as CurvTensor.
pub fn weyl_of(r: &CurvTensor, g: &SymMat, ricci: &SymMat, scalar: f64) -> CurvTensor {
    let n = r.n;
    assert!(n >= 3);
    let cn = 1.0 / (n as f64 - 2.0);
    let cs = scalar / ((n as f64 - 1.0) * (n as f64 - 2.0));
    let mut w = CurvTensor::zero(n);
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let ricci_part = g.m[i][p] * ricci.m[j][q] + g.m[j][q] * ricci.m[i][p]
                        - g.m[j][p] * ricci.m[i][q]
                        - g.m[i][q] * ricci.m[j][p];
                    let scalar_part = g.m[i][p] * g.m[j][q] - g.m[j][p] * g.m[i][q];
                    w.r[i][j][p][q] =
                        r.r[i][j][p][q] - cn * ricci_part + cs * scalar_part;
                }
            }
        }
    }
    w
}

/// T_{ij} = R_{ipqr} R_j{}^{pqr}: all three dummy slots raised by g.
pub fn triple_contract(r: &CurvTensor, ginv: &SymMat) -> SymMat {
    let n = r.n;
    // raise the last three slots one at a time
    let mut u1 = [[[[0.0; NMAX]; NMAX]; NMAX]; NMAX];
    for i in 0..n {
        for a in 0..n {
            for q in 0..n {
                for s in 0..n {
                    let mut acc = 0.0;
                    for p in 0..n {
                        acc += r.r[i][p][q][s] * ginv.m[p][a];
                    }
                    u1[i][a][q][s] = acc;
                }
            }
        }
    }
    let mut u2 = [[[[0.0; NMAX]; NMAX]; NMAX]; NMAX];
    for i in 0..n {
        for a in 0..n {
            for b in 0..n {
                for s in 0..n {
                    let mut acc = 0.0;
                    for q in 0..n {
                        acc += u1[i][a][q][s] * ginv.m[q][b];
                    }
                    u2[i][a][b][s] = acc;
                }
            }
        }
    }
    let mut u3 = [[[[0.0; NMAX]; NMAX]; NMAX]; NMAX];
    for i in 0..n {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut acc = 0.0;
                    for s in 0..n {
                        acc += u2[i][a][b][s] * ginv.m[s][c];
                    }
                    u3[i][a][b][c] = acc;
                }
            }
        }
    }
    let mut t = SymMat::zero(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        acc += u3[i][a][b][c] * r.r[j][a][b][c];
                    }
                }
            }
            t.m[i][j] = acc;
        }
    }
    for i in 0..n {
        for j in 0..i {
            let v = 0.5 * (t.m[i][j] + t.m[j][i]);
            t.m[i][j] = v;
            t.m[j][i] = v;
        }
    }
    t
}

/// Sup-norm residual of g^{ip} W_{ipjq} over (j,q); zero for a Weyl tensor.
pub fn trace_residual(w: &CurvTensor, ginv: &SymMat) -> f64 {
    let n = w.n;
    let mut worst = 0.0f64;
    for j in 0..n {
        for q in 0..n {
            let mut acc = 0.0;
            for i in 0..n {
                for p in 0..n {
                    acc += ginv.m[i][p] * w.r[i][j][p][q];
                }
            }
            worst = worst.max(acc.abs());
        }
    }
    worst
}
