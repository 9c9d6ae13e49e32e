use crate::curv::{trace_residual, CurvTensor};
use crate::eigen::jacobi;
use crate::mat::{det_general, SymMat, NMAX};
use crate::TensorError;

/// Contravariant antisymmetric 2-tensor in dimension 4.
#[derive(Clone, Copy, Debug)]
pub struct Bivector {
    pub b: [[f64; NMAX]; NMAX],
}

impl Bivector {
    pub fn zero() -> Self {
        Bivector { b: [[0.0; NMAX]; NMAX] }
    }

    pub fn wedge(u: &[f64; NMAX], v: &[f64; NMAX]) -> Self {
        let mut w = Self::zero();
        for i in 0..NMAX {
            for j in 0..NMAX {
                w.b[i][j] = u[i] * v[j] - u[j] * v[i];
            }
        }
        w
    }

    pub fn add(&self, o: &Bivector) -> Bivector {
        let mut w = *self;
        for i in 0..NMAX {
            for j in 0..NMAX {
                w.b[i][j] += o.b[i][j];
            }
        }
        w
    }

    pub fn scale(&self, k: f64) -> Bivector {
        let mut w = *self;
        for i in 0..NMAX {
            for j in 0..NMAX {
                w.b[i][j] *= k;
            }
        }
        w
    }

    /// β_{ij} = g_{ia} g_{jb} β^{ab}.
    pub fn lower(&self, g: &SymMat) -> [[f64; NMAX]; NMAX] {
        let mut low = [[0.0; NMAX]; NMAX];
        for i in 0..NMAX {
            for j in 0..NMAX {
                let mut acc = 0.0;
                for a in 0..NMAX {
                    for b in 0..NMAX {
                        acc += g.m[i][a] * g.m[j][b] * self.b[a][b];
                    }
                }
                low[i][j] = acc;
            }
        }
        low
    }
}

/// ⟨α,β⟩ = ½ α_{ij} β^{ij}; simple wedges of orthonormal vectors get norm 1.
pub fn biv_inner(a: &Bivector, b: &Bivector, g: &SymMat) -> f64 {
    let al = a.lower(g);
    let mut acc = 0.0;
    for i in 0..NMAX {
        for j in 0..NMAX {
            acc += al[i][j] * b.b[i][j];
        }
    }
    0.5 * acc
}

/// The six unit bivectors u₁∧u₂ ± u₃∧u₄, u₁∧u₃ ± u₄∧u₂, u₁∧u₄ ± u₂∧u₃
/// (scaled by 1/√2) attached to a positive g-orthonormal frame. Under the
/// orientation defined by coordinate order, `plus` spans the self-dual half.
#[derive(Clone, Copy, Debug)]
pub struct BivectorFrame {
    pub plus: [Bivector; 3],
    pub minus: [Bivector; 3],
}

impl BivectorFrame {
    pub fn from_frame(
        u: &[[f64; NMAX]; NMAX],
        g: &SymMat,
    ) -> Result<BivectorFrame, TensorError> {
        if g.n != 4 {
            return Err(TensorError::DimensionMismatch { a: g.n, b: 4 });
        }
        let mut gram_residual = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = 0.0;
                for i in 0..4 {
                    for j in 0..4 {
                        acc += g.m[i][j] * u[a][i] * u[b][j];
                    }
                }
                let want = if a == b { 1.0 } else { 0.0 };
                gram_residual = gram_residual.max((acc - want).abs());
            }
        }
        if gram_residual > 1e-8 {
            return Err(TensorError::FrameNotOrthonormal { residual: gram_residual });
        }
        let mut cols = [[0.0; NMAX]; NMAX];
        for i in 0..4 {
            for k in 0..4 {
                cols[i][k] = u[k][i];
            }
        }
        if det_general(4, &cols) <= 0.0 {
            return Err(TensorError::FrameNotPositive);
        }

        let w = |a: usize, b: usize| Bivector::wedge(&u[a], &u[b]);
        let k = 1.0 / 2.0f64.sqrt();
        let pairs = [((0, 1), (2, 3)), ((0, 2), (3, 1)), ((0, 3), (1, 2))];
        let mut plus = [Bivector::zero(); 3];
        let mut minus = [Bivector::zero(); 3];
        for (idx, ((a1, a2), (b1, b2))) in pairs.into_iter().enumerate() {
            let first = w(a1, a2);
            let second = w(b1, b2);
            plus[idx] = first.add(&second).scale(k);
            minus[idx] = first.add(&second.scale(-1.0)).scale(k);
        }
        Ok(BivectorFrame { plus, minus })
    }

    pub fn all(&self) -> [&Bivector; 6] {
        [
            &self.plus[0],
            &self.plus[1],
            &self.plus[2],
            &self.minus[0],
            &self.minus[1],
            &self.minus[2],
        ]
    }
}

/// (Wβ)_{ij} = ½ W_{ijkl} β^{kl}, a covariant 2-form.
pub fn weyl_action(w: &CurvTensor, beta: &Bivector) -> [[f64; NMAX]; NMAX] {
    let mut out = [[0.0; NMAX]; NMAX];
    for i in 0..NMAX {
        for j in 0..NMAX {
            let mut acc = 0.0;
            for k in 0..NMAX {
                for l in 0..NMAX {
                    acc += w.r[i][j][k][l] * beta.b[k][l];
                }
            }
            out[i][j] = 0.5 * acc;
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct WeylBlocks {
    pub plus: [[f64; 3]; 3],
    pub minus: [[f64; 3]; 3],
    /// Largest entry coupling the self-dual and anti-self-dual halves;
    /// vanishes for a genuine Weyl tensor.
    pub cross_sup: f64,
    /// Full 6×6 bivector action in the frame basis (plus block first).
    pub six: [[f64; 6]; 6],
}

/// Matrix of the bivector action of W in the unit frame: entry (a,b) is
/// ⟨β̂_a, W β̂_b⟩. For a (0,4) tensor with Weyl symmetries this is symmetric
/// and block-diagonal.
pub fn weyl_blocks(
    w: &CurvTensor,
    g: &SymMat,
    frame: &BivectorFrame,
) -> Result<WeylBlocks, TensorError> {
    let ginv = g.inverse_spd()?;
    let tr = trace_residual(w, &ginv);
    if tr > 1e-7 * (1.0 + w.frobenius()) {
        return Err(TensorError::NotTraceFree { residual: tr });
    }
    let basis = frame.all();
    let mut six = [[0.0; 6]; 6];
    for b in 0..6 {
        let act = weyl_action(w, basis[b]);
        for a in 0..6 {
            let mut acc = 0.0;
            for i in 0..NMAX {
                for j in 0..NMAX {
                    acc += basis[a].b[i][j] * act[i][j];
                }
            }
            six[a][b] = 0.5 * acc;
        }
    }
    let mut plus = [[0.0; 3]; 3];
    let mut minus = [[0.0; 3]; 3];
    let mut cross = 0.0f64;
    for a in 0..3 {
        for b in 0..3 {
            plus[a][b] = six[a][b];
            minus[a][b] = six[a + 3][b + 3];
            cross = cross.max(six[a][b + 3].abs()).max(six[a + 3][b].abs());
        }
    }
    Ok(WeylBlocks { plus, minus, cross_sup: cross, six })
}

/// Ascending eigenvalues of a 3×3 symmetric block.
pub fn spectrum3(block: &[[f64; 3]; 3]) -> [f64; 3] {
    let (vals, _) = jacobi::<3>(*block);
    let mut v = vals;
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}
