use crate::KitError;

/// The three shapes of spectral data accepted by [`build`](crate::build).
///
/// The cases differ in how the traceless Ricci eigenvalues are constrained
/// and in how the Weyl block eigenvalues are parametrized:
///
/// * `A`: zero scalar curvature, arbitrary traceless Ricci spectrum, blocks
///   `(c2, c3, c4)` and `(-c2, -c3, -c4)`.
/// * `B`: Ricci spectrum `(-l, -m, m, l)`, blocks `(±c2 - s/12, ±c3 - s/12,
///   ±c4 + s/6)`.
/// * `C`: Ricci spectrum `(-l, -l, l, l)`, blocks as in `B` but with an extra
///   shear `xi` added to the second slot and subtracted from the third, with
///   the same sign on both halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseKind {
    A,
    B,
    C,
}

/// Parameter set for a synthetic curvature tensor.
///
/// Invariants enforced by the constructors: `c2 + c3 + c4 = 0` always, the
/// Ricci eigenvalues sum to zero, and in case `A` the scalar curvature is
/// zero.  `xi` is zero outside case `C`.
#[derive(Clone, Copy, Debug)]
pub struct SpectralData {
    pub case: CaseKind,
    pub s: f64,
    pub e_diag: [f64; 4],
    pub c: [f64; 3],
    pub xi: f64,
}

fn check_zero(sum: f64, scale: f64, what: &str) -> Result<(), KitError> {
    if sum.abs() > 1e-12 * (1.0 + scale) {
        return Err(KitError::Constraint {
            what: format!("{what} must vanish, got {sum:e}"),
        });
    }
    Ok(())
}

impl SpectralData {
    /// Case `A`: scalar-flat, Ricci eigenvalues `mu` summing to zero.
    pub fn case_a(mu: [f64; 4], c: [f64; 3]) -> Result<Self, KitError> {
        let scale = mu.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        check_zero(mu.iter().sum(), scale, "sum of Ricci eigenvalues")?;
        check_sum_c(c)?;
        Ok(SpectralData { case: CaseKind::A, s: 0.0, e_diag: mu, c, xi: 0.0 })
    }

    /// Case `B`: Ricci eigenvalues `(-lambda, -mu, mu, lambda)`.
    pub fn case_b(s: f64, lambda: f64, mu: f64, c: [f64; 3]) -> Result<Self, KitError> {
        check_sum_c(c)?;
        Ok(SpectralData {
            case: CaseKind::B,
            s,
            e_diag: [-lambda, -mu, mu, lambda],
            c,
            xi: 0.0,
        })
    }

    /// Case `C`: Ricci eigenvalues `(-lambda, -lambda, lambda, lambda)` with
    /// shear `xi` between the Weyl slots.
    pub fn case_c(s: f64, lambda: f64, c: [f64; 3], xi: f64) -> Result<Self, KitError> {
        check_sum_c(c)?;
        Ok(SpectralData {
            case: CaseKind::C,
            s,
            e_diag: [-lambda, -lambda, lambda, lambda],
            c,
            xi,
        })
    }

    /// Eigenvalues of the self dual Weyl block, in slot order.
    pub fn wplus_slots(&self) -> [f64; 3] {
        self.block_slots(1.0)
    }

    /// Eigenvalues of the anti self dual Weyl block, in slot order.
    pub fn wminus_slots(&self) -> [f64; 3] {
        self.block_slots(-1.0)
    }

    // Slot order follows the standard bivector basis; `sign` picks the half.
    // `xi` enters with the same sign on both halves.
    fn block_slots(&self, sign: f64) -> [f64; 3] {
        let [c2, c3, c4] = self.c;
        match self.case {
            CaseKind::A => [sign * c2, sign * c3, sign * c4],
            CaseKind::B | CaseKind::C => [
                sign * c2 - self.s / 12.0,
                sign * c3 + self.xi - self.s / 12.0,
                sign * c4 - self.xi + self.s / 6.0,
            ],
        }
    }
}

fn check_sum_c(c: [f64; 3]) -> Result<(), KitError> {
    let scale = c.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    check_zero(c.iter().sum(), scale, "c2 + c3 + c4")
}
