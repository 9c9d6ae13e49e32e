//! Scalar fields backed by solved trajectories.
//!
//! Jets come from the trajectory channels themselves: the first and second
//! derivatives of a channel are other channels (or algebraic functions of the
//! state), never derivatives of the interpolating polynomial.  This keeps the
//! jet accuracy at the integration tolerance instead of the interpolation
//! order.

use std::sync::Arc;

use ode_solver::solver::Trajectory;
use ode_solver::{exponent_slope, third_derivative, Variant};
use scalar_dsl::{fn_field, Jet2, ScalarField};

/// Jet with derivatives only along coordinate `slot`.
pub fn slot_jet(n: usize, slot: usize, v: f64, d: f64, dd: f64) -> Jet2 {
    let mut j = Jet2::constant(n, v);
    j.d[slot] = d;
    j.dd[slot][slot] = dd;
    j
}

/// `(value, d/dt, d²/dt²)` of one scalar read off a trajectory state.
pub type StateJet = Arc<dyn Fn(f64, &[f64]) -> (f64, f64, f64) + Send + Sync>;

/// Field of `n` variables depending only on coordinate `slot` through a
/// trajectory channel.
pub fn channel_field(
    traj: Arc<Trajectory>,
    n: usize,
    slot: usize,
    jet: StateJet,
) -> Arc<dyn ScalarField> {
    Arc::new(fn_field(n, move |x: &[f64]| {
        let t = x[slot];
        let s = traj.state_at(t);
        let (v, d, dd) = jet(t, &s);
        Ok(slot_jet(n, slot, v, d, dd))
    }))
}

/// The profile value `phi`: channels 0, 1, 2 of a profile trajectory.
pub fn phi_jet() -> StateJet {
    Arc::new(|_t, s: &[f64]| (s[0], s[1], s[2]))
}

/// The fibre exponent `chi`: channel 3, slope from the defining relation and
/// curvature of the slope by differentiating it along the flow.
pub fn chi_jet(variant: Variant, c: f64) -> StateJet {
    Arc::new(move |_t, s: &[f64]| {
        let (p, d, dd) = (s[0], s[1], s[2]);
        let ddd = third_derivative(variant, c, p, d, dd);
        let slope = exponent_slope(variant, p, d, dd);
        let curve = match variant {
            Variant::I => 2.0 * dd / p - 2.0 * (d / p) * (d / p) - ddd / d + (dd / d) * (dd / d),
            Variant::II => ddd / d - (dd / d) * (dd / d),
        };
        (s[3], slope, curve)
    })
}

/// The exponent `kappa` of the boundary-type family: state `(kappa, kappa')`,
/// second derivative from its equation.
pub fn kappa_jet(c: f64) -> StateJet {
    Arc::new(move |y, s: &[f64]| {
        let sec = 1.0 / y.cos();
        (s[0], s[1], 2.0 * sec * sec - c * (2.0 * s[0]).exp())
    })
}
