//! Equation models: physical fluxes, spectral radii, flux vector splittings
//! and admissibility.
//!
//! Hot loops call the [`Equation`] trait methods directly; the free functions
//! in this module are the checked entry points that validate their input.

mod euler;
mod scalar;

pub use euler::{Euler, Primitive};
pub use scalar::ScalarLaw;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{Axis, State};

/// Flux vector splitting used for the point-value update.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    /// Local Lax-Friedrichs: `F± = (F ± αU)/2` with a stencil-wide `α`.
    Llf,
    /// Steger-Warming: split per characteristic field.
    Sw,
    /// Van Leer-Hänel: split by the normal Mach number (Euler only).
    Vh,
}

impl Splitting {
    pub const ALL: [Splitting; 3] = [Splitting::Llf, Splitting::Sw, Splitting::Vh];

    pub fn name(self) -> &'static str {
        match self {
            Splitting::Llf => "llf",
            Splitting::Sw => "sw",
            Splitting::Vh => "vh",
        }
    }
}

impl std::str::FromStr for Splitting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "llf" | "lf" | "rusanov" => Ok(Splitting::Llf),
            "sw" | "steger-warming" | "upwind" => Ok(Splitting::Sw),
            "vh" | "van-leer-hanel" | "vanleer" => Ok(Splitting::Vh),
            other => Err(Error::Config(format!("unknown splitting '{other}' (expected llf, sw or vh)"))),
        }
    }
}

/// Per-cell bounds used by the scalar maximum-principle limiters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarBounds {
    pub min: f64,
    pub max: f64,
}

impl ScalarBounds {
    pub fn new(min: f64, max: f64) -> Self {
        debug_assert!(min <= max, "bounds [{min}, {max}] are inverted");
        ScalarBounds { min, max }
    }

    pub fn contains(&self, u: f64) -> bool {
        self.min <= u && u <= self.max
    }
}

/// Outcome of limiting the anti-diffusive flux of one face.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitedFace<const M: usize> {
    /// Bound-preserving anti-diffusive flux (before the shock sensor).
    pub anti: State<M>,
    /// Blending coefficient recorded for diagnostics.
    pub theta: f64,
}

/// A hyperbolic conservation law `U_t + F1(U)_x + F2(U)_y = 0` with `M`
/// components, together with the model-specific pieces of the
/// bound-preserving limiters.
pub trait Equation<const M: usize>: Send + Sync {
    fn name(&self) -> &'static str;

    /// Physical flux in direction `axis`.
    fn flux(&self, u: &State<M>, axis: Axis) -> State<M>;

    /// Spectral radius of the flux Jacobian in direction `axis`.
    fn spectral_radius(&self, u: &State<M>, axis: Axis) -> f64;

    /// Split flux `(F+, F-)`. `alpha` is only read by [`Splitting::Llf`].
    fn split(&self, kind: Splitting, u: &State<M>, axis: Axis, alpha: f64) -> (State<M>, State<M>);

    fn supports(&self, kind: Splitting) -> bool;

    /// Membership in the admissible set with floor `eps`. Scalar laws always
    /// answer `true`; their bounds are enforced by the limiters.
    fn admissible(&self, u: &State<M>, eps: f64) -> bool;

    /// Human-readable reason why `u` is not admissible.
    fn describe(&self, u: &State<M>) -> String {
        format!("{:?}", u.0)
    }

    /// Column names written for each DoF in output files.
    fn output_columns(&self) -> Vec<String> {
        (0..M).map(|k| format!("q{k}")).collect()
    }

    /// Values matching [`Equation::output_columns`].
    fn output_values(&self, u: &State<M>, out: &mut Vec<f64>) {
        out.extend_from_slice(&u.0);
    }

    /// Mirror image of `u` across a wall normal to `axis`.
    fn reflect(&self, u: &State<M>, axis: Axis) -> State<M>;

    /// Pressure and velocity used by the shock sensor; `None` disables it.
    fn sensor_primitives(&self, _u: &State<M>) -> Option<(f64, f64, f64)> {
        None
    }

    /// Limits the anti-diffusive flux `anti` of a face whose low-order
    /// intermediate state is `tilde` and dissipation coefficient `alpha`.
    /// `left`/`right` are the bounds of the two neighbouring cells (unused by
    /// positivity-only models).
    fn limit_face(
        &self,
        anti: &State<M>,
        tilde: &State<M>,
        alpha: f64,
        left: ScalarBounds,
        right: ScalarBounds,
        eps: f64,
    ) -> LimitedFace<M>;

    /// Scaling limiter of a high-order point value towards the low-order one.
    /// Returns the limited state and the effective blending coefficient.
    fn limit_point(
        &self,
        high: &State<M>,
        low: &State<M>,
        bounds: ScalarBounds,
        eps: f64,
    ) -> Result<(State<M>, f64)>;
}

fn check_finite<const M: usize>(u: &State<M>) -> Result<()> {
    if u.is_finite() {
        Ok(())
    } else {
        Err(Error::NumericalState(format!("non-finite state {:?}", u.0)))
    }
}

/// Physical flux with input validation.
pub fn physical_flux<E: Equation<M>, const M: usize>(eq: &E, u: &State<M>, axis: Axis) -> Result<State<M>> {
    check_finite(u)?;
    if !eq.admissible(u, 0.0) {
        return Err(Error::NumericalState(format!(
            "{}: flux of inadmissible state ({})",
            eq.name(),
            eq.describe(u)
        )));
    }
    Ok(eq.flux(u, axis))
}

/// Spectral radius with input validation.
pub fn spectral_radius<E: Equation<M>, const M: usize>(eq: &E, u: &State<M>, axis: Axis) -> Result<f64> {
    check_finite(u)?;
    if !eq.admissible(u, 0.0) {
        return Err(Error::NumericalState(format!(
            "{}: spectral radius of inadmissible state ({})",
            eq.name(),
            eq.describe(u)
        )));
    }
    Ok(eq.spectral_radius(u, axis))
}

/// Flux vector splitting with input validation.
pub fn fvs_split<E: Equation<M>, const M: usize>(
    eq: &E,
    kind: Splitting,
    u: &State<M>,
    axis: Axis,
    alpha: f64,
) -> Result<(State<M>, State<M>)> {
    if !eq.supports(kind) {
        return Err(Error::Unsupported(format!(
            "{} splitting is not available for {}",
            kind.name(),
            eq.name()
        )));
    }
    check_finite(u)?;
    if !eq.admissible(u, 0.0) {
        return Err(Error::NumericalState(format!(
            "{}: splitting of inadmissible state ({})",
            eq.name(),
            eq.describe(u)
        )));
    }
    Ok(eq.split(kind, u, axis, alpha))
}

/// Admissibility predicate.
pub fn is_admissible<E: Equation<M>, const M: usize>(eq: &E, u: &State<M>, eps: f64) -> bool {
    u.is_finite() && eq.admissible(u, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close<const M: usize>(a: State<M>, b: State<M>, tol: f64) -> bool {
        let scale = 1.0 + a.norm_inf().max(b.norm_inf());
        (a - b).norm_inf() <= tol * scale
    }

    fn swap_xy(u: State<4>) -> State<4> {
        State([u.0[0], u.0[2], u.0[1], u.0[3]])
    }

    #[test]
    fn euler_flux_of_fluid_at_rest() {
        let eq = Euler::default();
        let u = State([1.0, 0.0, 0.0, 2.5]);
        assert!((eq.pressure(&u) - 1.0).abs() < 1e-15);
        assert!(close(eq.flux(&u, Axis::X), State([0.0, 1.0, 0.0, 0.0]), 1e-15));
        assert!(close(eq.flux(&u, Axis::Y), State([0.0, 0.0, 1.0, 0.0]), 1e-15));
        assert!((eq.spectral_radius(&u, Axis::X) - 1.4f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn van_leer_hanel_at_zero_mach() {
        let eq = Euler::default();
        let u = State([1.0, 0.0, 0.0, 2.5]);
        let a = 1.4f64.sqrt();
        let h = (2.5 + 1.0) / 1.0;
        let (fp, fm) = eq.split(Splitting::Vh, &u, Axis::X, 0.0);
        assert!(close(fp, State([a / 4.0, 0.5, 0.0, a * h / 4.0]), 1e-15));
        assert!(close(fp + fm, eq.flux(&u, Axis::X), 1e-15));
    }

    #[test]
    fn supersonic_states_are_fully_upwinded() {
        let eq = Euler::default();
        for kind in [Splitting::Sw, Splitting::Vh] {
            let u = eq.state(1.0, 3.0, 0.5, 1.0);
            let (fp, fm) = eq.split(kind, &u, Axis::X, 0.0);
            assert!(close(fp, eq.flux(&u, Axis::X), 1e-14), "{kind:?}");
            assert!(fm.norm_inf() < 1e-14, "{kind:?}");
            let u = eq.state(1.0, 0.5, -3.0, 1.0);
            let (fp, fm) = eq.split(kind, &u, Axis::Y, 0.0);
            assert!(fp.norm_inf() < 1e-14, "{kind:?}");
            assert!(close(fm, eq.flux(&u, Axis::Y), 1e-14), "{kind:?}");
        }
    }

    #[test]
    fn van_leer_hanel_is_continuous_at_sonic_points() {
        let eq = Euler::default();
        let a = 1.4f64.sqrt();
        for sign in [1.0, -1.0] {
            let below = eq.state(1.0, sign * a * (1.0 - 1e-9), 0.3, 1.0);
            let above = eq.state(1.0, sign * a * (1.0 + 1e-9), 0.3, 1.0);
            let (pb, mb) = eq.split(Splitting::Vh, &below, Axis::X, 0.0);
            let (pa, ma) = eq.split(Splitting::Vh, &above, Axis::X, 0.0);
            assert!(close(pb, pa, 1e-7) && close(mb, ma, 1e-7));
        }
    }

    #[test]
    fn scalar_models() {
        let b = ScalarLaw::Burgers;
        assert_eq!(b.flux(&State([3.0]), Axis::Y), State([4.5]));
        assert_eq!(b.spectral_radius(&State([-2.0]), Axis::X), 2.0);
        let adv = ScalarLaw::Advection { velocity: [2.0, -1.0] };
        let (p, m) = adv.split(Splitting::Sw, &State([1.5]), Axis::X, 0.0);
        assert_eq!((p, m), (State([3.0]), State([0.0])));
        let (p, m) = adv.split(Splitting::Sw, &State([1.5]), Axis::Y, 0.0);
        assert_eq!((p, m), (State([0.0]), State([-1.5])));
        let (p, m) = adv.split(Splitting::Llf, &State([1.0]), Axis::X, 3.0);
        assert_eq!((p, m), (State([2.5]), State([-0.5])));
        assert_eq!(b.reflect(&State([0.7]), Axis::X), State([0.7]));
    }

    #[test]
    fn checked_entry_points_reject_bad_input() {
        let e = fvs_split(&ScalarLaw::Burgers, Splitting::Vh, &State([1.0]), Axis::X, 0.0).unwrap_err();
        assert!(matches!(e, Error::Unsupported(_)));
        let eq = Euler::default();
        let bad = State([1.0, 0.0, 0.0, -1.0]);
        assert!(physical_flux(&eq, &bad, Axis::X).unwrap_err().is_numerical());
        assert!(spectral_radius(&eq, &State([f64::NAN, 0.0, 0.0, 1.0]), Axis::X).is_err());
        assert!(fvs_split(&eq, Splitting::Sw, &bad, Axis::X, 0.0).is_err());
        assert!(!is_admissible(&eq, &eq.state(1.0, 0.0, 0.0, 1e-3), 1e-2));
        assert!(Euler::new(1.0).is_err());
        assert!(eq.cons_to_prim(&State([-1.0, 0.0, 0.0, 1.0])).is_err());
    }

    #[test]
    fn splitting_names_parse() {
        for k in Splitting::ALL {
            assert_eq!(k.name().parse::<Splitting>().unwrap(), k);
        }
        assert_eq!("Steger-Warming".parse::<Splitting>().unwrap(), Splitting::Sw);
        assert!("roe".parse::<Splitting>().is_err());
    }

    fn euler_state() -> impl Strategy<Value = (Euler, State<4>)> {
        (1.1..3.0f64, 1e-3..1e3f64, -20.0..20.0f64, -20.0..20.0f64, 1e-3..1e3f64).prop_map(|(g, rho, v1, v2, p)| {
            let eq = Euler::new(g).unwrap();
            (eq, eq.state(rho, v1, v2, p))
        })
    }

    proptest! {
        #[test]
        fn splittings_sum_to_the_flux((eq, u) in euler_state(), y in any::<bool>()) {
            let axis = if y { Axis::Y } else { Axis::X };
            let f = eq.flux(&u, axis);
            for kind in Splitting::ALL {
                let alpha = eq.spectral_radius(&u, axis);
                let (p, m) = eq.split(kind, &u, axis, alpha);
                prop_assert!(close(p + m, f, 1e-12), "{:?}: {:?} vs {:?}", kind, p + m, f);
            }
        }

        #[test]
        fn directions_are_related_by_swapping((eq, u) in euler_state()) {
            for kind in Splitting::ALL {
                let a = eq.spectral_radius(&u, Axis::Y);
                let (py, my) = eq.split(kind, &u, Axis::Y, a);
                let (px, mx) = eq.split(kind, &swap_xy(u), Axis::X, a);
                prop_assert!(close(py, swap_xy(px), 1e-14) && close(my, swap_xy(mx), 1e-14));
            }
        }

        #[test]
        fn mirrored_states_swap_split_parts((eq, u) in euler_state()) {
            // F+(U) = -R F-(R U) for the reflection R across the face.
            let r = eq.reflect(&u, Axis::X);
            for kind in [Splitting::Sw, Splitting::Vh] {
                let (p, _) = eq.split(kind, &u, Axis::X, 0.0);
                let (_, m) = eq.split(kind, &r, Axis::X, 0.0);
                prop_assert!(close(p, -eq.reflect(&m, Axis::X), 1e-12));
            }
        }

        #[test]
        fn primitive_round_trip((eq, u) in euler_state()) {
            let back = eq.prim_to_cons(eq.cons_to_prim(&u).unwrap());
            prop_assert!(close(back, u, 1e-12));
            prop_assert!(eq.admissible(&u, 0.0));
        }

        #[test]
        fn radius_and_homogeneity((eq, u) in euler_state()) {
            // Degree-one homogeneity: A(U) U = F(U).
            let w = eq.cons_to_prim(&u).unwrap();
            let a = eq.sound_speed(w.rho, w.p);
            prop_assert!((eq.spectral_radius(&u, Axis::X) - (w.v1.abs() + a)).abs() <= 1e-12 * (1.0 + a + w.v1.abs()));
            let h = 1e-7;
            let jf = (eq.flux(&(u * (1.0 + h)), Axis::X) - eq.flux(&(u * (1.0 - h)), Axis::X)) * (0.5 / h);
            prop_assert!(close(jf, eq.flux(&u, Axis::X), 1e-6));
        }

        #[test]
        fn sw_parts_are_upwind_in_mass((eq, u) in euler_state()) {
            let (p, m) = eq.split(Splitting::Sw, &u, Axis::X, 0.0);
            prop_assert!(p.0[0] >= -1e-12 * u.0[0] && m.0[0] <= 1e-12 * u.0[0]);
            let (p, m) = eq.split(Splitting::Vh, &u, Axis::X, 0.0);
            prop_assert!(p.0[0] >= 0.0 && m.0[0] <= 0.0);
        }

        #[test]
        fn scalar_splits_sum_to_flux(u in -5.0..5.0f64, a1 in -3.0..3.0f64, a2 in -3.0..3.0f64) {
            for law in [ScalarLaw::Burgers, ScalarLaw::Advection { velocity: [a1, a2] }] {
                for axis in [Axis::X, Axis::Y] {
                    let s = State([u]);
                    let f = law.flux(&s, axis);
                    for kind in [Splitting::Llf, Splitting::Sw] {
                        let (p, m) = law.split(kind, &s, axis, 7.0);
                        prop_assert!(close(p + m, f, 1e-14));
                    }
                }
            }
        }
    }
}
