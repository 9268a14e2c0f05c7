use super::{Equation, LimitedFace, ScalarBounds, Splitting};
use crate::error::{Error, Result};
use crate::limiting::{limit_point_scalar, limit_scalar_flux};
use crate::state::{Axis, State};

/// Scalar conservation laws.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalarLaw {
    /// Linear advection `u_t + a1 u_x + a2 u_y = 0`.
    Advection { velocity: [f64; 2] },
    /// Burgers' equation with flux `u^2/2` in both directions.
    Burgers,
}

impl ScalarLaw {
    pub fn advection() -> Self {
        ScalarLaw::Advection { velocity: [1.0, 1.0] }
    }

    /// `f_axis'(u)`.
    #[inline]
    pub fn wave_speed(&self, u: f64, axis: Axis) -> f64 {
        match *self {
            ScalarLaw::Advection { velocity } => match axis {
                Axis::X => velocity[0],
                Axis::Y => velocity[1],
            },
            ScalarLaw::Burgers => u,
        }
    }
}

impl Equation<1> for ScalarLaw {
    fn name(&self) -> &'static str {
        match self {
            ScalarLaw::Advection { .. } => "advection",
            ScalarLaw::Burgers => "burgers",
        }
    }

    fn output_columns(&self) -> Vec<String> {
        vec!["u".into()]
    }

    #[inline]
    fn flux(&self, u: &State<1>, axis: Axis) -> State<1> {
        let u = u.0[0];
        State([match *self {
            ScalarLaw::Advection { .. } => self.wave_speed(u, axis) * u,
            ScalarLaw::Burgers => 0.5 * u * u,
        }])
    }

    #[inline]
    fn spectral_radius(&self, u: &State<1>, axis: Axis) -> f64 {
        self.wave_speed(u.0[0], axis).abs()
    }

    #[inline]
    fn split(&self, kind: Splitting, u: &State<1>, axis: Axis, alpha: f64) -> (State<1>, State<1>) {
        let f = self.flux(u, axis).0[0];
        // SW: |J| U = |f'(u)| u
        let diss = match kind {
            Splitting::Llf => alpha * u.0[0],
            Splitting::Sw | Splitting::Vh => self.spectral_radius(u, axis) * u.0[0],
        };
        (State([0.5 * (f + diss)]), State([0.5 * (f - diss)]))
    }

    fn supports(&self, kind: Splitting) -> bool {
        kind != Splitting::Vh
    }

    fn admissible(&self, u: &State<1>, _eps: f64) -> bool {
        u.0[0].is_finite()
    }

    fn reflect(&self, u: &State<1>, _axis: Axis) -> State<1> {
        *u
    }

    fn limit_face(
        &self,
        anti: &State<1>,
        tilde: &State<1>,
        alpha: f64,
        left: ScalarBounds,
        right: ScalarBounds,
        _eps: f64,
    ) -> LimitedFace<1> {
        let lim = limit_scalar_flux(anti.0[0], tilde.0[0], left, right, alpha);
        let theta = if anti.0[0] != 0.0 { lim / anti.0[0] } else { 1.0 };
        LimitedFace {
            anti: State([lim]),
            theta,
        }
    }

    fn limit_point(
        &self,
        high: &State<1>,
        low: &State<1>,
        bounds: ScalarBounds,
        _eps: f64,
    ) -> Result<(State<1>, f64)> {
        let (u, theta) = limit_point_scalar(high.0[0], low.0[0], bounds.min, bounds.max);
        if !u.is_finite() {
            return Err(Error::NumericalState(format!(
                "non-finite limited point value from high {} low {}",
                high.0[0], low.0[0]
            )));
        }
        Ok((State([u]), theta))
    }
}
