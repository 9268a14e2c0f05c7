use super::{Equation, LimitedFace, ScalarBounds, Splitting};
use crate::error::{Error, Result};
use crate::limiting::{limit_density, limit_point_euler, limit_pressure};
use crate::state::{Axis, State};

/// Primitive variables `(ρ, v1, v2, p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Primitive {
    pub rho: f64,
    pub v1: f64,
    pub v2: f64,
    pub p: f64,
}

impl Primitive {
    pub fn new(rho: f64, v1: f64, v2: f64, p: f64) -> Self {
        Primitive { rho, v1, v2, p }
    }
}

/// Compressible Euler equations with a perfect-gas equation of state.
/// Conservative variables are `(ρ, ρv1, ρv2, E)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Euler {
    pub gamma: f64,
}

impl Default for Euler {
    fn default() -> Self {
        Euler { gamma: 1.4 }
    }
}

/// Normal/tangential momentum indices for a direction.
#[inline]
fn rotation(axis: Axis) -> (usize, usize) {
    match axis {
        Axis::X => (1, 2),
        Axis::Y => (2, 1),
    }
}

#[inline]
fn pos(v: f64) -> f64 {
    0.5 * (v + v.abs())
}

#[inline]
fn neg(v: f64) -> f64 {
    0.5 * (v - v.abs())
}

impl Euler {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 1.0) {
            return Err(Error::Config(format!("adiabatic index must exceed 1, got {gamma}")));
        }
        Ok(Euler { gamma })
    }

    #[inline]
    pub fn pressure(&self, u: &State<4>) -> f64 {
        let [rho, m1, m2, e] = u.0;
        (self.gamma - 1.0) * (e - 0.5 * (m1 * m1 + m2 * m2) / rho)
    }

    /// Internal energy density `ρe = E - |ρv|^2/(2ρ)`.
    #[inline]
    pub fn internal_energy(&self, u: &State<4>) -> f64 {
        let [rho, m1, m2, e] = u.0;
        e - 0.5 * (m1 * m1 + m2 * m2) / rho
    }

    #[inline]
    pub fn sound_speed(&self, rho: f64, p: f64) -> f64 {
        (self.gamma * p / rho).sqrt()
    }

    pub fn cons_to_prim(&self, u: &State<4>) -> Result<Primitive> {
        let rho = u.0[0];
        if !(rho > 0.0) || !u.is_finite() {
            return Err(Error::NumericalState(format!("non-positive density in {:?}", u.0)));
        }
        Ok(Primitive {
            rho,
            v1: u.0[1] / rho,
            v2: u.0[2] / rho,
            p: self.pressure(u),
        })
    }

    pub fn prim_to_cons(&self, w: Primitive) -> State<4> {
        let Primitive { rho, v1, v2, p } = w;
        State([
            rho,
            rho * v1,
            rho * v2,
            p / (self.gamma - 1.0) + 0.5 * rho * (v1 * v1 + v2 * v2),
        ])
    }

    /// Convenience for `prim_to_cons(Primitive::new(..))`.
    pub fn state(&self, rho: f64, v1: f64, v2: f64, p: f64) -> State<4> {
        self.prim_to_cons(Primitive::new(rho, v1, v2, p))
    }

    fn steger_warming(&self, u: &State<4>, axis: Axis) -> (State<4>, State<4>) {
        let g = self.gamma;
        let (n, t) = rotation(axis);
        let rho = u.0[0];
        let vn = u.0[n] / rho;
        let vt = u.0[t] / rho;
        let p = self.pressure(u);
        let a = self.sound_speed(rho, p);
        let v2 = vn * vn + vt * vt;
        let (l1, l2, l3) = (vn, vn + a, vn - a);
        let part = |l1: f64, l2: f64, l3: f64| {
            let alpha = 2.0 * (g - 1.0) * l1 + l2 + l3;
            let c = rho / (2.0 * g);
            let mut f = State::zero();
            f.0[0] = c * alpha;
            f.0[n] = c * (alpha * vn + a * (l2 - l3));
            f.0[t] = c * alpha * vt;
            f.0[3] = c * (0.5 * alpha * v2 + a * vn * (l2 - l3) + a * a / (g - 1.0) * (l2 + l3));
            f
        };
        (
            part(pos(l1), pos(l2), pos(l3)),
            part(neg(l1), neg(l2), neg(l3)),
        )
    }

    fn van_leer_hanel(&self, u: &State<4>, axis: Axis) -> (State<4>, State<4>) {
        let (n, t) = rotation(axis);
        let rho = u.0[0];
        let vn = u.0[n] / rho;
        let vt = u.0[t] / rho;
        let p = self.pressure(u);
        let a = self.sound_speed(rho, p);
        let mach = vn / a;
        if mach >= 1.0 {
            return (self.flux(u, axis), State::zero());
        }
        if mach <= -1.0 {
            return (State::zero(), self.flux(u, axis));
        }
        let h = (u.0[3] + p) / rho;
        let part = |sign: f64| {
            let mass = sign * 0.25 * rho * a * (mach + sign).powi(2);
            let mut f = State::zero();
            f.0[0] = mass;
            // van Leer's pressure polynomial: continuous and C¹ at |M| = 1.
            f.0[n] = mass * vn + 0.25 * p * (mach + sign).powi(2) * (2.0 - sign * mach);
            f.0[t] = mass * vt;
            f.0[3] = mass * h;
            f
        };
        (part(1.0), part(-1.0))
    }
}

impl Equation<4> for Euler {
    fn name(&self) -> &'static str {
        "euler"
    }

    fn output_columns(&self) -> Vec<String> {
        ["rho", "rho_v1", "rho_v2", "E", "v1", "v2", "p"].map(String::from).to_vec()
    }

    fn output_values(&self, u: &State<4>, out: &mut Vec<f64>) {
        let [rho, m1, m2, e] = u.0;
        out.extend_from_slice(&[rho, m1, m2, e, m1 / rho, m2 / rho, self.pressure(u)]);
    }

    #[inline]
    fn flux(&self, u: &State<4>, axis: Axis) -> State<4> {
        let (n, _) = rotation(axis);
        let p = self.pressure(u);
        let vn = u.0[n] / u.0[0];
        let mut f = State([u.0[0] * vn, u.0[1] * vn, u.0[2] * vn, (u.0[3] + p) * vn]);
        f.0[n] += p;
        f
    }

    #[inline]
    fn spectral_radius(&self, u: &State<4>, axis: Axis) -> f64 {
        let (n, _) = rotation(axis);
        let rho = u.0[0];
        (u.0[n] / rho).abs() + self.sound_speed(rho, self.pressure(u))
    }

    #[inline]
    fn split(&self, kind: Splitting, u: &State<4>, axis: Axis, alpha: f64) -> (State<4>, State<4>) {
        match kind {
            Splitting::Llf => {
                let f = self.flux(u, axis);
                (0.5 * (f + alpha * *u), 0.5 * (f - alpha * *u))
            }
            Splitting::Sw => self.steger_warming(u, axis),
            Splitting::Vh => self.van_leer_hanel(u, axis),
        }
    }

    fn supports(&self, _kind: Splitting) -> bool {
        true
    }

    #[inline]
    fn admissible(&self, u: &State<4>, eps: f64) -> bool {
        u.0[0] > eps && self.pressure(u) > eps
    }

    fn describe(&self, u: &State<4>) -> String {
        format!("rho = {:.6e}, p = {:.6e}, U = {:?}", u.0[0], self.pressure(u), u.0)
    }

    fn reflect(&self, u: &State<4>, axis: Axis) -> State<4> {
        let (n, _) = rotation(axis);
        let mut r = *u;
        r.0[n] = -r.0[n];
        r
    }

    fn sensor_primitives(&self, u: &State<4>) -> Option<(f64, f64, f64)> {
        let rho = u.0[0];
        Some((self.pressure(u), u.0[1] / rho, u.0[2] / rho))
    }

    fn limit_face(
        &self,
        anti: &State<4>,
        tilde: &State<4>,
        alpha: f64,
        _left: ScalarBounds,
        _right: ScalarBounds,
        eps: f64,
    ) -> LimitedFace<4> {
        let Some(rho_lim) = limit_density(anti.0[0], tilde.0[0], alpha, eps) else {
            return LimitedFace {
                anti: State::zero(),
                theta: 0.0,
            };
        };
        let mut star = *anti;
        star.0[0] = rho_lim;
        let mut theta = limit_pressure(&star, tilde, alpha, eps);
        // The bound on θ holds in exact arithmetic; at extreme ratios of
        // kinetic to internal energy the cancellation in E - |m|²/2ρ can
        // exceed the floor, so verify in floating point and back off.
        let admissible = |th: f64| {
            let d = (th / alpha) * star;
            self.admissible(&(*tilde + d), 0.0) && self.admissible(&(*tilde - d), 0.0)
        };
        let mut tries = 0;
        while theta > 0.0 && !admissible(theta) {
            tries += 1;
            theta = if tries < 4 { 0.5 * theta } else { 0.0 };
        }
        LimitedFace {
            anti: theta * star,
            theta,
        }
    }

    fn limit_point(
        &self,
        high: &State<4>,
        low: &State<4>,
        _bounds: ScalarBounds,
        eps: f64,
    ) -> Result<(State<4>, f64)> {
        limit_point_euler(self, high, low, eps)
    }
}
