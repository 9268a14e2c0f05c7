use crate::equations::{Equation, ScalarBounds};
use crate::error::{Error, Result};
use crate::mesh::{Array2, Family, Grid};
use crate::state::{Axis, State};

use super::{LimiterConfig, MpMode, TINY};

/// First-order LLF data of one face.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FaceLow<const M: usize> {
    /// Low-order numerical flux.
    pub flux: State<M>,
    /// Dissipation coefficient `max(ϱ(Ul), ϱ(Ur))`.
    pub alpha: f64,
    /// Intermediate state of the LLF decomposition.
    pub tilde: State<M>,
}

/// First-order LLF flux between two cell averages and its dissipation
/// coefficient.
pub fn loworder_flux<E: Equation<M>, const M: usize>(
    eq: &E,
    ul: &State<M>,
    ur: &State<M>,
    axis: Axis,
) -> (State<M>, f64) {
    let fl = eq.flux(ul, axis);
    let fr = eq.flux(ur, axis);
    let alpha = eq.spectral_radius(ul, axis).max(eq.spectral_radius(ur, axis));
    (0.5 * (fl + fr) - (0.5 * alpha) * (*ur - *ul), alpha)
}

/// Intermediate state `(Ul + Ur)/2 + (F(Ul) - F(Ur))/(2α)`.
pub fn intermediate_state<E: Equation<M>, const M: usize>(
    eq: &E,
    ul: &State<M>,
    ur: &State<M>,
    axis: Axis,
    alpha: f64,
) -> Result<State<M>> {
    let df = eq.flux(ul, axis) - eq.flux(ur, axis);
    if alpha <= 0.0 {
        if df.norm_inf() == 0.0 {
            return Ok(0.5 * (*ul + *ur));
        }
        return Err(Error::NumericalState(format!(
            "zero dissipation coefficient with flux jump {:?}",
            df.0
        )));
    }
    Ok(0.5 * (*ul + *ur) + (0.5 / alpha) * df)
}

fn face_low<E: Equation<M>, const M: usize>(eq: &E, ul: &State<M>, ur: &State<M>, axis: Axis) -> FaceLow<M> {
    let fl = eq.flux(ul, axis);
    let fr = eq.flux(ur, axis);
    let alpha = eq.spectral_radius(ul, axis).max(eq.spectral_radius(ur, axis));
    let mean = 0.5 * (*ul + *ur);
    // alpha == 0 only happens for scalar states with vanishing wave speed on
    // both sides, where the two fluxes coincide.
    let tilde = if alpha > 0.0 {
        mean + (0.5 / alpha) * (fl - fr)
    } else {
        mean
    };
    FaceLow {
        flux: 0.5 * (fl + fr) - (0.5 * alpha) * (*ur - *ul),
        alpha,
        tilde,
    }
}

/// Maximum-principle limiting of a scalar anti-diffusive flux. `left` and
/// `right` are the bounds of the cells on either side of the face.
pub fn limit_scalar_flux(anti: f64, tilde: f64, left: ScalarBounds, right: ScalarBounds, alpha: f64) -> f64 {
    if anti >= 0.0 {
        let cap = alpha * (tilde - left.min).min(right.max - tilde);
        anti.min(cap.max(0.0))
    } else {
        let cap = alpha * (right.min - tilde).max(tilde - left.max);
        anti.max(cap.min(0.0))
    }
}

/// Local bounds from the cell average and the intermediate states of the
/// cell's faces.
pub fn local_bounds(avg: f64, tildes: &[f64]) -> ScalarBounds {
    let (lo, hi) = tildes
        .iter()
        .fold((avg, avg), |(lo, hi), &t| (lo.min(t), hi.max(t)));
    ScalarBounds::new(lo, hi)
}

/// Density component of the anti-diffusive flux, clipped so that both
/// limited intermediate states keep density above `eps`. `None` means the
/// intermediate state itself has no margin and the face must fall back to
/// the low-order flux.
pub fn limit_density(anti_rho: f64, tilde_rho: f64, alpha: f64, eps: f64) -> Option<f64> {
    if !(tilde_rho > eps) {
        return None;
    }
    Some(if anti_rho >= 0.0 {
        anti_rho.min(alpha * (tilde_rho - eps))
    } else {
        anti_rho.max(alpha * (eps - tilde_rho))
    })
}

/// Blending coefficient `θ ∈ [0, 1]` keeping the internal energy of
/// `tilde ± θ·star/alpha` above the floor, from the linear sufficient
/// condition `(max(0, A) + |B|) θ <= C`.
pub fn limit_pressure(star: &State<4>, tilde: &State<4>, alpha: f64, eps: f64) -> f64 {
    let [dr, dm1, dm2, de] = star.0;
    let [tr, tm1, tm2, te] = tilde.0;
    let a = 0.5 * (dm1 * dm1 + dm2 * dm2) - dr * de;
    let b = alpha * (dr * te + tr * de - (dm1 * tm1 + dm2 * tm2) - eps * dr);
    let c = alpha * alpha * (tr * te - 0.5 * (tm1 * tm1 + tm2 * tm2) - eps * tr);
    if !(c > 0.0) {
        return 0.0;
    }
    let den = a.max(0.0) + b.abs();
    if den < TINY {
        return 1.0;
    }
    (c / den).min(1.0)
}

/// Jameson's pressure indicator `|p+ - 2p + p-| / |p+ + 2p + p-|`.
#[inline]
pub fn jameson_indicator(p_minus: f64, p: f64, p_plus: f64) -> f64 {
    let den = (p_plus + 2.0 * p + p_minus).abs();
    if den < TINY {
        return 0.0;
    }
    (p_plus - 2.0 * p + p_minus).abs() / den
}

/// Compression indicator `max(-div / sqrt(div² + curl² + 1e-40), 0)`.
#[inline]
pub fn compression_indicator(div: f64, curl: f64) -> f64 {
    (-div / (div * div + curl * curl + 1e-40).sqrt()).max(0.0)
}

/// `exp(-κ φ1 φ2)`.
#[inline]
pub fn blend_coefficient(kappa: f64, phi1: f64, phi2: f64) -> f64 {
    (-kappa * phi1 * phi2).exp()
}

/// Shock-sensor blending coefficients on interior faces.
#[derive(Clone, Debug)]
pub struct SensorField {
    /// Per x-face (facex-shaped).
    pub x: Array2<f64>,
    /// Per y-face (facey-shaped).
    pub y: Array2<f64>,
}

/// Per-cell sensor indicators `(φ1 along x, φ1 along y, φ2)`.
fn sensor_indicators<E: Equation<M>, const M: usize>(
    eq: &E,
    grid: &Grid,
    avg: &Array2<State<M>>,
    out: &mut Array2<[f64; 3]>,
) {
    let (n1, n2) = (grid.n1 as isize, grid.n2 as isize);
    let (dx, dy) = (grid.dx, grid.dy);
    let prim = |i: isize, j: isize| eq.sensor_primitives(avg.get_ref(i, j)).unwrap_or((0.0, 0.0, 0.0));
    out.fill_with(-1..n1 + 1, -1..n2 + 1, |i, j| {
        let (p, _, _) = prim(i, j);
        let (pw, u1w, u2w) = prim(i - 1, j);
        let (pe, u1e, u2e) = prim(i + 1, j);
        let (ps, u1s, u2s) = prim(i, j - 1);
        let (pn, u1n, u2n) = prim(i, j + 1);
        let div = (u1e - u1w) / (2.0 * dx) + (u2n - u2s) / (2.0 * dy);
        let curl = (u2e - u2w) / (2.0 * dx) - (u1n - u1s) / (2.0 * dy);
        [
            jameson_indicator(pw, p, pe),
            jameson_indicator(ps, p, pn),
            compression_indicator(div, curl),
        ]
    });
}

/// Face blending coefficients of the shock sensor computed from the cell
/// averages (ghosts filled). Returns all ones when `kappa == 0` or the model
/// has no pressure.
pub fn shock_sensor<E: Equation<M>, const M: usize>(
    eq: &E,
    grid: &Grid,
    avg: &Array2<State<M>>,
    kappa: f64,
) -> SensorField {
    let mut phi = Array2::new(grid.n1, grid.n2, grid.ghost, [0.0; 3]);
    let (nx, ny) = grid.extents(Family::FaceX);
    let mut x = Array2::new(nx, ny, grid.ghost, 1.0);
    let (nx, ny) = grid.extents(Family::FaceY);
    let mut y = Array2::new(nx, ny, grid.ghost, 1.0);
    if kappa > 0.0 && eq.sensor_primitives(&avg.get(0, 0)).is_some() {
        sensor_indicators(eq, grid, avg, &mut phi);
        fill_sensor(grid, &phi, kappa, &mut x, &mut y);
    }
    SensorField { x, y }
}

fn fill_sensor(grid: &Grid, phi: &Array2<[f64; 3]>, kappa: f64, x: &mut Array2<f64>, y: &mut Array2<f64>) {
    let (n1, n2) = (grid.n1 as isize, grid.n2 as isize);
    x.fill_with(0..n1 + 1, 0..n2, |i, j| {
        let (l, r) = (phi.get(i - 1, j), phi.get(i, j));
        blend_coefficient(kappa, l[0].max(r[0]), l[2].max(r[2]))
    });
    y.fill_with(0..n1, 0..n2 + 1, |i, j| {
        let (b, t) = (phi.get(i, j - 1), phi.get(i, j));
        blend_coefficient(kappa, b[1].max(t[1]), b[2].max(t[2]))
    });
}

/// Reusable workspace for the convex limiting of cell-average fluxes.
#[derive(Clone, Debug)]
pub struct AverageLimiter<const M: usize> {
    low_x: Array2<FaceLow<M>>,
    low_y: Array2<FaceLow<M>>,
    bounds: Array2<ScalarBounds>,
    phi: Array2<[f64; 3]>,
    /// BP blending coefficient per x-face (1 where no limiting happened).
    pub theta_x: Array2<f64>,
    pub theta_y: Array2<f64>,
    /// Shock-sensor coefficient per x-face.
    pub sensor_x: Array2<f64>,
    pub sensor_y: Array2<f64>,
    out_x: Array2<(State<M>, f64)>,
    out_y: Array2<(State<M>, f64)>,
}

impl<const M: usize> AverageLimiter<M> {
    pub fn new(grid: &Grid) -> Self {
        let g = grid.ghost;
        let (fxn, fxm) = grid.extents(Family::FaceX);
        let (fyn, fym) = grid.extents(Family::FaceY);
        AverageLimiter {
            low_x: Array2::new(fxn, fxm, g, FaceLow::default()),
            low_y: Array2::new(fyn, fym, g, FaceLow::default()),
            bounds: Array2::new(grid.n1, grid.n2, g, ScalarBounds::new(0.0, 0.0)),
            phi: Array2::new(grid.n1, grid.n2, g, [0.0; 3]),
            theta_x: Array2::new(fxn, fxm, g, 1.0),
            theta_y: Array2::new(fyn, fym, g, 1.0),
            sensor_x: Array2::new(fxn, fxm, g, 1.0),
            sensor_y: Array2::new(fyn, fym, g, 1.0),
            out_x: Array2::new(fxn, fxm, g, (State::zero(), 1.0)),
            out_y: Array2::new(fyn, fym, g, (State::zero(), 1.0)),
        }
    }

    /// Replaces the high-order fluxes on interior faces of `flux_x`/`flux_y`
    /// by `F_L + θs·ΔF_lim`, evaluated as `(F_L + ΔF_lim) - (1 - θs)·ΔF_lim`
    /// so that `θs = 1` leaves the sensor-free flux bit for bit. `avg` must have its ghosts filled. `global`
    /// holds the scalar bounds `[m0, M0]` (ignored by positivity-only models).
    #[allow(clippy::too_many_arguments)]
    pub fn apply<E: Equation<M>>(
        &mut self,
        eq: &E,
        grid: &Grid,
        avg: &Array2<State<M>>,
        flux_x: &mut Array2<State<M>>,
        flux_y: &mut Array2<State<M>>,
        cfg: &LimiterConfig,
        global: ScalarBounds,
    ) {
        let use_sensor = cfg.sensor && eq.sensor_primitives(&avg.get(0, 0)).is_some();
        if !cfg.average && !use_sensor {
            return;
        }
        let (n1, n2) = (grid.n1 as isize, grid.n2 as isize);

        self.low_x.fill_with(-1..n1 + 2, -1..n2 + 1, |i, j| {
            face_low(eq, avg.get_ref(i - 1, j), avg.get_ref(i, j), Axis::X)
        });
        self.low_y.fill_with(-1..n1 + 1, -1..n2 + 2, |i, j| {
            face_low(eq, avg.get_ref(i, j - 1), avg.get_ref(i, j), Axis::Y)
        });

        if cfg.average && M == 1 {
            match cfg.mp_mode {
                MpMode::Global => self.bounds.fill_with(-1..n1 + 1, -1..n2 + 1, |_, _| global),
                MpMode::Local => {
                    let (lx, ly) = (&self.low_x, &self.low_y);
                    self.bounds.fill_with(-1..n1 + 1, -1..n2 + 1, |i, j| {
                        local_bounds(
                            avg.get(i, j).0[0],
                            &[
                                lx.get(i, j).tilde.0[0],
                                lx.get(i + 1, j).tilde.0[0],
                                ly.get(i, j).tilde.0[0],
                                ly.get(i, j + 1).tilde.0[0],
                            ],
                        )
                    });
                }
            }
        }

        if use_sensor {
            sensor_indicators(eq, grid, avg, &mut self.phi);
            fill_sensor(grid, &self.phi, cfg.kappa, &mut self.sensor_x, &mut self.sensor_y);
        }

        let scalar = M == 1;
        let bounds = &self.bounds;
        let dummy = ScalarBounds::new(0.0, 0.0);
        let cell_bounds = |i: isize, j: isize| if scalar && cfg.average { bounds.get(i, j) } else { dummy };
        let limit = |low: &FaceLow<M>, high: &State<M>, l: ScalarBounds, r: ScalarBounds, sensor: f64| {
            let anti = *high - low.flux;
            let (base, anti, theta) = if cfg.average {
                let lim = eq.limit_face(&anti, &low.tilde, low.alpha, l, r, cfg.eps);
                (low.flux + lim.anti, lim.anti, lim.theta)
            } else {
                (*high, anti, 1.0)
            };
            (base - (1.0 - sensor) * anti, theta)
        };

        let (low_x, sensor_x) = (&self.low_x, &self.sensor_x);
        let fx_in = &*flux_x;
        self.out_x.fill_with(0..n1 + 1, 0..n2, |i, j| {
            let s = if use_sensor { sensor_x.get(i, j) } else { 1.0 };
            limit(low_x.get_ref(i, j), fx_in.get_ref(i, j), cell_bounds(i - 1, j), cell_bounds(i, j), s)
        });
        let (low_y, sensor_y) = (&self.low_y, &self.sensor_y);
        let fy_in = &*flux_y;
        self.out_y.fill_with(0..n1, 0..n2 + 1, |i, j| {
            let s = if use_sensor { sensor_y.get(i, j) } else { 1.0 };
            limit(low_y.get_ref(i, j), fy_in.get_ref(i, j), cell_bounds(i, j - 1), cell_bounds(i, j), s)
        });
        for (i, j, (f, theta)) in self.out_x.interior() {
            flux_x.set(i, j, f);
            self.theta_x.set(i, j, theta);
        }
        for (i, j, (f, theta)) in self.out_y.interior() {
            flux_y.set(i, j, f);
            self.theta_y.set(i, j, theta);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{Euler, ScalarLaw};
    use crate::mesh::DofField;
    use proptest::prelude::*;

    fn bounds() -> impl Strategy<Value = (ScalarBounds, ScalarBounds, f64)> {
        (-2.0..0.0f64, 0.0..2.0f64, -2.0..0.0f64, 0.0..2.0f64, 0.0..1.0f64).prop_map(|(a, b, c, d, s)| {
            let (l, r) = (ScalarBounds::new(a, b), ScalarBounds::new(c, d));
            // tilde in the intersection of both bounds
            let (lo, hi) = (a.max(c), b.min(d));
            (l, r, lo + s * (hi - lo))
        })
    }

    fn euler_pair() -> impl Strategy<Value = (Euler, State<4>, State<4>)> {
        let prim = (1e-6..10.0f64, -50.0..50.0f64, -50.0..50.0f64, 1e-8..10.0f64);
        (1.1..2.0f64, prim.clone(), prim).prop_map(|(g, a, b)| {
            let eq = Euler::new(g).unwrap();
            (eq, eq.state(a.0, a.1, a.2, a.3), eq.state(b.0, b.1, b.2, b.3))
        })
    }

    #[test]
    fn low_order_flux_is_consistent() {
        let eq = Euler::default();
        let u = eq.state(1.0, 0.3, -0.2, 2.0);
        let (f, alpha) = loworder_flux(&eq, &u, &u, Axis::X);
        assert_eq!(f, eq.flux(&u, Axis::X));
        assert_eq!(alpha, eq.spectral_radius(&u, Axis::X));
        assert_eq!(intermediate_state(&eq, &u, &u, Axis::Y, alpha).unwrap(), u);
        let burgers = ScalarLaw::Burgers;
        assert_eq!(intermediate_state(&burgers, &State([0.0]), &State([0.0]), Axis::X, 0.0).unwrap(), State([0.0]));
        assert!(intermediate_state(&burgers, &State([1.0]), &State([0.0]), Axis::X, 0.0).is_err());
    }

    #[test]
    fn sensor_indicators_on_simple_data() {
        assert_eq!(jameson_indicator(1.0, 1.0, 1.0), 0.0);
        assert_eq!(jameson_indicator(0.0, 1.0, 0.0), 1.0);
        assert_eq!(jameson_indicator(0.0, 0.0, 0.0), 0.0);
        assert!((compression_indicator(-2.0, 0.0) - 1.0).abs() < 1e-15);
        assert_eq!(compression_indicator(3.0, 1.0), 0.0);
        assert!((compression_indicator(-1.0, 1.0) - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(blend_coefficient(0.0, 1.0, 1.0), 1.0);
        assert!((blend_coefficient(2.0, 0.5, 0.5) - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn sensor_is_inert_for_scalars_and_zero_kappa() {
        let grid = Grid::new(0.0, 1.0, 0.0, 1.0, 4, 4).unwrap();
        let mut avg = Array2::new(4, 4, 2, State([0.0]));
        avg.set(1, 1, State([5.0]));
        let s = shock_sensor(&ScalarLaw::Burgers, &grid, &avg, 3.0);
        assert!(s.x.raw().iter().chain(s.y.raw()).all(|&v| v == 1.0));
        let eq = Euler::default();
        let mut avg = Array2::new(4, 4, 2, eq.state(1.0, 0.0, 0.0, 1.0));
        avg.set(1, 1, eq.state(1.0, 0.0, 0.0, 10.0));
        let s = shock_sensor(&eq, &grid, &avg, 0.0);
        assert!(s.x.raw().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn sensor_fires_only_at_compressive_pressure_jumps() {
        let eq = Euler::default();
        let grid = Grid::new(0.0, 1.0, 0.0, 1.0, 8, 8).unwrap();
        let mut avg = Array2::new(8, 8, 2, eq.state(1.0, 0.0, 0.0, 1.0));
        // converging flow through a pressure jump at x = 0.5
        for j in -2..10 {
            for i in -2..10 {
                let (v, p) = if i < 4 { (1.0, 10.0) } else { (-1.0, 1.0) };
                avg.set(i, j, eq.state(1.0, v, 0.0, p));
            }
        }
        let s = shock_sensor(&eq, &grid, &avg, 1.0);
        assert!(s.x.get(4, 3) < 0.9);
        assert_eq!(s.x.get(1, 3), 1.0);
        assert_eq!(s.y.get(4, 4), 1.0);
        // the same jump in a diverging flow is left alone
        for j in -2..10 {
            for i in -2..10 {
                let (v, p) = if i < 4 { (-1.0, 10.0) } else { (1.0, 1.0) };
                avg.set(i, j, eq.state(1.0, v, 0.0, p));
            }
        }
        let s = shock_sensor(&eq, &grid, &avg, 1.0);
        assert_eq!(s.x.get(4, 3), 1.0);
    }

    #[test]
    fn apply_leaves_admissible_fluxes_alone() {
        let grid = Grid::new(0.0, 1.0, 0.0, 1.0, 4, 4).unwrap();
        let eq = ScalarLaw::advection();
        let mut dofs = DofField::<1>::new(&grid);
        dofs.avg.raw_mut().fill(State([0.5]));
        let mut fx = Array2::new(5, 4, 2, State([0.5]));
        let mut fy = Array2::new(4, 5, 2, State([0.5]));
        let (fx0, fy0) = (fx.clone(), fy.clone());
        let mut lim = AverageLimiter::new(&grid);
        lim.apply(&eq, &grid, &dofs.avg, &mut fx, &mut fy, &LimiterConfig::default(), ScalarBounds::new(0.0, 1.0));
        assert_eq!((fx, fy), (fx0, fy0));
        assert!(lim.theta_x.raw().iter().all(|&t| t == 1.0));
    }

    #[test]
    fn apply_clips_a_flux_that_would_overshoot() {
        let grid = Grid::new(0.0, 1.0, 0.0, 1.0, 4, 4).unwrap();
        let eq = ScalarLaw::advection();
        let mut avg = Array2::new(4, 4, 2, State([1.0]));
        avg.set(1, 1, State([0.0]));
        let mut fx = Array2::new(5, 4, 2, State([1.0]));
        let mut fy = Array2::new(4, 5, 2, State([1.0]));
        // a huge inflow into cell (1, 1) from the left and nothing else
        fx.set(1, 1, State([-50.0]));
        let mut lim = AverageLimiter::new(&grid);
        lim.apply(&eq, &grid, &avg, &mut fx, &mut fy, &LimiterConfig::default(), ScalarBounds::new(0.0, 1.0));
        assert!(lim.theta_x.get(1, 1) < 1.0);
        let (low, _) = loworder_flux(&eq, &avg.get(0, 1), &avg.get(1, 1), Axis::X);
        let f = fx.get(1, 1).0[0];
        assert!(f <= low.0[0] && f >= -50.0);
    }

    proptest! {
        #[test]
        fn scalar_flux_limiting_keeps_both_states_in_bounds(
            (l, r, tilde) in bounds(), anti in -10.0..10.0f64, alpha in 0.01..5.0f64,
        ) {
            let lim = limit_scalar_flux(anti, tilde, l, r, alpha);
            prop_assert!(lim * anti >= 0.0 && lim.abs() <= anti.abs());
            let tol = 1e-13;
            prop_assert!(tilde - lim / alpha >= l.min - tol && tilde - lim / alpha <= l.max + tol);
            prop_assert!(tilde + lim / alpha >= r.min - tol && tilde + lim / alpha <= r.max + tol);
        }

        #[test]
        fn local_bounds_envelope(avg in -1.0..1.0f64, t in prop::array::uniform4(-1.0..1.0f64)) {
            let b = local_bounds(avg, &t);
            prop_assert!(b.contains(avg) && t.iter().all(|&v| b.contains(v)));
            prop_assert!(b.min == t.iter().fold(avg, |m, &v| m.min(v)));
        }

        #[test]
        fn euler_face_limiting_is_admissible_and_convex(
            (eq, ul, ur) in euler_pair(), anti in prop::array::uniform4(-1e3..1e3f64),
        ) {
            let eps = 1e-13;
            let (_, alpha) = loworder_flux(&eq, &ul, &ur, Axis::X);
            let tilde = intermediate_state(&eq, &ul, &ur, Axis::X, alpha).unwrap();
            let anti = State(anti);
            let dummy = ScalarBounds::new(0.0, 0.0);
            let lim = eq.limit_face(&anti, &tilde, alpha, dummy, dummy, eps);
            for k in 0..4 {
                let c = if anti.0[k] != 0.0 { lim.anti.0[k] / anti.0[k] } else { 0.0 };
                prop_assert!((-1e-15..=1.0 + 1e-15).contains(&c), "component {} ratio {}", k, c);
            }
            for s in [-1.0, 1.0] {
                let v = tilde + (s / alpha) * lim.anti;
                // relative slack for round-off in the energy difference
                let slack = 1e-12 * (v.0[3].abs() + tilde.0[3].abs());
                prop_assert!(v.0[0] >= eps - 4.0 * f64::EPSILON * tilde.0[0]);
                prop_assert!(eq.internal_energy(&v) >= -slack, "rho e = {}", eq.internal_energy(&v));
            }
        }

        #[test]
        fn density_limit_keeps_floor(tr in 1e-10..10.0f64, a in -1e3..1e3f64, alpha in 1e-3..10.0f64) {
            let eps = 1e-13;
            let lim = limit_density(a, tr, alpha, eps).unwrap();
            // the floor holds up to round-off in tr
            let floor = eps - 4.0 * f64::EPSILON * tr;
            prop_assert!(tr + lim / alpha >= floor && tr - lim / alpha >= floor);
            prop_assert!(lim * a >= 0.0 && lim.abs() <= a.abs());
        }
    }

    #[test]
    fn density_limit_falls_back_without_margin() {
        assert_eq!(limit_density(1.0, 1e-14, 1.0, 1e-13), None);
        assert_eq!(limit_density(1.0, f64::NAN, 1.0, 1e-13), None);
    }
}
