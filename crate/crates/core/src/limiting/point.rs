use crate::equations::{Equation, Euler};
use crate::error::{Error, Result};
use crate::mesh::{DofField, Grid};
use crate::state::{Axis, State};

use super::TINY;

/// LLF flux between point values `a` (left/below) and `b` with
/// `α = max(ϱ(a), ϱ(b))`.
pub fn llf_flux<E: Equation<M>, const M: usize>(eq: &E, a: &State<M>, b: &State<M>, axis: Axis) -> State<M> {
    llf_flux_parts(
        &eq.flux(a, axis),
        &eq.flux(b, axis),
        a,
        b,
        eq.spectral_radius(a, axis),
        eq.spectral_radius(b, axis),
    )
}

/// LLF flux from precomputed fluxes and spectral radii.
#[inline]
pub(crate) fn llf_flux_parts<const M: usize>(
    fa: &State<M>,
    fb: &State<M>,
    a: &State<M>,
    b: &State<M>,
    speed_a: f64,
    speed_b: f64,
) -> State<M> {
    let alpha = speed_a.max(speed_b);
    0.5 * (*fa + *fb) - (0.5 * alpha) * (*b - *a)
}

/// First-order forward-Euler point update from the four LLF fluxes
/// surrounding the point. `mu_x = Δt / hx`, `mu_y = Δt / hy` with the
/// effective spacings of the respective scheme.
#[inline]
pub fn llf_point_update<const M: usize>(
    u: &State<M>,
    west: &State<M>,
    east: &State<M>,
    south: &State<M>,
    north: &State<M>,
    mu_x: f64,
    mu_y: f64,
) -> State<M> {
    *u - mu_x * (*east - *west) - mu_y * (*north - *south)
}

/// First-order LLF prediction of node `(i, j)` over neighbouring nodes.
pub fn llf_point_node<E: Equation<M>, const M: usize>(
    eq: &E,
    dofs: &DofField<M>,
    grid: &Grid,
    dt: f64,
    i: isize,
    j: isize,
) -> State<M> {
    let n = |a: isize, b: isize| dofs.node.get(a, b);
    let u = n(i, j);
    llf_point_update(
        &u,
        &llf_flux(eq, &n(i - 1, j), &u, Axis::X),
        &llf_flux(eq, &u, &n(i + 1, j), Axis::X),
        &llf_flux(eq, &n(i, j - 1), &u, Axis::Y),
        &llf_flux(eq, &u, &n(i, j + 1), Axis::Y),
        dt / grid.dx,
        dt / grid.dy,
    )
}

/// First-order LLF prediction of the x-face value `(i, j)`. The tangential
/// part uses the nodes above and below with spacing `dy` (not `dy/2`).
pub fn llf_point_facex<E: Equation<M>, const M: usize>(
    eq: &E,
    dofs: &DofField<M>,
    grid: &Grid,
    dt: f64,
    i: isize,
    j: isize,
) -> State<M> {
    let f = |a: isize, b: isize| dofs.facex.get(a, b);
    let u = f(i, j);
    llf_point_update(
        &u,
        &llf_flux(eq, &f(i - 1, j), &u, Axis::X),
        &llf_flux(eq, &u, &f(i + 1, j), Axis::X),
        &llf_flux(eq, &dofs.node.get(i, j), &u, Axis::Y),
        &llf_flux(eq, &u, &dofs.node.get(i, j + 1), Axis::Y),
        dt / grid.dx,
        dt / grid.dy,
    )
}

/// First-order LLF prediction of the y-face value `(i, j)`.
pub fn llf_point_facey<E: Equation<M>, const M: usize>(
    eq: &E,
    dofs: &DofField<M>,
    grid: &Grid,
    dt: f64,
    i: isize,
    j: isize,
) -> State<M> {
    let f = |a: isize, b: isize| dofs.facey.get(a, b);
    let u = f(i, j);
    llf_point_update(
        &u,
        &llf_flux(eq, &dofs.node.get(i, j), &u, Axis::X),
        &llf_flux(eq, &u, &dofs.node.get(i + 1, j), Axis::X),
        &llf_flux(eq, &f(i, j - 1), &u, Axis::Y),
        &llf_flux(eq, &u, &f(i, j + 1), Axis::Y),
        dt / grid.dx,
        dt / grid.dy,
    )
}

/// Scaling limiter for a scalar point value. Returns `(u_lim, θ)`.
///
/// `θ` pulls `high` towards `low` just enough to land inside `[m0, big_m0]`;
/// values already inside are returned untouched.
pub fn limit_point_scalar(high: f64, low: f64, m0: f64, big_m0: f64) -> (f64, f64) {
    let theta = if high > big_m0 {
        ((big_m0 - low) / (high - low)).clamp(0.0, 1.0)
    } else if high < m0 {
        ((low - m0) / (low - high)).clamp(0.0, 1.0)
    } else {
        return (high, 1.0);
    };
    let u = (low + theta * (high - low)).clamp(m0.min(low), big_m0.max(low));
    (u, theta)
}

/// Two-step scaling limiter for an Euler point value: density first, then
/// pressure via concavity. Returns the limited state and `θ* θ**`.
pub fn limit_point_euler(eq: &Euler, high: &State<4>, low: &State<4>, eps: f64) -> Result<(State<4>, f64)> {
    let rho_l = low.0[0];
    let p_l = eq.pressure(low);
    if !(rho_l > 0.0 && p_l > 0.0) {
        return Err(Error::NumericalState(format!(
            "low-order point prediction is inadmissible: {}",
            eq.describe(low)
        )));
    }
    if !high.is_finite() {
        return Err(Error::NumericalState(format!("non-finite high-order point value {:?}", high.0)));
    }
    if !(rho_l > eps && p_l > eps) {
        return Ok((*low, 0.0));
    }
    if high.0[0] > eps && eq.pressure(high) > eps {
        return Ok((*high, 1.0));
    }

    let mut star = *high;
    let mut theta_rho = 1.0;
    if !(high.0[0] > eps) {
        let den = rho_l - high.0[0];
        theta_rho = if den.abs() < TINY { 1.0 } else { ((rho_l - eps) / den).clamp(0.0, 1.0) };
        star.0[0] = theta_rho * high.0[0] + (1.0 - theta_rho) * rho_l;
    }

    let p_star = eq.pressure(&star);
    let theta_p = if p_star > eps {
        1.0
    } else {
        let den = p_l - p_star;
        if den.abs() < TINY || !den.is_finite() {
            0.0
        } else {
            ((p_l - eps) / den).clamp(0.0, 1.0)
        }
    };
    Ok((star.lincomb(theta_p, *low, 1.0 - theta_p), theta_rho * theta_p))
}
