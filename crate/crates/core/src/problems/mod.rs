//! Benchmark problems: initial data, boundary conditions and reference
//! solutions.

mod boundary;
mod catalog;
pub mod riemann;

use std::sync::Arc;

pub use boundary::{fill_family, fill_ghosts, Boundaries, Boundary, FieldFn, Side};
pub use catalog::{list_problems, make_problem, ProblemParams, PROBLEMS};

use crate::equations::{Equation, Euler, ScalarBounds, ScalarLaw, Splitting};
use crate::error::{Error, Result};
use crate::limiting::LimiterConfig;
use crate::mesh::{DofField, Family, Grid};
use crate::state::State;

/// Initial state as a function of position.
pub type InitFn<const M: usize> = Arc<dyn Fn(f64, f64) -> State<M> + Send + Sync>;

/// A fully specified benchmark for equation `E`.
#[derive(Clone)]
pub struct Problem<E, const M: usize> {
    pub name: String,
    pub eq: E,
    pub grid: Grid,
    pub t_end: f64,
    pub boundaries: Boundaries<M>,
    pub initial: InitFn<M>,
    /// Exact solution `(x, y, t)`, where one is known.
    pub exact: Option<FieldFn<M>>,
    /// Limiter settings recommended for this benchmark.
    pub limiter: LimiterConfig,
    pub splitting: Splitting,
    /// Global bounds for scalar maximum-principle limiting; `None` takes the
    /// range of the initial DoFs.
    pub bounds: Option<ScalarBounds>,
    /// Final adjustment of the initial DoFs (point sources and the like).
    pub adjust: Option<fn(&Grid, &mut DofField<M>)>,
}

impl<E: std::fmt::Debug, const M: usize> std::fmt::Debug for Problem<E, M> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("eq", &self.eq)
            .field("grid", &self.grid)
            .field("t_end", &self.t_end)
            .field("boundaries", &self.boundaries)
            .field("limiter", &self.limiter)
            .field("splitting", &self.splitting)
            .finish_non_exhaustive()
    }
}

/// A problem for either model family.
#[derive(Clone, Debug)]
pub enum AnyProblem {
    Scalar(Problem<ScalarLaw, 1>),
    Euler(Problem<Euler, 4>),
}

macro_rules! both {
    ($self:expr, $p:ident => $body:expr) => {
        match $self {
            AnyProblem::Scalar($p) => $body,
            AnyProblem::Euler($p) => $body,
        }
    };
}

impl AnyProblem {
    pub fn name(&self) -> &str {
        both!(self, p => &p.name)
    }

    pub fn grid(&self) -> &Grid {
        both!(self, p => &p.grid)
    }

    pub fn t_end(&self) -> f64 {
        both!(self, p => p.t_end)
    }

    pub fn limiter(&self) -> &LimiterConfig {
        both!(self, p => &p.limiter)
    }

    pub fn limiter_mut(&mut self) -> &mut LimiterConfig {
        both!(self, p => &mut p.limiter)
    }

    pub fn splitting(&self) -> Splitting {
        both!(self, p => p.splitting)
    }

    pub fn model(&self) -> &'static str {
        both!(self, p => p.eq.name())
    }

    pub fn gamma(&self) -> Option<f64> {
        match self {
            AnyProblem::Euler(p) => Some(p.eq.gamma),
            AnyProblem::Scalar(_) => None,
        }
    }

    pub fn has_exact(&self) -> bool {
        both!(self, p => p.exact.is_some())
    }

    pub fn set_splitting(&mut self, kind: Splitting) -> Result<()> {
        both!(self, p => {
            if !p.eq.supports(kind) {
                return Err(Error::Config(format!(
                    "splitting {} is not available for {}",
                    kind.name(),
                    p.eq.name()
                )));
            }
            p.splitting = kind;
            Ok(())
        })
    }

    pub fn set_t_end(&mut self, t: f64) -> Result<()> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::Config(format!("final time must be finite and non-negative, got {t}")));
        }
        both!(self, p => p.t_end = t);
        Ok(())
    }
}

/// 3-point Simpson nodes and weights on `[0, 1]`.
const SIMPSON: [(f64, f64); 3] = [(0.0, 1.0 / 6.0), (0.5, 4.0 / 6.0), (1.0, 1.0 / 6.0)];

/// 5-point Gauss-Legendre nodes and weights on `[0, 1]`.
fn gauss5() -> [(f64, f64); 5] {
    let a = (5.0_f64 - 2.0 * (10.0_f64 / 7.0).sqrt()).sqrt() / 3.0;
    let b = (5.0_f64 + 2.0 * (10.0_f64 / 7.0).sqrt()).sqrt() / 3.0;
    let wa = (322.0 + 13.0 * 70.0_f64.sqrt()) / 900.0;
    let wb = (322.0 - 13.0 * 70.0_f64.sqrt()) / 900.0;
    [
        (0.5 * (1.0 - b), 0.5 * wb),
        (0.5 * (1.0 - a), 0.5 * wa),
        (0.5, 0.5 * 128.0 / 225.0),
        (0.5 * (1.0 + a), 0.5 * wa),
        (0.5 * (1.0 + b), 0.5 * wb),
    ]
}

fn tensor_average<const M: usize>(
    grid: &Grid,
    i: isize,
    j: isize,
    rule: &[(f64, f64)],
    f: impl Fn(f64, f64) -> State<M>,
) -> State<M> {
    let (x0, y0) = (grid.x_line(i), grid.y_line(j));
    let mut acc = State::zero();
    for &(sy, wy) in rule {
        for &(sx, wx) in rule {
            acc += (wx * wy) * f(x0 + sx * grid.dx, y0 + sy * grid.dy);
        }
    }
    acc
}

/// Mean of `f` over cell `(i, j)` by tensor Simpson quadrature, the rule
/// used for initial averages. Exact for bicubic data.
pub fn simpson_average<const M: usize>(grid: &Grid, i: isize, j: isize, f: impl Fn(f64, f64) -> State<M>) -> State<M> {
    tensor_average(grid, i, j, &SIMPSON, f)
}

/// Mean of `f` over cell `(i, j)` by 5x5 Gauss-Legendre quadrature, used for
/// reference cell values in error norms.
pub fn gauss_average<const M: usize>(grid: &Grid, i: isize, j: isize, f: impl Fn(f64, f64) -> State<M>) -> State<M> {
    tensor_average(grid, i, j, &gauss5(), f)
}

/// Initial DoFs: point values sampled pointwise, averages by tensor Simpson
/// quadrature, then the problem-specific adjustment. Ghosts are not filled.
pub fn init_dofs<E: Equation<M>, const M: usize>(problem: &Problem<E, M>) -> Result<DofField<M>> {
    let grid = &problem.grid;
    let f = &problem.initial;
    let mut dofs = DofField::new(grid);
    for family in Family::POINTS {
        let (nx, ny) = grid.extents(family);
        dofs.family_mut(family).fill_with(0..nx as isize, 0..ny as isize, |i, j| {
            let (x, y) = grid.location(family, i, j);
            f(x, y)
        });
    }
    dofs.avg
        .fill_with(0..grid.n1 as isize, 0..grid.n2 as isize, |i, j| simpson_average(grid, i, j, |x, y| f(x, y)));
    if let Some(adjust) = problem.adjust {
        adjust(grid, &mut dofs);
    }
    for family in Family::ALL {
        for (i, j, u) in dofs.family(family).interior() {
            if !u.is_finite() || !problem.eq.admissible(&u, 0.0) {
                return Err(Error::Config(format!(
                    "initial {} value at ({i}, {j}) is not admissible: {}",
                    family.name(),
                    problem.eq.describe(&u)
                )));
            }
        }
    }
    Ok(dofs)
}

/// Scalar bounds enforced by global maximum-principle limiting.
pub fn global_bounds<E, const M: usize>(problem: &Problem<E, M>, dofs: &DofField<M>) -> ScalarBounds {
    if let Some(b) = problem.bounds {
        return b;
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for family in Family::ALL {
        let (min, max) = dofs.range(family);
        lo = lo.min(min.0[0]);
        hi = hi.max(max.0[0]);
    }
    ScalarBounds::new(lo, hi)
}

/// Per-component `Σ |Ū - ū_exact| Δx Δy` over interior averages, with the
/// reference cell mean taken by Gauss quadrature of `exact(·, ·, t)`.
pub fn error_norms<const M: usize>(
    dofs: &DofField<M>,
    grid: &Grid,
    exact: &(dyn Fn(f64, f64, f64) -> State<M> + Send + Sync),
    t: f64,
) -> [f64; M] {
    let mut cell = crate::mesh::Array2::new(grid.n1, grid.n2, grid.ghost, State::<M>::zero());
    cell.fill_with(0..grid.n1 as isize, 0..grid.n2 as isize, |i, j| {
        let reference = gauss_average(grid, i, j, |x, y| exact(x, y, t));
        (dofs.avg.get(i, j) - reference).map(f64::abs)
    });
    // Row-major serial summation keeps the norm deterministic.
    let mut sum = [0.0; M];
    for (_, _, e) in cell.interior() {
        for (s, v) in sum.iter_mut().zip(e.0) {
            *s += v;
        }
    }
    sum.map(|s| s * grid.cell_area())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_average_is_exact_for_bicubics() {
        let grid = Grid::new(0.0, 1.0, 0.0, 2.0, 4, 4).unwrap();
        let f = |x: f64, y: f64| State([x * x * x + x * y * y + 2.0 * y]);
        // Mean over [0.25, 0.5] x [0.5, 1.0]: integrate each monomial.
        let mx3 = (0.5f64.powi(4) - 0.25f64.powi(4)) / 4.0 / 0.25;
        let mx = (0.25 + 0.5) / 2.0;
        let my2 = (1.0f64.powi(3) - 0.5f64.powi(3)) / 3.0 / 0.5;
        let my = 0.75;
        let expected = mx3 + mx * my2 + 2.0 * my;
        let got = simpson_average(&grid, 1, 1, f).0[0];
        assert!((got - expected).abs() < 1e-14, "{got} vs {expected}");
    }

    #[test]
    fn gauss_weights_integrate_degree_nine() {
        let sum: f64 = gauss5().iter().map(|(x, w)| w * x.powi(9)).sum();
        assert!((sum - 0.1).abs() < 1e-15);
    }

    #[test]
    fn constant_offset_norm_equals_offset_times_area() {
        let grid = Grid::new(0.0, 1.0, 0.0, 1.0, 8, 8).unwrap();
        let mut dofs = DofField::<1>::new(&grid);
        dofs.avg.fill_with(0..8, 0..8, |_, _| State([0.25]));
        let e = error_norms(&dofs, &grid, &|_, _, _| State([0.0]), 0.0);
        assert!((e[0] - 0.25).abs() < 1e-15);
        let zero = error_norms(&dofs, &grid, &|_, _, _| State([0.25]), 0.0);
        assert_eq!(zero[0], 0.0);
    }
}
