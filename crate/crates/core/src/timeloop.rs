//! SSP-RK3 time integration with stage-wise bound-preserving limiting.

use std::time::Instant;

use serde::Serialize;

use crate::equations::{Equation, ScalarBounds, Splitting};
use crate::error::{Error, Result};
use crate::limiting::{AverageLimiter, LimiterConfig};
use crate::mesh::{Array2, DofField, Family, Grid};
use crate::problems::{error_norms, fill_ghosts, global_bounds, init_dofs, Problem};
use crate::scheme::{CenterPolicy, FluxPoint, Operator};
use crate::state::{Axis, State};

/// Time-step selection.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StepControl {
    pub cfl: f64,
    /// Cap the step by the bound-preserving restriction whenever a limiter
    /// is active, and retry steps whose stages violate it.
    pub bp_dt: bool,
    /// Emit a progress line every this many steps (0 disables).
    pub log_every: usize,
    /// Abort after this many steps.
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl {
            cfl: 0.25,
            bp_dt: true,
            log_every: 0,
            max_steps: 10_000_000,
        }
    }
}

impl StepControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::Config(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        Ok(())
    }
}

/// Which entries enter wave-speed maxima.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpeedScope {
    Interior,
    /// Interior plus the (filled) ghost layers, so that boundary data with
    /// fast waves restrict the step.
    WithGhosts,
}

/// Largest `(ϱ1, ϱ2)` over `family`, in row-major order.
fn max_speeds<E: Equation<M>, const M: usize>(
    eq: &E,
    dofs: &DofField<M>,
    family: Family,
    scope: SpeedScope,
) -> Result<(f64, f64)> {
    let a = dofs.family(family);
    let (nx, ny) = a.extents();
    let g = match scope {
        SpeedScope::Interior => 0,
        SpeedScope::WithGhosts => a.ghost() as isize,
    };
    let mut s = (0.0_f64, 0.0_f64);
    for j in -g..ny as isize + g {
        for i in -g..nx as isize + g {
            let u = a.get_ref(i, j);
            let (r1, r2) = (eq.spectral_radius(u, Axis::X), eq.spectral_radius(u, Axis::Y));
            if !(r1.is_finite() && r2.is_finite()) {
                return Err(Error::NumericalState(format!(
                    "wave speed undefined for {} value at ({i}, {j}): {}",
                    family.name(),
                    eq.describe(u)
                )));
            }
            s = (s.0.max(r1), s.1.max(r2));
        }
    }
    Ok(s)
}

/// Bound-preserving step restriction `¼ min(Δx / ϱ1, Δy / ϱ2)` over all DoFs.
pub fn bp_dt_bound<E: Equation<M>, const M: usize>(
    eq: &E,
    dofs: &DofField<M>,
    grid: &Grid,
    scope: SpeedScope,
) -> Result<f64> {
    let mut s = (0.0_f64, 0.0_f64);
    for family in Family::ALL {
        let f = max_speeds(eq, dofs, family, scope)?;
        s = (s.0.max(f.0), s.1.max(f.1));
    }
    Ok(0.25 * (grid.dx / s.0).min(grid.dy / s.1))
}

/// Time step from the CFL condition on cell averages, capped by the
/// bound-preserving restriction when `limited`, and clipped to `t_end`.
#[allow(clippy::too_many_arguments)]
pub fn compute_dt<E: Equation<M>, const M: usize>(
    eq: &E,
    dofs: &DofField<M>,
    grid: &Grid,
    ctl: &StepControl,
    limited: bool,
    scope: SpeedScope,
    t: f64,
    t_end: f64,
) -> Result<f64> {
    let (a, b) = max_speeds(eq, dofs, Family::Avg, scope)?;
    let rate = (a / grid.dx).max(b / grid.dy);
    if rate <= 0.0 {
        return Err(Error::Config("all wave speeds vanish; the time step is undefined".into()));
    }
    let mut dt = ctl.cfl / rate;
    if limited && ctl.bp_dt {
        dt = dt.min(bp_dt_bound(eq, dofs, grid, scope)?);
    }
    if t + dt >= t_end {
        dt = t_end - t;
    }
    Ok(dt)
}

/// Blending coefficients of the most recent step (minimum over its stages).
#[derive(Clone, Debug)]
pub struct Diagnostics {
    /// Average-flux BP coefficient per x-face / y-face.
    pub theta_x: Array2<f64>,
    pub theta_y: Array2<f64>,
    /// Shock-sensor coefficient per x-face / y-face.
    pub sensor_x: Array2<f64>,
    pub sensor_y: Array2<f64>,
    /// Point scaling coefficient per point family.
    pub theta_facex: Array2<f64>,
    pub theta_facey: Array2<f64>,
    pub theta_node: Array2<f64>,
}

impl Diagnostics {
    fn new(grid: &Grid) -> Self {
        let mk = |f: Family| {
            let (nx, ny) = grid.extents(f);
            Array2::new(nx, ny, grid.ghost, 1.0)
        };
        Diagnostics {
            theta_x: mk(Family::FaceX),
            theta_y: mk(Family::FaceY),
            sensor_x: mk(Family::FaceX),
            sensor_y: mk(Family::FaceY),
            theta_facex: mk(Family::FaceX),
            theta_facey: mk(Family::FaceY),
            theta_node: mk(Family::Node),
        }
    }

    fn reset(&mut self) {
        for a in self.all_mut() {
            a.raw_mut().fill(1.0);
        }
    }

    fn all_mut(&mut self) -> [&mut Array2<f64>; 7] {
        [
            &mut self.theta_x,
            &mut self.theta_y,
            &mut self.sensor_x,
            &mut self.sensor_y,
            &mut self.theta_facex,
            &mut self.theta_facey,
            &mut self.theta_node,
        ]
    }

    /// Point coefficient array of a point family.
    pub fn theta_point(&self, family: Family) -> Option<&Array2<f64>> {
        match family {
            Family::FaceX => Some(&self.theta_facex),
            Family::FaceY => Some(&self.theta_facey),
            Family::Node => Some(&self.theta_node),
            Family::Avg => None,
        }
    }
}

fn merge_min(dst: &mut Array2<f64>, src: &Array2<f64>) {
    for (d, s) in dst.raw_mut().iter_mut().zip(src.raw()) {
        *d = d.min(*s);
    }
}

/// Outcome of a forward-Euler stage.
enum Stage {
    Done,
    /// The stage input requires a smaller step; carries the admissible bound.
    TooLarge(f64),
}

/// Scratch space and operators for advancing one field.
#[derive(Clone, Debug)]
pub struct Stepper<const M: usize> {
    op: Operator<M>,
    limiter: AverageLimiter<M>,
    theta_points: [Array2<f64>; 3],
    pub diagnostics: Diagnostics,
    u1: DofField<M>,
    tmp: DofField<M>,
}

/// Lowest density and pressure seen so far.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Positivity {
    pub min_density: Option<f64>,
    pub min_pressure: Option<f64>,
}

impl Positivity {
    fn record(&mut self, rho: f64, p: f64) {
        self.min_density = Some(self.min_density.map_or(rho, |m| m.min(rho)));
        self.min_pressure = Some(self.min_pressure.map_or(p, |m| m.min(p)));
    }
}

/// Fixed inputs of a stage.
struct StageCtx<'a, E, const M: usize> {
    eq: &'a E,
    grid: &'a Grid,
    problem: &'a Problem<E, M>,
    kind: Splitting,
    cfg: &'a LimiterConfig,
    bounds: ScalarBounds,
    check_dt: bool,
}

impl<const M: usize> Stepper<M> {
    pub fn new(grid: &Grid) -> Self {
        let mk = |f: Family| {
            let (nx, ny) = grid.extents(f);
            Array2::new(nx, ny, grid.ghost, 1.0)
        };
        Stepper {
            op: Operator::new(grid),
            limiter: AverageLimiter::new(grid),
            theta_points: [mk(Family::FaceX), mk(Family::FaceY), mk(Family::Node)],
            diagnostics: Diagnostics::new(grid),
            u1: DofField::new(grid),
            tmp: DofField::new(grid),
        }
    }

    /// One forward-Euler stage `out = input + dt L(input)` with limiting.
    /// Fills the ghosts of `input` at time `t`.
    fn forward_euler<E: Equation<M>>(
        &mut self,
        ctx: &StageCtx<'_, E, M>,
        input: &mut DofField<M>,
        out: &mut DofField<M>,
        t: f64,
        dt: f64,
        positivity: &mut Positivity,
    ) -> Result<Stage> {
        let (eq, grid, cfg) = (ctx.eq, ctx.grid, ctx.cfg);
        fill_ghosts(eq, grid, &ctx.problem.boundaries, input, t);
        if ctx.check_dt {
            let bound = bp_dt_bound(eq, input, grid, SpeedScope::WithGhosts)?;
            if dt > bound {
                return Ok(Stage::TooLarge(bound));
            }
        }
        let policy = if cfg.point {
            CenterPolicy::Repair { eps: cfg.eps }
        } else {
            CenterPolicy::Strict
        };
        self.op
            .evaluate(eq, ctx.kind, input, grid, policy)
            .map_err(|e| with_time(e, t))?;

        let (n1, n2) = (grid.n1 as isize, grid.n2 as isize);

        // Cell averages.
        self.limiter
            .apply(eq, grid, &input.avg, &mut self.op.flux_x, &mut self.op.flux_y, cfg, ctx.bounds);
        let op = &self.op;
        let (mx, my) = (dt / grid.dx, dt / grid.dy);
        let (fx, fy) = (&op.flux_x, &op.flux_y);
        let avg_in = &input.avg;
        out.avg.fill_with(0..n1, 0..n2, |i, j| {
            avg_in.get(i, j) - mx * (fx.get(i + 1, j) - fx.get(i, j)) - my * (fy.get(i, j + 1) - fy.get(i, j))
        });

        // Point values.
        let points = [
            (Family::FaceX, &op.rhs_facex),
            (Family::FaceY, &op.rhs_facey),
            (Family::Node, &op.rhs_node),
        ];
        for (k, (family, rhs)) in points.into_iter().enumerate() {
            let (nx, ny) = grid.extents(family);
            let src = input.family(family);
            let theta = &mut self.theta_points[k];
            if cfg.point {
                let mut pairs = Array2::new(nx, ny, grid.ghost, (State::zero(), 1.0));
                let failure = std::sync::Mutex::new(None);
                pairs.fill_with(0..nx as isize, 0..ny as isize, |i, j| {
                    let high = src.get(i, j) + dt * rhs.get(i, j);
                    let low = low_order_point(op, family, grid, dt, i, j);
                    match eq.limit_point(&high, &low, ctx.bounds, cfg.eps) {
                        Ok(r) => r,
                        Err(e) => {
                            let mut slot = failure.lock().unwrap_or_else(|p| p.into_inner());
                            if slot.is_none() {
                                *slot = Some((i, j, e));
                            }
                            (high, 1.0)
                        }
                    }
                });
                if let Some((i, j, e)) = failure.into_inner().unwrap_or_else(|p| p.into_inner()) {
                    return Err(Error::Inadmissible {
                        family: family.name(),
                        index: (i, j),
                        time: t,
                        detail: e.to_string(),
                    });
                }
                let dst = out.family_mut(family);
                for (i, j, (u, th)) in pairs.interior() {
                    dst.set(i, j, u);
                    theta.set(i, j, th);
                }
            } else {
                out.family_mut(family)
                    .fill_with(0..nx as isize, 0..ny as isize, |i, j| src.get(i, j) + dt * rhs.get(i, j));
            }
        }

        check_admissible(eq, out, t + dt, positivity)?;

        let d = &mut self.diagnostics;
        merge_min(&mut d.theta_x, &self.limiter.theta_x);
        merge_min(&mut d.theta_y, &self.limiter.theta_y);
        if cfg.sensor {
            merge_min(&mut d.sensor_x, &self.limiter.sensor_x);
            merge_min(&mut d.sensor_y, &self.limiter.sensor_y);
        }
        if cfg.point {
            merge_min(&mut d.theta_facex, &self.theta_points[0]);
            merge_min(&mut d.theta_facey, &self.theta_points[1]);
            merge_min(&mut d.theta_node, &self.theta_points[2]);
        }
        Ok(Stage::Done)
    }

    /// One SSP-RK3 step from `un` at time `t`. Returns `Ok(None)` if a stage
    /// needs a step no larger than the returned bound (`un` is untouched
    /// apart from its ghosts).
    #[allow(clippy::too_many_arguments)]
    fn rk3<E: Equation<M>>(
        &mut self,
        ctx: &StageCtx<'_, E, M>,
        un: &mut DofField<M>,
        t: f64,
        dt: f64,
        positivity: &mut Positivity,
    ) -> Result<Option<f64>> {
        self.diagnostics.reset();
        let mut u1 = std::mem::replace(&mut self.u1, DofField::new(ctx.grid));
        let mut tmp = std::mem::replace(&mut self.tmp, DofField::new(ctx.grid));
        let result = (|| {
            if let Stage::TooLarge(b) = self.forward_euler(ctx, un, &mut u1, t, dt, positivity)? {
                return Ok(Some(b));
            }
            if let Stage::TooLarge(b) = self.forward_euler(ctx, &mut u1, &mut tmp, t + dt, dt, positivity)? {
                return Ok(Some(b));
            }
            tmp.blend(0.25, un, 0.75);
            std::mem::swap(&mut u1, &mut tmp);
            if let Stage::TooLarge(b) = self.forward_euler(ctx, &mut u1, &mut tmp, t + 0.5 * dt, dt, positivity)? {
                return Ok(Some(b));
            }
            un.blend(1.0 / 3.0, &tmp, 2.0 / 3.0);
            Ok(None)
        })();
        self.u1 = u1;
        self.tmp = tmp;
        result
    }
}

fn with_time(e: Error, t: f64) -> Error {
    match e {
        Error::Inadmissible { family, index, detail, .. } => Error::Inadmissible {
            family,
            index,
            time: t,
            detail,
        },
        other => other,
    }
}

/// First-order LLF prediction of point `(i, j)` of `family` from the flux
/// tables of the stage input.
fn low_order_point<const M: usize>(
    op: &Operator<M>,
    family: Family,
    grid: &Grid,
    dt: f64,
    i: isize,
    j: isize,
) -> State<M> {
    let llf = |a: &FluxPoint<M>, b: &FluxPoint<M>| {
        let alpha = a.speed.max(b.speed);
        0.5 * (a.f + b.f) - (0.5 * alpha) * (b.u - a.u)
    };
    let own_x = op.table(family, Axis::X);
    let own_y = op.table(family, Axis::Y);
    let nodes_x = op.table(Family::Node, Axis::X);
    let nodes_y = op.table(Family::Node, Axis::Y);
    let c = own_x.get_ref(i, j);
    let cy = own_y.get_ref(i, j);
    let (west, east, south, north) = match family {
        Family::Node => (
            llf(own_x.get_ref(i - 1, j), c),
            llf(c, own_x.get_ref(i + 1, j)),
            llf(own_y.get_ref(i, j - 1), cy),
            llf(cy, own_y.get_ref(i, j + 1)),
        ),
        Family::FaceX => (
            llf(own_x.get_ref(i - 1, j), c),
            llf(c, own_x.get_ref(i + 1, j)),
            llf(nodes_y.get_ref(i, j), cy),
            llf(cy, nodes_y.get_ref(i, j + 1)),
        ),
        Family::FaceY => (
            llf(nodes_x.get_ref(i, j), c),
            llf(c, nodes_x.get_ref(i + 1, j)),
            llf(own_y.get_ref(i, j - 1), cy),
            llf(cy, own_y.get_ref(i, j + 1)),
        ),
        Family::Avg => unreachable!("cell averages have no point update"),
    };
    c.u - (dt / grid.dx) * (east - west) - (dt / grid.dy) * (north - south)
}

/// Verifies every interior DoF of `dofs` and records density/pressure minima.
fn check_admissible<E: Equation<M>, const M: usize>(
    eq: &E,
    dofs: &DofField<M>,
    t: f64,
    positivity: &mut Positivity,
) -> Result<()> {
    for family in Family::ALL {
        for (j, row) in dofs.family(family).rows().enumerate() {
            for (i, u) in row.iter().enumerate() {
                if !u.is_finite() || !eq.admissible(u, 0.0) {
                    return Err(Error::Inadmissible {
                        family: family.name(),
                        index: (i as isize, j as isize),
                        time: t,
                        detail: eq.describe(u),
                    });
                }
                if let Some((p, _, _)) = eq.sensor_primitives(u) {
                    positivity.record(u.0[0], p);
                }
            }
        }
    }
    Ok(())
}

/// One entry of the residual history.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub step: usize,
    pub t: f64,
    /// `Σ |Ū₀ⁿ⁺¹ - Ū₀ⁿ| Δx Δy / Δt` over the first conserved component.
    pub residual: f64,
}

/// Summary of a completed run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub problem: String,
    pub model: String,
    pub splitting: Splitting,
    pub mesh: (usize, usize),
    pub t_final: f64,
    pub steps: usize,
    pub rejected_steps: usize,
    pub wall_time_s: f64,
    pub cfl: f64,
    pub limiter: LimiterConfig,
    /// ℓ1 errors per component, where an exact solution is known.
    pub l1_errors: Option<Vec<f64>>,
    pub avg_min: Vec<f64>,
    pub avg_max: Vec<f64>,
    /// Range over face and node values together.
    pub point_min: Vec<f64>,
    pub point_max: Vec<f64>,
    #[serde(flatten)]
    pub positivity: Positivity,
    pub residual_history: Vec<ResidualEntry>,
}

/// Drives a problem through time.
pub struct Solver<E: Equation<M>, const M: usize> {
    pub problem: Problem<E, M>,
    pub control: StepControl,
    pub dofs: DofField<M>,
    pub t: f64,
    pub steps: usize,
    pub rejected_steps: usize,
    pub bounds: ScalarBounds,
    pub positivity: Positivity,
    pub residual_history: Vec<ResidualEntry>,
    pub stepper: Stepper<M>,
    /// Safety factor on the bound-preserving step, lowered after rejected
    /// steps and relaxed after accepted ones.
    bp_factor: f64,
    started: Instant,
}

impl<E: Equation<M>, const M: usize> std::fmt::Debug for Solver<E, M> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Solver")
            .field("problem", &self.problem.name)
            .field("t", &self.t)
            .field("steps", &self.steps)
            .field("rejected_steps", &self.rejected_steps)
            .finish_non_exhaustive()
    }
}

impl<E: Equation<M> + Clone, const M: usize> Solver<E, M> {
    pub fn new(problem: Problem<E, M>, control: StepControl) -> Result<Self> {
        control.validate()?;
        problem.limiter.validate()?;
        problem.boundaries.validate()?;
        if !problem.eq.supports(problem.splitting) {
            return Err(Error::Config(format!(
                "splitting {} is not available for {}",
                problem.splitting.name(),
                problem.eq.name()
            )));
        }
        let dofs = init_dofs(&problem)?;
        let bounds = global_bounds(&problem, &dofs);
        let mut positivity = Positivity::default();
        check_admissible(&problem.eq, &dofs, 0.0, &mut positivity)?;
        Ok(Solver {
            stepper: Stepper::new(&problem.grid),
            problem,
            control,
            dofs,
            t: 0.0,
            steps: 0,
            rejected_steps: 0,
            bounds,
            positivity,
            residual_history: Vec::new(),
            bp_factor: 1.0,
            started: Instant::now(),
        })
    }

    fn limited(&self) -> bool {
        let l = &self.problem.limiter;
        l.average || l.point
    }

    /// Advances by one step of at most `t_stop - t`; returns the step taken.
    pub fn step(&mut self, t_stop: f64) -> Result<f64> {
        let (eq, grid) = (&self.problem.eq, &self.problem.grid);
        fill_ghosts(eq, grid, &self.problem.boundaries, &mut self.dofs, self.t);
        let mut dt = compute_dt(
            eq,
            &self.dofs,
            grid,
            &self.control,
            false,
            SpeedScope::WithGhosts,
            self.t,
            t_stop,
        )?;
        let check_dt = self.limited() && self.control.bp_dt;
        if check_dt {
            let bound = self.bp_factor * bp_dt_bound(eq, &self.dofs, grid, SpeedScope::WithGhosts)?;
            if self.t + bound < t_stop {
                dt = dt.min(bound);
            }
        }
        if dt <= 0.0 {
            return Ok(0.0);
        }
        let old = self.dofs.avg.clone();
        let ctx = StageCtx {
            eq: &self.problem.eq,
            grid: &self.problem.grid,
            problem: &self.problem,
            kind: self.problem.splitting,
            cfg: &self.problem.limiter,
            bounds: self.bounds,
            check_dt,
        };
        let mut attempts = 0;
        loop {
            let mut trial = self.dofs.clone();
            let mut positivity = self.positivity;
            match self.stepper.rk3(&ctx, &mut trial, self.t, dt, &mut positivity)? {
                None => {
                    if attempts == 0 {
                        self.bp_factor = (1.01 * self.bp_factor).min(1.0);
                    }
                    self.dofs = trial;
                    self.positivity = positivity;
                    break;
                }
                Some(bound) => {
                    attempts += 1;
                    self.rejected_steps += 1;
                    self.bp_factor = (0.9 * self.bp_factor).max(0.25);
                    if attempts > 30 || !(bound > 0.0) {
                        return Err(Error::NumericalState(format!(
                            "time step collapsed at t = {:.6e} (bound {bound:e})",
                            self.t
                        )));
                    }
                    log::debug!("step {} rejected: dt {dt:e} exceeds stage bound {bound:e}", self.steps);
                    dt = 0.9 * bound;
                }
            }
        }
        self.t = if self.t + dt >= t_stop { t_stop } else { self.t + dt };
        self.steps += 1;

        let mut change = 0.0;
        for (i, j, u) in self.dofs.avg.interior() {
            change += (u.0[0] - old.get(i, j).0[0]).abs();
        }
        self.residual_history.push(ResidualEntry {
            step: self.steps,
            t: self.t,
            residual: change * self.problem.grid.cell_area() / dt,
        });

        if self.control.log_every > 0 && self.steps % self.control.log_every == 0 {
            log::info!(
                "step {:>7}  t = {:.6e}  dt = {:.3e}  min rho = {}  min p = {}",
                self.steps,
                self.t,
                dt,
                fmt_opt(self.positivity.min_density),
                fmt_opt(self.positivity.min_pressure)
            );
        }
        Ok(dt)
    }

    /// Advances to `t_stop` (clamped to the final time).
    pub fn advance_to(&mut self, t_stop: f64) -> Result<()> {
        let t_stop = t_stop.min(self.problem.t_end);
        while self.t < t_stop {
            if self.steps >= self.control.max_steps {
                return Err(Error::NumericalState(format!(
                    "step limit {} reached at t = {:.6e}",
                    self.control.max_steps, self.t
                )));
            }
            self.step(t_stop)?;
        }
        Ok(())
    }

    pub fn run(&mut self) -> Result<RunReport> {
        self.advance_to(self.problem.t_end)?;
        Ok(self.report())
    }

    /// ℓ1 errors against the exact solution at the current time.
    pub fn errors(&self) -> Option<Vec<f64>> {
        let exact = self.problem.exact.as_ref()?;
        Some(error_norms(&self.dofs, &self.problem.grid, exact.as_ref(), self.t).to_vec())
    }

    pub fn report(&self) -> RunReport {
        let (avg_min, avg_max) = self.dofs.range(Family::Avg);
        let (mut pmin, mut pmax) = (State::splat(f64::INFINITY), State::splat(f64::NEG_INFINITY));
        for f in Family::POINTS {
            let (lo, hi) = self.dofs.range(f);
            pmin = pmin.zip_map(lo, f64::min);
            pmax = pmax.zip_map(hi, f64::max);
        }
        RunReport {
            problem: self.problem.name.clone(),
            model: self.problem.eq.name().to_string(),
            splitting: self.problem.splitting,
            mesh: (self.problem.grid.n1, self.problem.grid.n2),
            t_final: self.t,
            steps: self.steps,
            rejected_steps: self.rejected_steps,
            wall_time_s: self.started.elapsed().as_secs_f64(),
            cfl: self.control.cfl,
            limiter: self.problem.limiter,
            l1_errors: self.errors(),
            avg_min: avg_min.0.to_vec(),
            avg_max: avg_max.0.to_vec(),
            point_min: pmin.0.to_vec(),
            point_max: pmax.0.to_vec(),
            positivity: self.positivity,
            residual_history: self.residual_history.clone(),
        }
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".into(), |v| format!("{v:.3e}"))
}
