//! The benchmark catalog.

use std::f64::consts::PI;
use std::sync::Arc;

use super::riemann::{ExactRiemann, Gas1d};
use super::{AnyProblem, Boundaries, Boundary, Problem};
use crate::equations::{Euler, ScalarBounds, ScalarLaw, Splitting};
use crate::error::{Error, Result};
use crate::limiting::{LimiterConfig, MpMode};
use crate::mesh::{DofField, Grid};
use crate::state::State;

/// Names and one-line descriptions of every benchmark.
pub const PROBLEMS: &[(&str, &str)] = &[
    ("advection", "linear advection of a cone and a square, periodic, two periods"),
    ("burgers", "Burgers' equation from a sine wave until shocks form"),
    ("vortex", "isentropic vortex advected over one period"),
    ("sod2d", "Sod shock tube along x on a 100x2 mesh"),
    ("shock_reflection", "oblique shock reflecting off a wall, run to steady state"),
    ("sedov", "Sedov blast wave from a point energy release"),
    ("rp3", "four-shock two-dimensional Riemann problem"),
    ("dmr", "double Mach reflection of a Mach 10 shock"),
    ("jet80", "Mach 80 astrophysical jet"),
    ("jet2000", "Mach 2000 astrophysical jet"),
];

pub fn list_problems() -> impl Iterator<Item = (&'static str, &'static str)> {
    PROBLEMS.iter().copied()
}

/// Overrides of the printed defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ProblemParams {
    pub mesh: Option<(usize, usize)>,
    pub t_end: Option<f64>,
    pub gamma: Option<f64>,
}

struct Setup {
    domain: [f64; 4],
    mesh: (usize, usize),
    t_end: f64,
}

fn grid(setup: &Setup, params: &ProblemParams) -> Result<Grid> {
    let (n1, n2) = params.mesh.unwrap_or(setup.mesh);
    let [x0, x1, y0, y1] = setup.domain;
    Grid::new(x0, x1, y0, y1, n1, n2)
}

fn t_end(setup: &Setup, params: &ProblemParams) -> Result<f64> {
    let t = params.t_end.unwrap_or(setup.t_end);
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Config(format!("final time must be finite and non-negative, got {t}")));
    }
    Ok(t)
}

fn euler(params: &ProblemParams, default: f64) -> Result<Euler> {
    Euler::new(params.gamma.unwrap_or(default))
}

fn scalar_only(name: &str, params: &ProblemParams) -> Result<()> {
    match params.gamma {
        Some(_) => Err(Error::Config(format!("{name} is a scalar problem; gamma does not apply"))),
        None => Ok(()),
    }
}

/// Shifts `v` into `[lo, lo + period)`.
fn wrap(v: f64, lo: f64, period: f64) -> f64 {
    lo + (v - lo).rem_euclid(period)
}

/// Builds benchmark `name` with the printed defaults replaced by `params`.
pub fn make_problem(name: &str, params: &ProblemParams) -> Result<AnyProblem> {
    match name {
        "advection" => advection(params),
        "burgers" => burgers(params),
        "vortex" => vortex(params),
        "sod2d" => sod2d(params),
        "shock_reflection" => shock_reflection(params),
        "sedov" => sedov(params),
        "rp3" => rp3(params),
        "dmr" => dmr(params),
        "jet80" => jet(params, 80),
        "jet2000" => jet(params, 2000),
        _ => Err(Error::Config(format!(
            "unknown problem `{name}` (known: {})",
            PROBLEMS.iter().map(|p| p.0).collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn scalar_problem(
    name: &str,
    eq: ScalarLaw,
    setup: Setup,
    params: &ProblemParams,
    initial: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
) -> Result<Problem<ScalarLaw, 1>> {
    scalar_only(name, params)?;
    Ok(Problem {
        name: name.into(),
        eq,
        grid: grid(&setup, params)?,
        t_end: t_end(&setup, params)?,
        boundaries: Boundaries::periodic(),
        initial: Arc::new(move |x, y| State([initial(x, y)])),
        exact: None,
        limiter: LimiterConfig::default(),
        splitting: Splitting::Llf,
        bounds: None,
        adjust: None,
    })
}

fn cone_and_square(x: f64, y: f64) -> f64 {
    let r = ((x - 0.25).powi(2) + (y - 0.25).powi(2)).sqrt();
    if r < 0.2 {
        1.0 - (5.0 * r).abs()
    } else if (x - 0.75).abs().max((y - 0.75).abs()) < 0.2 {
        1.0
    } else {
        0.0
    }
}

fn advection(params: &ProblemParams) -> Result<AnyProblem> {
    let setup = Setup {
        domain: [0.0, 1.0, 0.0, 1.0],
        mesh: (100, 100),
        t_end: 2.0,
    };
    let mut p = scalar_problem("advection", ScalarLaw::advection(), setup, params, cone_and_square)?;
    p.exact = Some(Arc::new(|x, y, t| {
        State([cone_and_square(wrap(x - t, 0.0, 1.0), wrap(y - t, 0.0, 1.0))])
    }));
    p.bounds = Some(ScalarBounds::new(0.0, 1.0));
    Ok(AnyProblem::Scalar(p))
}

fn burgers(params: &ProblemParams) -> Result<AnyProblem> {
    let setup = Setup {
        domain: [0.0, 1.0, 0.0, 1.0],
        mesh: (100, 100),
        t_end: 0.3,
    };
    let mut p = scalar_problem("burgers", ScalarLaw::Burgers, setup, params, |x, y| {
        0.5 + (2.0 * PI * (x + y)).sin()
    })?;
    p.bounds = Some(ScalarBounds::new(-0.5, 1.5));
    p.limiter.mp_mode = MpMode::Local;
    Ok(AnyProblem::Scalar(p))
}

fn euler_problem(
    name: &str,
    eq: Euler,
    setup: Setup,
    params: &ProblemParams,
    boundaries: Boundaries<4>,
    kappa: f64,
    initial: impl Fn(f64, f64) -> State<4> + Send + Sync + 'static,
) -> Result<Problem<Euler, 4>> {
    boundaries.validate()?;
    Ok(Problem {
        name: name.into(),
        eq,
        grid: grid(&setup, params)?,
        t_end: t_end(&setup, params)?,
        boundaries,
        initial: Arc::new(initial),
        exact: None,
        limiter: LimiterConfig {
            kappa,
            ..LimiterConfig::default()
        },
        splitting: Splitting::Llf,
        bounds: None,
        adjust: None,
    })
}

fn vortex_state(eq: Euler, x: f64, y: f64) -> State<4> {
    let g = eq.gamma;
    let eps = 5.0;
    let k0 = eps / (2.0 * PI) * (0.5 * (1.0 - (x * x + y * y))).exp();
    let t0 = 1.0 - (g - 1.0) / (2.0 * g) * k0 * k0;
    // Radial balance dp/dr = ρ v_θ²/r requires ρ = T0^(1/(γ-1)).
    let rho = t0.powf(1.0 / (g - 1.0));
    eq.state(rho, 1.0 + k0 * y, 1.0 - k0 * x, t0 * rho)
}

fn vortex(params: &ProblemParams) -> Result<AnyProblem> {
    let eq = euler(params, 1.4)?;
    let setup = Setup {
        domain: [-5.0, 5.0, -5.0, 5.0],
        mesh: (64, 64),
        t_end: 10.0,
    };
    let mut p = euler_problem("vortex", eq, setup, params, Boundaries::periodic(), 0.0, move |x, y| {
        vortex_state(eq, x, y)
    })?;
    p.exact = Some(Arc::new(move |x, y, t| {
        vortex_state(eq, wrap(x - t, -5.0, 10.0), wrap(y - t, -5.0, 10.0))
    }));
    Ok(AnyProblem::Euler(p))
}

fn sod2d(params: &ProblemParams) -> Result<AnyProblem> {
    let eq = euler(params, 1.4)?;
    let setup = Setup {
        domain: [0.0, 1.0, 0.0, 1.0],
        mesh: (100, 2),
        t_end: 0.2,
    };
    let left = eq.state(1.0, 0.0, 0.0, 1.0);
    let right = eq.state(0.125, 0.0, 0.0, 0.1);
    let bc = Boundaries {
        left: Boundary::Outflow,
        right: Boundary::Outflow,
        bottom: Boundary::Periodic,
        top: Boundary::Periodic,
    };
    let mut p = euler_problem("sod2d", eq, setup, params, bc, 1.0, move |x, _| if x < 0.5 { left } else { right })?;
    let riemann = ExactRiemann::new(eq.gamma, Gas1d::new(1.0, 0.0, 1.0), Gas1d::new(0.125, 0.0, 0.1))?;
    p.exact = Some(Arc::new(move |x, _, t| {
        if t <= 0.0 {
            return if x < 0.5 { left } else { right };
        }
        let s = riemann.sample((x - 0.5) / t);
        eq.state(s.rho, s.u, 0.0, s.p)
    }));
    Ok(AnyProblem::Euler(p))
}

fn shock_reflection(params: &ProblemParams) -> Result<AnyProblem> {
    let eq = euler(params, 1.4)?;
    let setup = Setup {
        domain: [0.0, 4.0, 0.0, 1.0],
        mesh: (120, 30),
        t_end: 6.0,
    };
    let inflow = eq.state(1.0, 2.9, 0.0, 1.0 / 1.4);
    let top = eq.state(1.69997, 2.61934, -0.50632, 1.52819);
    let bc = Boundaries {
        left: Boundary::Dirichlet(inflow),
        right: Boundary::Outflow,
        bottom: Boundary::Reflective,
        top: Boundary::Dirichlet(top),
    };
    let p = euler_problem("shock_reflection", eq, setup, params, bc, 0.5, move |_, _| inflow)?;
    Ok(AnyProblem::Euler(p))
}

fn sedov_energy(grid: &Grid, dofs: &mut DofField<4>) {
    let (i, j) = ((grid.n1 / 2) as isize, (grid.n2 / 2) as isize);
    let mut u = dofs.avg.get(i, j);
    u.0[3] = 0.979264 / (grid.dx * grid.dy);
    dofs.avg.set(i, j, u);
}

fn sedov(params: &ProblemParams) -> Result<AnyProblem> {
    let eq = euler(params, 1.4)?;
    let setup = Setup {
        domain: [-1.1, 1.1, -1.1, 1.1],
        mesh: (101, 101),
        t_end: 1.0,
    };
    let ambient = State([1.0, 0.0, 0.0, 1e-12]);
    let mut p = euler_problem("sedov", eq, setup, params, Boundaries::uniform(Boundary::Outflow), 0.5, move |_, _| {
        ambient
    })?;
    p.adjust = Some(sedov_energy);
    Ok(AnyProblem::Euler(p))
}

fn rp3(params: &ProblemParams) -> Result<AnyProblem> {
    let eq = euler(params, 1.4)?;
    let setup = Setup {
        domain: [0.0, 1.0, 0.0, 1.0],
        mesh: (200, 200),
        t_end: 0.8,
    };
    let ne = eq.state(1.5, 0.0, 0.0, 1.5);
    let nw = eq.state(0.5323, 1.206, 0.0, 0.3);
    let sw = eq.state(0.138, 1.206, 1.206, 0.029);
    let se = eq.state(0.5323, 0.0, 1.206, 0.3);
    let p = euler_problem("rp3", eq, setup, params, Boundaries::uniform(Boundary::Outflow), 0.5, move |x, y| {
        match (x > 0.8, y > 0.8) {
            (true, true) => ne,
            (false, true) => nw,
            (false, false) => sw,
            (true, false) => se,
        }
    })?;
    Ok(AnyProblem::Euler(p))
}

fn dmr(params: &ProblemParams) -> Result<AnyProblem> {
    let eq = euler(params, 1.4)?;
    let setup = Setup {
        domain: [0.0, 3.0, 0.0, 1.0],
        mesh: (240, 80),
        t_end: 0.2,
    };
    let pre = eq.state(1.4, 0.0, 0.0, 1.0);
    let post = eq.state(8.0, 8.25 * (PI / 6.0).cos(), -8.25 * (PI / 6.0).sin(), 116.5);
    let shock = move |x: f64, y: f64, t: f64| if x < 1.0 / 6.0 + (y + 20.0 * t) / 3f64.sqrt() { post } else { pre };
    let bc = Boundaries {
        left: Boundary::Dirichlet(post),
        right: Boundary::Outflow,
        bottom: Boundary::Split {
            at: 1.0 / 6.0,
            before: Box::new(Boundary::Dirichlet(post)),
            after: Box::new(Boundary::Reflective),
        },
        top: Boundary::Prescribed(Arc::new(shock)),
    };
    let p = euler_problem("dmr", eq, setup, params, bc, 1.0, move |x, y| shock(x, y, 0.0))?;
    Ok(AnyProblem::Euler(p))
}

fn jet(params: &ProblemParams, mach: u32) -> Result<AnyProblem> {
    let eq = euler(params, 5.0 / 3.0)?;
    let (setup, speed, kappa) = if mach == 80 {
        let setup = Setup {
            domain: [0.0, 2.0, -0.5, 0.5],
            mesh: (400, 200),
            t_end: 0.07,
        };
        (setup, 30.0, 1.0)
    } else {
        let setup = Setup {
            domain: [0.0, 1.0, -0.25, 0.25],
            mesh: (400, 200),
            t_end: 0.001,
        };
        (setup, 800.0, 10.0)
    };
    let ambient = eq.state(0.5, 0.0, 0.0, 0.4127);
    let inflow = eq.state(5.0, speed, 0.0, 0.4127);
    let bc = Boundaries {
        left: Boundary::Prescribed(Arc::new(move |_, y, _| if y.abs() < 0.05 { inflow } else { ambient })),
        ..Boundaries::uniform(Boundary::Outflow)
    };
    let name = if mach == 80 { "jet80" } else { "jet2000" };
    let p = euler_problem(name, eq, setup, params, bc, kappa, move |_, _| ambient)?;
    Ok(AnyProblem::Euler(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::Equation;

    fn euler_problem(name: &str) -> Problem<Euler, 4> {
        match make_problem(name, &ProblemParams::default()).unwrap() {
            AnyProblem::Euler(p) => p,
            AnyProblem::Scalar(_) => panic!("{name} should be an Euler problem"),
        }
    }

    #[test]
    fn every_listed_problem_builds() {
        for (name, _) in list_problems() {
            let p = make_problem(name, &ProblemParams::default()).unwrap();
            assert_eq!(p.name(), name);
        }
    }

    #[test]
    fn unknown_name_is_a_config_error() {
        let e = make_problem("nope", &ProblemParams::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn sod_defaults() {
        let p = euler_problem("sod2d");
        assert_eq!((p.grid.n1, p.grid.n2), (100, 2));
        assert_eq!(p.t_end, 0.2);
        let f = &p.initial;
        assert_eq!(f(0.25, 0.5), p.eq.state(1.0, 0.0, 0.0, 1.0));
        assert_eq!(f(0.75, 0.5), p.eq.state(0.125, 0.0, 0.0, 0.1));
    }

    #[test]
    fn rp3_third_quadrant() {
        let p = euler_problem("rp3");
        let prim = p.eq.cons_to_prim(&(p.initial)(0.1, 0.1)).unwrap();
        assert!((prim.rho - 0.138).abs() < 1e-15);
        assert!((prim.v1 - 1.206).abs() < 1e-14 && (prim.v2 - 1.206).abs() < 1e-14);
        assert!((prim.p - 0.029).abs() < 1e-15);
        assert_eq!(p.t_end, 0.8);
    }

    #[test]
    fn vortex_center_follows_printed_formula() {
        let p = euler_problem("vortex");
        let k0 = 5.0 / (2.0 * PI) * 0.5f64.exp();
        let t0 = 1.0 - 0.4 / 2.8 * k0 * k0;
        let prim = p.eq.cons_to_prim(&(p.initial)(0.0, 0.0)).unwrap();
        assert!((prim.rho - t0.powf(1.0 / 0.4)).abs() < 1e-14);
        assert!((prim.p - t0 * prim.rho).abs() < 1e-14);
    }

    #[test]
    fn dmr_top_is_post_shock_left_of_locus() {
        let p = euler_problem("dmr");
        let Boundary::Prescribed(top) = &p.boundaries.top else { panic!("dmr top is prescribed") };
        let post = p.eq.state(8.0, 8.25 * (PI / 6.0).cos(), -8.25 * (PI / 6.0).sin(), 116.5);
        assert_eq!(top(1.0 / 6.0 + 1.0 / 3f64.sqrt() - 1e-3, 1.0, 0.0), post);
        assert_eq!(top(1.0 / 6.0 + 1.0 / 3f64.sqrt() + 1e-3, 1.0, 0.0), p.eq.state(1.4, 0.0, 0.0, 1.0));
    }

    #[test]
    fn sedov_center_cell_energy() {
        let p = euler_problem("sedov");
        let dofs = super::super::init_dofs(&p).unwrap();
        let e = dofs.avg.get(50, 50).0[3];
        assert_eq!(e, 0.979264 / (p.grid.dx * p.grid.dy));
        assert!((dofs.avg.get(49, 50).0[3] - 1e-12).abs() < 1e-27);
        assert!(p.eq.admissible(&dofs.avg.get(0, 0), 0.0));
    }

    #[test]
    fn gamma_override_reaches_the_model() {
        let p = make_problem(
            "vortex",
            &ProblemParams {
                gamma: Some(5.0 / 3.0),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(p.gamma(), Some(5.0 / 3.0));
        assert!(make_problem(
            "advection",
            &ProblemParams {
                gamma: Some(1.4),
                ..Default::default()
            }
        )
        .is_err());
    }

    #[test]
    fn periodic_exact_solutions_return_after_one_period() {
        let AnyProblem::Scalar(adv) = make_problem("advection", &ProblemParams::default()).unwrap() else {
            unreachable!()
        };
        let exact = adv.exact.unwrap();
        for &(x, y) in &[(0.3, 0.2), (0.71, 0.9), (0.05, 0.5)] {
            assert!((exact(x, y, 1.0).0[0] - cone_and_square(x, y)).abs() < 1e-14);
        }
    }
}
