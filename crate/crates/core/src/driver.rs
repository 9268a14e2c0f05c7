//! Running configured problems end to end.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::RunConfig;
use crate::equations::Equation;
use crate::error::{Error, Result};
use crate::output::{fmt_num, write_report, write_solution, write_theta, Header};
use crate::problems::{AnyProblem, Problem};
use crate::timeloop::{RunReport, Solver};

#[derive(Debug)]
pub struct RunOutcome {
    pub report: RunReport,
    /// Every file written, in order.
    pub files: Vec<PathBuf>,
}

/// Runs `cfg`, writing snapshots and the report when an output directory is
/// configured.
pub fn run_config(cfg: &RunConfig) -> Result<RunOutcome> {
    match cfg.build_problem()? {
        AnyProblem::Scalar(p) => run_problem(p, cfg),
        AnyProblem::Euler(p) => run_problem(p, cfg),
    }
}

fn header<E: Equation<M> + Clone, const M: usize>(solver: &Solver<E, M>, cfg: &RunConfig) -> Header {
    let p = &solver.problem;
    let mut h = Header::for_snapshot(&p.grid, &p.name, p.eq.name(), solver.t);
    h.push("splitting", p.splitting.name())
        .push("steps", solver.steps)
        .push("cfl", fmt_num(solver.control.cfl))
        .push("kappa", fmt_num(p.limiter.kappa));
    for (k, v) in &cfg.echo {
        h.push(&format!("config.{k}"), v);
    }
    h
}

fn snapshot<E: Equation<M> + Clone, const M: usize>(solver: &Solver<E, M>, cfg: &RunConfig, dir: &Path, stem: &str) -> Result<Vec<PathBuf>> {
    let h = header(solver, cfg);
    let p = &solver.problem;
    let mut files = write_solution(dir, stem, &p.eq, &p.grid, &solver.dofs, &h)?;
    if cfg.dump_theta {
        files.extend(write_theta(dir, stem, &p.grid, &solver.stepper.diagnostics, &h)?);
    }
    Ok(files)
}

/// Runs an already built problem with the settings of `cfg`.
pub fn run_problem<E: Equation<M> + Clone, const M: usize>(problem: Problem<E, M>, cfg: &RunConfig) -> Result<RunOutcome> {
    let mut solver = Solver::new(problem, cfg.control())?;
    let t_end = solver.problem.t_end;
    let mut times: Vec<f64> = cfg.output_times.iter().copied().filter(|&t| t < t_end).collect();
    times.sort_by(f64::total_cmp);
    times.dedup();

    let mut files = Vec::new();
    for (k, &t) in times.iter().enumerate() {
        solver.advance_to(t)?;
        if let Some(dir) = &cfg.output_dir {
            files.extend(snapshot(&solver, cfg, dir, &format!("snapshot_{k:03}"))?);
        }
    }
    let report = solver.run()?;
    if let Some(dir) = &cfg.output_dir {
        files.extend(snapshot(&solver, cfg, dir, "final")?);
        files.extend(write_report(dir, &report)?);
    }
    Ok(RunOutcome { report, files })
}

/// One mesh of a convergence study.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub mesh: (usize, usize),
    pub h: f64,
    /// ℓ1 error of each conserved component.
    pub l1: Vec<f64>,
    /// Observed order against the previous row; absent on the first row and
    /// whenever the two rows cannot be compared (same mesh or zero error).
    pub order: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceStudy {
    pub problem: String,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceStudy {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }
}

/// Observed orders between two error vectors at spacings `h0 > h1`.
pub fn observed_order(e0: &[f64], h0: f64, e1: &[f64], h1: f64) -> Option<Vec<f64>> {
    if !(h0 != h1) || e0.iter().chain(e1).any(|&e| !(e > 0.0)) {
        return None;
    }
    Some(e0.iter().zip(e1).map(|(a, b)| (a / b).ln() / (h0 / h1).ln()).collect())
}

/// Runs `cfg` on each mesh and measures ℓ1 errors against the exact solution.
pub fn convergence_study(cfg: &RunConfig, meshes: &[(usize, usize)]) -> Result<ConvergenceStudy> {
    if meshes.is_empty() {
        return Err(Error::Config("convergence study needs at least one mesh".into()));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &mesh in meshes {
        let mut c = cfg.clone();
        c.mesh = Some(mesh);
        c.output_dir = None;
        c.output_times.clear();
        let problem = c.build_problem()?;
        if !problem.has_exact() {
            return Err(Error::Config(format!("{} has no exact solution to converge against", problem.name())));
        }
        let h = problem.grid().dx;
        let report = run_config(&c)?.report;
        let l1 = report.l1_errors.expect("exact solution is present");
        log::info!("{}x{}: l1 = {:?}", mesh.0, mesh.1, l1);
        let order = rows.last().and_then(|prev| observed_order(&prev.l1, prev.h, &l1, h));
        rows.push(ConvergenceRow { mesh, h, l1, order });
    }
    Ok(ConvergenceStudy {
        problem: cfg.problem.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_of_exact_power_law() {
        let o = observed_order(&[8e-3, 1.0], 0.2, &[1e-3, 0.25], 0.1).unwrap();
        assert!((o[0] - 3.0).abs() < 1e-12 && (o[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn identical_or_exact_runs_have_no_order() {
        assert!(observed_order(&[1e-3], 0.1, &[1e-3], 0.1).is_none());
        assert!(observed_order(&[1e-3], 0.2, &[0.0], 0.1).is_none());
    }

    #[test]
    fn repeated_mesh_gives_empty_orders() {
        let mut cfg = RunConfig::new("advection");
        cfg.t_end = Some(0.05);
        let s = convergence_study(&cfg, &[(16, 16), (16, 16)]).unwrap();
        assert_eq!(s.rows.len(), 2);
        assert!(s.rows.iter().all(|r| r.order.is_none()));
        assert_eq!(s.rows[0].l1, s.rows[1].l1);
    }

    #[test]
    fn problems_without_exact_solution_are_rejected() {
        let e = convergence_study(&RunConfig::new("sedov"), &[(8, 8)]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn run_writes_snapshots_and_report() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = RunConfig::new("advection");
        cfg.mesh = Some((8, 8));
        cfg.t_end = Some(0.1);
        cfg.output_times = vec![0.05, 0.0, 5.0];
        cfg.dump_theta = true;
        cfg.output_dir = Some(dir.path().to_path_buf());
        let out = run_config(&cfg).unwrap();
        // Two snapshots of 5 + 3 files, then report.json and residual.csv.
        assert_eq!(out.files.len(), 2 * 8 + 8 + 2);
        assert!(out.files.iter().all(|f| f.exists()));
        let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
        assert_eq!(json["problem"], "advection");
        assert_eq!(json["mesh"], serde_json::json!([8, 8]));
        assert!((json["t_final"].as_f64().unwrap() - 0.1).abs() < 1e-15);
    }
}
