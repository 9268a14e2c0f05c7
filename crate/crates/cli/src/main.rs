use std::path::PathBuf;
use std::process::ExitCode;

use activeflux::problems::list_problems;
use activeflux::{convergence_study, parse_config, run_config, Error, Result, RunConfig, Splitting};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "activeflux", version, about = "Active flux benchmark driver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configured problem.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `output_dir` in the file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure l1 errors and observed orders over a sequence of meshes.
    Converge {
        #[arg(long)]
        problem: String,
        /// Comma-separated mesh sizes; `N` means NxN, `N1xN2` is also accepted.
        #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
        meshes: Vec<String>,
        #[arg(long)]
        splitting: Option<Splitting>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        cfl: Option<f64>,
        /// Disables both limiters.
        #[arg(long)]
        no_limit: bool,
        /// Writes `convergence.json` here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the benchmark catalogue.
    ListProblems,
}

fn parse_mesh(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Config(format!("bad mesh `{s}`: expected N or N1xN2"));
    let parts: Vec<&str> = s.trim().split(['x', 'X']).collect();
    let nums: Vec<usize> = parts.iter().map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
    match nums[..] {
        [n] if n > 0 => Ok((n, n)),
        [a, b] if a > 0 && b > 0 => Ok((a, b)),
        _ => Err(bad()),
    }
}

fn run(config: PathBuf, out: Option<PathBuf>) -> Result<()> {
    let text = std::fs::read_to_string(&config).map_err(|e| Error::Io { path: config.clone(), source: e })?;
    let mut cfg = parse_config(&text)?;
    if out.is_some() {
        cfg.output_dir = out;
    }
    let outcome = run_config(&cfg)?;
    let r = &outcome.report;
    println!(
        "{} {}x{} {}: t = {:.6e} after {} steps ({} rejected) in {:.2}s",
        r.problem,
        r.mesh.0,
        r.mesh.1,
        r.splitting.name(),
        r.t_final,
        r.steps,
        r.rejected_steps,
        r.wall_time_s
    );
    println!("average range {:?} .. {:?}", r.avg_min, r.avg_max);
    if let (Some(rho), Some(p)) = (r.positivity.min_density, r.positivity.min_pressure) {
        println!("min density {rho:.6e}, min pressure {p:.6e}");
    }
    if let Some(e) = &r.l1_errors {
        println!("l1 errors {e:?}");
    }
    if let Some(dir) = &cfg.output_dir {
        println!("wrote {} files to {}", outcome.files.len(), dir.display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn converge(
    problem: String,
    meshes: Vec<String>,
    splitting: Option<Splitting>,
    t_end: Option<f64>,
    cfl: Option<f64>,
    no_limit: bool,
    out: Option<PathBuf>,
) -> Result<()> {
    let meshes: Vec<_> = meshes.iter().map(|m| parse_mesh(m)).collect::<Result<_>>()?;
    let mut cfg = RunConfig::new(problem);
    cfg.splitting = splitting;
    cfg.t_end = t_end;
    if let Some(c) = cfl {
        cfg.cfl = c;
    }
    if no_limit {
        cfg.limit_average = Some(false);
        cfg.limit_point = Some(false);
    }
    let study = convergence_study(&cfg, &meshes)?;
    println!("{:>11} {:>14} {:>8}", "mesh", "l1[0]", "order");
    for row in &study.rows {
        let order = row.order.as_ref().map_or("-".to_string(), |o| format!("{:.3}", o[0]));
        println!("{:>11} {:>14.6e} {:>8}", format!("{}x{}", row.mesh.0, row.mesh.1), row.l1[0], order);
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(&dir).map_err(|e| Error::Io { path: dir.clone(), source: e })?;
        let path = dir.join("convergence.json");
        let json = study.to_json();
        std::fs::write(&path, json).map_err(|e| Error::Io { path, source: e })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, out } => run(config, out),
        Command::Converge {
            problem,
            meshes,
            splitting,
            t_end,
            cfl,
            no_limit,
            out,
        } => converge(problem, meshes, splitting, t_end, cfl, no_limit, out),
        Command::ListProblems => {
            for (name, description) in list_problems() {
                println!("{name:<18} {description}");
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
