//! Run configuration files.
//!
//! One `key = value` pair per line; `#` starts a comment. Unknown keys,
//! duplicates, malformed values and constraint violations are reported with
//! the offending line number.
//!
//! ```text
//! problem   = sod2d
//! mesh      = 100x2
//! splitting = sw
//! kappa     = 1
//! ```

use std::collections::HashMap;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::equations::Splitting;
use crate::error::{Error, Result};
use crate::limiting::MpMode;
use crate::problems::{make_problem, AnyProblem, ProblemParams};
use crate::timeloop::StepControl;

/// A validated run configuration. `None` fields fall back to the problem's
/// defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub problem: String,
    pub mesh: Option<(usize, usize)>,
    pub t_end: Option<f64>,
    pub gamma: Option<f64>,
    pub cfl: f64,
    pub splitting: Option<Splitting>,
    pub kappa: Option<f64>,
    pub sensor: Option<bool>,
    pub limit_average: Option<bool>,
    pub limit_point: Option<bool>,
    pub mp_mode: Option<MpMode>,
    pub eps: Option<f64>,
    pub bp_dt: bool,
    pub output_dir: Option<PathBuf>,
    /// Extra snapshot times before the final one.
    pub output_times: Vec<f64>,
    pub dump_theta: bool,
    pub log_every: usize,
    /// The `key = value` pairs as written, for echoing into output headers.
    #[serde(skip)]
    pub echo: Vec<(String, String)>,
}

impl RunConfig {
    /// Defaults for `problem`.
    pub fn new(problem: impl Into<String>) -> Self {
        RunConfig {
            problem: problem.into(),
            mesh: None,
            t_end: None,
            gamma: None,
            cfl: StepControl::default().cfl,
            splitting: None,
            kappa: None,
            sensor: None,
            limit_average: None,
            limit_point: None,
            mp_mode: None,
            eps: None,
            bp_dt: true,
            output_dir: None,
            output_times: Vec::new(),
            dump_theta: false,
            log_every: 0,
            echo: Vec::new(),
        }
    }

    pub fn control(&self) -> StepControl {
        StepControl {
            cfl: self.cfl,
            bp_dt: self.bp_dt,
            log_every: self.log_every,
            ..StepControl::default()
        }
    }

    /// The configured problem with every override applied and checked.
    pub fn build_problem(&self) -> Result<AnyProblem> {
        let params = ProblemParams {
            mesh: self.mesh,
            t_end: self.t_end,
            gamma: self.gamma,
        };
        let mut p = make_problem(&self.problem, &params)?;
        if let Some(kind) = self.splitting {
            p.set_splitting(kind)?;
        }
        let lim = p.limiter_mut();
        if let Some(k) = self.kappa {
            lim.kappa = k;
        }
        if let Some(b) = self.sensor {
            lim.sensor = b;
        }
        if let Some(b) = self.limit_average {
            lim.average = b;
        }
        if let Some(b) = self.limit_point {
            lim.point = b;
        }
        if let Some(m) = self.mp_mode {
            lim.mp_mode = m;
        }
        if let Some(e) = self.eps {
            lim.eps = e;
        }
        lim.validate()?;
        self.control().validate()?;
        for &t in &self.output_times {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("output time {t} must be finite and non-negative")));
            }
        }
        Ok(p)
    }
}

fn parse_value<T: FromStr>(line: usize, key: &str, value: &str, what: &str) -> Result<T> {
    value.parse().map_err(|_| Error::ConfigLine {
        line,
        message: format!("`{key}` expects {what}, got `{value}`"),
    })
}

fn parse_bool(line: usize, key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(Error::ConfigLine {
            line,
            message: format!("`{key}` expects a boolean, got `{value}`"),
        }),
    }
}

fn parse_mesh(line: usize, value: &str) -> Result<(usize, usize)> {
    let bad = || Error::ConfigLine {
        line,
        message: format!("`mesh` expects `N1xN2` with positive counts, got `{value}`"),
    };
    let (a, b) = value.split_once(['x', 'X']).ok_or_else(bad)?;
    let n1: usize = a.trim().parse().map_err(|_| bad())?;
    let n2: usize = b.trim().parse().map_err(|_| bad())?;
    if n1 == 0 || n2 == 0 {
        return Err(bad());
    }
    Ok((n1, n2))
}

const KEYS: &[&str] = &[
    "problem",
    "mesh",
    "t_end",
    "gamma",
    "cfl",
    "splitting",
    "kappa",
    "sensor",
    "limit_average",
    "limit_point",
    "mp_mode",
    "eps",
    "bp_dt",
    "output_dir",
    "output_times",
    "dump_theta",
    "log_every",
];

/// Parses and validates a configuration file.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::ConfigLine {
            line,
            message: format!("expected `key = value`, got `{content}`"),
        })?;
        let (key, value) = (key.trim().to_string(), value.trim().to_string());
        if !KEYS.contains(&key.as_str()) {
            return Err(Error::ConfigLine {
                line,
                message: format!("unknown key `{key}` (known: {})", KEYS.join(", ")),
            });
        }
        if value.is_empty() {
            return Err(Error::ConfigLine {
                line,
                message: format!("`{key}` has no value"),
            });
        }
        if let Some(first) = seen.insert(key.clone(), line) {
            return Err(Error::ConfigLine {
                line,
                message: format!("`{key}` already set on line {first}"),
            });
        }
        pairs.push((line, key, value));
    }

    let problem = pairs
        .iter()
        .find(|p| p.1 == "problem")
        .map(|p| p.2.clone())
        .ok_or_else(|| Error::Config("missing required key `problem`".into()))?;
    let mut cfg = RunConfig::new(problem);
    for (line, key, value) in &pairs {
        let (line, v) = (*line, value.as_str());
        match key.as_str() {
            "problem" => {}
            "mesh" => cfg.mesh = Some(parse_mesh(line, v)?),
            "t_end" => cfg.t_end = Some(parse_value(line, key, v, "a number")?),
            "gamma" => cfg.gamma = Some(parse_value(line, key, v, "a number")?),
            "cfl" => cfg.cfl = parse_value(line, key, v, "a number")?,
            "splitting" => cfg.splitting = Some(parse_value(line, key, v, "one of llf, sw, vh")?),
            "kappa" => cfg.kappa = Some(parse_value(line, key, v, "a number")?),
            "sensor" => cfg.sensor = Some(parse_bool(line, key, v)?),
            "limit_average" => cfg.limit_average = Some(parse_bool(line, key, v)?),
            "limit_point" => cfg.limit_point = Some(parse_bool(line, key, v)?),
            "mp_mode" => cfg.mp_mode = Some(parse_value(line, key, v, "`global` or `local`")?),
            "eps" => cfg.eps = Some(parse_value(line, key, v, "a number")?),
            "bp_dt" => cfg.bp_dt = parse_bool(line, key, v)?,
            "output_dir" => cfg.output_dir = Some(PathBuf::from(v)),
            "output_times" => {
                cfg.output_times = v
                    .split(',')
                    .map(|t| parse_value(line, key, t.trim(), "comma-separated numbers"))
                    .collect::<Result<_>>()?
            }
            "dump_theta" => cfg.dump_theta = parse_bool(line, key, v)?,
            "log_every" => cfg.log_every = parse_value(line, key, v, "a non-negative integer")?,
            _ => unreachable!("keys are checked above"),
        }
        cfg.echo.push((key.clone(), value.clone()));
    }

    // Attach the line of the key most likely at fault to model-level errors.
    if let Err(e) = cfg.build_problem() {
        let culprit = [
            ("splitting", "splitting"),
            ("gamma", "gamma"),
            ("gamma", "adiabatic index"),
            ("mesh", "cell counts"),
            ("t_end", "final time"),
            ("kappa", "kappa"),
            ("cfl", "cfl"),
            ("eps", "positivity floor"),
            ("output_times", "output time"),
            ("problem", "unknown problem"),
        ]
        .iter()
        .find(|(_, needle)| e.to_string().contains(needle))
        .and_then(|(key, _)| seen.get(*key).copied());
        return Err(match (e, culprit) {
            (Error::Config(message) | Error::Unsupported(message), Some(line)) => Error::ConfigLine { line, message },
            (e, _) => e,
        });
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(e: Error) -> usize {
        match e {
            Error::ConfigLine { line, .. } => line,
            other => panic!("expected a line diagnostic, got {other}"),
        }
    }

    #[test]
    fn problem_alone_takes_defaults() {
        let cfg = parse_config("problem = sod2d\n").unwrap();
        assert_eq!(cfg.cfl, 0.25);
        let p = cfg.build_problem().unwrap();
        assert_eq!(p.limiter().kappa, 1.0);
        assert_eq!(p.splitting(), Splitting::Llf);
    }

    #[test]
    fn comments_blank_lines_and_spacing() {
        let text = "# a run\n\nproblem=vortex   # trailing\n  mesh = 32x32\ncfl = 0.2\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.mesh, Some((32, 32)));
        assert_eq!(cfg.cfl, 0.2);
        assert_eq!(cfg.echo.len(), 3);
    }

    #[test]
    fn vh_for_scalar_problem_is_rejected_at_its_line() {
        let e = parse_config("problem = advection\nsplitting = vh\n").unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert_eq!(line_of(e), 2);
    }

    #[test]
    fn large_kappa_for_the_fast_jet_is_accepted() {
        let cfg = parse_config("problem = jet2000\nkappa = 10\n").unwrap();
        assert_eq!(cfg.build_problem().unwrap().limiter().kappa, 10.0);
    }

    #[test]
    fn unknown_key_duplicate_and_type_errors_carry_lines() {
        assert_eq!(line_of(parse_config("problem = sod2d\n\nspeed = 3\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_config("problem = sod2d\ncfl = 0.1\ncfl = 0.2\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_config("problem = sod2d\nmesh = 10by2\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_config("problem = sod2d\ndump_theta = maybe\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_config("problem = sod2d\njust words\n").unwrap_err()), 2);
    }

    #[test]
    fn constraint_violations() {
        assert_eq!(line_of(parse_config("problem = sod2d\ncfl = 1.5\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_config("problem = sod2d\ngamma = 0.9\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_config("mesh = 4x4\nproblem = nothing\n").unwrap_err()), 2);
        assert!(matches!(parse_config("mesh = 4x4\n").unwrap_err(), Error::Config(_)));
    }

    #[test]
    fn output_settings() {
        let cfg = parse_config("problem = advection\noutput_dir = out\noutput_times = 0.5, 1\ndump_theta = yes\n").unwrap();
        assert_eq!(cfg.output_dir, Some(PathBuf::from("out")));
        assert_eq!(cfg.output_times, vec![0.5, 1.0]);
        assert!(cfg.dump_theta);
    }
}
