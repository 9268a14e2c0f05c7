//! CSV and JSON writers.
//!
//! Every CSV starts with `# key = value` metadata lines, then one header row,
//! then data rows. Numbers are printed with 17 significant digits so a file
//! round-trips to the same `f64` values. See the repository README for the
//! column layout of each file.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::equations::Equation;
use crate::error::{Error, Result};
use crate::mesh::{Array2, DofField, Family, Grid};
use crate::timeloop::{Diagnostics, RunReport};

/// 17 significant digits.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Metadata lines written at the top of every CSV.
#[derive(Clone, Debug, Default)]
pub struct Header {
    pub lines: Vec<(String, String)>,
}

impl Header {
    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.lines.push((key.to_string(), value.to_string()));
        self
    }

    /// Common metadata of a snapshot.
    pub fn for_snapshot(grid: &Grid, problem: &str, model: &str, time: f64) -> Self {
        let mut h = Header::default();
        h.push("problem", problem)
            .push("model", model)
            .push("mesh", format!("{}x{}", grid.n1, grid.n2))
            .push("domain", format!("[{}, {}] x [{}, {}]", grid.x0, grid.x1, grid.y0, grid.y1))
            .push("time", fmt_num(time));
        h
    }
}

struct CsvFile {
    path: PathBuf,
    out: BufWriter<File>,
}

impl CsvFile {
    fn create(path: PathBuf, header: &Header, columns: &[String]) -> Result<Self> {
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        let mut f = CsvFile {
            path,
            out: BufWriter::new(file),
        };
        for (k, v) in &header.lines {
            f.line(format_args!("# {k} = {v}"))?;
        }
        f.line(format_args!("{}", columns.join(",")))?;
        Ok(f)
    }

    fn line(&mut self, args: std::fmt::Arguments) -> Result<()> {
        writeln!(self.out, "{args}").map_err(|e| Error::io(&self.path, e))
    }

    fn row(&mut self, labels: &[String], values: &[f64]) -> Result<()> {
        let mut s = labels.join(",");
        for v in values {
            if !s.is_empty() {
                s.push(',');
            }
            s.push_str(&fmt_num(*v));
        }
        self.line(format_args!("{s}"))
    }

    fn finish(mut self) -> Result<PathBuf> {
        self.out.flush().map_err(|e| Error::io(&self.path, e))?;
        Ok(self.path)
    }
}

fn columns(prefix: &[&str], rest: Vec<String>) -> Vec<String> {
    prefix.iter().map(|s| s.to_string()).chain(rest).collect()
}

/// Family and index of interleaved position `(ix, iy)`,
/// `0 <= ix <= 2 N1`, `0 <= iy <= 2 N2`.
pub fn interleaved_dof(ix: usize, iy: usize) -> (Family, isize, isize) {
    let (i, j) = ((ix / 2) as isize, (iy / 2) as isize);
    match (ix % 2, iy % 2) {
        (0, 0) => (Family::Node, i, j),
        (0, _) => (Family::FaceX, i, j),
        (_, 0) => (Family::FaceY, i, j),
        _ => (Family::Avg, i, j),
    }
}

/// Writes the interleaved file `{stem}.csv` and one file per family,
/// `{stem}_{family}.csv`. Returns the paths written.
pub fn write_solution<E: Equation<M>, const M: usize>(
    dir: &Path,
    stem: &str,
    eq: &E,
    grid: &Grid,
    dofs: &DofField<M>,
    header: &Header,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let vars = eq.output_columns();
    let mut values = Vec::with_capacity(vars.len());
    let mut written = Vec::new();

    let cols = columns(&["ix", "iy", "family", "x", "y"], vars.clone());
    let mut f = CsvFile::create(dir.join(format!("{stem}.csv")), header, &cols)?;
    for iy in 0..=2 * grid.n2 {
        for ix in 0..=2 * grid.n1 {
            let (fam, i, j) = interleaved_dof(ix, iy);
            let (x, y) = grid.location(fam, i, j);
            values.clear();
            values.extend_from_slice(&[x, y]);
            eq.output_values(dofs.family(fam).get_ref(i, j), &mut values);
            f.row(&[ix.to_string(), iy.to_string(), fam.name().to_string()], &values)?;
        }
    }
    written.push(f.finish()?);

    let cols = columns(&["i", "j", "x", "y"], vars);
    for fam in Family::ALL {
        let mut f = CsvFile::create(dir.join(format!("{stem}_{}.csv", fam.name())), header, &cols)?;
        for (i, j, u) in dofs.family(fam).interior() {
            let (x, y) = grid.location(fam, i, j);
            values.clear();
            values.extend_from_slice(&[x, y]);
            eq.output_values(&u, &mut values);
            f.row(&[i.to_string(), j.to_string()], &values)?;
        }
        written.push(f.finish()?);
    }
    Ok(written)
}

fn write_face_theta(path: PathBuf, header: &Header, grid: &Grid, fam: Family, theta: &Array2<f64>, sensor: &Array2<f64>) -> Result<PathBuf> {
    let cols = columns(&["i", "j", "x", "y", "theta", "sensor"], Vec::new());
    let mut f = CsvFile::create(path, header, &cols)?;
    for (i, j, t) in theta.interior() {
        let (x, y) = grid.location(fam, i, j);
        f.row(&[i.to_string(), j.to_string()], &[x, y, t, sensor.get(i, j)])?;
    }
    f.finish()
}

/// Writes the blending coefficients of the last step:
/// `{stem}_theta_facex.csv` and `{stem}_theta_facey.csv` (average-flux
/// coefficient and shock sensor per face) and `{stem}_theta_points.csv`.
pub fn write_theta(dir: &Path, stem: &str, grid: &Grid, diag: &Diagnostics, header: &Header) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = vec![
        write_face_theta(dir.join(format!("{stem}_theta_facex.csv")), header, grid, Family::FaceX, &diag.theta_x, &diag.sensor_x)?,
        write_face_theta(dir.join(format!("{stem}_theta_facey.csv")), header, grid, Family::FaceY, &diag.theta_y, &diag.sensor_y)?,
    ];
    let cols = columns(&["family", "i", "j", "x", "y", "theta"], Vec::new());
    let mut f = CsvFile::create(dir.join(format!("{stem}_theta_points.csv")), header, &cols)?;
    for fam in Family::POINTS {
        let arr = diag.theta_point(fam).expect("point family");
        for (i, j, t) in arr.interior() {
            let (x, y) = grid.location(fam, i, j);
            f.row(&[fam.name().to_string(), i.to_string(), j.to_string()], &[x, y, t])?;
        }
    }
    written.push(f.finish()?);
    Ok(written)
}

/// Writes `report.json` and `residual.csv`.
pub fn write_report(dir: &Path, report: &RunReport) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let json_path = dir.join("report.json");
    let json = serde_json::to_string_pretty(report).map_err(|e| Error::io(&json_path, e.into()))?;
    fs::write(&json_path, json + "\n").map_err(|e| Error::io(&json_path, e))?;

    let mut h = Header::default();
    h.push("problem", &report.problem);
    let cols = columns(&["step", "t", "residual"], Vec::new());
    let mut f = CsvFile::create(dir.join("residual.csv"), &h, &cols)?;
    for r in &report.residual_history {
        f.row(&[r.step.to_string()], &[r.t, r.residual])?;
    }
    Ok(vec![json_path, f.finish()?])
}

/// Reads the numeric part of a CSV written by this module: metadata lines
/// are skipped, the header row is returned separately, and non-numeric
/// cells (family labels) become `NaN`.
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::NumericalState(format!("{} has no header row", path.display())))?
        .split(',')
        .map(String::from)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap_or(f64::NAN)).collect())
        .collect();
    Ok((header, rows))
}
