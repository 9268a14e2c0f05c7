use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the solver and its drivers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("configuration error at line {line}: {message}")]
    ConfigLine { line: usize, message: String },

    #[error("numerical state error: {0}")]
    NumericalState(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A DoF left the admissible set. `family` names the DoF family
    /// (`avg`, `facex`, `facey`, `node`, `center`), `index` its (i, j).
    #[error("inadmissible {family} state at ({}, {}) t = {time:.6e}: {detail}", index.0, index.1)]
    Inadmissible {
        family: &'static str,
        index: (isize, isize),
        time: f64,
        detail: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::ConfigLine { .. } | Error::Unsupported(_) => 2,
            Error::NumericalState(_) | Error::Inadmissible { .. } => 3,
            Error::Io { .. } => 4,
        }
    }

    pub fn is_numerical(&self) -> bool {
        self.exit_code() == 3
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
