//! Third-order active flux finite-volume solver on Cartesian meshes.

pub mod config;
pub mod driver;
pub mod equations;
pub mod error;
pub mod limiting;
pub mod mesh;
pub mod output;
pub mod problems;
pub mod scheme;
pub mod state;
pub mod timeloop;

pub use equations::{Equation, Euler, Primitive, ScalarLaw, Splitting};
pub use error::{Error, Result};
pub use mesh::{Array2, DofField, Family, Grid};
pub use state::{Axis, State};
pub use config::{parse_config, RunConfig};
pub use driver::{convergence_study, run_config, ConvergenceStudy, RunOutcome};
pub use timeloop::{RunReport, Solver, StepControl};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/dofs.md")]
    mod dofs {}
    #[doc = include_str!("../../../book/src/point-update.md")]
    mod point_update {}
    #[doc = include_str!("../../../book/src/average-update.md")]
    mod average_update {}
    #[doc = include_str!("../../../book/src/limiting.md")]
    mod limiting {}
    #[doc = include_str!("../../../book/src/time-stepping.md")]
    mod time_stepping {}
    #[doc = include_str!("../../../book/src/problems.md")]
    mod problems {}
    #[doc = include_str!("../../../book/src/output.md")]
    mod output {}
}
