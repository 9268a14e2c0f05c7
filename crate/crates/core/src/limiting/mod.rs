//! Bound-preserving limiters.
//!
//! Cell averages use convex limiting: the high-order Simpson flux of every
//! face is blended with a first-order local Lax-Friedrichs flux so that the
//! forward-Euler update is a convex combination of admissible states. Point
//! values use a scaling limiter towards a first-order LLF prediction.

mod average;
mod point;

pub use average::{
    blend_coefficient, compression_indicator, intermediate_state, jameson_indicator, limit_density,
    limit_pressure, limit_scalar_flux, local_bounds, loworder_flux, shock_sensor, AverageLimiter, FaceLow,
    SensorField,
};
pub use point::{
    limit_point_euler, limit_point_scalar, llf_flux, llf_point_facex, llf_point_facey, llf_point_node,
    llf_point_update,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default positivity floor for density and pressure.
pub const DEFAULT_EPS: f64 = 1e-13;

/// Guard for divisions in blending coefficients.
pub(crate) const TINY: f64 = 1e-300;

/// Source of the scalar bounds enforced on cell averages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MpMode {
    /// `[m0, M0]` of the initial data everywhere.
    Global,
    /// Envelope of the cell average and the neighbouring intermediate states.
    Local,
}

impl std::str::FromStr for MpMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "global" => Ok(MpMode::Global),
            "local" => Ok(MpMode::Local),
            other => Err(Error::Config(format!("unknown mp_mode '{other}' (expected global or local)"))),
        }
    }
}

/// Limiter switches and parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimiterConfig {
    /// Convex limiting of the cell-average fluxes.
    pub average: bool,
    /// Scaling limiter on point values.
    pub point: bool,
    pub mp_mode: MpMode,
    /// Positivity floor.
    pub eps: f64,
    /// Shock-sensor blending of the average fluxes (models with a pressure).
    pub sensor: bool,
    /// Shock-sensor strength. At 0 the sensor evaluates to exactly one.
    pub kappa: f64,
}

impl Default for LimiterConfig {
    fn default() -> Self {
        LimiterConfig {
            average: true,
            point: true,
            mp_mode: MpMode::Global,
            eps: DEFAULT_EPS,
            sensor: true,
            kappa: 0.0,
        }
    }
}

impl LimiterConfig {
    /// Everything off: the plain high-order scheme.
    pub fn none() -> Self {
        LimiterConfig {
            average: false,
            point: false,
            sensor: false,
            ..Default::default()
        }
    }

    pub fn enabled(&self) -> bool {
        self.average || self.point
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) {
            return Err(Error::Config(format!("positivity floor must be positive, got {}", self.eps)));
        }
        if !(self.kappa >= 0.0) || !self.kappa.is_finite() {
            return Err(Error::Config(format!("kappa must be finite and >= 0, got {}", self.kappa)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation_and_modes() {
        assert!(LimiterConfig::default().validate().is_ok());
        assert!(!LimiterConfig::none().enabled());
        let bad = LimiterConfig { kappa: -1.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = LimiterConfig { eps: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        assert_eq!("Local".parse::<MpMode>().unwrap(), MpMode::Local);
        assert!("strict".parse::<MpMode>().is_err());
    }
}
