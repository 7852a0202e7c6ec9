//! Numerical integration engines: adaptive Gauss–Kronrod in one and two
//! dimensions, Monte Carlo on the half sphere, and rigorous interval
//! enclosures over angular domains.

mod adaptive;
mod enclosure;
mod montecarlo;
mod region;

pub use adaptive::{adaptive_1d, adaptive_1d_points, Tolerance};
pub use enclosure::{enclose_domain, Enclosable, EnclosureGrid, Slopes};
pub use montecarlo::{half_sphere_area, mc_halfsphere};
pub use region::integrate_domain;

use serde::Serialize;
use thiserror::Error;

use crate::piecewise::PiecewiseError;
use crate::xi::XiError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("integrand is not finite at {x}")]
    NonFinite { x: f64 },
    #[error("integration bounds are reversed: a = {a}, b = {b}")]
    ReversedBounds { a: f64, b: f64 },
    #[error(transparent)]
    Integrand(#[from] XiError),
}

impl From<PiecewiseError> for QuadratureError {
    fn from(e: PiecewiseError) -> Self {
        QuadratureError::Integrand(XiError::Piecewise(e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Quadrature,
    MonteCarlo,
    Interval,
    ClosedForm,
}

/// An integral value with its error.
///
/// For quadrature `error` is the estimated absolute error, for Monte Carlo
/// the standard error, and for interval results the enclosure is
/// `[value - error, value + error]` with outward rounding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntegralEstimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: u64,
    pub method: Method,
    pub converged: bool,
}

impl IntegralEstimate {
    pub fn from_interval(iv: crate::Interval, evaluations: u64) -> Self {
        let value = 0.5 * (iv.lo() + iv.hi());
        let error = (iv.hi() - value).max(value - iv.lo()).next_up();
        IntegralEstimate {
            value,
            error,
            evaluations,
            method: Method::Interval,
            converged: true,
        }
    }

    pub fn lower(&self) -> f64 {
        self.value - self.error
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error
    }

    pub fn scaled(mut self, k: f64) -> Self {
        self.value *= k;
        self.error *= k.abs();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub mc_samples: u64,
    pub seed: u64,
    /// Interval cells per radian along each angle.
    pub cells_per_radian: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 2000,
            mc_samples: 1_000_000,
            seed: 20_240_611,
            cells_per_radian: 480.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), QuadratureError> {
        let bad = |m: &str| Err(QuadratureError::InvalidConfig(m.to_string()));
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return bad("abs_tol must be positive");
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return bad("rel_tol must be positive");
        }
        if self.max_subdivisions == 0 {
            return bad("max_subdivisions must be positive");
        }
        if self.mc_samples < 2 {
            return bad("mc_samples must be at least 2");
        }
        if !(self.cells_per_radian >= 1.0 && self.cells_per_radian.is_finite()) {
            return bad("cells_per_radian must be at least 1");
        }
        Ok(())
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance {
            abs: self.abs_tol,
            rel: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        QuadratureConfig::default().validate().unwrap();
    }

    #[test]
    fn bad_configs_are_rejected() {
        let mut c = QuadratureConfig::default();
        c.abs_tol = 0.0;
        assert!(c.validate().is_err());
        let mut c = QuadratureConfig::default();
        c.rel_tol = -1.0;
        assert!(c.validate().is_err());
        let mut c = QuadratureConfig::default();
        c.mc_samples = 0;
        assert!(c.validate().is_err());
    }
}
