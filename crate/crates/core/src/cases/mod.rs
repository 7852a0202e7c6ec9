//! Per-term evaluators for the sign certificate of `I_3`, and the report
//! that aggregates them.
//!
//! The certificate splits `I_3` into three groups:
//!
//! * terms evaluated outright (Case 1 and Case 3 Parts A to D),
//! * Part E, which only enters through its sign,
//! * upper bounds for the remaining mixed-sign regions, obtained by keeping
//!   the negative lobe exactly and replacing `F13 + F14` with the dominating
//!   linear extension `F̃13`.
//!
//! Every term is computed by nested quadrature in float mode, or enclosed
//! rigorously in interval mode.

mod certificates;
mod closed_forms;
mod full;
mod integrands;
mod report;
mod terms;

pub use certificates::{dominance_certificate, part_e_certificate, Certificate};
pub use closed_forms::{catalog, verify_closed_form, ClosedFormCheck, ClosedFormEntry, PART_A_EXACT};
pub use full::{decomposition_total, eval_region, full_integral, FullMethod};
pub use integrands::Integrand;
pub use report::{total_report, CaseResult, ReportRow, VerificationReport};
pub use terms::{eval_term, Group, Term};

pub(crate) use report::sig6;

use serde::Serialize;
use thiserror::Error;

use crate::quadrature::{QuadratureConfig, QuadratureError};
use crate::regions::RegionError;
use crate::xi::XiError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CaseError {
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown term or case `{0}`")]
    UnknownTerm(String),
}

impl From<XiError> for CaseError {
    fn from(e: XiError) -> Self {
        CaseError::Quadrature(QuadratureError::Integrand(e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    Float,
    Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    ExactClosedForm,
    Quadrature,
    UpperBound,
    SignArgument,
}

impl CaseKind {
    pub fn name(self) -> &'static str {
        match self {
            CaseKind::ExactClosedForm => "exact_closed_form",
            CaseKind::Quadrature => "quadrature",
            CaseKind::UpperBound => "upper_bound",
            CaseKind::SignArgument => "sign_argument",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseConfig {
    pub quadrature: QuadratureConfig,
    pub precision: Precision,
    /// Allowed distance from a printed value.
    pub tolerance: f64,
    /// Attach the Monte Carlo oracle and the decomposition total to reports.
    pub oracle: bool,
}

impl Default for CaseConfig {
    fn default() -> Self {
        CaseConfig {
            quadrature: QuadratureConfig::default(),
            precision: Precision::Float,
            tolerance: 5e-4,
            oracle: true,
        }
    }
}
