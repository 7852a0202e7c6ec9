use std::fmt::Write as _;
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use super::full::{decomposition_total, full_integral, FullMethod};
use super::terms::{eval_term, Group, Term};
use super::{CaseConfig, CaseError, CaseKind, Precision};
use crate::interval::Interval;
use crate::quadrature::{IntegralEstimate, Method};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseResult {
    pub case_id: Term,
    pub kind: CaseKind,
    pub value: IntegralEstimate,
    /// Rigorous enclosure, in interval mode and for sign arguments.
    pub enclosure: Option<Interval>,
    pub paper_value: Option<f64>,
    pub discrepancy: Option<f64>,
    pub passed: bool,
    /// The same quantity by a second route: quadrature for the exact Part A,
    /// the closed form in interval mode, and the quadrature value of Part E.
    pub cross_check: Option<f64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CaseResult {
    pub(crate) fn new(
        term: Term,
        value: IntegralEstimate,
        enclosure: Option<Interval>,
        cross_check: Option<f64>,
        tolerance: f64,
        elapsed: Duration,
    ) -> Self {
        let paper_value = term.paper_value();
        let discrepancy = paper_value.map(|p| (value.value - p).abs());
        let passed = match term.kind() {
            CaseKind::SignArgument => enclosure.is_some_and(|iv| iv.hi() <= 0.0),
            _ => discrepancy.is_none_or(|d| d <= tolerance),
        };
        CaseResult {
            case_id: term,
            kind: term.kind(),
            value,
            enclosure,
            paper_value,
            discrepancy,
            passed,
            cross_check,
            elapsed,
        }
    }

    pub fn row(&self) -> ReportRow {
        ReportRow {
            case_id: self.case_id.name().to_string(),
            kind: self.kind.name(),
            value: self.value.value,
            error: self.value.error,
            paper_value: self.paper_value,
            discrepancy: self.discrepancy,
            passed: self.passed,
        }
    }
}

/// Flat record used by the JSON and CSV outputs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub case_id: String,
    pub kind: &'static str,
    pub value: f64,
    pub error: f64,
    pub paper_value: Option<f64>,
    pub discrepancy: Option<f64>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub precision: Precision,
    pub tolerance: f64,
    pub cases: Vec<CaseResult>,
    /// Case 1 and Case 3 Parts A to D.
    pub closed_form_sum: IntegralEstimate,
    /// The six bound terms.
    pub bound_sum: IntegralEstimate,
    /// `closed_form_sum + bound_sum`; Part E adds at most 0. In interval mode
    /// this is the upper end of the summed enclosures.
    pub total_upper_bound: f64,
    pub sign_conclusion: bool,
    /// Every printed value is matched within `tolerance`.
    pub values_match: bool,
    /// Monte Carlo estimate of `I_3`.
    pub oracle_estimate: Option<IntegralEstimate>,
    /// Sum of the fifteen region integrals.
    pub decomposition_total: Option<IntegralEstimate>,
    /// Oracle and decomposition agree within four combined standard errors.
    pub oracle_consistent: Option<bool>,
}

fn sum(results: &[&CaseResult], precision: Precision) -> (IntegralEstimate, Option<Interval>) {
    match precision {
        Precision::Float => {
            let est = IntegralEstimate {
                value: results.iter().map(|r| r.value.value).sum(),
                error: results.iter().map(|r| r.value.error).sum(),
                evaluations: results.iter().map(|r| r.value.evaluations).sum(),
                method: Method::Quadrature,
                converged: results.iter().all(|r| r.value.converged),
            };
            (est, None)
        }
        Precision::Interval => {
            let iv = results
                .iter()
                .map(|r| r.enclosure.expect("interval results carry enclosures"))
                .fold(Interval::point(0.0), |a, b| a + b);
            let evals = results.iter().map(|r| r.value.evaluations).sum();
            (IntegralEstimate::from_interval(iv, evals), Some(iv))
        }
    }
}

/// Evaluates every term and aggregates the certificate.
pub fn total_report(cfg: &CaseConfig) -> Result<VerificationReport, CaseError> {
    let cases = Term::ALL
        .par_iter()
        .map(|&t| eval_term(t, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let pick = |g: Group| cases.iter().filter(|r| r.case_id.group() == g).collect::<Vec<_>>();
    let (closed_form_sum, cf_iv) = sum(&pick(Group::ClosedForm), cfg.precision);
    let (bound_sum, b_iv) = sum(&pick(Group::Bound), cfg.precision);
    let total_upper_bound = match (cf_iv, b_iv) {
        (Some(a), Some(b)) => (a + b).hi(),
        _ => closed_form_sum.value + bound_sum.value,
    };
    let (oracle_estimate, decomposition, oracle_consistent) = if cfg.oracle {
        let mc = full_integral(3, FullMethod::MonteCarlo, &cfg.quadrature)?;
        let dec = decomposition_total(&cfg.quadrature)?;
        let combined = (mc.error * mc.error + dec.error * dec.error).sqrt();
        let ok = (mc.value - dec.value).abs() <= 4.0 * combined && mc.value < 0.0 && dec.value < 0.0;
        (Some(mc), Some(dec), Some(ok))
    } else {
        (None, None, None)
    };
    Ok(VerificationReport {
        precision: cfg.precision,
        tolerance: cfg.tolerance,
        values_match: cases.iter().all(|r| r.passed),
        cases,
        closed_form_sum,
        bound_sum,
        total_upper_bound,
        sign_conclusion: total_upper_bound < 0.0,
        oracle_estimate,
        decomposition_total: decomposition,
        oracle_consistent,
    })
}

/// Six significant digits.
pub(crate) fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        format!("{:.*}", (5 - mag).max(0) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}

fn opt6(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_else(|| "-".into())
}

impl VerificationReport {
    /// 0 when the sign is certified and all printed values match, 1 when
    /// the sign is not certified, 2 when only value matching fails.
    pub fn exit_code(&self) -> i32 {
        if !self.sign_conclusion {
            1
        } else if !self.values_match {
            2
        } else {
            0
        }
    }

    pub fn rows(&self) -> Vec<ReportRow> {
        self.cases.iter().map(CaseResult::row).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.rows() {
            w.serialize(row).expect("row serializes");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let interval = self.precision == Precision::Interval;
        let _ = writeln!(
            out,
            "{:<8} {:<18} {:>12} {:>11} {:>10} {:>11}  {}{}",
            "case",
            "kind",
            "value",
            "error",
            "paper",
            "discrepancy",
            "status",
            if interval { "  enclosure" } else { "" }
        );
        for r in &self.cases {
            let enc = match (interval, r.enclosure) {
                (true, Some(iv)) => format!("  [{}, {}]", sig6(iv.lo()), sig6(iv.hi())),
                _ => String::new(),
            };
            let _ = writeln!(
                out,
                "{:<8} {:<18} {:>12} {:>11} {:>10} {:>11}  {}{}",
                r.case_id.name(),
                r.kind.name(),
                sig6(r.value.value),
                sig6(r.value.error),
                opt6(r.paper_value),
                opt6(r.discrepancy),
                if r.passed { "ok" } else { "MISMATCH" },
                enc
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "closed-form sum    {}", sig6(self.closed_form_sum.value));
        let _ = writeln!(out, "Part E             ≤ 0");
        let _ = writeln!(out, "bound sum          {}", sig6(self.bound_sum.value));
        let _ = writeln!(out, "total upper bound  {}", sig6(self.total_upper_bound));
        if let Some(mc) = self.oracle_estimate {
            let _ = writeln!(out, "Monte Carlo I_3    {} ± {}", sig6(mc.value), sig6(mc.error));
        }
        if let Some(d) = self.decomposition_total {
            let _ = writeln!(out, "region sum I_3     {} ± {}", sig6(d.value), sig6(d.error));
        }
        if let Some(ok) = self.oracle_consistent {
            let _ = writeln!(out, "oracle consistent  {}", if ok { "yes" } else { "NO" });
        }
        let _ = writeln!(
            out,
            "sign certified     {}",
            if self.sign_conclusion { "yes, I_3 < 0" } else { "NO" }
        );
        let mismatches = self.cases.iter().filter(|r| !r.passed).count();
        let _ = writeln!(
            out,
            "printed values     {}",
            if mismatches == 0 {
                format!("all within {}", self.tolerance)
            } else {
                format!("{mismatches} outside {}", self.tolerance)
            }
        );
        out
    }
}
