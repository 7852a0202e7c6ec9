use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Serialize, Serializer};

use super::certificates::{dominance_certificate, part_e_certificate};
use super::closed_forms::PART_A_EXACT;
use super::integrands::Integrand;
use super::report::CaseResult;
use super::{CaseConfig, CaseError, CaseKind, Precision};
use crate::interval::Interval;
use crate::quadrature::{enclose_domain, integrate_domain, EnclosureGrid, IntegralEstimate, Method};
use crate::regions::{case_region, ArcEndpoint, CaseId, Domain, Formula, PhiArc, ThetaBound};

/// One line of the certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Case1,
    C3A,
    C3B,
    C3C,
    C3D,
    /// Parts E1 and E2 together.
    C3E,
    /// Negative lobe over Cases 2 and 4.
    Neg24,
    /// `F̃13` bound for the positive part of Cases 2 and 4.
    Pos24,
    FNeg,
    FPos,
    GNeg,
    GPos,
}

/// How a term enters the final sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    ClosedForm,
    SignArgument,
    Bound,
}

impl Term {
    pub const ALL: [Term; 12] = [
        Term::Case1,
        Term::C3A,
        Term::C3B,
        Term::C3C,
        Term::C3D,
        Term::C3E,
        Term::Neg24,
        Term::Pos24,
        Term::FNeg,
        Term::FPos,
        Term::GNeg,
        Term::GPos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Term::Case1 => "Case1",
            Term::C3A => "C3A",
            Term::C3B => "C3B",
            Term::C3C => "C3C",
            Term::C3D => "C3D",
            Term::C3E => "C3E",
            Term::Neg24 => "neg24",
            Term::Pos24 => "pos24",
            Term::FNeg => "F-neg",
            Term::FPos => "F-pos",
            Term::GNeg => "G-neg",
            Term::GPos => "G-pos",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Term::Case1 => "Case 1, θ ∈ [0, π/4]",
            Term::C3A => "Case 3 Part A",
            Term::C3B => "Case 3 Part B",
            Term::C3C => "Case 3 Part C",
            Term::C3D => "Case 3 Part D (oriented)",
            Term::C3E => "Case 3 Part E, nonpositive",
            Term::Neg24 => "h1+h2 over Cases 2 and 4",
            Term::Pos24 => "F̃13 bound over Cases 2 and 4",
            Term::FNeg => "h1 over Part F",
            Term::FPos => "F̃13 bound over Part F, tents dropped",
            Term::GNeg => "h1+h2 over Part G",
            Term::GPos => "F̃13 bound over Part G",
        }
    }

    pub fn kind(self) -> CaseKind {
        match self {
            Term::C3A => CaseKind::ExactClosedForm,
            Term::Case1 | Term::C3B | Term::C3C | Term::C3D | Term::Neg24 => CaseKind::Quadrature,
            Term::C3E => CaseKind::SignArgument,
            Term::Pos24 | Term::FNeg | Term::FPos | Term::GNeg | Term::GPos => CaseKind::UpperBound,
        }
    }

    pub fn group(self) -> Group {
        match self {
            Term::Case1 | Term::C3A | Term::C3B | Term::C3C | Term::C3D => Group::ClosedForm,
            Term::C3E => Group::SignArgument,
            _ => Group::Bound,
        }
    }

    /// The published value, where there is one.
    pub fn paper_value(self) -> Option<f64> {
        match self {
            Term::Case1 => Some(0.1252),
            Term::C3A => Some(-0.0146),
            Term::C3B => Some(-0.0655),
            Term::C3C => Some(-0.0139),
            Term::C3D => Some(-0.0634),
            Term::C3E => None,
            Term::Neg24 => Some(-0.0607),
            Term::Pos24 => Some(0.08718),
            Term::FNeg => Some(-0.026),
            Term::FPos => Some(0.0064),
            Term::GNeg => Some(-0.0694),
            Term::GPos => Some(0.0139),
        }
    }

    /// Float-mode integrands and the domains they are integrated over.
    fn float_parts(self) -> Vec<(Domain, Inner)> {
        let region = |id: CaseId| {
            let r = case_region(id);
            (r.domain, Inner::Formula(r.formula))
        };
        let full_turn = PhiArc::new(ArcEndpoint::pi(0, 1), ArcEndpoint::pi(2, 1));
        let quarter = PhiArc::new(ArcEndpoint::pi(-1, 4), ArcEndpoint::pi(1, 4));
        match self {
            Term::Case1 => vec![region(CaseId::Case1)],
            Term::C3A => vec![region(CaseId::C3A)],
            Term::C3B => vec![region(CaseId::C3B)],
            Term::C3C => vec![region(CaseId::C3C)],
            Term::C3D => vec![region(CaseId::C3D)],
            Term::C3E => vec![region(CaseId::C3E1), region(CaseId::C3E2)],
            Term::Neg24 => vec![(
                Domain::rectangle(QUARTER_PI, ThetaBound::Theta3, full_turn, 1),
                Inner::Integrand(Integrand::NegPart),
            )],
            Term::Pos24 => vec![(
                Domain::rectangle(QUARTER_PI, ThetaBound::Theta3, full_turn, 1),
                Inner::Integrand(Integrand::TildeWithF),
            )],
            Term::FNeg => vec![(Domain::rectangle(F_FROM, F_TO, quarter, 4), Inner::Integrand(Integrand::H1))],
            Term::FPos => vec![(Domain::rectangle(F_FROM, F_TO, quarter, 4), Inner::Integrand(Integrand::TildeNoF))],
            Term::GNeg => vec![(Domain::rectangle(G_FROM, G_TO, quarter, 4), Inner::Integrand(Integrand::NegPart))],
            Term::GPos => vec![(Domain::rectangle(G_FROM, G_TO, quarter, 4), Inner::Integrand(Integrand::TildeWithF))],
        }
    }

    /// Interval-mode integrand over a symmetry-reduced rectangle, and the
    /// number of copies of the rectangle.
    ///
    /// Within each region the tabulated formula equals `ξ3`, which depends
    /// on `φ` only through `|cos φ|` and `|sin φ|`, so `[0, π/4]` stands for
    /// eight copies. The `F̃13` bound over Cases 2 and 4 is only used with
    /// the reflection `φ ↦ -φ`.
    fn interval_part(self) -> (ThetaBound, ThetaBound, Integrand, PhiArc, f64) {
        let eighth = PhiArc::new(ArcEndpoint::pi(0, 1), ArcEndpoint::pi(1, 4));
        let quarter = PhiArc::new(ArcEndpoint::pi(0, 1), ArcEndpoint::pi(1, 2));
        let from_region = |id: CaseId| {
            let d = case_region(id).domain;
            (d.theta_from, d.theta_to, Integrand::Xi3, eighth, 8.0)
        };
        match self {
            Term::Case1 => from_region(CaseId::Case1),
            Term::C3A => from_region(CaseId::C3A),
            Term::C3B => from_region(CaseId::C3B),
            Term::C3C => from_region(CaseId::C3C),
            Term::C3D => from_region(CaseId::C3D),
            Term::C3E => {
                let d = case_region(CaseId::C3E1).domain;
                (d.theta_from, d.theta_to, Integrand::Xi3, eighth, 8.0)
            }
            Term::Neg24 => (QUARTER_PI, ThetaBound::Theta3, Integrand::NegPart, eighth, 8.0),
            Term::Pos24 => (QUARTER_PI, ThetaBound::Theta3, Integrand::TildeWithF, quarter, 4.0),
            Term::FNeg => (F_FROM, F_TO, Integrand::H1, eighth, 8.0),
            Term::FPos => (F_FROM, F_TO, Integrand::TildeNoF, eighth, 8.0),
            Term::GNeg => (G_FROM, G_TO, Integrand::NegPart, eighth, 8.0),
            Term::GPos => (G_FROM, G_TO, Integrand::TildeWithF, eighth, 8.0),
        }
    }
}

const QUARTER_PI: ThetaBound = ThetaBound::PiFraction { num: 1, den: 4 };
const F_FROM: ThetaBound = ThetaBound::acot(2, 4);
const F_TO: ThetaBound = ThetaBound::acot_sqrt2(2, 4);
const G_FROM: ThetaBound = ThetaBound::acot(3, 4);
const G_TO: ThetaBound = ThetaBound::acot_sqrt2(3, 4);

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for Term {
    type Err = CaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        Term::ALL
            .into_iter()
            .find(|t| {
                let name: String = t.name().chars().filter(|c| c.is_ascii_alphanumeric()).collect();
                name.to_ascii_lowercase() == key
            })
            .ok_or_else(|| CaseError::UnknownTerm(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug)]
enum Inner {
    Formula(Formula),
    Integrand(Integrand),
}

impl Inner {
    fn eval(self, theta: f64, phi: f64) -> Result<f64, crate::xi::XiError> {
        match self {
            Inner::Formula(f) => f.eval(&crate::xi::Frame::new(theta, phi)?),
            Inner::Integrand(i) => i.eval(theta, phi),
        }
    }
}

fn float_value(term: Term, cfg: &CaseConfig) -> Result<IntegralEstimate, CaseError> {
    let tol = cfg.quadrature.tolerance();
    let mut total: Option<IntegralEstimate> = None;
    for (domain, inner) in term.float_parts() {
        let r = integrate_domain(&domain, |t, p| Ok(inner.eval(t, p)?), tol)?;
        total = Some(match total {
            None => r,
            Some(acc) => IntegralEstimate {
                value: acc.value + r.value,
                error: acc.error + r.error,
                evaluations: acc.evaluations + r.evaluations,
                converged: acc.converged && r.converged,
                ..acc
            },
        });
    }
    Ok(total.expect("every term has at least one part"))
}

fn interval_value(term: Term, cfg: &CaseConfig) -> Result<(IntegralEstimate, Interval), CaseError> {
    let (from, to, integrand, arc, copies) = term.interval_part();
    let domain = Domain::rectangle(from, to, arc, 1);
    let grid = EnclosureGrid {
        cells_per_radian: cfg.quadrature.cells_per_radian,
    };
    let r = enclose_domain(&integrand, &domain, grid)?;
    let iv = Interval::point(copies) * Interval::new(r.lower().next_down(), r.upper().next_up());
    Ok((IntegralEstimate::from_interval(iv, r.evaluations), iv))
}

/// Evaluates one term of the certificate.
///
/// Upper-bound terms built on `F̃13` and the Part E sign argument first
/// check their certificates and fail if either does not hold.
pub fn eval_term(term: Term, cfg: &CaseConfig) -> Result<CaseResult, CaseError> {
    cfg.quadrature.validate()?;
    let start = Instant::now();
    if matches!(term, Term::Pos24 | Term::FPos | Term::GPos) {
        dominance_certificate().require()?;
    }
    if term == Term::C3E {
        part_e_certificate().require()?;
    }
    let (mut value, mut enclosure) = match cfg.precision {
        Precision::Float => (float_value(term, cfg)?, None),
        Precision::Interval => {
            let (v, iv) = interval_value(term, cfg)?;
            (v, Some(iv))
        }
    };
    let mut cross_check = None;
    if term == Term::C3A && cfg.precision == Precision::Float {
        cross_check = Some(value.value);
        value = IntegralEstimate {
            value: PART_A_EXACT,
            error: 4.0 * f64::EPSILON * PART_A_EXACT.abs(),
            evaluations: 0,
            method: Method::ClosedForm,
            converged: true,
        };
    } else if term == Term::C3A {
        cross_check = Some(PART_A_EXACT);
    }
    if term == Term::C3E {
        // Only the sign enters the certificate: the contribution lies in
        // [lo, 0].
        cross_check = Some(value.value);
        let lo = match enclosure {
            Some(iv) => iv.lo(),
            None => value.lower(),
        }
        .min(0.0);
        let iv = Interval::new(lo, 0.0);
        enclosure = Some(iv);
        value = IntegralEstimate {
            method: value.method,
            converged: value.converged,
            ..IntegralEstimate::from_interval(iv, value.evaluations)
        };
    }
    Ok(CaseResult::new(term, value, enclosure, cross_check, cfg.tolerance, start.elapsed()))
}
