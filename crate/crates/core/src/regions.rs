//! The angular decomposition of the upper half sphere.
//!
//! A region is a range of `θ` together with arcs of `φ` whose endpoints are
//! explicit functions of `θ`. Regions marked with factor 4 describe one
//! quarter turn and stand for all four rotations `φ + kπ/2`, which is valid
//! because `ξ3` is invariant under `φ ↦ φ + π/2` (it swaps `|ω2|` and `|ω3|`).
//!
//! The Case 3 `θ` ranges are kept exactly as tabulated. Part D is tabulated
//! from `cot⁻¹(1/√2)` up to `cot⁻¹(3/4)`, which runs backwards; it is treated
//! as an oriented integral. Part G as tabulated overlaps Case 4 on
//! `tan θ ∈ [4/3, √2]`, and the oriented Part D cancels that overlap exactly,
//! so the table is a partition in the signed sense.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::xi::{angles_to_direction, Frame, XiError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegionError {
    #[error("unknown case id `{0}`")]
    UnknownCase(String),
    #[error("θ = {theta} lies outside [{lo}, {hi}]")]
    OutOfRange { theta: f64, lo: f64, hi: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    Case1,
    Case2,
    C3A,
    C3B,
    C3C,
    C3D,
    C3E1,
    C3E2,
    C3F1,
    C3F2,
    C3G1,
    C3G2,
    #[serde(rename = "C4A'")]
    C4APrime,
    #[serde(rename = "C4B'1")]
    C4BPrime1,
    #[serde(rename = "C4B'2")]
    C4BPrime2,
}

impl CaseId {
    pub const ALL: [CaseId; 15] = [
        CaseId::Case1,
        CaseId::Case2,
        CaseId::C3A,
        CaseId::C3B,
        CaseId::C3C,
        CaseId::C3D,
        CaseId::C3E1,
        CaseId::C3E2,
        CaseId::C3F1,
        CaseId::C3F2,
        CaseId::C3G1,
        CaseId::C3G2,
        CaseId::C4APrime,
        CaseId::C4BPrime1,
        CaseId::C4BPrime2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::Case1 => "Case1",
            CaseId::Case2 => "Case2",
            CaseId::C3A => "C3A",
            CaseId::C3B => "C3B",
            CaseId::C3C => "C3C",
            CaseId::C3D => "C3D",
            CaseId::C3E1 => "C3E1",
            CaseId::C3E2 => "C3E2",
            CaseId::C3F1 => "C3F1",
            CaseId::C3F2 => "C3F2",
            CaseId::C3G1 => "C3G1",
            CaseId::C3G2 => "C3G2",
            CaseId::C4APrime => "C4A'",
            CaseId::C4BPrime1 => "C4B'1",
            CaseId::C4BPrime2 => "C4B'2",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = RegionError;

    /// Accepts the display names and the prime-free spellings `C4A`, `C4B1`,
    /// `C4B2`, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_uppercase().replace('\'', "");
        CaseId::ALL
            .into_iter()
            .find(|id| id.name().to_ascii_uppercase().replace('\'', "") == key)
            .ok_or_else(|| RegionError::UnknownCase(s.to_string()))
    }
}

/// Which of the four cases of the decomposition a region belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Case1,
    Case2,
    Case3,
    Case4,
}

impl Family {
    /// The `θ` range on which the family's description is valid.
    pub fn natural_range(self) -> (f64, f64) {
        let t3 = ThetaBound::Theta3.value::<f64>();
        match self {
            Family::Case1 => (0.0, FRAC_PI_4),
            Family::Case2 | Family::Case4 => (FRAC_PI_4, t3),
            Family::Case3 => (t3, FRAC_PI_2),
        }
    }
}

/// Closed family of `θ` endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ThetaBound {
    /// `π · num / den`.
    PiFraction { num: i64, den: i64 },
    /// `cos⁻¹(1/√3)`, where the three components can tie.
    Theta3,
    /// `cot⁻¹(num / (den · √2^[sqrt2]))`.
    ArcCot { num: i64, den: i64, sqrt2: bool },
}

impl ThetaBound {
    pub const fn acot(num: i64, den: i64) -> Self {
        ThetaBound::ArcCot {
            num,
            den,
            sqrt2: false,
        }
    }

    pub const fn acot_sqrt2(num: i64, den: i64) -> Self {
        ThetaBound::ArcCot {
            num,
            den,
            sqrt2: true,
        }
    }

    pub fn value<S: Scalar>(self) -> S {
        match self {
            ThetaBound::PiFraction { num, den } => S::pi() * S::ratio(num, den),
            ThetaBound::Theta3 => S::from_f64(2.0).sqrt().atan(),
            ThetaBound::ArcCot { num, den, sqrt2 } => {
                let mut x = S::ratio(den, num);
                if sqrt2 {
                    x = x * S::from_f64(2.0).sqrt();
                }
                x.atan()
            }
        }
    }

    pub fn expr(self) -> String {
        match self {
            ThetaBound::PiFraction { num: 0, .. } => "0".into(),
            ThetaBound::PiFraction { num, den: 1 } => format!("{num}π"),
            ThetaBound::PiFraction { num: 1, den } => format!("π/{den}"),
            ThetaBound::PiFraction { num, den } => format!("{num}π/{den}"),
            ThetaBound::Theta3 => "cos⁻¹(1/√3)".into(),
            ThetaBound::ArcCot { num, den, sqrt2 } => {
                let d = match (den, sqrt2) {
                    (1, false) => String::new(),
                    (1, true) => "/√2".into(),
                    (d, false) => format!("/{d}"),
                    (d, true) => format!("/({d}√2)"),
                };
                format!("cot⁻¹({num}{d})")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InverseTrig {
    Acos,
    Asin,
}

/// Closed family of `φ` endpoints: `qπ/2 ± inv(k cot θ)` or a multiple of `π`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ArcEndpoint {
    /// `π · num / den`.
    Const { num: i64, den: i64 },
    /// `quarter_turns · π/2 + sign · func(k_num/k_den · cot θ)`.
    Inverse {
        func: InverseTrig,
        k_num: i64,
        k_den: i64,
        quarter_turns: i64,
        negate: bool,
    },
}

impl ArcEndpoint {
    pub const fn pi(num: i64, den: i64) -> Self {
        ArcEndpoint::Const { num, den }
    }

    pub const fn acos(k_num: i64, k_den: i64) -> Self {
        ArcEndpoint::Inverse {
            func: InverseTrig::Acos,
            k_num,
            k_den,
            quarter_turns: 0,
            negate: false,
        }
    }

    pub const fn neg_acos(k_num: i64, k_den: i64) -> Self {
        ArcEndpoint::Inverse {
            func: InverseTrig::Acos,
            k_num,
            k_den,
            quarter_turns: 0,
            negate: true,
        }
    }

    pub const fn asin(k_num: i64, k_den: i64) -> Self {
        ArcEndpoint::Inverse {
            func: InverseTrig::Asin,
            k_num,
            k_den,
            quarter_turns: 0,
            negate: false,
        }
    }

    pub fn rotated(self, quarter_turns: i64) -> Self {
        match self {
            ArcEndpoint::Const { num, den } => {
                ArcEndpoint::Const {
                    num: num * 2 + quarter_turns * den,
                    den: den * 2,
                }
            }
            ArcEndpoint::Inverse {
                func,
                k_num,
                k_den,
                quarter_turns: q,
                negate,
            } => ArcEndpoint::Inverse {
                func,
                k_num,
                k_den,
                quarter_turns: q + quarter_turns,
                negate,
            },
        }
    }

    /// Value at `θ`. The argument `k cot θ` is clamped to `[-1, 1]`, which
    /// only matters at the `θ` endpoints of a region.
    pub fn value<S: Scalar>(self, theta: S) -> S {
        match self {
            ArcEndpoint::Const { num, den } => S::pi() * S::ratio(num, den),
            ArcEndpoint::Inverse {
                func,
                k_num,
                k_den,
                quarter_turns,
                negate,
            } => {
                let arg = S::ratio(k_num, k_den) * theta.cos() / theta.sin();
                let arg = arg.min(S::one()).max(-S::one());
                let v = match func {
                    InverseTrig::Acos => arg.acos(),
                    InverseTrig::Asin => arg.asin(),
                };
                let v = if negate { -v } else { v };
                S::pi() * S::ratio(quarter_turns, 2) + v
            }
        }
    }

    pub fn expr(self) -> String {
        match self {
            ArcEndpoint::Const { num, den } => ThetaBound::PiFraction { num, den }.expr(),
            ArcEndpoint::Inverse {
                func,
                k_num,
                k_den,
                quarter_turns,
                negate,
            } => {
                let k = match (k_num, k_den) {
                    (1, 1) => String::new(),
                    (n, 1) => format!("{n}"),
                    (n, d) => format!("({n}/{d})"),
                };
                let f = match func {
                    InverseTrig::Acos => "cos⁻¹",
                    InverseTrig::Asin => "sin⁻¹",
                };
                let sign = if negate { "-" } else { "" };
                let body = format!("{sign}{f}({k}cot θ)");
                match quarter_turns {
                    0 => body,
                    q => format!("{q}π/2 + {body}"),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiArc {
    pub lower: ArcEndpoint,
    pub upper: ArcEndpoint,
}

impl PhiArc {
    pub const fn new(lower: ArcEndpoint, upper: ArcEndpoint) -> Self {
        PhiArc { lower, upper }
    }

    pub fn bounds<S: Scalar>(&self, theta: S) -> (S, S) {
        (self.lower.value(theta), self.upper.value(theta))
    }
}

/// A `θ` range (possibly reversed) with `φ` arcs, repeated `factor` times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub theta_from: ThetaBound,
    pub theta_to: ThetaBound,
    pub arcs: Vec<PhiArc>,
    /// 1 for a full turn of `φ`, 4 for a quarter turn repeated by rotation.
    pub factor: u32,
}

impl Domain {
    pub fn rectangle(theta_from: ThetaBound, theta_to: ThetaBound, phi: PhiArc, factor: u32) -> Self {
        Domain {
            theta_from,
            theta_to,
            arcs: vec![phi],
            factor,
        }
    }

    pub fn theta_range(&self) -> (f64, f64) {
        (self.theta_from.value(), self.theta_to.value())
    }

    /// +1 for increasing `θ` bounds, -1 for the reversed Part D.
    pub fn orientation(&self) -> i32 {
        let (a, b) = self.theta_range();
        if b >= a {
            1
        } else {
            -1
        }
    }

    /// Number of copies of the point counted by the domain, including the
    /// orientation sign; 0 when outside.
    pub fn signed_count(&self, theta: f64, phi: f64) -> i32 {
        let (a, b) = self.theta_range();
        if theta < a.min(b) || theta > a.max(b) {
            return 0;
        }
        let turns = if self.factor == 4 { 4 } else { 1 };
        let mut hits = 0;
        for k in 0..turns {
            let psi = wrap(phi - k as f64 * FRAC_PI_2);
            for arc in &self.arcs {
                let (lo, hi) = arc.bounds(theta);
                if self.factor == 1 {
                    let p = phi.rem_euclid(2.0 * PI);
                    if lo <= p && p <= hi {
                        hits += 1;
                    }
                } else if lo <= psi && psi <= hi {
                    hits += 1;
                }
            }
        }
        hits * self.orientation()
    }
}

/// Wraps an angle into `(-π, π]`.
fn wrap(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

/// Combination of the piece integrals that equals `ξ3` inside a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Formula {
    /// `h1 + h2 + h3 + h4`.
    SumH,
    G1,
    /// `h1 + g2`.
    H1G2,
    /// `h1 + h2 + g3`.
    H12G3,
    /// `h1 + h2 + h3 + g4`.
    H123G4,
}

impl Formula {
    pub fn eval(self, frame: &Frame<f64>) -> Result<f64, XiError> {
        Ok(match self {
            Formula::SumH => (1..=4).map(|i| frame.h(i)).sum::<Result<f64, _>>()?,
            Formula::G1 => frame.g(1)?,
            Formula::H1G2 => frame.h(1)? + frame.g(2)?,
            Formula::H12G3 => frame.h(1)? + frame.h(2)? + frame.g(3)?,
            Formula::H123G4 => frame.h(1)? + frame.h(2)? + frame.h(3)? + frame.g(4)?,
        })
    }

    pub fn expr(self) -> &'static str {
        match self {
            Formula::SumH => "h1+h2+h3+h4",
            Formula::G1 => "g1",
            Formula::H1G2 => "h1+g2",
            Formula::H12G3 => "h1+h2+g3",
            Formula::H123G4 => "h1+h2+h3+g4",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRegion {
    pub id: CaseId,
    pub family: Family,
    pub domain: Domain,
    pub formula: Formula,
    /// Signature `classify` returns for interior points of the region.
    pub signature: u8,
}

const QUARTER: PhiArc = PhiArc::new(ArcEndpoint::pi(-1, 4), ArcEndpoint::pi(1, 4));

fn symmetric_arc(k_num: i64, k_den: i64) -> PhiArc {
    PhiArc::new(ArcEndpoint::neg_acos(k_num, k_den), ArcEndpoint::acos(k_num, k_den))
}

/// `[k-arc, π/4] ∪ [-π/4, -k-arc]`.
fn outer_arcs(k_num: i64, k_den: i64) -> Vec<PhiArc> {
    vec![
        PhiArc::new(ArcEndpoint::acos(k_num, k_den), ArcEndpoint::pi(1, 4)),
        PhiArc::new(ArcEndpoint::pi(-1, 4), ArcEndpoint::neg_acos(k_num, k_den)),
    ]
}

pub fn case_region(id: CaseId) -> CaseRegion {
    use ThetaBound as T;
    let quarter_pi = T::PiFraction { num: 1, den: 4 };
    let half_pi = T::PiFraction { num: 1, den: 2 };
    let (family, from, to, arcs, factor, formula, signature) = match id {
        CaseId::Case1 => (
            Family::Case1,
            T::PiFraction { num: 0, den: 1 },
            quarter_pi,
            vec![PhiArc::new(ArcEndpoint::pi(0, 1), ArcEndpoint::pi(2, 1))],
            1,
            Formula::SumH,
            4,
        ),
        CaseId::Case2 => (
            Family::Case2,
            quarter_pi,
            T::Theta3,
            vec![PhiArc::new(ArcEndpoint::acos(1, 1), ArcEndpoint::asin(1, 1))],
            4,
            Formula::SumH,
            4,
        ),
        CaseId::C3A => (Family::Case3, T::acot_sqrt2(1, 4), half_pi, vec![QUARTER], 4, Formula::G1, 0),
        CaseId::C3B => (Family::Case3, T::acot_sqrt2(2, 4), T::acot(1, 4), vec![QUARTER], 4, Formula::H1G2, 1),
        CaseId::C3C => (Family::Case3, T::acot_sqrt2(3, 4), T::acot(2, 4), vec![QUARTER], 4, Formula::H12G3, 2),
        CaseId::C3D => (Family::Case3, T::acot_sqrt2(4, 4), T::acot(3, 4), vec![QUARTER], 4, Formula::H123G4, 3),
        CaseId::C3E1 => (Family::Case3, T::acot(1, 4), T::acot_sqrt2(1, 4), vec![symmetric_arc(4, 1)], 4, Formula::G1, 0),
        CaseId::C3E2 => (Family::Case3, T::acot(1, 4), T::acot_sqrt2(1, 4), outer_arcs(4, 1), 4, Formula::H1G2, 1),
        CaseId::C3F1 => (Family::Case3, T::acot(2, 4), T::acot_sqrt2(2, 4), vec![symmetric_arc(2, 1)], 4, Formula::H1G2, 1),
        CaseId::C3F2 => (Family::Case3, T::acot(2, 4), T::acot_sqrt2(2, 4), outer_arcs(2, 1), 4, Formula::H12G3, 2),
        CaseId::C3G1 => (Family::Case3, T::acot(3, 4), T::acot_sqrt2(3, 4), vec![symmetric_arc(4, 3)], 4, Formula::H12G3, 2),
        CaseId::C3G2 => (Family::Case3, T::acot(3, 4), T::acot_sqrt2(3, 4), outer_arcs(4, 3), 4, Formula::H123G4, 3),
        CaseId::C4APrime => (Family::Case4, quarter_pi, T::acot(3, 4), vec![symmetric_arc(1, 1)], 4, Formula::H123G4, 3),
        CaseId::C4BPrime1 => (
            Family::Case4,
            T::acot(3, 4),
            T::Theta3,
            vec![
                PhiArc::new(ArcEndpoint::acos(4, 3), ArcEndpoint::acos(1, 1)),
                PhiArc::new(ArcEndpoint::neg_acos(1, 1), ArcEndpoint::neg_acos(4, 3)),
            ],
            4,
            Formula::H123G4,
            3,
        ),
        CaseId::C4BPrime2 => (Family::Case4, T::acot(3, 4), T::Theta3, vec![symmetric_arc(4, 3)], 4, Formula::H12G3, 2),
    };
    CaseRegion {
        id,
        family,
        domain: Domain {
            theta_from: from,
            theta_to: to,
            arcs,
            factor,
        },
        formula,
        signature,
    }
}

pub fn all_regions() -> Vec<CaseRegion> {
    CaseId::ALL.into_iter().map(case_region).collect()
}

/// The four arcs `[cos⁻¹(cot θ), sin⁻¹(cot θ)] + qπ/2` on which `ω1`
/// dominates, for `θ ∈ [π/4, cos⁻¹(1/√3)]`.
pub fn region_d(theta: f64) -> Result<Vec<(f64, f64)>, RegionError> {
    let (lo, hi) = Family::Case2.natural_range();
    if !(lo..=hi).contains(&theta) {
        return Err(RegionError::OutOfRange { theta, lo, hi });
    }
    let cot = (theta.cos() / theta.sin()).min(1.0);
    let (a, b) = (cot.acos(), cot.asin());
    Ok((0..4)
        .map(|q| (a + q as f64 * FRAC_PI_2, b + q as f64 * FRAC_PI_2))
        .collect())
}

/// Dominant axis (1-based, ties to the smaller index) and signature:
/// `⌊4 ω1 / |ω_dom|⌋` for axes 2 and 3, or 4 when `ω1` dominates.
pub fn classify(theta: f64, phi: f64) -> (usize, u8) {
    let d = angles_to_direction(theta, phi);
    let w: Vec<f64> = d.components().iter().map(|c| c.abs()).collect();
    let mut axis = 0;
    for i in 1..3 {
        if w[i] > w[axis] {
            axis = i;
        }
    }
    if axis == 0 {
        return (1, 4);
    }
    let sig = (4.0 * w[0] / w[axis]).floor().clamp(0.0, 4.0) as u8;
    (axis + 1, sig)
}

/// Sum over all regions of the signed number of copies containing the point.
pub fn signed_cover(theta: f64, phi: f64) -> i32 {
    all_regions()
        .iter()
        .map(|r| r.domain.signed_count(theta, phi))
        .sum()
}

/// The region of the unsigned partition containing the point: positively
/// oriented and within its family's natural `θ` range.
pub fn locate(theta: f64, phi: f64) -> Vec<CaseId> {
    all_regions()
        .into_iter()
        .filter(|r| {
            let (lo, hi) = r.family.natural_range();
            r.domain.orientation() > 0
                && theta >= lo
                && theta <= hi
                && r.domain.signed_count(theta, phi) > 0
        })
        .map(|r| r.id)
        .collect()
}

#[derive(Serialize)]
struct BoundJson {
    expr: String,
    value: f64,
}

#[derive(Serialize)]
struct ArcJson {
    lower: String,
    upper: String,
}

#[derive(Serialize)]
struct RegionJson {
    id: CaseId,
    family: Family,
    theta_from: BoundJson,
    theta_to: BoundJson,
    orientation: i32,
    phi_arcs: Vec<ArcJson>,
    symmetry_factor: u32,
    integrand: &'static str,
    signature: u8,
}

/// The region table as pretty-printed JSON.
pub fn region_table_json() -> String {
    let rows: Vec<RegionJson> = all_regions()
        .into_iter()
        .map(|r| RegionJson {
            id: r.id,
            family: r.family,
            theta_from: BoundJson {
                expr: r.domain.theta_from.expr(),
                value: r.domain.theta_from.value(),
            },
            theta_to: BoundJson {
                expr: r.domain.theta_to.expr(),
                value: r.domain.theta_to.value(),
            },
            orientation: r.domain.orientation(),
            phi_arcs: r
                .domain
                .arcs
                .iter()
                .map(|a| ArcJson {
                    lower: a.lower.expr(),
                    upper: a.upper.expr(),
                })
                .collect(),
            symmetry_factor: r.domain.factor,
            integrand: r.formula.expr(),
            signature: r.signature,
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("region table serializes")
}
