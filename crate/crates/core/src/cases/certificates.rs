//! Sign facts the bounds rely on, checked in interval arithmetic.
//!
//! Both certificates work in the variable `x = t cos θ`, where the profile
//! pieces do not depend on the angle.

use serde::Serialize;

use super::CaseError;
use crate::interval::Interval;
use crate::piecewise::{make_big_f_half, make_f_tilde13, make_small_f_half};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub name: &'static str,
    pub statement: &'static str,
    pub holds: bool,
    /// One line per elementary check.
    pub checks: Vec<String>,
}

impl Certificate {
    pub fn require(&self) -> Result<(), CaseError> {
        if self.holds {
            Ok(())
        } else {
            Err(CaseError::Certificate(format!("{}: {}", self.name, self.checks.join("; "))))
        }
    }
}

struct Checker {
    holds: bool,
    checks: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            holds: true,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, label: String, ok: bool) {
        self.holds &= ok;
        self.checks.push(format!("{label}: {}", if ok { "ok" } else { "FAILED" }));
    }
}

/// `F̃13(x) ≥ F13(x) + F14(x)` for every `x ≥ 1`.
///
/// The difference is linear on each piece of `F` in `[1, 2]`, so checking
/// the segment ends suffices there; beyond 2 only `F̃13` remains, and it is
/// nonnegative at 2 with positive slope.
pub fn dominance_certificate() -> Certificate {
    let f = make_big_f_half::<Interval>();
    let tilde = make_f_tilde13(Interval::one());
    let (one, two) = (Interval::one(), Interval::from_f64(2.0));
    let mut c = Checker::new();
    for (k, piece) in f.pieces().iter().enumerate() {
        let (a, b) = (f.breakpoints()[k], f.breakpoints()[k + 1]);
        if b.upper() <= one.lower() {
            continue;
        }
        let diff = tilde.add(&piece.scale(-Interval::one()));
        for x in [a.max(one), b.min(two)] {
            let d = diff.eval(x);
            c.check(format!("F̃13 - F at x = {} is {d}", x.mid()), d.lower() >= 0.0);
        }
    }
    let at_two = tilde.eval(two);
    c.check(format!("F̃13(2) = {at_two}"), at_two.lower() >= 0.0);
    let slope = tilde.coeffs()[1];
    c.check(format!("slope of F̃13 = {slope}"), slope.lower() > 0.0);
    Certificate {
        name: "dominance",
        statement: "F̃13 ≥ F13 + F14 on t ≥ 1/cos θ",
        holds: c.holds,
        checks: c.checks,
    }
}

/// `ξ3 ≤ 0` on Part E, `θ ≥ cot⁻¹(1/4)`.
///
/// On `[0, 1]` the profile is made of two linear pieces that are
/// nonpositive at both ends, and the tents are nonnegative. The tents
/// vanish beyond `2/max(|ω2|, |ω3|) ≤ 2√2/sin θ`, and `2√2 cot θ ≤ √2/2 < 1`
/// puts that below `1/cos θ`, so only the negative lobe contributes.
pub fn part_e_certificate() -> Certificate {
    let f = make_big_f_half::<Interval>();
    let tent = make_small_f_half::<Interval>();
    let mut c = Checker::new();
    for k in 0..2 {
        let (a, b) = (f.breakpoints()[k], f.breakpoints()[k + 1]);
        for x in [a, b] {
            let v = f.pieces()[k].eval(x);
            c.check(format!("F piece {} at x = {} is {v}", k + 1, x.mid()), v.upper() <= 0.0);
        }
    }
    for x in [Interval::zero(), Interval::from_f64(2.0)] {
        let v = tent.pieces()[0].eval(x);
        c.check(format!("f at {} is {v}", x.mid()), v.lower() >= 0.0);
    }
    let reach = Interval::from_f64(2.0) * Interval::from_f64(2.0).sqrt() * Interval::ratio(1, 4);
    c.check(format!("2√2 · max cot θ = {reach} < 1"), reach.upper() < 1.0);
    Certificate {
        name: "part_e_sign",
        statement: "t² F(t cos θ) f(t ω2) f(t ω3) ≤ 0 for all t on Part E",
        holds: c.holds,
        checks: c.checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance_holds() {
        let c = dominance_certificate();
        assert!(c.holds, "{:?}", c.checks);
        assert_eq!(c.checks.len(), 6);
    }

    #[test]
    fn part_e_sign_holds() {
        let c = part_e_certificate();
        assert!(c.holds, "{:?}", c.checks);
        c.require().unwrap();
    }
}
