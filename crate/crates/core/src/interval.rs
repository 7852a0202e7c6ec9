//! Closed intervals with outward rounding.
//!
//! Arithmetic results are widened by one ulp on each side, which is enough
//! because IEEE `+ - * /` and `sqrt` are correctly rounded; results that an
//! error-free transformation shows to be exact are kept as they are. The libm
//! transcendentals are not guaranteed to be correctly rounded; their results
//! are widened by two ulps on the assumption that they are within one ulp.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn down(x: f64) -> f64 {
    x.next_down()
}

fn up(x: f64) -> f64 {
    x.next_up()
}

/// `a + b` rounded down, left alone when the float sum is exact (checked
/// with the two-sum error term).
fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if sum_is_exact(a, b, s) {
        s
    } else {
        down(s)
    }
}

fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if sum_is_exact(a, b, s) {
        s
    } else {
        up(s)
    }
}

fn sum_is_exact(a: f64, b: f64, s: f64) -> bool {
    if !s.is_finite() {
        return false;
    }
    let bb = s - a;
    (a - (s - bb)) + (b - bb) == 0.0
}

// Below this magnitude the fused residual may itself underflow.
const TINY: f64 = 1e-290;

/// Whether `p` is exactly `a * b`.
fn product_is_exact(a: f64, b: f64, p: f64) -> bool {
    p.is_finite() && (p == 0.0 && (a == 0.0 || b == 0.0) || p.abs() > TINY && a.mul_add(b, -p) == 0.0)
}

/// Whether `q` is exactly `a / b`.
fn quotient_is_exact(a: f64, b: f64, q: f64) -> bool {
    q.is_finite() && (q == 0.0 && a == 0.0 || q.abs() > TINY && a.abs() > TINY && q.mul_add(b, -a) == 0.0)
}

fn down2(x: f64) -> f64 {
    x.next_down().next_down()
}

fn up2(x: f64) -> f64 {
    x.next_up().next_up()
}

impl Interval {
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    /// # Panics
    /// If `lo > hi` or either bound is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval::new(x, x)
    }

    /// `[x - r, x + r]`, rounded outward.
    pub fn around(x: f64, r: f64) -> Self {
        Interval::new(down(x - r), up(x + r))
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn width(self) -> f64 {
        up(self.hi - self.lo)
    }

    /// Upper bound on the distance from the midpoint to either end.
    pub fn radius(self) -> f64 {
        let m = 0.5 * (self.lo + self.hi);
        up((self.hi - m).max(m - self.lo))
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(self, other: Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(self, other: Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Largest absolute value of any member.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value of any member.
    pub fn mig(self) -> f64 {
        if self.lo > 0.0 {
            self.lo
        } else if self.hi < 0.0 {
            -self.hi
        } else {
            0.0
        }
    }

    /// Common part of two intervals, `None` when disjoint.
    pub fn intersection(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Interval::new(lo, hi))
    }

    /// `self * [-1, 1]`.
    pub fn symmetric(mag: f64) -> Self {
        Interval::new(-mag, mag)
    }

    fn trig(self, cosine: bool) -> Self {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.hi - self.lo >= 7.0 {
            return Interval::new(-1.0, 1.0);
        }
        let f = |x: f64| if cosine { x.cos() } else { x.sin() };
        let (a, b) = (f(self.lo), f(self.hi));
        let mut lo = down2(a.min(b));
        let mut hi = up2(a.max(b));
        // Extrema of cos sit at k*pi, those of sin at (k + 1/2)*pi, with
        // value (-1)^k in both cases.
        let shift = if cosine { 0.0 } else { 0.5 };
        let pi = Interval::pi();
        let k_min = (self.lo / std::f64::consts::PI - shift).floor() as i64 - 1;
        let k_max = (self.hi / std::f64::consts::PI - shift).ceil() as i64 + 1;
        for k in k_min..=k_max {
            let at = Interval::from_f64(k as f64 + shift) * pi;
            if at.intersects(self) {
                if k.rem_euclid(2) == 0 {
                    hi = 1.0;
                } else {
                    lo = -1.0;
                }
            }
        }
        Interval::new(lo.max(-1.0), hi.min(1.0))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval::new(add_down(self.lo, o.lo), add_up(self.hi, o.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::new(add_down(self.lo, -o.hi), add_up(self.hi, -o.lo))
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        if self.is_exact_zero() || o.is_exact_zero() {
            return Interval::point(0.0);
        }
        let pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)];
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (a, b) in pairs {
            let p = a * b;
            if p.is_nan() {
                return Interval::ENTIRE;
            }
            let exact = product_is_exact(a, b, p);
            lo = lo.min(if exact { p } else { down(p) });
            hi = hi.max(if exact { p } else { up(p) });
        }
        Interval::new(lo, hi)
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return Interval::ENTIRE;
        }
        if self.is_exact_zero() {
            return Interval::point(0.0);
        }
        let pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)];
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (a, b) in pairs {
            let q = a / b;
            let exact = quotient_is_exact(a, b, q);
            lo = lo.min(if exact { q } else { down(q) });
            hi = hi.max(if exact { q } else { up(q) });
        }
        Interval::new(lo, hi)
    }
}

impl Scalar for Interval {
    fn from_f64(x: f64) -> Self {
        Interval::point(x)
    }

    fn ratio(num: i64, den: i64) -> Self {
        Interval::from_f64(num as f64) / Interval::from_f64(den as f64)
    }

    fn pi() -> Self {
        // PI rounds down: 3.14159265358979311... < pi.
        Interval::new(std::f64::consts::PI, up(std::f64::consts::PI))
    }

    fn lower(self) -> f64 {
        self.lo
    }

    fn upper(self) -> f64 {
        self.hi
    }

    fn hull(self, o: Self) -> Self {
        Interval::new(self.lo.min(o.lo), self.hi.max(o.hi))
    }

    fn max(self, o: Self) -> Self {
        Interval::new(self.lo.max(o.lo), self.hi.max(o.hi))
    }

    fn min(self, o: Self) -> Self {
        Interval::new(self.lo.min(o.lo), self.hi.min(o.hi))
    }

    fn abs(self) -> Self {
        Interval::new(self.mig(), self.mag())
    }

    fn sqrt(self) -> Self {
        assert!(self.hi >= 0.0, "sqrt of negative interval {self}");
        let lo = self.lo.max(0.0);
        Interval::new(down(lo.sqrt()).max(0.0), up(self.hi.sqrt()))
    }

    fn sin(self) -> Self {
        self.trig(false)
    }

    fn cos(self) -> Self {
        self.trig(true)
    }

    fn acos(self) -> Self {
        assert!(self.lo <= 1.0 && self.hi >= -1.0, "acos outside [-1, 1]: {self}");
        let a = self.hi.min(1.0).acos();
        let b = self.lo.max(-1.0).acos();
        Interval::new(down2(a).max(0.0), up2(b))
    }

    fn asin(self) -> Self {
        assert!(self.lo <= 1.0 && self.hi >= -1.0, "asin outside [-1, 1]: {self}");
        let a = self.lo.max(-1.0).asin();
        let b = self.hi.min(1.0).asin();
        Interval::new(down2(a), up2(b))
    }

    fn atan(self) -> Self {
        Interval::new(down2(self.lo.atan()), up2(self.hi.atan()))
    }

    fn merge_tolerance() -> Option<f64> {
        None
    }
}
