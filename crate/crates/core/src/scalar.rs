//! Numeric abstraction shared by the float and interval evaluation paths.
//!
//! Every algorithm in the crate is written once against [`Scalar`]. With
//! `f64` it produces ordinary floating-point results; with
//! [`Interval`](crate::interval::Interval) it produces enclosures.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Exact conversion of a double.
    fn from_f64(x: f64) -> Self;

    /// The rational `num / den`, enclosed when not representable.
    fn ratio(num: i64, den: i64) -> Self;

    fn pi() -> Self;

    fn lower(self) -> f64;
    fn upper(self) -> f64;

    fn mid(self) -> f64 {
        0.5 * (self.lower() + self.upper())
    }

    /// Every realization of `self` is below every realization of `other`.
    fn certainly_lt(self, other: Self) -> bool {
        self.upper() < other.lower()
    }

    fn certainly_le(self, other: Self) -> bool {
        self.upper() <= other.lower()
    }

    /// A single known value (always true for `f64`).
    fn is_point(self) -> bool {
        self.lower() == self.upper()
    }

    fn is_exact_zero(self) -> bool {
        self.lower() == 0.0 && self.upper() == 0.0
    }

    /// Smallest scalar containing both arguments.
    fn hull(self, other: Self) -> Self;
    fn max(self, other: Self) -> Self;
    fn min(self, other: Self) -> Self;
    fn abs(self) -> Self;

    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn acos(self) -> Self;
    fn asin(self) -> Self;
    fn atan(self) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn recip(self) -> Self {
        Self::one() / self
    }

    fn powi(self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }

    /// Relative distance under which two breakpoints are merged, or `None`
    /// when ordering must be certified instead.
    fn merge_tolerance() -> Option<f64>;
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn pi() -> Self {
        std::f64::consts::PI
    }

    fn lower(self) -> f64 {
        self
    }

    fn upper(self) -> f64 {
        self
    }

    fn mid(self) -> f64 {
        self
    }

    fn hull(self, other: Self) -> Self {
        // Points never straddle a breakpoint, so a hull of two distinct
        // floats is never requested by the algorithms in this crate.
        debug_assert_eq!(self, other);
        self
    }

    fn max(self, other: Self) -> Self {
        f64::max(self, other)
    }

    fn min(self, other: Self) -> Self {
        f64::min(self, other)
    }

    fn abs(self) -> Self {
        f64::abs(self)
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn sin(self) -> Self {
        f64::sin(self)
    }

    fn cos(self) -> Self {
        f64::cos(self)
    }

    fn acos(self) -> Self {
        f64::acos(self)
    }

    fn asin(self) -> Self {
        f64::asin(self)
    }

    fn atan(self) -> Self {
        f64::atan(self)
    }

    fn recip(self) -> Self {
        1.0 / self
    }

    fn merge_tolerance() -> Option<f64> {
        Some(1e-12)
    }
}
