//! Verification of the sign of a spherical average of a one-dimensional
//! Riesz-type profile.
//!
//! The quantity of interest is
//! `I_n = ∫_{S^{n-1}, ω1 > 0} ω1 ξ_n(ω) dσ(ω)` with
//! `ξ_n(ω) = ∫_0^∞ t^{n-1} F(t ω1) ∏_{i≥2} f(t ω_i) dt`, where `F` is an odd
//! piecewise-linear profile supported on `[-2, 2]` and `f(x) = (1 - |x|/2)_+`.
//! For `n = 3` the crate evaluates every term of a region decomposition of
//! `I_3`, compares it with published values, and certifies `I_3 < 0` both in
//! floating point and with interval enclosures.

pub mod cases;
pub mod cli;
pub mod interval;
pub mod piecewise;
pub mod quadrature;
pub mod regions;
pub mod scalar;
pub mod xi;

pub use interval::Interval;
pub use scalar::Scalar;
