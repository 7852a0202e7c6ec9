//! The radial profile integral `ξ_n(ω) = ∫_0^∞ t^{n-1} F(t ω1) ∏_{i≥2} f(t ω_i) dt`
//! and its split into the four pieces of `F`.
//!
//! For `n = 3` directions are parametrized as
//! `ω = (cos θ, sin θ cos φ, sin θ sin φ)`. The pieces are
//! `S_i(a) = ∫_0^a t² F_{1i}(t) f(t ω2) f(t ω3) dt`, where `F_{1i}` is `F(t ω1)`
//! restricted to `[(i-1)/(2ω1), i/(2ω1))`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::piecewise::{
    make_big_f_half, make_f_piece, make_f_tilde13, make_small_f_half, PiecewiseError,
    PiecewisePolynomial,
};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum XiError {
    #[error("direction must be a unit vector with at least two components (|ω| = {0})")]
    NotUnit(f64),
    #[error("direction has no nonzero component")]
    ZeroDirection,
    #[error("ω1 = cos θ must be positive")]
    DegenerateAngle,
    #[error("component ω{0} cannot be separated from zero")]
    AmbiguousSign(usize),
    #[error("upper limit must be nonnegative, got {0}")]
    NegativeLimit(f64),
    #[error("piece index must be 1..=4, got {0}")]
    PieceIndex(usize),
    #[error("the upper limit 2/|ω2| is infinite")]
    InfiniteLimit,
    #[error(transparent)]
    Piecewise(#[from] PiecewiseError),
}

/// Polar angle `θ` from the first axis and azimuth `φ` in the `(ω2, ω3)` plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalAngle {
    pub theta: f64,
    pub phi: f64,
}

impl SphericalAngle {
    pub fn new(theta: f64, phi: f64) -> Self {
        SphericalAngle { theta, phi }
    }

    pub fn direction(self) -> Direction<f64> {
        angles_to_direction(self.theta, self.phi)
    }
}

/// A unit vector in `R^n`, `n ≥ 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction<S> {
    components: Vec<S>,
}

impl<S: Scalar> Direction<S> {
    /// Accepts vectors whose norm is 1 to within `1e-12`; for intervals the
    /// squared norm enclosure must meet that band.
    pub fn new(components: Vec<S>) -> Result<Self, XiError> {
        if components.len() < 2 {
            return Err(XiError::NotUnit(f64::NAN));
        }
        let norm2 = components.iter().fold(S::zero(), |acc, &c| acc + c * c);
        if norm2.lower() > 1.0 + 1e-12 || norm2.upper() < 1.0 - 1e-12 {
            return Err(XiError::NotUnit(norm2.mid().sqrt()));
        }
        Ok(Direction { components })
    }

    pub fn components(&self) -> &[S] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }
}

/// `(cos θ, sin θ cos φ, sin θ sin φ)`.
pub fn angles_to_direction<S: Scalar>(theta: S, phi: S) -> Direction<S> {
    let s = theta.sin();
    Direction {
        components: vec![theta.cos(), s * phi.cos(), s * phi.sin()],
    }
}

/// Right end of the support of `t ↦ F(t ω1) ∏ f(t ω_i)` on `t ≥ 0`:
/// the minimum of `2/|ω_i|` over the nonzero components.
pub fn support_bound<S: Scalar>(omega: &Direction<S>) -> Result<S, XiError> {
    omega
        .components
        .iter()
        .filter(|c| !c.is_exact_zero())
        .map(|&c| S::from_f64(2.0) / c.abs())
        .reduce(|a, b| a.min(b))
        .ok_or(XiError::ZeroDirection)
}

/// Sign of a component: `Some(true)` if positive, `None` for an exact zero.
fn sign_of<S: Scalar>(c: S, index: usize) -> Result<Option<bool>, XiError> {
    if c.is_exact_zero() {
        Ok(None)
    } else if S::zero().certainly_lt(c) {
        Ok(Some(true))
    } else if c.certainly_lt(S::zero()) {
        Ok(Some(false))
    } else {
        Err(XiError::AmbiguousSign(index))
    }
}

/// Product `∏_{i≥2} f(t ω_i)` on `t ≥ 0`, or `None` when every component
/// is zero and the product is identically one.
fn tent_product<S: Scalar>(rest: &[S]) -> Result<Option<PiecewisePolynomial<S>>, XiError> {
    let tent = make_small_f_half::<S>();
    let mut acc: Option<PiecewisePolynomial<S>> = None;
    for (k, &c) in rest.iter().enumerate() {
        if sign_of(c, k + 2)?.is_none() {
            continue;
        }
        let factor = tent.scale_arg(c.abs())?;
        acc = Some(match acc {
            None => factor,
            Some(a) => a.mul(&factor)?,
        });
    }
    Ok(acc)
}

fn times<S: Scalar>(
    p: PiecewisePolynomial<S>,
    q: &Option<PiecewisePolynomial<S>>,
) -> Result<PiecewisePolynomial<S>, XiError> {
    Ok(match q {
        Some(q) => p.mul(q)?,
        None => p,
    })
}

/// `ξ_n(ω)` for a unit vector of any dimension `n ≥ 2`. Odd in `ω1`.
pub fn xi_n<S: Scalar>(omega: &Direction<S>) -> Result<S, XiError> {
    let w = &omega.components;
    let n = w.len();
    let Some(positive) = sign_of(w[0], 1)? else {
        return Ok(S::zero());
    };
    let base = make_big_f_half::<S>().scale_arg(w[0].abs())?;
    let integrand = times(base, &tent_product(&w[1..])?)?.mul_monomial(n - 1);
    let v = integrand.total_integral();
    Ok(if positive { v } else { -v })
}

pub fn xi3<S: Scalar>(omega: &Direction<S>) -> Result<S, XiError> {
    if omega.dim() != 3 {
        return Err(XiError::NotUnit(f64::NAN));
    }
    xi_n(omega)
}

/// Trigonometric data of an angle pair, computed once and shared by the
/// piece integrals.
#[derive(Clone, Copy, Debug)]
pub struct Frame<S> {
    /// `ω1 = cos θ`; `θ` must lie below `π/2`.
    pub c: S,
    pub s: S,
    pub w2: S,
    pub w3: S,
}

impl<S: Scalar> Frame<S> {
    pub fn new(theta: S, phi: S) -> Result<Self, XiError> {
        let c = theta.cos();
        if theta.upper() >= std::f64::consts::FRAC_PI_2 || !S::zero().certainly_lt(c) {
            return Err(XiError::DegenerateAngle);
        }
        let s = theta.sin();
        Ok(Frame {
            c,
            s,
            w2: s * phi.cos(),
            w3: s * phi.sin(),
        })
    }

    pub fn direction(&self) -> Direction<S> {
        Direction {
            components: vec![self.c, self.w2, self.w3],
        }
    }

    fn tents(&self) -> Result<Option<PiecewisePolynomial<S>>, XiError> {
        tent_product(&[self.w2, self.w3])
    }

    /// `2/|ω2|`, the upper limit of the `g_i`.
    pub fn g_limit(&self) -> Result<S, XiError> {
        if sign_of(self.w2, 2)?.is_none() {
            return Err(XiError::InfiniteLimit);
        }
        Ok(S::from_f64(2.0) / self.w2.abs())
    }

    /// `t² F_{1i}(t) f(t ω2) f(t ω3)` as a piecewise polynomial.
    pub fn piece_integrand(&self, i: usize) -> Result<PiecewisePolynomial<S>, XiError> {
        let piece = make_f_piece(i, self.c).map_err(|e| match e {
            PiecewiseError::PieceIndex(i) => XiError::PieceIndex(i),
            e => XiError::Piecewise(e),
        })?;
        Ok(times(piece, &self.tents()?)?.mul_monomial(2))
    }

    /// `t² (F_{11} + F_{12})(t) f f`, the negative lobe.
    pub fn negative_lobe_integrand(&self) -> Result<PiecewisePolynomial<S>, XiError> {
        let lobe = PiecewisePolynomial::new(
            vec![S::zero(), S::ratio(1, 2), S::one()],
            make_big_f_half::<S>().pieces()[..2].to_vec(),
        )?
        .scale_arg(self.c)?;
        Ok(times(lobe, &self.tents()?)?.mul_monomial(2))
    }

    /// `ξ3` at this angle.
    pub fn xi3(&self) -> Result<S, XiError> {
        xi_n(&self.direction())
    }

    /// `S_i(a)`.
    pub fn s_piece(&self, i: usize, a: S) -> Result<S, XiError> {
        if a.certainly_lt(S::zero()) {
            return Err(XiError::NegativeLimit(a.mid()));
        }
        Ok(self.piece_integrand(i)?.integral(S::zero(), a)?)
    }

    /// `h_i = S_i(i/(2ω1)) - S_i((i-1)/(2ω1))`.
    ///
    /// `S_i` vanishes below `(i-1)/(2ω1)`, so this is the integral of the
    /// whole piece.
    pub fn h(&self, i: usize) -> Result<S, XiError> {
        Ok(self.piece_integrand(i)?.total_integral())
    }

    /// `g_i = S_i(2/|ω2|) - S_i((i-1)/(2ω1))`, which reduces to `S_i(2/|ω2|)`.
    pub fn g(&self, i: usize) -> Result<S, XiError> {
        self.s_piece(i, self.g_limit()?)
    }

    /// `h_1 + h_2`, the integral of the negative lobe.
    pub fn negative_part(&self) -> Result<S, XiError> {
        Ok(self.negative_lobe_integrand()?.total_integral())
    }

    /// Oriented `∫_{1/ω1}^{2/|ω2|} t² F̃13(t) [f(t ω2) f(t ω3)] dt`, with the
    /// tent factors kept when `with_tents` is set.
    pub fn tilde_integral(&self, with_tents: bool) -> Result<S, XiError> {
        let poly = make_f_tilde13(self.c).mul_monomial(2);
        let start = self.c.recip();
        if with_tents {
            let Some(tents) = self.tents()? else {
                return Err(XiError::InfiniteLimit);
            };
            let g = tents.mul_poly(&poly);
            // With the tents kept the integrand vanishes beyond 2/|ω2|, so
            // the upper limit may be taken as the end of the support.
            let end = match sign_of(self.w2, 2)? {
                Some(_) => self.g_limit()?,
                None => tents.support().map(|(_, b)| b).unwrap_or_else(S::zero),
            };
            Ok(g.integral(S::zero(), end)? - g.integral(S::zero(), start)?)
        } else {
            Ok(poly.integral_between(start, self.g_limit()?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;

    fn e1() -> Direction<f64> {
        Direction::new(vec![1.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn xi3_on_first_axis() {
        let v = xi3(&e1()).unwrap();
        assert!((v - 17.0 / 96.0).abs() < 1e-15);
    }

    #[test]
    fn xi3_on_first_axis_interval() {
        let d = Direction::new(vec![Interval::point(1.0), Interval::point(0.0), Interval::point(0.0)])
            .unwrap();
        let v = xi3(&d).unwrap();
        assert!(v.contains(17.0 / 96.0));
        assert!(v.width() < 1e-13);
    }

    #[test]
    fn xi2_on_first_axis_vanishes() {
        let d = Direction::new(vec![1.0, 0.0]).unwrap();
        assert!(xi_n(&d).unwrap().abs() < 1e-16);
    }

    #[test]
    fn xi_is_odd() {
        let d = angles_to_direction(0.7, 0.3);
        let mut w = d.components().to_vec();
        w[0] = -w[0];
        let m = Direction::new(w).unwrap();
        assert_eq!(xi3(&m).unwrap(), -xi3(&d).unwrap());
    }

    #[test]
    fn perpendicular_direction_gives_zero() {
        let d = Direction::new(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(xi3(&d).unwrap(), 0.0);
    }

    #[test]
    fn support_bound_uses_minimum() {
        let d = angles_to_direction(std::f64::consts::FRAC_PI_4, 0.0);
        let b = support_bound(&d).unwrap();
        assert!((b - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn non_unit_vectors_are_rejected() {
        assert!(Direction::new(vec![1.0, 1.0, 0.0]).is_err());
        assert!(Direction::new(vec![1.0]).is_err());
    }

    #[test]
    fn pieces_add_up_to_xi3() {
        let fr = Frame::new(0.6, 0.4).unwrap();
        let sum: f64 = (1..=4).map(|i| fr.h(i).unwrap()).sum();
        assert!((sum - fr.xi3().unwrap()).abs() < 1e-14);
        let neg = fr.negative_part().unwrap();
        assert!((neg - fr.h(1).unwrap() - fr.h(2).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn first_piece_on_axis() {
        // ∫_0^{1/2} t² (-3/2 t) dt = -3/128
        let fr = Frame::new(0.0, 0.0).unwrap();
        assert!((fr.h(1).unwrap() + 3.0 / 128.0).abs() < 1e-16);
        assert!((fr.s_piece(1, 0.25).unwrap() + 3.0 / 2048.0).abs() < 1e-16);
    }

    #[test]
    fn s_piece_rejects_bad_input() {
        let fr = Frame::new(0.5, 0.2).unwrap();
        assert!(matches!(fr.s_piece(1, -1.0), Err(XiError::NegativeLimit(_))));
        assert!(matches!(fr.s_piece(5, 1.0), Err(XiError::PieceIndex(5))));
        assert!(matches!(
            Frame::new(std::f64::consts::FRAC_PI_2, 0.0),
            Err(XiError::DegenerateAngle)
        ));
    }

    #[test]
    fn g_needs_finite_limit() {
        let fr = Frame::new(0.0, 0.0).unwrap();
        assert!(matches!(fr.g(1), Err(XiError::InfiniteLimit)));
    }
}
