//! Polynomials and compactly supported piecewise polynomials.
//!
//! Everything is generic over [`Scalar`], so the same products and integrals
//! run in floating point or in interval arithmetic. A piecewise polynomial is
//! zero outside `[b_0, b_n)` and equals `pieces[k]` on `[b_k, b_{k+1})`.

use std::cmp::Ordering;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PiecewiseError {
    #[error("breakpoints must be strictly increasing with one more breakpoint than pieces")]
    InvalidBreakpoints,
    #[error("integration bounds are reversed: a = {a}, b = {b}")]
    ReversedBounds { a: f64, b: f64 },
    #[error("argument scale must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("breakpoints near {0} cannot be ordered at the working precision")]
    UnorderedBreakpoints(f64),
    #[error("F piece index must be 1..=4, got {0}")]
    PieceIndex(usize),
}

/// Dense polynomial with ascending coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Polynomial::new(vec![c])
    }

    /// `a + b t`.
    pub fn linear(a: S, b: S) -> Self {
        Polynomial::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, &c| acc * t + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[S], k: usize| v.get(k).copied().unwrap_or_else(S::zero);
        Polynomial::new(
            (0..n)
                .map(|k| get(&self.coeffs, k) + get(&other.coeffs, k))
                .collect(),
        )
    }

    pub fn scale(&self, s: S) -> Self {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Polynomial::new(out)
    }

    /// `t^k p(t)`.
    pub fn mul_monomial(&self, k: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![S::zero(); k];
        out.extend_from_slice(&self.coeffs);
        Polynomial { coeffs: out }
    }

    /// `p(a t)`.
    pub fn scale_arg(&self, a: S) -> Self {
        let mut pow = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c * pow);
            pow = pow * a;
        }
        Polynomial::new(out)
    }

    /// Antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(S::zero());
        for (k, &c) in self.coeffs.iter().enumerate() {
            out.push(c * S::ratio(1, k as i64 + 1));
        }
        Polynomial::new(out)
    }

    /// Oriented integral `∫_a^b p`; reversed bounds give the negated value.
    pub fn integral_between(&self, a: S, b: S) -> S {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    pub fn definite_integral(&self, a: S, b: S) -> Result<S, PiecewiseError> {
        if b.certainly_lt(a) {
            return Err(PiecewiseError::ReversedBounds {
                a: a.mid(),
                b: b.mid(),
            });
        }
        Ok(self.integral_between(a, b))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePolynomial<S> {
    breakpoints: Vec<S>,
    pieces: Vec<Polynomial<S>>,
}

/// Orders two breakpoints, merging the ones that coincide at the working
/// precision.
fn compare<S: Scalar>(a: S, b: S) -> Result<Ordering, PiecewiseError> {
    match S::merge_tolerance() {
        Some(tol) => {
            let (x, y) = (a.mid(), b.mid());
            if (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0) {
                Ok(Ordering::Equal)
            } else if x < y {
                Ok(Ordering::Less)
            } else {
                Ok(Ordering::Greater)
            }
        }
        None => {
            if a.is_point() && b.is_point() && a.lower() == b.lower() {
                Ok(Ordering::Equal)
            } else if a.certainly_lt(b) {
                Ok(Ordering::Less)
            } else if b.certainly_lt(a) {
                Ok(Ordering::Greater)
            } else {
                Err(PiecewiseError::UnorderedBreakpoints(a.mid()))
            }
        }
    }
}

impl<S: Scalar> PiecewisePolynomial<S> {
    pub fn new(breakpoints: Vec<S>, pieces: Vec<Polynomial<S>>) -> Result<Self, PiecewiseError> {
        if breakpoints.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(PiecewiseError::InvalidBreakpoints);
        }
        if breakpoints.windows(2).any(|w| !w[0].certainly_lt(w[1])) {
            return Err(PiecewiseError::InvalidBreakpoints);
        }
        Ok(PiecewisePolynomial {
            breakpoints,
            pieces,
        })
    }

    /// The identically zero function.
    pub fn zero() -> Self {
        PiecewisePolynomial {
            breakpoints: Vec::new(),
            pieces: Vec::new(),
        }
    }

    /// `p` on `[lo, hi)`, zero elsewhere.
    pub fn single(lo: S, hi: S, p: Polynomial<S>) -> Result<Self, PiecewiseError> {
        PiecewisePolynomial::new(vec![lo, hi], vec![p])
    }

    pub fn breakpoints(&self) -> &[S] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial<S>] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn support(&self) -> Option<(S, S)> {
        Some((*self.breakpoints.first()?, *self.breakpoints.last()?))
    }

    pub fn eval(&self, t: S) -> S {
        let Some((b0, bn)) = self.support() else {
            return S::zero();
        };
        let mut acc: Option<S> = None;
        let mut push = |v: S| acc = Some(acc.map_or(v, |a: S| a.hull(v)));
        if !b0.certainly_le(t) || !t.certainly_lt(bn) {
            push(S::zero());
        }
        for (k, piece) in self.pieces.iter().enumerate() {
            let (lo, hi) = (self.breakpoints[k], self.breakpoints[k + 1]);
            if !t.certainly_lt(lo) && !hi.certainly_le(t) {
                push(piece.eval(t));
            }
        }
        acc.unwrap_or_else(S::zero)
    }

    /// `p(a t)` for `a > 0`.
    pub fn scale_arg(&self, a: S) -> Result<Self, PiecewiseError> {
        if !S::zero().certainly_lt(a) {
            return Err(PiecewiseError::NonPositiveScale(a.mid()));
        }
        Ok(PiecewisePolynomial {
            breakpoints: self.breakpoints.iter().map(|&b| b / a).collect(),
            pieces: self.pieces.iter().map(|p| p.scale_arg(a)).collect(),
        })
    }

    pub fn mul_monomial(&self, k: usize) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.mul_monomial(k)).collect(),
        }
    }

    /// Product with a polynomial defined everywhere; the support is kept.
    pub fn mul_poly(&self, q: &Polynomial<S>) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.mul(q)).collect(),
        }
    }

    pub fn scale(&self, s: S) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(s)).collect(),
        }
    }

    /// Pointwise product on the common refinement of both breakpoint sets.
    ///
    /// In floating point, breakpoints closer than `1e-12` (relative) are
    /// merged. In interval arithmetic every pair must be certifiably ordered
    /// or be the same exact value, otherwise
    /// [`PiecewiseError::UnorderedBreakpoints`] is returned.
    pub fn mul(&self, other: &Self) -> Result<Self, PiecewiseError> {
        if self.is_zero() || other.is_zero() {
            return Ok(PiecewisePolynomial::zero());
        }
        let (p, q) = (&self.breakpoints, &other.breakpoints);
        let (np, nq) = (self.pieces.len(), other.pieces.len());
        // Each event is a merged breakpoint plus how many breakpoints of
        // each factor lie at or before it.
        let mut events: Vec<(S, usize, usize)> = Vec::with_capacity(p.len() + q.len());
        let (mut i, mut j) = (0, 0);
        while i < p.len() || j < q.len() {
            let ord = if i == p.len() {
                Ordering::Greater
            } else if j == q.len() {
                Ordering::Less
            } else {
                compare(p[i], q[j])?
            };
            let at = match ord {
                Ordering::Less => {
                    i += 1;
                    p[i - 1]
                }
                Ordering::Greater => {
                    j += 1;
                    q[j - 1]
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    p[i - 1]
                }
            };
            events.push((at, i, j));
        }
        let mut breakpoints = Vec::new();
        let mut pieces = Vec::new();
        for w in events.windows(2) {
            let (start, ci, cj) = w[0];
            if (1..=np).contains(&ci) && (1..=nq).contains(&cj) {
                if breakpoints.is_empty() {
                    breakpoints.push(start);
                }
                pieces.push(self.pieces[ci - 1].mul(&other.pieces[cj - 1]));
                breakpoints.push(w[1].0);
            }
        }
        if pieces.is_empty() {
            return Ok(PiecewisePolynomial::zero());
        }
        Ok(PiecewisePolynomial {
            breakpoints,
            pieces,
        })
    }

    /// `∫_a^b p` for `a ≤ b`.
    pub fn integral(&self, a: S, b: S) -> Result<S, PiecewiseError> {
        if b.certainly_lt(a) {
            return Err(PiecewiseError::ReversedBounds {
                a: a.mid(),
                b: b.mid(),
            });
        }
        let mut total = S::zero();
        for (k, piece) in self.pieces.iter().enumerate() {
            let x = a.max(self.breakpoints[k]);
            let y = b.min(self.breakpoints[k + 1]);
            if y.certainly_le(x) {
                continue;
            }
            let part = piece.integral_between(x, y);
            total = total
                + if x.certainly_le(y) {
                    part
                } else {
                    // The segment may be empty for some realizations.
                    part.hull(S::zero())
                };
        }
        Ok(total)
    }

    /// Integral over the whole support.
    pub fn total_integral(&self) -> S {
        match self.support() {
            Some((a, b)) => self.integral(a, b).unwrap_or_else(|_| S::zero()),
            None => S::zero(),
        }
    }
}

/// The odd profile `F` on `[-2, 2]`.
pub fn make_big_f<S: Scalar>() -> PiecewisePolynomial<S> {
    let r = |n, d| S::ratio(n, d);
    let breaks = [(-4, 2), (-3, 2), (-2, 2), (-1, 2), (0, 1), (1, 2), (2, 2), (3, 2), (4, 2)]
        .iter()
        .map(|&(n, d)| r(n, d))
        .collect();
    let lin = |a: S, b: S| Polynomial::linear(a, b);
    let pieces = vec![
        lin(r(-1, 1), r(-1, 2)),
        lin(r(1, 2), r(1, 2)),
        lin(r(3, 2), r(3, 2)),
        lin(S::zero(), r(-3, 2)),
        lin(S::zero(), r(-3, 2)),
        lin(r(-3, 2), r(3, 2)),
        lin(r(-1, 2), r(1, 2)),
        lin(r(1, 1), r(-1, 2)),
    ];
    PiecewisePolynomial { breakpoints: breaks, pieces }
}

/// `F` restricted to `[0, 2]`, which is all that matters for `t ω1 ≥ 0`.
pub fn make_big_f_half<S: Scalar>() -> PiecewisePolynomial<S> {
    let r = |n, d| S::ratio(n, d);
    PiecewisePolynomial {
        breakpoints: vec![S::zero(), r(1, 2), S::one(), r(3, 2), S::from_f64(2.0)],
        pieces: vec![
            Polynomial::linear(S::zero(), r(-3, 2)),
            Polynomial::linear(r(-3, 2), r(3, 2)),
            Polynomial::linear(r(-1, 2), r(1, 2)),
            Polynomial::linear(S::one(), r(-1, 2)),
        ],
    }
}

/// The even tent `f(x) = 1 - |x|/2` on `[-2, 2]`.
pub fn make_small_f<S: Scalar>() -> PiecewisePolynomial<S> {
    let half = S::ratio(1, 2);
    PiecewisePolynomial {
        breakpoints: vec![S::from_f64(-2.0), S::zero(), S::from_f64(2.0)],
        pieces: vec![
            Polynomial::linear(S::one(), half),
            Polynomial::linear(S::one(), -half),
        ],
    }
}

/// `f` restricted to `[0, 2]`.
pub fn make_small_f_half<S: Scalar>() -> PiecewisePolynomial<S> {
    PiecewisePolynomial {
        breakpoints: vec![S::zero(), S::from_f64(2.0)],
        pieces: vec![Polynomial::linear(S::one(), -S::ratio(1, 2))],
    }
}

/// The piece `F_{1i}(t) = F(t ω1)` restricted to `[(i-1)/(2 ω1), i/(2 ω1))`.
pub fn make_f_piece<S: Scalar>(i: usize, omega1: S) -> Result<PiecewisePolynomial<S>, PiecewiseError> {
    if !(1..=4).contains(&i) {
        return Err(PiecewiseError::PieceIndex(i));
    }
    let half = make_big_f_half::<S>();
    let lo = S::ratio(i as i64 - 1, 2);
    let hi = S::ratio(i as i64, 2);
    PiecewisePolynomial::single(lo, hi, half.pieces[i - 1].clone())?.scale_arg(omega1)
}

/// The unbounded continuation `½(t ω1 - 1)` of the third piece.
pub fn make_f_tilde13<S: Scalar>(omega1: S) -> Polynomial<S> {
    let half = S::ratio(1, 2);
    Polynomial::linear(-half, half * omega1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;

    #[test]
    fn poly_eval_at_breakpoint() {
        let p = Polynomial::new(vec![-0.75, 1.5]);
        assert_eq!(p.eval(0.5), 0.0);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Polynomial::new(vec![1.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(0));
        assert!(Polynomial::<f64>::new(vec![0.0]).is_zero());
    }

    #[test]
    fn big_f_values() {
        let f = make_big_f::<f64>();
        assert_eq!(f.eval(0.5), -0.75);
        assert_eq!(f.eval(1.0), 0.0);
        assert_eq!(f.eval(1.5), 0.25);
        assert_eq!(f.eval(-0.5), 0.75);
        assert_eq!(f.eval(2.5), 0.0);
        assert_eq!(f.eval(-3.0), 0.0);
    }

    #[test]
    fn small_f_integrates_to_two() {
        let f = make_small_f::<f64>();
        assert_eq!(f.integral(-2.0, 2.0).unwrap(), 2.0);
    }

    #[test]
    fn weighted_f_moment() {
        let g = make_small_f::<f64>().mul_monomial(2);
        let v = g.integral(0.0, 2.0).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn reversed_bounds_are_rejected() {
        let f = make_small_f::<f64>();
        assert!(matches!(
            f.integral(1.0, 0.0),
            Err(PiecewiseError::ReversedBounds { .. })
        ));
    }

    #[test]
    fn pieces_sum_to_f() {
        for &t in &[0.1, 0.5, 0.7, 1.0, 1.2, 1.5, 1.9, 2.0, 2.5] {
            let s: f64 = (1..=4).map(|i| make_f_piece(i, 1.0).unwrap().eval(t)).sum();
            assert_eq!(s, make_big_f::<f64>().eval(t), "t = {t}");
        }
        assert_eq!(make_f_piece(4, 1.0).unwrap().eval(2.0), 0.0);
        assert!(make_f_piece::<f64>(5, 1.0).is_err());
    }

    #[test]
    fn product_of_disjoint_supports_is_zero() {
        let a = PiecewisePolynomial::single(0.0, 1.0, Polynomial::constant(1.0)).unwrap();
        let b = PiecewisePolynomial::single(1.0, 2.0, Polynomial::constant(1.0)).unwrap();
        assert!(a.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn scale_arg_requires_positive_factor() {
        let f = make_small_f::<f64>();
        assert!(f.scale_arg(0.0).is_err());
        assert!(f.scale_arg(-1.0).is_err());
        let g = f.scale_arg(2.0).unwrap();
        assert_eq!(g.support(), Some((-1.0, 1.0)));
    }

    #[test]
    fn interval_product_rejects_ambiguous_order() {
        let a = PiecewisePolynomial::single(
            Interval::point(0.0),
            Interval::new(1.0, 1.0 + 1e-9),
            Polynomial::constant(Interval::point(1.0)),
        )
        .unwrap();
        let b = PiecewisePolynomial::single(
            Interval::new(1.0 - 1e-9, 1.0 + 1e-10),
            Interval::point(3.0),
            Polynomial::constant(Interval::point(1.0)),
        )
        .unwrap();
        assert!(matches!(
            a.mul(&b),
            Err(PiecewiseError::UnorderedBreakpoints(_))
        ));
    }

    #[test]
    fn interval_integral_encloses_float() {
        let g = make_big_f_half::<Interval>()
            .scale_arg(Interval::point(0.8))
            .unwrap()
            .mul_monomial(2);
        let gf = make_big_f_half::<f64>().scale_arg(0.8).unwrap().mul_monomial(2);
        let i = g.total_integral();
        assert!(i.contains(gf.total_integral()));
        assert!(i.width() < 1e-13);
    }
}
