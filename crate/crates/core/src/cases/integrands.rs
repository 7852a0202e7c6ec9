//! Inner `t`-integrals used by the case evaluators, in both precisions, with
//! the slope bounds that make their interval enclosures rigorous.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::interval::Interval;
use crate::quadrature::{Enclosable, Slopes};
use crate::scalar::Scalar;
use crate::xi::{Frame, XiError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrand {
    /// `ξ3`.
    Xi3,
    /// `h1 + h2`, the integral over the negative lobe of `F`.
    NegPart,
    H1,
    /// `∫_{1/ω1}^{∞} t² F̃13(t) f(t ω2) f(t ω3) dt`.
    TildeWithF,
    /// `∫_{1/ω1}^{2/|ω2|} t² F̃13(t) dt`, oriented.
    TildeNoF,
}

impl Integrand {
    pub fn eval<S: Scalar>(self, theta: S, phi: S) -> Result<S, XiError> {
        let frame = Frame::new(theta, phi)?;
        match self {
            Integrand::Xi3 => frame.xi3(),
            Integrand::NegPart => frame.negative_part(),
            Integrand::H1 => frame.h(1),
            Integrand::TildeWithF => frame.tilde_integral(true),
            Integrand::TildeNoF => frame.tilde_integral(false),
        }
    }

    pub fn expr(self) -> &'static str {
        match self {
            Integrand::Xi3 => "ξ3",
            Integrand::NegPart => "h1+h2",
            Integrand::H1 => "h1",
            Integrand::TildeWithF => "∫ t²F̃13 f f",
            Integrand::TildeNoF => "∫ t²F̃13",
        }
    }
}

fn iv(x: f64) -> Interval {
    Interval::point(x)
}

fn div_up(x: f64, y: f64) -> f64 {
    if y <= 0.0 {
        f64::INFINITY
    } else {
        (iv(x) / iv(y)).hi()
    }
}

fn mul_up(x: f64, y: f64) -> f64 {
    (iv(x) * iv(y)).hi()
}

fn add_up(x: f64, y: f64) -> f64 {
    (iv(x) + iv(y)).hi()
}

/// Upper bound of `∫_{t0}^{t1} t^k (1 - a t/2)₊ (1 - b t/2)₊ dt` for
/// `a, b ≥ 0`.
fn tent_moment(k: i32, a: f64, b: f64, t0: f64, t1: f64) -> f64 {
    if !(t1 > t0) {
        return 0.0;
    }
    let m = a.max(b);
    let (cap, cap_hi) = if m > 0.0 {
        let r = iv(2.0) / iv(m);
        (r.lo(), r.hi())
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    let end = t1.min(cap);
    let mut total = 0.0;
    if end > t0 {
        let (ia, ib) = (iv(a), iv(b));
        let p = |t: f64| {
            let t = iv(t);
            let k1 = iv((k + 1) as f64);
            let k2 = iv((k + 2) as f64);
            let k3 = iv((k + 3) as f64);
            t.powi((k + 1) as u32) / k1 - (ia + ib) * iv(0.5) * t.powi((k + 2) as u32) / k2
                + ia * ib * iv(0.25) * t.powi((k + 3) as u32) / k3
        };
        total = (p(end) - p(t0)).hi().max(0.0);
    }
    let gap_end = t1.min(cap_hi);
    if gap_end > end.max(t0) {
        // Rounding gap below the exact end of the tent support.
        let lo = end.max(t0);
        total = add_up(total, mul_up((iv(gap_end) - iv(lo)).hi(), iv(gap_end).powi(k as u32).hi()));
    }
    total
}

/// Plain moment `∫_{t0}^{t1} t^k dt`, rounded up.
fn moment(k: i32, t0: f64, t1: f64) -> f64 {
    tent_moment(k, 0.0, 0.0, t0, t1)
}

impl Enclosable for Integrand {
    fn value(&self, theta: Interval, phi: Interval) -> Result<Interval, XiError> {
        self.eval(theta, phi)
    }

    fn slopes(&self, th: Interval, ph: Interval) -> Slopes {
        let (c, s) = (th.cos(), th.sin());
        let (ca, sa) = (ph.cos().abs(), ph.sin().abs());
        let (c_lo, c_hi, s_lo, s_hi) = (c.lo().max(0.0), c.hi(), s.lo().max(0.0), s.hi());
        // Lower bounds of |ω2| and |ω3|.
        let a = (s * ca).lo().max(0.0);
        let b = (s * sa).lo().max(0.0);
        let sigma = (ca + sa).hi().min(SQRT_2.next_up());
        // Beyond 2/max(|ω2|, |ω3|) ≤ 2√2/sin θ the tents vanish.
        let tent_end = div_up(2.0, a.max(b)).min(div_up(2.0 * SQRT_2.next_up(), s_lo));
        match self {
            Integrand::Xi3 | Integrand::NegPart | Integrand::H1 => {
                let (k_p, p_max) = (1.5, 0.75);
                let end = match self {
                    Integrand::Xi3 => div_up(2.0, c_lo),
                    Integrand::NegPart => div_up(1.0, c_lo),
                    _ => div_up(0.5, c_lo),
                };
                let lim = end.min(tent_end);
                let m3 = moment(3, 0.0, lim);
                let mut d_theta = add_up(
                    mul_up(mul_up(k_p, s_hi), tent_moment(3, a, b, 0.0, lim)),
                    mul_up(mul_up(0.5 * p_max, c_hi), mul_up(sigma, m3)),
                );
                if let Integrand::H1 = self {
                    // h1 stops at the jump of F11 at t = 1/(2 cos θ), which
                    // moves with θ at rate sin θ/(2 cos² θ).
                    let edge = div_up(0.5, c_lo);
                    let jump = mul_up(p_max, mul_up(edge, edge));
                    let rate = div_up(s_hi, mul_up(2.0, (iv(c_lo) * iv(c_lo)).lo()));
                    d_theta = add_up(d_theta, mul_up(jump, rate));
                }
                Slopes {
                    magnitude: mul_up(p_max, tent_moment(2, a, b, 0.0, lim)),
                    d_theta,
                    d_phi: mul_up(mul_up(0.5 * p_max, s_hi), mul_up(sigma, m3)),
                }
            }
            Integrand::TildeWithF => {
                let t0 = (iv(1.0) / iv(c_hi)).lo();
                let t1 = tent_end;
                if !(t1 > t0) {
                    return Slopes {
                        magnitude: 0.0,
                        d_theta: 0.0,
                        d_phi: 0.0,
                    };
                }
                let p_max = mul_up(0.5, ((iv(t1) * iv(c_hi)) - iv(1.0)).hi().max(0.0));
                let m3 = moment(3, t0, t1);
                Slopes {
                    magnitude: mul_up(p_max, tent_moment(2, a, b, t0, t1)),
                    d_theta: add_up(
                        mul_up(mul_up(0.5, s_hi), tent_moment(3, a, b, t0, t1)),
                        mul_up(mul_up(0.5 * p_max, c_hi), mul_up(sigma, m3)),
                    ),
                    d_phi: mul_up(mul_up(0.5 * p_max, s_hi), mul_up(sigma, m3)),
                }
            }
            Integrand::TildeNoF => {
                let start = iv(1.0) / c;
                let stop = iv(2.0) / (s * ca);
                let t0 = start.lo().min(stop.lo()).max(0.0);
                let t1 = start.hi().max(stop.hi());
                let p_max = mul_up(
                    0.5,
                    ((iv(t1) * iv(c_hi)) - iv(1.0))
                        .mag()
                        .max(((iv(t0) * iv(c_lo)) - iv(1.0)).mag()),
                );
                // The integrand at the moving upper limit U = 2/(sin θ |cos φ|).
                let u = stop.hi();
                let at_u = mul_up(p_max, mul_up(u, u));
                let ca_lo = ca.lo();
                let du_theta = div_up(mul_up(2.0, c_hi), (iv(s_lo) * iv(s_lo) * iv(ca_lo)).lo());
                let du_phi = div_up(mul_up(2.0, sa.hi()), (iv(s_lo) * iv(ca_lo) * iv(ca_lo)).lo());
                Slopes {
                    magnitude: mul_up(p_max, moment(2, t0, t1)),
                    d_theta: add_up(mul_up(mul_up(0.5, s_hi), moment(3, t0, t1)), mul_up(at_u, du_theta)),
                    d_phi: mul_up(at_u, du_phi),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tent_moment_matches_closed_form() {
        // ∫_0^2 t (1 - t/2)² dt = 1/3.
        let m = tent_moment(1, 1.0, 1.0, 0.0, 2.0);
        assert!(m >= 1.0 / 3.0 && m < 1.0 / 3.0 + 1e-12);
        // Past the support the bound stays put.
        assert!((tent_moment(1, 1.0, 1.0, 0.0, 5.0) - m).abs() < 1e-12);
        assert!((moment(3, 0.0, 2.0) - 4.0).abs() < 1e-12);
    }

    /// Finite differences of the float integrand stay below the slope
    /// bounds on small boxes.
    #[test]
    fn slopes_dominate_finite_differences() {
        let kinds = [
            (Integrand::Xi3, 0.6),
            (Integrand::NegPart, 0.85),
            (Integrand::H1, 1.15),
            (Integrand::TildeWithF, 0.85),
            (Integrand::TildeNoF, 1.15),
        ];
        for (kind, theta) in kinds {
            for phi in [0.05, 0.3, 0.6] {
                let r = 1e-3;
                let sl = kind.slopes(Interval::new(theta - r, theta + r), Interval::new(phi - r, phi + r));
                let h = 1e-6;
                let v = kind.eval(theta, phi).unwrap();
                let dt = (kind.eval(theta + h, phi).unwrap() - kind.eval(theta - h, phi).unwrap()) / (2.0 * h);
                let dp = (kind.eval(theta, phi + h).unwrap() - kind.eval(theta, phi - h).unwrap()) / (2.0 * h);
                assert!(v.abs() <= sl.magnitude, "{kind:?} {v} {sl:?}");
                assert!(dt.abs() <= sl.d_theta, "{kind:?} θ {dt} {sl:?}");
                assert!(dp.abs() <= sl.d_phi, "{kind:?} φ {dp} {sl:?}");
            }
        }
    }

    #[test]
    fn interval_value_encloses_float_value() {
        for kind in [Integrand::Xi3, Integrand::NegPart, Integrand::H1, Integrand::TildeWithF, Integrand::TildeNoF] {
            let (t, p) = (1.1, 0.4);
            let f = kind.eval(t, p).unwrap();
            let i = kind.eval(Interval::point(t), Interval::point(p)).unwrap();
            assert!(i.contains(f), "{kind:?} {f} {i}");
        }
    }
}
