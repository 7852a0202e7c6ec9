use rayon::prelude::*;

use super::{IntegralEstimate, QuadratureError};
use crate::interval::Interval;
use crate::piecewise::PiecewiseError;
use crate::regions::Domain;
use crate::scalar::Scalar;
use crate::xi::XiError;

/// Bounds over a box of `(θ, φ)` on an inner integral `I` and its partial
/// derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Slopes {
    /// `sup |I|`.
    pub magnitude: f64,
    /// `sup |∂I/∂θ|`.
    pub d_theta: f64,
    /// `sup |∂I/∂φ|`.
    pub d_phi: f64,
}

/// An inner integral `I(θ, φ)` that can be enclosed at a point and bounded
/// with its slopes over a box.
pub trait Enclosable: Sync {
    fn value(&self, theta: Interval, phi: Interval) -> Result<Interval, XiError>;
    fn slopes(&self, theta: Interval, phi: Interval) -> Slopes;
}

/// Cell density for [`enclose_domain`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnclosureGrid {
    pub cells_per_radian: f64,
}

impl EnclosureGrid {
    fn count(&self, width: f64) -> usize {
        ((width * self.cells_per_radian).ceil() as usize).max(1)
    }
}

fn retryable(e: &XiError) -> bool {
    matches!(
        e,
        XiError::AmbiguousSign(_) | XiError::Piecewise(PiecewiseError::UnorderedBreakpoints(_))
    )
}

fn up_mul(a: f64, b: f64) -> f64 {
    (Interval::point(a) * Interval::point(b)).hi()
}

fn up_add(a: f64, b: f64) -> f64 {
    (Interval::point(a) + Interval::point(b)).hi()
}

/// Pointwise range of `I` over a box: the mean-value form around a sample
/// point, intersected with `[-sup |I|, sup |I|]`.
///
/// Sample points where breakpoint ordering cannot be certified are replaced
/// by others; if all fail the magnitude bound is used alone.
fn range<E: Enclosable + ?Sized>(e: &E, th: Interval, ph: Interval) -> Result<(Interval, u64), XiError> {
    let sl = e.slopes(th, ph);
    let crude = Interval::symmetric(sl.magnitude);
    let mut evals = 0;
    for (ft, fp) in [(0.5, 0.5), (0.31, 0.67), (0.69, 0.33), (0.23, 0.21), (0.81, 0.79)] {
        let pt = (th.lo() + ft * (th.hi() - th.lo())).clamp(th.lo(), th.hi());
        let pp = (ph.lo() + fp * (ph.hi() - ph.lo())).clamp(ph.lo(), ph.hi());
        evals += 1;
        match e.value(Interval::point(pt), Interval::point(pp)) {
            Ok(v) => {
                let rt = (Interval::point(pt) - Interval::point(th.lo()))
                    .hi()
                    .max((Interval::point(th.hi()) - Interval::point(pt)).hi());
                let rp = (Interval::point(pp) - Interval::point(ph.lo()))
                    .hi()
                    .max((Interval::point(ph.hi()) - Interval::point(pp)).hi());
                let spread = up_add(up_mul(sl.d_theta, rt), up_mul(sl.d_phi, rp));
                let centered = v + Interval::symmetric(spread);
                let r = centered.intersection(crude);
                debug_assert!(r.is_some(), "inconsistent bounds {centered} vs {crude}");
                return Ok((r.unwrap_or(centered), evals));
            }
            Err(err) if retryable(&err) => continue,
            Err(err) => return Err(err),
        }
    }
    Ok((crude, evals))
}

/// `∫∫ sin θ cos θ dθ dφ` over `[ta, tb] × [pa, pb]`.
fn weight(ta: Interval, tb: Interval, pa: f64, pb: f64) -> Interval {
    let (sa, sb) = (ta.sin(), tb.sin());
    Interval::point(0.5) * (sb * sb - sa * sa) * (Interval::point(pb) - Interval::point(pa))
}

/// Contribution of the `θ` strip between edges `ta` and `tb` and one `φ`
/// arc. The weight `sin θ cos θ` is nonnegative there, so a cell integral
/// lies in the weight integral times the range of `I`.
fn strip<E: Enclosable + ?Sized>(
    e: &E,
    ta: Interval,
    tb: Interval,
    lower: Interval,
    upper: Interval,
    grid: EnclosureGrid,
) -> Result<(Interval, u64), XiError> {
    let th = ta.hull(tb);
    let mut total = Interval::point(0.0);
    let mut evals = 0;
    // Part of the box only partially covered by the arc: the integral lies
    // between zero and the bound for the whole box.
    let mut sliver = |a: f64, b: f64| -> Result<(), XiError> {
        if b > a {
            let (v, n) = range(e, th, Interval::new(a, b))?;
            total = total + (weight(ta, tb, a, b) * v).hull(Interval::point(0.0));
            evals += n;
        }
        Ok(())
    };
    if lower.hi() < upper.lo() {
        sliver(lower.lo(), lower.hi())?;
        sliver(upper.lo(), upper.hi())?;
        let (a, b) = (lower.hi(), upper.lo());
        let m = grid.count(b - a);
        let edges: Vec<f64> = (0..=m)
            .map(|j| if j == m { b } else { a + (b - a) * j as f64 / m as f64 })
            .collect();
        for w in edges.windows(2) {
            if !(w[1] > w[0]) {
                continue;
            }
            let (v, n) = range(e, th, Interval::new(w[0], w[1]))?;
            total = total + weight(ta, tb, w[0], w[1]) * v;
            evals += n;
        }
    } else {
        sliver(lower.lo(), upper.hi())?;
    }
    Ok((total, evals))
}

/// Rigorous enclosure of the oriented integral of `sin θ cos θ · I(θ, φ)`
/// over `domain`.
///
/// The `θ` range is cut into strips whose outer edges are enclosures of the
/// exact bounds. Within a strip the arc endpoints are enclosed over the
/// whole strip; the `φ` range certainly inside the arc is cut into cells, and
/// the uncertain fringes are bounded between zero and the box integral.
pub fn enclose_domain<E: Enclosable + ?Sized>(
    e: &E,
    domain: &Domain,
    grid: EnclosureGrid,
) -> Result<IntegralEstimate, QuadratureError> {
    if !(grid.cells_per_radian >= 1.0) {
        return Err(QuadratureError::InvalidConfig("cells_per_radian must be at least 1".into()));
    }
    let ta: Interval = domain.theta_from.value();
    let tb: Interval = domain.theta_to.value();
    let sign = domain.orientation();
    let (lo, hi) = if sign > 0 { (ta, tb) } else { (tb, ta) };
    let (a, b) = (lo.hi(), hi.lo());
    if !(a < b) || lo.hi() < 0.0 || hi.lo() > std::f64::consts::FRAC_PI_2 {
        return Err(QuadratureError::ReversedBounds { a, b });
    }
    let n = grid.count(b - a);
    let mut edges = vec![lo];
    for k in 1..n {
        edges.push(Interval::point(a + (b - a) * k as f64 / n as f64));
    }
    edges.push(hi);
    let parts = edges
        .par_windows(2)
        .map(|w| {
            let th = w[0].hull(w[1]);
            let mut acc = Interval::point(0.0);
            let mut evals = 0;
            for arc in &domain.arcs {
                let (l, u) = arc.bounds(th);
                let (v, k) = strip(e, w[0], w[1], l, u, grid)?;
                acc = acc + v;
                evals += k;
            }
            Ok((acc, evals))
        })
        .collect::<Result<Vec<_>, XiError>>()?;
    let mut total = Interval::point(0.0);
    let mut evals = 0;
    for (v, k) in parts {
        total = total + v;
        evals += k;
    }
    let k = Interval::point(domain.factor as f64 * sign as f64);
    Ok(IntegralEstimate::from_interval(k * total, evals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::{case_region, CaseId};

    /// `I(θ, φ) = cos φ`, with exact slopes.
    struct CosPhi;

    impl Enclosable for CosPhi {
        fn value(&self, _: Interval, phi: Interval) -> Result<Interval, XiError> {
            Ok(phi.cos())
        }
        fn slopes(&self, _: Interval, _: Interval) -> Slopes {
            Slopes {
                magnitude: 1.0,
                d_theta: 0.0,
                d_phi: 1.0,
            }
        }
    }

    struct One;

    impl Enclosable for One {
        fn value(&self, _: Interval, _: Interval) -> Result<Interval, XiError> {
            Ok(Interval::point(1.0))
        }
        fn slopes(&self, _: Interval, _: Interval) -> Slopes {
            Slopes {
                magnitude: 1.0,
                d_theta: 0.0,
                d_phi: 0.0,
            }
        }
    }

    #[test]
    fn case_one_area() {
        // ∫_0^{π/4} sin θ cos θ dθ · 2π = π/2.
        let d = case_region(CaseId::Case1).domain;
        let r = enclose_domain(&One, &d, EnclosureGrid { cells_per_radian: 40.0 }).unwrap();
        let exact = std::f64::consts::FRAC_PI_2;
        assert!(r.lower() <= exact && exact <= r.upper(), "{r:?}");
        assert!(r.error < 1e-12, "{r:?}");
    }

    #[test]
    fn curved_domain_encloses_area() {
        let d = case_region(CaseId::C3A).domain;
        let r = enclose_domain(&One, &d, EnclosureGrid { cells_per_radian: 200.0 }).unwrap();
        let exact = std::f64::consts::PI / 33.0;
        assert!(r.lower() <= exact && exact <= r.upper(), "{r:?}");
    }

    #[test]
    fn oscillating_integrand_is_enclosed() {
        // ∫ cos φ over [0, 2π] vanishes.
        let d = case_region(CaseId::Case1).domain;
        let r = enclose_domain(&CosPhi, &d, EnclosureGrid { cells_per_radian: 100.0 }).unwrap();
        assert!(r.lower() <= 0.0 && 0.0 <= r.upper());
        assert!(r.error < 0.01);
    }
}
