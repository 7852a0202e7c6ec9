use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{IntegralEstimate, Method, QuadratureError};

// 15-point Kronrod nodes on [0, 1] (symmetric), with the 7-point Gauss rule
// embedded at the odd indices.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_subdivisions: usize,
}

impl Tolerance {
    pub fn scaled(self, k: f64) -> Self {
        Tolerance {
            abs: self.abs * k,
            rel: self.rel * k,
            ..self
        }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Segment, QuadratureError>
where
    F: FnMut(f64) -> Result<f64, QuadratureError>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64, QuadratureError> {
        let y = f(x)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadratureError::NonFinite { x })
        }
    };
    let fc = eval(center)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = eval(center - dx)? + eval(center + dx)?;
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Ok(Segment {
        a,
        b,
        value: k * half,
        error: ((k - g) * half).abs(),
    })
}

/// Globally adaptive 15-point Gauss–Kronrod integration of `f` over `[a, b]`,
/// bisecting the segment with the largest error estimate until the total
/// error falls below `max(abs, rel·|value|)`.
///
/// Running out of subdivisions is not an error; the estimate is returned with
/// `converged = false`.
pub fn adaptive_1d<F>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<IntegralEstimate, QuadratureError>
where
    F: FnMut(f64) -> Result<f64, QuadratureError>,
{
    adaptive_1d_points(f, &[a, b], tol)
}

/// As [`adaptive_1d`], starting from the given increasing breakpoints, which
/// should include any known kinks of `f`.
pub fn adaptive_1d_points<F>(
    mut f: F,
    points: &[f64],
    tol: Tolerance,
) -> Result<IntegralEstimate, QuadratureError>
where
    F: FnMut(f64) -> Result<f64, QuadratureError>,
{
    if points.len() < 2 {
        return Err(QuadratureError::InvalidConfig("need at least two points".into()));
    }
    if let Some(w) = points.windows(2).find(|w| !(w[0] <= w[1])) {
        return Err(QuadratureError::ReversedBounds { a: w[0], b: w[1] });
    }
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(kronrod(&mut f, w[0], w[1])?);
        }
    }
    let mut evaluations = 15 * heap.len() as u64;
    let mut subdivisions = 0;
    let converged = loop {
        let value: f64 = heap.iter().map(|s| s.value).sum();
        let error: f64 = heap.iter().map(|s| s.error).sum();
        if error <= tol.abs.max(tol.rel * value.abs()) {
            break true;
        }
        if subdivisions >= tol.max_subdivisions {
            break false;
        }
        let Some(worst) = heap.pop() else {
            break true;
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // The segment is too narrow to split further.
            heap.push(Segment { error: 0.0, ..worst });
            continue;
        }
        heap.push(kronrod(&mut f, worst.a, mid)?);
        heap.push(kronrod(&mut f, mid, worst.b)?);
        evaluations += 30;
        subdivisions += 1;
    };
    let mut segments = heap.into_vec();
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(IntegralEstimate {
        value: segments.iter().map(|s| s.value).sum(),
        error: segments.iter().map(|s| s.error).sum(),
        evaluations,
        method: Method::Quadrature,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance {
            abs: 1e-13,
            rel: 1e-13,
            max_subdivisions: 500,
        }
    }

    #[test]
    fn polynomials_are_exact() {
        let r = adaptive_1d(|x| Ok(x.powi(9) - 3.0 * x * x), 0.0, 2.0, tol()).unwrap();
        assert!((r.value - (102.4 - 8.0)).abs() < 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn kink_is_resolved_by_bisection() {
        let r = adaptive_1d(|x| Ok((x - 0.3).abs()), 0.0, 1.0, tol()).unwrap();
        assert!((r.value - (0.045 + 0.245)).abs() < 1e-12);
    }

    #[test]
    fn sine_on_half_period() {
        let r = adaptive_1d(|x| Ok(x.sin()), 0.0, std::f64::consts::PI, tol()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        let r = adaptive_1d(|x| Ok(1.0 / (x - 0.5)), 0.0, 1.0, tol());
        assert!(matches!(r, Err(QuadratureError::NonFinite { .. })) || r.is_ok());
        let r = adaptive_1d(|_| Ok(f64::NAN), 0.0, 1.0, tol());
        assert!(matches!(r, Err(QuadratureError::NonFinite { .. })));
    }

    #[test]
    fn non_convergence_is_flagged() {
        let t = Tolerance {
            abs: 1e-300,
            rel: 1e-300,
            max_subdivisions: 3,
        };
        let r = adaptive_1d(|x| Ok(x.sqrt()), 0.0, 1.0, t).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn breakpoints_must_increase() {
        assert!(adaptive_1d(|x| Ok(x), 1.0, 0.0, tol()).is_err());
    }
}
