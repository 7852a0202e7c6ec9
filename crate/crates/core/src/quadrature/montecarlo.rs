use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{IntegralEstimate, Method, QuadratureError};

const BATCH: u64 = 1 << 16;

/// Area of the half sphere `{ω ∈ S^{n-1} : ω1 ≥ 0}`, `π^{n/2} / Γ(n/2)`.
pub fn half_sphere_area(n: usize) -> f64 {
    // Γ(n/2) by the recurrence from Γ(1) or Γ(1/2).
    let (mut gamma, mut x) = if n % 2 == 0 {
        (1.0, 1.0)
    } else {
        (std::f64::consts::PI.sqrt(), 0.5)
    };
    let target = n as f64 / 2.0;
    while x < target {
        gamma *= x;
        x += 1.0;
    }
    std::f64::consts::PI.powf(target) / gamma
}

/// Monte Carlo estimate of `∫ f dσ` over the half sphere `ω1 ≥ 0` in `R^n`.
///
/// Directions are normalized Gaussian vectors with the first coordinate
/// folded to be non-negative. Batch `k` draws from stream `k` of a ChaCha8
/// generator seeded with `seed`, and batch sums are combined in order, so the
/// result does not depend on the thread count.
pub fn mc_halfsphere<F>(f: F, n: usize, samples: u64, seed: u64) -> Result<IntegralEstimate, QuadratureError>
where
    F: Fn(&[f64]) -> Result<f64, QuadratureError> + Sync,
{
    if n < 2 {
        return Err(QuadratureError::InvalidConfig(format!("dimension {n} is below 2")));
    }
    if samples < 2 {
        return Err(QuadratureError::InvalidConfig("need at least two samples".into()));
    }
    let batches = samples.div_ceil(BATCH);
    let sums = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = BATCH.min(samples - b * BATCH);
            let mut omega = vec![0.0; n];
            let (mut s1, mut s2) = (0.0_f64, 0.0_f64);
            for _ in 0..count {
                let norm = loop {
                    for x in omega.iter_mut() {
                        *x = rng.sample(StandardNormal);
                    }
                    let norm = omega.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 1e-300 {
                        break norm;
                    }
                };
                for x in omega.iter_mut() {
                    *x /= norm;
                }
                omega[0] = omega[0].abs();
                let y = f(&omega)?;
                if !y.is_finite() {
                    return Err(QuadratureError::NonFinite { x: omega[0] });
                }
                s1 += y;
                s2 += y * y;
            }
            Ok((s1, s2))
        })
        .collect::<Result<Vec<_>, QuadratureError>>()?;
    let (s1, s2) = sums.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let m = samples as f64;
    let mean = s1 / m;
    let var = ((s2 - m * mean * mean) / (m - 1.0)).max(0.0);
    let area = half_sphere_area(n);
    Ok(IntegralEstimate {
        value: area * mean,
        error: area * (var / m).sqrt(),
        evaluations: samples,
        method: Method::MonteCarlo,
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn half_sphere_areas() {
        assert!((half_sphere_area(2) - PI).abs() < 1e-14);
        assert!((half_sphere_area(3) - 2.0 * PI).abs() < 1e-14);
        assert!((half_sphere_area(4) - PI * PI).abs() < 1e-13);
    }

    #[test]
    fn constant_integrand_gives_area() {
        let r = mc_halfsphere(|_| Ok(1.0), 3, 1000, 7).unwrap();
        assert!((r.value - 2.0 * PI).abs() < 1e-12);
        assert!(r.error < 1e-12);
    }

    #[test]
    fn first_moment_on_s2() {
        // ∫ ω1 over the half of S^2 with ω1 ≥ 0 is π.
        let r = mc_halfsphere(|w| Ok(w[0]), 3, 200_000, 1).unwrap();
        assert!((r.value - PI).abs() < 5.0 * r.error, "{r:?}");
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = mc_halfsphere(|w| Ok(w[1] * w[1]), 3, 150_000, 42).unwrap();
        let b = mc_halfsphere(|w| Ok(w[1] * w[1]), 3, 150_000, 42).unwrap();
        assert_eq!(a.value, b.value);
        let c = mc_halfsphere(|w| Ok(w[1] * w[1]), 3, 150_000, 43).unwrap();
        assert_ne!(a.value, c.value);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(mc_halfsphere(|_| Ok(1.0), 1, 100, 0).is_err());
        assert!(mc_halfsphere(|_| Ok(1.0), 3, 1, 0).is_err());
    }
}
