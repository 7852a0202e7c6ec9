use std::f64::consts::FRAC_PI_4;

use super::{adaptive_1d, adaptive_1d_points, IntegralEstimate, Method, QuadratureError, Tolerance};
use crate::regions::Domain;

/// `φ` breakpoints for `[lo, hi]`: the ends plus every multiple of `π/4`
/// strictly inside, where the integrands have kinks.
fn phi_points(lo: f64, hi: f64) -> Vec<f64> {
    let mut pts = vec![lo];
    let first = (lo / FRAC_PI_4).floor() as i64 + 1;
    let mut k = first;
    while (k as f64) * FRAC_PI_4 < hi {
        let p = k as f64 * FRAC_PI_4;
        if p > lo {
            pts.push(p);
        }
        k += 1;
    }
    pts.push(hi);
    pts
}

/// Oriented integral of `sin θ cos θ · g(θ, φ)` over `domain`, by nested
/// adaptive Gauss–Kronrod quadrature. The inner `φ` integrals run at a
/// quarter of the requested tolerance, and the reported error adds the outer
/// estimate to the `θ` range times the worst inner estimate.
pub fn integrate_domain<G>(domain: &Domain, g: G, tol: Tolerance) -> Result<IntegralEstimate, QuadratureError>
where
    G: Fn(f64, f64) -> Result<f64, QuadratureError>,
{
    let (a, b) = domain.theta_range();
    let (lo, hi) = (a.min(b), a.max(b));
    let inner_tol = tol.scaled(0.25);
    let mut inner_error = 0.0_f64;
    let mut inner_evals = 0_u64;
    let mut inner_converged = true;
    let outer = adaptive_1d(
        |theta| {
            let mut total = 0.0;
            for arc in &domain.arcs {
                let (p, q) = arc.bounds(theta);
                if !(q > p) {
                    continue;
                }
                let r = adaptive_1d_points(|phi| g(theta, phi), &phi_points(p, q), inner_tol)?;
                inner_error = inner_error.max(r.error);
                inner_evals += r.evaluations;
                inner_converged &= r.converged;
                total += r.value;
            }
            Ok(theta.sin() * theta.cos() * total)
        },
        lo,
        hi,
        tol,
    )?;
    let k = domain.factor as f64 * domain.orientation() as f64;
    Ok(IntegralEstimate {
        value: k * outer.value,
        error: domain.factor as f64 * (outer.error + 0.5 * (hi - lo) * inner_error),
        evaluations: outer.evaluations + inner_evals,
        method: Method::Quadrature,
        converged: outer.converged && inner_converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::{case_region, CaseId};

    fn tol() -> Tolerance {
        Tolerance {
            abs: 1e-12,
            rel: 1e-12,
            max_subdivisions: 500,
        }
    }

    #[test]
    fn phi_points_insert_quarter_turns() {
        let p = phi_points(-0.1, 1.0);
        assert_eq!(p.len(), 4);
        assert!((p[1] - 0.0).abs() < 1e-15 && (p[2] - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(phi_points(0.0, FRAC_PI_4), vec![0.0, FRAC_PI_4]);
    }

    #[test]
    fn area_of_part_a_is_pi_over_33() {
        let d = case_region(CaseId::C3A).domain;
        let r = integrate_domain(&d, |_, _| Ok(1.0), tol()).unwrap();
        assert!((r.value - std::f64::consts::PI / 33.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn reversed_domain_is_negative() {
        let d = case_region(CaseId::C3D).domain;
        assert_eq!(d.orientation(), -1);
        let r = integrate_domain(&d, |_, _| Ok(1.0), tol()).unwrap();
        assert!(r.value < 0.0);
    }
}
