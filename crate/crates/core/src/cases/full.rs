use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::Serialize;

use super::CaseError;
use crate::quadrature::{adaptive_1d, integrate_domain, mc_halfsphere, IntegralEstimate, QuadratureConfig};
use crate::regions::{case_region, ArcEndpoint, CaseId, Domain, PhiArc, ThetaBound};
use crate::xi::{angles_to_direction, xi3, xi_n, Direction, Frame};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FullMethod {
    MonteCarlo,
    DirectQuadrature,
}

/// `∫ ω1 ξ_n(ω) dσ` over the half sphere `ω1 ≥ 0` of `S^{n-1}`, without
/// the decomposition.
///
/// Monte Carlo works in any dimension. Direct quadrature is available for
/// `n = 2` (one angle) and `n = 3` (two angles, reduced by the symmetries
/// `φ ↦ -φ` and `φ ↦ π/2 - φ`).
pub fn full_integral(n: usize, method: FullMethod, cfg: &QuadratureConfig) -> Result<IntegralEstimate, CaseError> {
    cfg.validate()?;
    if n < 2 {
        return Err(CaseError::Unsupported(format!("dimension {n} is below 2")));
    }
    match method {
        FullMethod::MonteCarlo => Ok(mc_halfsphere(
            |w| {
                let d = Direction::new(w.to_vec())?;
                Ok(w[0] * xi_n(&d)?)
            },
            n,
            cfg.mc_samples,
            cfg.seed,
        )?),
        FullMethod::DirectQuadrature if n == 2 => {
            let r = adaptive_1d(
                |th| {
                    let d = Direction::new(vec![th.cos(), th.sin()])?;
                    Ok(th.cos() * xi_n(&d)?)
                },
                0.0,
                FRAC_PI_2,
                cfg.tolerance(),
            )?;
            Ok(r.scaled(2.0))
        }
        FullMethod::DirectQuadrature if n == 3 => {
            let domain = Domain::rectangle(
                ThetaBound::PiFraction { num: 0, den: 1 },
                ThetaBound::PiFraction { num: 1, den: 2 },
                PhiArc::new(ArcEndpoint::pi(0, 1), ArcEndpoint::pi(1, 4)),
                4,
            );
            let r = integrate_domain(&domain, |th, ph| Ok(xi3(&angles_to_direction(th, ph))?), cfg.tolerance())?;
            Ok(r.scaled(2.0))
        }
        FullMethod::DirectQuadrature => Err(CaseError::Unsupported(format!(
            "direct quadrature in dimension {n}; use Monte Carlo"
        ))),
    }
}

/// Oriented integral of a decomposition region with its tabulated formula.
pub fn eval_region(id: CaseId, cfg: &QuadratureConfig) -> Result<IntegralEstimate, CaseError> {
    cfg.validate()?;
    let region = case_region(id);
    let formula = region.formula;
    Ok(integrate_domain(
        &region.domain,
        |th, ph| Ok(formula.eval(&Frame::new(th, ph)?)?),
        cfg.tolerance(),
    )?)
}

/// Sum of all fifteen region integrals, which equals `I_3`.
pub fn decomposition_total(cfg: &QuadratureConfig) -> Result<IntegralEstimate, CaseError> {
    let parts = CaseId::ALL
        .par_iter()
        .map(|&id| eval_region(id, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let mut total = parts[0];
    for p in &parts[1..] {
        total.value += p.value;
        total.error += p.error;
        total.evaluations += p.evaluations;
        total.converged &= p.converged;
    }
    Ok(total)
}
