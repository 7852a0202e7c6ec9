use std::f64::consts::{E, PI};

use proptest::prelude::*;

use riesz_average::cases::{eval_term, CaseConfig, Precision, Term};
use riesz_average::quadrature::{adaptive_1d, half_sphere_area, mc_halfsphere, Tolerance};

fn tight() -> Tolerance {
    Tolerance {
        abs: 1e-14,
        rel: 1e-14,
        max_subdivisions: 50,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gauss_kronrod_is_exact_up_to_degree_ten(
        coeffs in prop::collection::vec(-1.0..1.0f64, 1..=11),
        a in -2.0..2.0f64,
        len in 0.01..3.0f64,
    ) {
        let b = a + len;
        let p = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let antiderivative = |x: f64| {
            coeffs.iter().enumerate().rev().fold(0.0, |acc, (k, c)| acc * x + c / (k + 1) as f64) * x
        };
        let exact = antiderivative(b) - antiderivative(a);
        let r = adaptive_1d(|x| Ok(p(x)), a, b, tight()).unwrap();
        let scale: f64 = coeffs.iter().map(|c| c.abs()).sum::<f64>() * 5f64.powi(coeffs.len() as i32) * len;
        prop_assert!((r.value - exact).abs() < 1e-13 * scale.max(1.0), "{} vs {}", r.value, exact);
        prop_assert_eq!(r.evaluations, 15);
    }
}

/// Smooth test integrands on the upper half of `S²` with exact integrals.
fn smooth_cases() -> Vec<(&'static str, fn(&[f64]) -> f64, f64)> {
    vec![
        ("1", |_| 1.0, 2.0 * PI),
        ("ω1", |w| w[0], PI),
        ("ω1²", |w| w[0] * w[0], 2.0 * PI / 3.0),
        ("ω2²", |w| w[1] * w[1], 2.0 * PI / 3.0),
        ("exp ω1", |w| w[0].exp(), 2.0 * PI * (E - 1.0)),
    ]
}

#[test]
fn monte_carlo_brackets_exact_values_at_three_seeds() {
    for (name, f, exact) in smooth_cases() {
        for seed in [1, 2, 3] {
            let r = mc_halfsphere(|w| Ok(f(w)), 3, 200_000, seed).unwrap();
            let z = (r.value - exact).abs() / r.error.max(1e-300);
            assert!(z <= 4.0 || r.error == 0.0 && (r.value - exact).abs() < 1e-12, "{name} seed {seed}: z = {z}");
        }
    }
    assert!((half_sphere_area(3) - 2.0 * PI).abs() < 1e-14);
}

#[test]
fn standard_error_scales_with_sample_count() {
    let f = |w: &[f64]| Ok(w[0] * w[0] + w[1]);
    let mut ratios = Vec::new();
    for seed in 10..15 {
        let small = mc_halfsphere(f, 3, 100_000, seed).unwrap();
        let large = mc_halfsphere(f, 3, 200_000, seed + 100).unwrap();
        ratios.push(large.error / small.error);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let target = 1.0 / 2f64.sqrt();
    assert!((mean / target - 1.0).abs() < 0.2, "ratios {ratios:?}");
}

#[test]
fn interval_enclosures_contain_float_values() {
    let float = CaseConfig::default();
    let interval = CaseConfig {
        precision: Precision::Interval,
        quadrature: riesz_average::quadrature::QuadratureConfig {
            cells_per_radian: 120.0,
            ..Default::default()
        },
        ..CaseConfig::default()
    };
    for term in Term::ALL {
        let f = eval_term(term, &float).unwrap();
        let i = eval_term(term, &interval).unwrap();
        let enc = i.enclosure.expect("interval enclosure");
        let point = f.cross_check.unwrap_or(f.value.value);
        assert!(enc.contains(point), "{term}: {point} not in {enc:?}");
    }
}
