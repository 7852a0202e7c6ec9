//! The angular decomposition: regions, their formulas, and a partition check.
//!
//! `cargo run --example case_regions`

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use riesz_average::regions::{all_regions, classify, locate, signed_cover};

fn main() {
    for r in all_regions() {
        let (a, b) = r.domain.theta_range();
        println!(
            "{:<6} {:<14} θ ∈ [{a:.5}, {b:.5}]  orientation {:+}  copies {}",
            r.id.name(),
            r.formula.expr(),
            r.domain.orientation(),
            r.domain.factor,
        );
    }

    // Every direction in the fundamental cell is covered exactly once.
    let n = 200;
    let mut bad = 0;
    for i in 0..n {
        for j in 0..n {
            let theta = FRAC_PI_2 * (i as f64 + 0.5) / n as f64;
            let phi = -FRAC_PI_4 + FRAC_PI_2 * (j as f64 + 0.5) / n as f64;
            if signed_cover(theta, phi) != 1 {
                bad += 1;
            }
        }
    }
    println!("\n{} of {} grid points covered other than once", bad, n * n);

    for (theta, phi) in [(0.3, 0.1), (0.9, 0.05), (1.2, 0.7), (1.5, 0.2)] {
        let names: Vec<_> = locate(theta, phi).iter().map(|id| id.name()).collect();
        let (axis, sig) = classify(theta, phi);
        println!("({theta}, {phi}) in {}, dominant axis {axis}, signature {sig}", names.join(", "));
    }
}
