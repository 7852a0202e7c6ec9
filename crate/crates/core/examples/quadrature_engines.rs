//! The three integration engines on the full three-dimensional integral.
//!
//! `cargo run --release --example quadrature_engines`

use riesz_average::cases::{decomposition_total, full_integral, FullMethod};
use riesz_average::quadrature::{adaptive_1d, QuadratureConfig};

fn main() {
    let cfg = QuadratureConfig::default();

    let kink = adaptive_1d(|x| Ok((x - 0.3).abs()), 0.0, 1.0, cfg.tolerance()).unwrap();
    println!("∫₀¹ |x - 0.3| dx = {:.15} ({} evaluations)", kink.value, kink.evaluations);

    for (name, method) in [("direct quadrature", FullMethod::DirectQuadrature), ("Monte Carlo", FullMethod::MonteCarlo)] {
        let e = full_integral(3, method, &cfg).unwrap();
        println!("I_3 by {name:<18} {:+.6} ± {:.2e}", e.value, e.error);
    }
    let d = decomposition_total(&cfg).unwrap();
    println!("I_3 by region sum          {:+.6} ± {:.2e}", d.value, d.error);

    for n in [2, 4, 5] {
        let e = full_integral(n, FullMethod::MonteCarlo, &cfg).unwrap();
        println!("I_{n} by Monte Carlo          {:+.6} ± {:.2e}", e.value, e.error);
    }
}
