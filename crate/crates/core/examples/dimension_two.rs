//! The planar analogue: ξ2 on the quarter circle and its average, which is
//! negative.
//!
//! `cargo run --release --example dimension_two`

use riesz_average::cases::{full_integral, FullMethod};
use riesz_average::quadrature::QuadratureConfig;
use riesz_average::xi::{xi_n, Direction};

fn main() {
    for k in 0..=8 {
        let t = std::f64::consts::FRAC_PI_2 * k as f64 / 8.0;
        let v = xi_n(&Direction::new(vec![t.cos(), t.sin()]).unwrap()).unwrap();
        println!("ξ2({t:.4}) = {v:+.6}");
    }
    let cfg = QuadratureConfig::default();
    let q = full_integral(2, FullMethod::DirectQuadrature, &cfg).unwrap();
    let mc = full_integral(2, FullMethod::MonteCarlo, &cfg).unwrap();
    println!("I_2 = {:+.8} (quadrature), {:+.5} ± {:.1e} (Monte Carlo)", q.value, mc.value, mc.error);
}
