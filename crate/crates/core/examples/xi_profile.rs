//! The spherical profile ξ along a meridian and in higher dimensions.
//!
//! `cargo run --example xi_profile`

use std::f64::consts::FRAC_PI_2;

use riesz_average::xi::{angles_to_direction, xi_n, Direction, Frame};
use riesz_average::Interval;

fn main() {
    println!("{:>8} {:>12} {:>12} {:>12}", "θ", "ξ3(θ, 0)", "ξ3(θ, π/8)", "neg part");
    for k in 0..=10 {
        let theta = FRAC_PI_2 * k as f64 / 10.0;
        let a = xi_n(&angles_to_direction(theta, 0.0)).unwrap();
        let b = xi_n(&angles_to_direction(theta, FRAC_PI_2 / 4.0)).unwrap();
        let neg = Frame::new(theta, FRAC_PI_2 / 4.0)
            .and_then(|fr| fr.negative_part())
            .map(|v| format!("{v:>12.6}"))
            .unwrap_or_else(|_| format!("{:>12}", "-"));
        println!("{theta:>8.4} {a:>12.6} {b:>12.6} {neg}");
    }

    println!("\nξn on the first axis");
    for n in 2..=6 {
        let mut e = vec![0.0; n];
        e[0] = 1.0;
        println!("  n = {n}: {:.8}", xi_n(&Direction::new(e).unwrap()).unwrap());
    }

    let d = angles_to_direction(Interval::point(0.7), Interval::point(0.3));
    println!("\ninterval ξ3(0.7, 0.3) ∈ {:?}", xi_n(&d).unwrap());
}
