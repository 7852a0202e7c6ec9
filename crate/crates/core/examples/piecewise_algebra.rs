//! Exact piecewise-polynomial algebra on the profiles `F` and `f`.
//!
//! `cargo run --example piecewise_algebra`

use riesz_average::piecewise::{make_big_f, make_f_piece, make_f_tilde13, make_small_f};
use riesz_average::Interval;

fn main() {
    let big_f = make_big_f::<f64>();
    let small_f = make_small_f::<f64>();

    println!("F breakpoints: {:?}", big_f.breakpoints());
    for x in [-1.75, -0.25, 0.25, 0.75, 1.25, 1.75] {
        println!("F({x:>5}) = {:>8.4}   f({x:>5}) = {:.4}", big_f.eval(x), small_f.eval(x));
    }

    // ∫ t² F(t ω1) f(t ω2) f(t ω3) dt for one direction, assembled from products.
    let (w1, w2, w3) = (0.8, 0.6 * 0.6, 0.6 * 0.8);
    let integrand = big_f
        .scale_arg(w1)
        .and_then(|p| p.mul(&small_f.scale_arg(w2)?))
        .and_then(|p| p.mul(&small_f.scale_arg(w3)?))
        .expect("product")
        .mul_monomial(2);
    let (lo, hi) = integrand.support().expect("nonzero");
    println!("\nintegrand has {} pieces on [{lo:.4}, {hi:.4}]", integrand.pieces().len());
    println!("∫ t² F f f dt over t ≥ 0 = {:.10}", integrand.integral(0.0, hi).unwrap());

    // The same pieces in interval arithmetic give a rigorous enclosure.
    let fi = make_big_f::<Interval>()
        .scale_arg(Interval::point(w1))
        .expect("scale");
    println!("F(0.8 · 1.1) enclosed in {:?}", fi.eval(Interval::point(1.1)));

    println!("\nsplit of F(t ω1) at ω1 = {w1}");
    for i in 1..=4 {
        let piece = make_f_piece(i, w1).unwrap();
        let (a, b) = piece.support().unwrap();
        println!("  F1{i} on [{a:.4}, {b:.4}), ∫ = {:+.6}", piece.total_integral());
    }
    let tilde = make_f_tilde13(w1);
    println!("  F̃13(t) = {:?} (coefficients in t)", tilde.coeffs());
}
