//! Rigorous enclosures of every term and the resulting sign certificate.
//!
//! `cargo run --release --example interval_certificate [cells-per-radian]`

use riesz_average::cases::{dominance_certificate, eval_term, part_e_certificate, CaseConfig, Precision, Term};
use riesz_average::Interval;

fn main() {
    let mut cfg = CaseConfig {
        precision: Precision::Interval,
        ..CaseConfig::default()
    };
    if let Some(c) = std::env::args().nth(1).and_then(|a| a.parse().ok()) {
        cfg.quadrature.cells_per_radian = c;
    }

    for c in [dominance_certificate(), part_e_certificate()] {
        println!("{:<12} {}", c.name, if c.holds { "holds" } else { "FAILS" });
    }

    let mut total = Interval::point(0.0);
    for term in Term::ALL {
        let r = eval_term(term, &cfg).unwrap();
        let iv = r.enclosure.expect("interval mode encloses every term");
        println!("{:<8} [{:+.6}, {:+.6}]", term.name(), iv.lo(), iv.hi());
        total = total + iv;
    }
    println!("sum      [{:+.6}, {:+.6}]", total.lo(), total.hi());
    println!("I_3 < 0 certified: {}", total.hi() < 0.0);
}
