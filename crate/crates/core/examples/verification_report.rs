//! Runs the full certificate and prints the per-term table.
//!
//! `cargo run --release --example verification_report [interval]`

use riesz_average::cases::{total_report, CaseConfig, Precision};

fn main() {
    let mut cfg = CaseConfig::default();
    if std::env::args().any(|a| a == "interval") {
        cfg.precision = Precision::Interval;
    }
    cfg.oracle = !std::env::args().any(|a| a == "no-oracle");
    let report = total_report(&cfg).expect("report");
    print!("{}", report.to_text());
    for r in &report.cases {
        println!("{:<8} {:>8.2?}", r.case_id.name(), r.elapsed);
    }
}
