//! Checks each printed closed-form expression against an independent
//! evaluation and reports where the printed version deviates.
//!
//! `cargo run --release --example closed_form_audit`

use riesz_average::cases::{catalog, verify_closed_form};

fn main() {
    for entry in catalog() {
        let c = verify_closed_form(entry.name).unwrap();
        print!(
            "{:<22} {:>11.3e} on {} samples  {}",
            entry.name,
            c.max_deviation,
            c.samples,
            if c.passed { "ok" } else { "deviates" }
        );
        match (c.printed_integral, c.reference_integral) {
            (Some(p), Some(r)) => println!("   ∫ printed {p:+.6}, reference {r:+.6}"),
            _ => println!(),
        }
    }
}
