//! Validates a well-formed domain and a broken one.
//!
//! cargo run --example validate_domain

use geodesic_center::{validate, Point, RawDomain};

fn main() {
    let p = |x: f64, y: f64| Point::new(x, y);
    let good = RawDomain::new(
        vec![p(0., 0.), p(10., 0.), p(10., 10.), p(0., 10.)],
        vec![vec![p(4., 4.), p(6., 4.), p(6., 6.), p(4., 6.)]],
    );
    // the hole pokes out of the outer ring
    let bad = RawDomain::new(
        vec![p(0., 0.), p(10., 0.), p(10., 10.), p(0., 10.)],
        vec![vec![p(8., 8.), p(12., 8.), p(12., 12.), p(8., 12.)]],
    );
    for (name, raw) in [("good", &good), ("bad", &bad)] {
        let report = validate(raw);
        println!("{name}: ok = {}", report.ok);
        for c in &report.corrections {
            println!("  corrected: {c}");
        }
        for v in &report.violations {
            println!("  violation: {v:?}");
        }
    }
}
