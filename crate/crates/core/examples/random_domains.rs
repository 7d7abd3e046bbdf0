//! Seeded random domains, written in the interchange format.
//!
//! cargo run --example random_domains [seed]

use geodesic_center::oracle::{random_domain, RandomDomainSpec};
use geodesic_center::validate;

fn main() {
    let seed = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(0);
    for (name, spec) in [
        ("holed", RandomDomainSpec::default()),
        ("simple", RandomDomainSpec::simple()),
    ] {
        let domain = random_domain(seed, spec);
        let raw = domain.to_raw();
        println!(
            "{name}: {} corners, {} holes, valid = {}",
            domain.corner_count(),
            domain.hole_count(),
            validate(&raw).ok
        );
        println!("{}", raw.to_json());
    }
}
