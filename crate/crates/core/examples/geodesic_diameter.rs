//! Grid bounds on the geodesic diameter. Since the radius is at least half
//! the diameter, twice the radius upper bound caps the diameter too.
//!
//! cargo run --release --example geodesic_diameter

use geodesic_center::{approx_center, approx_diameter, fixtures, GeodesicIndex};

fn main() {
    for (name, domain) in [
        ("unit square", fixtures::unit_square()),
        ("holed square", fixtures::holed_square()),
    ] {
        let index = GeodesicIndex::new(domain);
        let diam = approx_diameter(&index, 0.1).expect("eps in range");
        let center = approx_center(&index, 0.1).expect("eps in range");
        println!(
            "{name}: diam in [{:.6}, {:.6}] realized by {:?}; 2 U_rad = {:.6}",
            diam.lower,
            diam.upper,
            diam.pair,
            2.0 * center.upper
        );
    }
}
