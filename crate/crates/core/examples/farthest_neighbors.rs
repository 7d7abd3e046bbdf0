//! Farthest neighbors: Phi and the map vertices attaining it.
//!
//! In a convex polygon they are corners; behind a hole they can be interior
//! points where three or more shortest paths meet.
//!
//! cargo run --release --example farthest_neighbors

use geodesic_center::oracle::brute_phi;
use geodesic_center::{farthest_neighbors, fixtures, GeodesicIndex, Point};

fn main() {
    let cases = [
        ("unit square", fixtures::unit_square(), Point::new(0.5, 0.5)),
        ("holed square", fixtures::holed_square(), Point::new(2.0, 5.0)),
        ("three lobes", fixtures::three_lobes(), Point::new(0.0, 0.0)),
    ];
    for (name, domain, p) in cases {
        let index = GeodesicIndex::new(domain);
        let far = farthest_neighbors(&index, p).expect("point lies in the domain");
        let brute = brute_phi(&index, p, 200).expect("point lies in the domain");
        println!("{name}: Phi{p:?} = {:.9}, sampled {:.9}", far.phi, brute.value);
        for w in &far.witnesses {
            let roots: Vec<String> = w.roots.iter().map(|r| r.to_string()).collect();
            println!("  {:?} {:?} roots [{}]", w.pos, w.class, roots.join(", "));
        }
    }
}
