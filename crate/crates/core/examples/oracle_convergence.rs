//! Dense lattice distances converge to the exact geodesic distance from above.
//!
//! cargo run --release --example oracle_convergence

use geodesic_center::oracle::{dense_distance, random_point};
use geodesic_center::{fixtures, GeodesicIndex};
use rand::SeedableRng;

fn main() {
    let index = GeodesicIndex::new(fixtures::three_lobes());
    let domain = index.domain();
    let diag = domain.bbox().diagonal();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let (s, t) = (random_point(domain, &mut rng), random_point(domain, &mut rng));
        let (exact, _) = index.distance(s, t).unwrap();
        print!("d = {exact:.6}:");
        for k in [20, 40, 80] {
            let dense = dense_distance(domain, s, t, k).unwrap();
            print!("  k={k} +{:.2e} (bound {:.2e})", dense - exact, 4.0 * diag / k as f64);
        }
        println!();
    }
}
