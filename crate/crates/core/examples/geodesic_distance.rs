//! Geodesic distance, shortest path and shortest path tree around a hole.
//!
//! cargo run --example geodesic_distance

use geodesic_center::{fixtures, GeodesicIndex, Point};

fn main() {
    let index = GeodesicIndex::new(fixtures::holed_square());
    let domain = index.domain();
    let (s, t) = (Point::new(2.0, 5.0), Point::new(8.0, 5.0));

    let (d, path) = index.distance(s, t).expect("both points lie in the domain");
    println!("d(s, t) = {d:.12}  (2 + 2 sqrt 5 = {:.12})", 2.0 + 2.0 * 5f64.sqrt());
    println!("path: {:?}", path.points(domain));

    let spt = index.spt(s).expect("source lies in the domain");
    for v in 0..domain.corner_count() {
        let via: Vec<_> = spt.path_to(v).iter().map(|&c| domain.corner(c)).collect();
        println!("corner {v} {:?}: {:.6} via {:?}", domain.corner(v), spt.dist[v], via);
    }
}
