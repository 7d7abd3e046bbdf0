//! Certified center estimates: 2-approximation, grid, then refinement.
//!
//! cargo run --release --example geodesic_center [eps] [out.svg]

use geodesic_center::{approx_center, fixtures, grid_candidates, svg, two_approx_radius, GeodesicIndex, Point};

fn main() {
    let eps: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(0.1);
    let svg_path = std::env::args().nth(2);
    let cases = [
        ("unit square", fixtures::unit_square()),
        ("triangle", fixtures::equilateral_triangle()),
        ("holed square", fixtures::holed_square()),
        ("three lobes", fixtures::three_lobes()),
    ];
    for (name, domain) in cases {
        let index = GeodesicIndex::new(domain);
        let (l2, u2) = two_approx_radius(&index, index.domain().corner(0)).unwrap();
        let est = approx_center(&index, eps).expect("eps in range");
        let fine = est.refined(&index, 1e-7).unwrap();
        println!("{name}:");
        println!("  from a corner   rad in [{l2:.6}, {u2:.6}]");
        println!(
            "  grid, eps {eps}   rad in [{:.6}, {:.6}], c = {:?}, {} candidates",
            est.lower, est.upper, est.c, est.candidates_evaluated
        );
        println!("  refined         U = {:.9}, c = {:?}", fine.upper, fine.c);
        for w in &fine.witnesses {
            println!("    witness {:?} {:?}", w.pos, w.class);
        }
        if !est.near_ties.is_empty() {
            println!("  {} other grid candidates tie with the best", est.near_ties.len());
        }
        if name == "three lobes" {
            println!(
                "  distance to the symmetry point {:.2e}",
                fine.c.dist(Point::new(0.0, 0.0))
            );
            if let Some(path) = &svg_path {
                let grid = grid_candidates(index.domain(), eps).unwrap();
                std::fs::write(path, svg::center_svg(&index, &fine, Some(&grid))).unwrap();
                println!("  wrote {path}");
            }
        }
    }
}
