//! Shortest path map of a source: cells, bisector arcs, vertices, coverage.
//!
//! cargo run --release --example shortest_path_map [out.svg]

use geodesic_center::{build_spm, fixtures, svg, GeodesicIndex, Point, VertexClass};

fn main() {
    let index = GeodesicIndex::new(fixtures::holed_square());
    let map = build_spm(&index, Point::new(2.0, 5.0)).expect("source lies in the domain");

    println!("roots:");
    for r in &map.roots {
        println!("  {:>4} at {:?}, weight {:.6}", r.label.to_string(), r.pos, r.weight);
    }
    let count = |k| map.vertices.iter().filter(|v| v.class == k).count();
    println!(
        "{} vertices ({} corners, {} on edges, {} interior), {} arcs, {} cells",
        map.vertices.len(),
        count(VertexClass::Corner),
        count(VertexClass::BoundaryEdgeEndpoint),
        count(VertexClass::InteriorTriple),
        map.arcs.len(),
        map.cells.len()
    );
    for a in &map.arcs {
        println!(
            "  arc {}|{} {:?}, {} samples",
            a.roots.0,
            a.roots.1,
            a.kind,
            a.polyline.len()
        );
    }
    println!("coverage {:.9}", map.coverage);

    let x = Point::new(8.0, 4.9);
    println!("{x:?} lies in the cell of {}", map.locate(x).unwrap());

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, svg::spm_svg(&map)).expect("writable path");
        println!("wrote {path}");
    }
}
