//! Geodesic distances, shortest path maps and approximate geodesic centers
//! in polygonal domains with holes.
//!
//! ```
//! use geodesic_center::{fixtures, GeodesicIndex, Point};
//!
//! let index = GeodesicIndex::new(fixtures::holed_square());
//! let (d, path) = index.distance(Point::new(2.0, 5.0), Point::new(8.0, 5.0)).unwrap();
//! assert!((d - (2.0 + 2.0 * 5f64.sqrt())).abs() < 1e-12);
//! assert_eq!(path.corners.len(), 2);
//! ```

pub mod center;
pub mod domain;
pub mod error;
pub mod fixtures;
pub mod geodesic;
pub mod geom;
pub mod oracle;
pub mod spm;
pub mod svg;
pub mod visibility;

pub use center::{
    approx_center, approx_diameter, grid_candidates, refine_center, two_approx_radius, CandidateSet, CenterEstimate,
    DiameterEstimate,
};
pub use domain::{validate, Containment, PolygonalDomain, RawDomain, ValidationReport};
pub use error::{Error, Result};
pub use geodesic::{
    corner_distance_table, CornerTable, DistanceField, GeodesicIndex, GeodesicPath, RootLabel, ShortestPathTree,
};
pub use geom::{Point, Tolerance};
pub use spm::{build_spm, farthest_neighbors, phi, FarthestNeighbors, ShortestPathMap, SpmVertex, VertexClass};
pub use visibility::{visible, visible_corners, VisibilityGraph};
