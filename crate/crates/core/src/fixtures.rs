//! Small named domains used by tests, examples and the CLI.

use crate::domain::PolygonalDomain;
use crate::geom::Point;

fn ring(coords: &[(f64, f64)]) -> Vec<Point> {
    coords.iter().map(|&(x, y)| Point::new(x, y)).collect()
}

pub fn unit_square() -> PolygonalDomain {
    PolygonalDomain::from_rings(ring(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]), vec![]).expect("valid fixture")
}

/// Equilateral triangle with unit sides.
pub fn equilateral_triangle() -> PolygonalDomain {
    let h = 3f64.sqrt() / 2.0;
    PolygonalDomain::from_rings(ring(&[(0., 0.), (1., 0.), (0.5, h)]), vec![]).expect("valid fixture")
}

/// `[0,10]^2` with the square hole `[4,6]^2`.
pub fn holed_square() -> PolygonalDomain {
    PolygonalDomain::from_rings(
        ring(&[(0., 0.), (10., 0.), (10., 10.), (0., 10.)]),
        vec![ring(&[(4., 4.), (4., 6.), (6., 6.), (6., 4.)])],
    )
    .expect("valid fixture")
}

/// Threefold symmetric domain: a small hub with three rooms, each reached
/// through a narrow neck.
///
/// Each room holds a plug facing the neck and two thin bars that almost touch,
/// leaving a narrow corridor between them. The plug hides the corridor from
/// the hub, so the farthest point of a room lies inside its corridor and is
/// reached by paths entering from both ends. The origin is the center.
pub fn three_lobes() -> PolygonalDomain {
    let rot = |pts: &[(f64, f64)], k: usize| -> Vec<Point> {
        let a = k as f64 * 2.0 * std::f64::consts::PI / 3.0;
        pts.iter().map(|&(x, y)| Point::new(x, y).rotate(a)).collect()
    };
    let room = [
        (1.5, -0.4),
        (2.5, -0.4),
        (2.5, -2.4),
        (8.3, -2.4),
        (8.3, 2.4),
        (2.5, 2.4),
        (2.5, 0.4),
        (1.5, 0.4),
    ];
    let plug = [(3.0, -2.0), (3.0, 2.0), (3.5, 2.0), (3.5, -2.0)];
    let upper = [(3.6, 0.05), (3.6, 0.35), (8.0, 0.35), (8.0, 0.05)];
    let lower = [(3.6, -0.35), (3.6, -0.05), (8.0, -0.05), (8.0, -0.35)];
    let outer: Vec<Point> = (0..3).flat_map(|k| rot(&room, k)).collect();
    let holes = (0..3)
        .flat_map(|k| [rot(&plug, k), rot(&upper, k), rot(&lower, k)])
        .collect();
    PolygonalDomain::from_rings(outer, holes).expect("valid fixture")
}
