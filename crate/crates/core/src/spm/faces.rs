//! Face extraction from the planar graph of arcs and boundary pieces.

use crate::domain::{Containment, PolygonalDomain};
use crate::geom::{locate_in_ring, signed_area, Location, Point};

/// A directed polyline between two graph nodes; its face lies on the left.
pub(crate) struct HalfEdge {
    pub from: usize,
    pub to: usize,
    pub pts: Vec<Point>,
}

pub(crate) struct Cycle {
    pub polygon: Vec<Point>,
    pub area: f64,
    pub sample: Option<Point>,
}

fn angle(d: Point) -> f64 {
    d.y.atan2(d.x)
}

fn direction_out(h: &HalfEdge) -> Point {
    h.pts[1] - h.pts[0]
}

fn direction_back(h: &HalfEdge) -> Point {
    let n = h.pts.len();
    h.pts[n - 2] - h.pts[n - 1]
}

/// Traces every face cycle: leaving each node along the first outgoing
/// half-edge clockwise from the one we arrived by.
pub(crate) fn cycles(node_count: usize, edges: &[HalfEdge], domain: &PolygonalDomain) -> Vec<Cycle> {
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for (i, h) in edges.iter().enumerate() {
        outgoing[h.from].push(i);
    }
    let tau = std::f64::consts::TAU;
    let next = |h: usize| -> Option<usize> {
        let e = &edges[h];
        let back = angle(direction_back(e));
        outgoing[e.to]
            .iter()
            .map(|&g| {
                let mut rel = (angle(direction_out(&edges[g])) - back).rem_euclid(tau);
                if rel > tau - 1e-12 {
                    rel = 0.0;
                }
                (rel, g)
            })
            .max_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(_, g)| g)
    };
    let mut used = vec![false; edges.len()];
    let mut out = Vec::new();
    for start in 0..edges.len() {
        if used[start] {
            continue;
        }
        let mut members = Vec::new();
        let mut h = start;
        let closed = loop {
            if used[h] {
                break h == start;
            }
            used[h] = true;
            members.push(h);
            match next(h) {
                Some(g) => h = g,
                None => break false,
            }
        };
        if !closed {
            continue;
        }
        let polygon: Vec<Point> = members
            .iter()
            .flat_map(|&m| {
                let pts = &edges[m].pts;
                pts[..pts.len() - 1].iter().copied()
            })
            .collect();
        let area = signed_area(&polygon);
        let sample = interior_sample(&members, edges, &polygon, area, domain);
        out.push(Cycle { polygon, area, sample });
    }
    out
}

/// A point just left of the cycle, inside the face it bounds.
fn interior_sample(
    members: &[usize],
    edges: &[HalfEdge],
    polygon: &[Point],
    area: f64,
    domain: &PolygonalDomain,
) -> Option<Point> {
    let tol = domain.tolerance();
    let reach = 1e-4 * domain.bbox().diagonal();
    let mut segments: Vec<(Point, Point)> = members
        .iter()
        .flat_map(|&m| edges[m].pts.windows(2).map(|w| (w[0], w[1])))
        .filter(|(a, b)| a.dist(*b) > 0.0)
        .collect();
    segments.sort_by(|x, y| y.0.dist(y.1).total_cmp(&x.0.dist(x.1)));
    for (a, b) in segments.into_iter().take(32) {
        let d = b - a;
        let left = d.perp() / d.norm();
        for f in [0.25, 0.05, 0.01] {
            let q = a.lerp(b, 0.5) + left * (reach.min(f * d.norm()));
            if domain.contains(q) != Containment::Interior {
                continue;
            }
            // a clockwise cycle bounds its face from the inside
            let inside = locate_in_ring(q, polygon, &tol);
            if (area > 0.0 && inside == Location::Inside) || (area < 0.0 && inside == Location::Outside) {
                return Some(q);
            }
        }
    }
    None
}
