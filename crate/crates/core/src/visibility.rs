//! Segment-in-domain tests, visible corner sets and the corner visibility graph.
//!
//! The domain is closed: a segment that grazes a corner or runs along an
//! edge is visible as long as no part of it leaves the domain.

use serde::Serialize;

use crate::domain::{Containment, Edge, PolygonalDomain};
use crate::error::{Error, Result};
use crate::geom::{project_param, Point, Sign};

/// `true` iff the closed segment `ab` lies in the closed domain.
pub fn visible(domain: &PolygonalDomain, a: Point, b: Point) -> Result<bool> {
    for p in [a, b] {
        if domain.contains(p) == Containment::Outside {
            return Err(Error::OutsideDomain(p));
        }
    }
    Ok(segment_in_domain(domain, a, b))
}

/// Visibility without the endpoint membership check. Endpoints outside the
/// domain make the answer `false`.
pub(crate) fn segment_in_domain(domain: &PolygonalDomain, a: Point, b: Point) -> bool {
    let tol = domain.tolerance();
    let len = a.dist(b);
    if len <= tol.abs {
        return domain.contains(a) != Containment::Outside;
    }
    let (lo_x, hi_x) = (a.x.min(b.x) - tol.abs, a.x.max(b.x) + tol.abs);
    let (lo_y, hi_y) = (a.y.min(b.y) - tol.abs, a.y.max(b.y) + tol.abs);

    // parameters along ab where the segment touches the boundary
    let mut touches: Vec<f64> = Vec::new();
    for e in domain.edges() {
        let (c, d) = (e.a, e.b);
        if c.x.max(d.x) < lo_x || c.x.min(d.x) > hi_x || c.y.max(d.y) < lo_y || c.y.min(d.y) > hi_y {
            continue;
        }
        let o1 = tol.orient(a, b, c);
        let o2 = tol.orient(a, b, d);
        if o1 != Sign::Zero && o1 == o2 {
            continue;
        }
        let o3 = tol.orient(c, d, a);
        let o4 = tol.orient(c, d, b);
        if o3 != Sign::Zero && o3 == o4 {
            continue;
        }
        if o1 != Sign::Zero && o2 != Sign::Zero && o3 != Sign::Zero && o4 != Sign::Zero {
            // proper crossing of an edge interior
            return false;
        }
        let on_ab = |p: Point| {
            let t = project_param(p, a, b);
            (t * len >= -tol.abs && (t - 1.0) * len <= tol.abs).then_some(t.clamp(0.0, 1.0))
        };
        if o1 == Sign::Zero {
            if let Some(t) = on_ab(c) {
                touches.push(t);
            }
        }
        if o2 == Sign::Zero {
            if let Some(t) = on_ab(d) {
                touches.push(t);
            }
        }
        // a or b on cd only matter at the segment ends, which are probed below
    }
    touches.push(0.0);
    touches.push(1.0);
    touches.sort_by(f64::total_cmp);
    let min_gap = tol.abs / len;
    let mut prev = touches[0];
    for &t in &touches[1..] {
        if t - prev > min_gap {
            let m = a.lerp(b, 0.5 * (prev + t));
            if domain.contains(m) == Containment::Outside {
                return false;
            }
            prev = t;
        }
    }
    true
}

/// Corner ids visible from `p`.
pub fn visible_corners(domain: &PolygonalDomain, p: Point) -> Result<Vec<usize>> {
    if domain.contains(p) == Containment::Outside {
        return Err(Error::OutsideDomain(p));
    }
    Ok(visible_corners_unchecked(domain, p))
}

pub(crate) fn visible_corners_unchecked(domain: &PolygonalDomain, p: Point) -> Vec<usize> {
    (0..domain.corner_count())
        .filter(|&i| segment_in_domain(domain, p, domain.corner(i)))
        .collect()
}

/// Largest distance from `p` to a point it sees.
///
/// Between consecutive corner directions the nearest edge along a ray does
/// not change, so one ray per angular gap finds it and the farthest visible
/// point of that gap is where a bounding ray meets the edge.
pub fn visibility_radius(domain: &PolygonalDomain, p: Point) -> f64 {
    let tol = domain.tolerance();
    let mut angles: Vec<f64> = domain
        .corners()
        .iter()
        .map(|c| c.pos)
        .filter(|&c| c.dist(p) > tol.abs)
        .map(|c| (c.y - p.y).atan2(c.x - p.x))
        .collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let m = angles.len();
    let mut best: f64 = 0.0;
    for k in 0..m {
        let lo = angles[k];
        let hi = if k + 1 < m {
            angles[k + 1]
        } else {
            angles[0] + std::f64::consts::TAU
        };
        if hi - lo < 1e-12 {
            continue;
        }
        let dir = |a: f64| Point::new(a.cos(), a.sin());
        let mid = dir(0.5 * (lo + hi));
        let Some((t, e)) = first_hit(domain, p, mid, tol.abs) else {
            continue;
        };
        if domain.contains(p + mid * (0.5 * t)) == Containment::Outside {
            continue;
        }
        let (a, b) = (e.a, e.b);
        for d in [dir(lo), dir(hi)] {
            let den = d.cross(b - a);
            let q = if den.abs() < 1e-15 {
                if p.dist(a) > p.dist(b) {
                    a
                } else {
                    b
                }
            } else {
                a.lerp(b, ((a - p).cross(d) / den).clamp(0.0, 1.0))
            };
            best = best.max(p.dist(q));
        }
    }
    best
}

/// Nearest boundary edge hit by the ray `p + t*d`, `t > min_t`.
fn first_hit(domain: &PolygonalDomain, p: Point, d: Point, min_t: f64) -> Option<(f64, Edge)> {
    let mut out: Option<(f64, Edge)> = None;
    for e in domain.edges() {
        let ab = e.b - e.a;
        let den = d.cross(ab);
        if den.abs() < 1e-15 {
            continue;
        }
        let ap = e.a - p;
        let t = ap.cross(ab) / den;
        let u = ap.cross(d) / den;
        if t > min_t && (0.0..=1.0).contains(&u) && out.as_ref().is_none_or(|o| t < o.0) {
            out = Some((t, *e));
        }
    }
    out
}

/// Corner adjacency under mutual visibility, weighted by Euclidean length.
#[derive(Clone, Debug, Serialize)]
pub struct VisibilityGraph {
    n: usize,
    adjacency: Vec<Vec<(usize, f64)>>,
    #[serde(skip)]
    matrix: Vec<bool>,
}

impl VisibilityGraph {
    pub fn build(domain: &PolygonalDomain) -> Self {
        let n = domain.corner_count();
        let mut adjacency = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (domain.corner(i), domain.corner(j));
                if segment_in_domain(domain, a, b) {
                    let w = a.dist(b);
                    adjacency[i].push((j, w));
                    adjacency[j].push((i, w));
                    matrix[i * n + j] = true;
                    matrix[j * n + i] = true;
                }
            }
        }
        VisibilityGraph { n, adjacency, matrix }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Neighbors of `u` in increasing id order, with edge lengths.
    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adjacency[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    /// Whether every corner can reach every other.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geom::{segment_intersection, SegmentIntersection};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn visible_examples() {
        let d = fixtures::holed_square();
        assert!(!visible(&d, p(2., 5.), p(8., 5.)).unwrap());
        assert!(visible(&d, p(2., 5.), p(5., 2.)).unwrap());
        // grazes the bottom edge of the hole
        assert!(visible(&d, p(2., 4.), p(8., 4.)).unwrap());
    }

    #[test]
    fn visible_examples_agree_with_edge_crossings() {
        // independent check: no proper crossing against any boundary edge
        let d = fixtures::holed_square();
        let tol = d.tolerance();
        for (a, b) in [(p(2., 5.), p(5., 2.)), (p(2., 4.), p(8., 4.))] {
            for e in d.edges() {
                let r = segment_intersection(a, b, e.a, e.b, &tol).unwrap();
                assert!(!matches!(r, SegmentIntersection::Crossing(_)));
            }
        }
    }

    #[test]
    fn outside_points_are_errors() {
        let d = fixtures::holed_square();
        assert!(matches!(
            visible(&d, p(5., 5.), p(1., 1.)),
            Err(Error::OutsideDomain(_))
        ));
        assert!(visible_corners(&d, p(-1., 0.)).is_err());
    }

    #[test]
    fn through_a_hole_corner_into_the_hole_is_blocked() {
        let d = fixtures::holed_square();
        // passes exactly through the corner (4,4) and then through the hole
        assert!(!visible(&d, p(2., 2.), p(8., 8.)).unwrap());
        // stops at the corner
        assert!(visible(&d, p(2., 2.), p(4., 4.)).unwrap());
    }

    #[test]
    fn visible_corner_examples() {
        let sq = fixtures::unit_square();
        assert_eq!(visible_corners(&sq, p(0.5, 0.5)).unwrap(), vec![0, 1, 2, 3]);

        // the top outer corners are hidden: the segment to (0,10) enters the
        // hole through its bottom edge and leaves through its left edge
        let d = fixtures::holed_square();
        let seen = visible_corners(&d, p(5., 3.)).unwrap();
        let pts: Vec<Point> = seen.iter().map(|&i| d.corner(i)).collect();
        assert_eq!(pts.len(), 4);
        for q in [p(0., 0.), p(10., 0.), p(4., 4.), p(6., 4.)] {
            assert!(pts.contains(&q), "missing {q:?}");
        }
        let tol = d.tolerance();
        for q in [p(0., 10.), p(10., 10.)] {
            let hole_left = segment_intersection(p(5., 3.), q, p(4., 4.), p(4., 6.), &tol).unwrap();
            let hole_right = segment_intersection(p(5., 3.), q, p(6., 4.), p(6., 6.), &tol).unwrap();
            assert!(
                matches!(hole_left, SegmentIntersection::Crossing(_))
                    || matches!(hole_right, SegmentIntersection::Crossing(_))
            );
        }

        for v in 0..d.corner_count() {
            let seen = visible_corners(&d, d.corner(v)).unwrap();
            let (prev, next) = d.ring_neighbors(v);
            assert!(seen.contains(&v) && seen.contains(&prev) && seen.contains(&next));
        }
    }

    #[test]
    fn visibility_radius_examples() {
        let sq = fixtures::unit_square();
        assert!((visibility_radius(&sq, p(0.5, 0.5)) - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((visibility_radius(&sq, p(0., 0.)) - 2f64.sqrt()).abs() < 1e-12);
        // from a corner of the holed square the hole hides everything past
        // the rays through (6,4) and (4,6)
        let d = fixtures::holed_square();
        let r = visibility_radius(&d, p(0., 0.));
        assert!((r - 10f64.hypot(20. / 3.)).abs() < 1e-9, "{r}");
    }

    #[test]
    fn graph_examples() {
        let g = VisibilityGraph::build(&fixtures::unit_square());
        assert_eq!(g.edge_count(), 6);

        let d = fixtures::holed_square();
        let g = VisibilityGraph::build(&d);
        let id = |q: Point| d.corner_at(q).unwrap();
        assert!(!g.has_edge(id(p(0., 0.)), id(p(10., 10.))));
        assert!(g.has_edge(id(p(0., 0.)), id(p(4., 4.))));
        assert!(g.is_connected());

        let hexagon: Vec<Point> = (0..6)
            .map(|k| p(1., 0.).rotate(k as f64 * std::f64::consts::PI / 3.0))
            .collect();
        let hex = PolygonalDomain::from_rings(hexagon, vec![]).unwrap();
        assert_eq!(VisibilityGraph::build(&hex).edge_count(), 15);
    }

    #[test]
    fn ring_edges_are_graph_edges() {
        for d in [fixtures::holed_square(), fixtures::three_lobes()] {
            let g = VisibilityGraph::build(&d);
            for e in d.edges() {
                assert!(g.has_edge(e.from, e.to));
            }
        }
    }
}
