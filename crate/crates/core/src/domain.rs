//! Polygonal domains with holes: validation, point location and the corner set.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    classify_segments, dist_point_segment, locate_in_ring, ring_self_intersection, signed_area, BBox, Location, Point,
    SegmentIntersection, Sign, Tolerance,
};

/// The interchange format: `{ "outer": [[x,y],...], "holes": [[[x,y],...], ...] }`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RawDomain {
    pub outer: Vec<Point>,
    #[serde(default)]
    pub holes: Vec<Vec<Point>>,
}

impl RawDomain {
    pub fn new(outer: Vec<Point>, holes: Vec<Vec<Point>>) -> Self {
        RawDomain { outer, holes }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("points always serialize")
    }
}

/// Where a point sits relative to the closed domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Containment {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    TooFewVertices,
    NonFinite,
    ZeroArea,
    NonSimpleRing,
    HoleNotStrictlyInterior,
    HolesIntersect,
}

impl std::fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ViolationKind::TooFewVertices => "ring has fewer than 3 vertices",
            ViolationKind::NonFinite => "non-finite coordinate",
            ViolationKind::ZeroArea => "ring has zero area",
            ViolationKind::NonSimpleRing => "ring is not simple",
            ViolationKind::HoleNotStrictlyInterior => "hole not strictly interior",
            ViolationKind::HolesIntersect => "holes intersect",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Ring indices involved: 0 is the outer ring, `i + 1` is hole `i`.
    pub rings: Vec<usize>,
    pub witness: Option<Point>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// Normalizations applied before checking (reorientation, merged vertices).
    pub corrections: Vec<String>,
}

/// A corner of the domain: a vertex of one of its boundary rings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corner {
    pub pos: Point,
    /// 0 for the outer ring, `i + 1` for hole `i`.
    pub ring: usize,
    pub index: usize,
}

/// A boundary edge oriented so that the domain lies on its left.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub a: Point,
    pub b: Point,
    /// Corner ids of the endpoints.
    pub from: usize,
    pub to: usize,
}

/// A validated polygonal domain: one counterclockwise outer ring and any
/// number of clockwise holes, pairwise disjoint and strictly interior.
#[derive(Clone, Debug)]
pub struct PolygonalDomain {
    rings: Vec<Vec<Point>>,
    corners: Vec<Corner>,
    ring_start: Vec<usize>,
    edges: Vec<Edge>,
    reflex: Vec<bool>,
    bbox: BBox,
    tol: Tolerance,
}

impl PolygonalDomain {
    /// Validates and normalizes `raw`, failing with the first violation.
    pub fn new(raw: RawDomain) -> Result<Self> {
        let (report, rings) = validate_rings(&raw);
        if !report.ok {
            let msg = report
                .violations
                .iter()
                .map(|v| format!("{} (rings {:?})", v.kind, v.rings))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::InvalidDomain(msg));
        }
        Ok(Self::from_normalized(rings))
    }

    pub fn from_rings(outer: Vec<Point>, holes: Vec<Vec<Point>>) -> Result<Self> {
        Self::new(RawDomain::new(outer, holes))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::new(RawDomain::load(path)?)
    }

    fn from_normalized(rings: Vec<Vec<Point>>) -> Self {
        let bbox = BBox::of(rings[0].iter().copied());
        let tol = Tolerance::for_diagonal(bbox.diagonal());
        let mut corners = Vec::new();
        let mut ring_start = Vec::with_capacity(rings.len());
        let mut edges = Vec::new();
        let mut reflex = Vec::new();
        for (r, ring) in rings.iter().enumerate() {
            let start = corners.len();
            ring_start.push(start);
            let m = ring.len();
            for (i, &p) in ring.iter().enumerate() {
                corners.push(Corner {
                    pos: p,
                    ring: r,
                    index: i,
                });
                let prev = ring[(i + m - 1) % m];
                let next = ring[(i + 1) % m];
                // the domain is on the left of every ring, so a right turn is reflex
                reflex.push(tol.orient(prev, p, next) == Sign::Negative);
                edges.push(Edge {
                    a: p,
                    b: next,
                    from: start + i,
                    to: start + (i + 1) % m,
                });
            }
        }
        PolygonalDomain {
            rings,
            corners,
            ring_start,
            edges,
            reflex,
            bbox,
            tol,
        }
    }

    pub fn outer(&self) -> &[Point] {
        &self.rings[0]
    }

    pub fn holes(&self) -> &[Vec<Point>] {
        &self.rings[1..]
    }

    /// All rings; index 0 is the outer ring.
    pub fn rings(&self) -> &[Vec<Point>] {
        &self.rings
    }

    pub fn hole_count(&self) -> usize {
        self.rings.len() - 1
    }

    /// Total number of corners `n`.
    pub fn corner_count(&self) -> usize {
        self.corners.len()
    }

    /// Corners in deterministic order: outer ring first, then holes in input order.
    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    pub fn corner(&self, id: usize) -> Point {
        self.corners[id].pos
    }

    /// Neighbors of corner `id` along its ring, as (previous, next).
    pub fn ring_neighbors(&self, id: usize) -> (usize, usize) {
        let c = self.corners[id];
        let start = self.ring_start[c.ring];
        let m = self.rings[c.ring].len();
        (start + (c.index + m - 1) % m, start + (c.index + 1) % m)
    }

    /// A corner whose interior angle in the domain exceeds 180 degrees.
    pub fn is_reflex(&self, id: usize) -> bool {
        self.reflex[id]
    }

    /// Boundary edges, each oriented with the domain on its left.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn bbox(&self) -> BBox {
        self.bbox
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// Area of the outer ring minus the areas of the holes.
    pub fn area(&self) -> f64 {
        self.rings.iter().map(|r| signed_area(r)).sum()
    }

    pub fn contains(&self, p: Point) -> Containment {
        let tol = self.tol;
        if !self.bbox.contains(p, tol.abs) {
            return Containment::Outside;
        }
        let mut inside = false;
        for e in &self.edges {
            let (a, b) = (e.a, e.b);
            let (lo_y, hi_y) = if a.y < b.y { (a.y, b.y) } else { (b.y, a.y) };
            if p.y >= lo_y - tol.abs
                && p.y <= hi_y + tol.abs
                && p.x >= a.x.min(b.x) - tol.abs
                && p.x <= a.x.max(b.x) + tol.abs
                && dist_point_segment(p, a, b) <= tol.abs
            {
                return Containment::Boundary;
            }
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        if inside {
            Containment::Interior
        } else {
            Containment::Outside
        }
    }

    /// Every edge that `p` lies on (within tolerance), as edge indices.
    pub fn edges_through(&self, p: Point) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| dist_point_segment(p, e.a, e.b) <= self.tol.abs)
            .map(|(i, _)| i)
            .collect()
    }

    /// Id of the corner at `p`, if any.
    pub fn corner_at(&self, p: Point) -> Option<usize> {
        self.corners.iter().position(|c| self.tol.same_point(c.pos, p))
    }

    pub fn to_raw(&self) -> RawDomain {
        RawDomain {
            outer: self.rings[0].clone(),
            holes: self.rings[1..].to_vec(),
        }
    }
}

/// Checks every domain invariant, after normalizing ring orientation and
/// merging collinear vertices.
pub fn validate(raw: &RawDomain) -> ValidationReport {
    validate_rings(raw).0
}

fn validate_rings(raw: &RawDomain) -> (ValidationReport, Vec<Vec<Point>>) {
    let mut report = ValidationReport::default();
    let mut rings: Vec<Vec<Point>> = std::iter::once(raw.outer.clone())
        .chain(raw.holes.iter().cloned())
        .collect();

    for (r, ring) in rings.iter().enumerate() {
        if ring.iter().any(|p| !p.is_finite()) {
            report.violations.push(Violation {
                kind: ViolationKind::NonFinite,
                rings: vec![r],
                witness: None,
            });
        }
    }
    if !report.violations.is_empty() {
        return (report, rings);
    }

    let bbox = BBox::of(raw.outer.iter().copied());
    let tol = Tolerance::for_diagonal(bbox.diagonal());

    for (r, ring) in rings.iter_mut().enumerate() {
        let before = ring.len();
        merge_collinear(ring, &tol);
        if ring.len() < before {
            report.corrections.push(format!(
                "ring {r}: merged {} duplicate or collinear vertices",
                before - ring.len()
            ));
        }
        if ring.len() < 3 {
            report.violations.push(Violation {
                kind: ViolationKind::TooFewVertices,
                rings: vec![r],
                witness: ring.first().copied(),
            });
            continue;
        }
        let area = signed_area(ring);
        if area.abs() <= tol.abs * bbox.diagonal() {
            report.violations.push(Violation {
                kind: ViolationKind::ZeroArea,
                rings: vec![r],
                witness: Some(ring[0]),
            });
            continue;
        }
        let want_ccw = r == 0;
        if (area > 0.0) != want_ccw {
            ring.reverse();
            report.corrections.push(format!(
                "ring {r}: reversed to {}",
                if want_ccw { "counterclockwise" } else { "clockwise" }
            ));
        }
        if let Some((_, _, w)) = ring_self_intersection(ring, &tol) {
            report.violations.push(Violation {
                kind: ViolationKind::NonSimpleRing,
                rings: vec![r],
                witness: Some(w),
            });
        }
    }
    if !report.violations.is_empty() {
        return (report, rings);
    }

    // holes strictly inside the outer ring, with clearance
    for h in 1..rings.len() {
        if let Some(w) = rings_touch(&rings[0], &rings[h], &tol).or_else(|| {
            rings[h]
                .iter()
                .find(|&&p| locate_in_ring(p, &rings[0], &tol) != Location::Inside)
                .copied()
        }) {
            report.violations.push(Violation {
                kind: ViolationKind::HoleNotStrictlyInterior,
                rings: vec![0, h],
                witness: Some(w),
            });
        }
    }
    for h in 1..rings.len() {
        for g in h + 1..rings.len() {
            let touch = rings_touch(&rings[h], &rings[g], &tol);
            let nested = || {
                let a_in_b = locate_in_ring(rings[h][0], &rings[g], &tol) != Location::Outside;
                let b_in_a = locate_in_ring(rings[g][0], &rings[h], &tol) != Location::Outside;
                if a_in_b {
                    Some(rings[h][0])
                } else if b_in_a {
                    Some(rings[g][0])
                } else {
                    None
                }
            };
            if let Some(w) = touch.or_else(nested) {
                report.violations.push(Violation {
                    kind: ViolationKind::HolesIntersect,
                    rings: vec![h, g],
                    witness: Some(w),
                });
            }
        }
    }

    report.ok = report.violations.is_empty();
    (report, rings)
}

/// Drops repeated vertices and vertices lying on the segment between their
/// neighbors, until every remaining vertex is a true corner.
fn merge_collinear(ring: &mut Vec<Point>, tol: &Tolerance) {
    loop {
        let m = ring.len();
        if m < 3 {
            return;
        }
        let mut removed = false;
        for i in 0..m {
            let prev = ring[(i + m - 1) % m];
            let cur = ring[i];
            let next = ring[(i + 1) % m];
            let duplicate = tol.same_point(prev, cur);
            let straight = tol.orient(prev, cur, next) == Sign::Zero && (cur - prev).dot(next - cur) > 0.0;
            if duplicate || straight {
                ring.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return;
        }
    }
}

/// A witness point where the two rings come within tolerance of each other.
fn rings_touch(r1: &[Point], r2: &[Point], tol: &Tolerance) -> Option<Point> {
    let (n1, n2) = (r1.len(), r2.len());
    for i in 0..n1 {
        let (a, b) = (r1[i], r1[(i + 1) % n1]);
        for j in 0..n2 {
            let (c, d) = (r2[j], r2[(j + 1) % n2]);
            match classify_segments(a, b, c, d, tol) {
                SegmentIntersection::Disjoint => {}
                SegmentIntersection::Crossing(p)
                | SegmentIntersection::Touch(p)
                | SegmentIntersection::Overlap(p, _) => return Some(p),
            }
        }
    }
    None
}
