//! Tolerance-aware planar primitives.
//!
//! Coordinates are `f64`. Every predicate that can be degenerate takes its
//! zero band from a [`Tolerance`]; inside the band the answer is an explicit
//! "collinear"/"touching" classification instead of a perturbed guess.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm2(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise perpendicular.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Point {
        let n = self.norm();
        if n > 0.0 {
            self / n
        } else {
            self
        }
    }

    #[inline]
    pub fn lerp(self, o: Point, t: f64) -> Point {
        Point::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic order on (x, y); total for finite points.
    pub fn lex_cmp(&self, o: &Point) -> Ordering {
        self.x.total_cmp(&o.x).then_with(|| self.y.total_cmp(&o.y))
    }

    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Div<f64> for Point {
    type Output = Point;
    #[inline]
    fn div(self, k: f64) -> Point {
        Point::new(self.x / k, self.y / k)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Absolute and relative zero bands.
///
/// `abs` is a length: two points closer than `abs` are the same point, and a
/// point within `abs` of a line lies on it. `rel` bounds relative error when
/// comparing lengths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-9, rel: 1e-10 }
    }
}

impl Tolerance {
    /// The default policy: `abs = 1e-9 * diagonal`.
    pub fn for_diagonal(diagonal: f64) -> Self {
        let diagonal = if diagonal > 0.0 { diagonal } else { 1.0 };
        Tolerance {
            abs: 1e-9 * diagonal,
            rel: 1e-10,
        }
    }

    /// Two lengths agree within `abs + rel * max(|a|, |b|)`.
    pub fn eq_len(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs + self.rel * a.abs().max(b.abs())
    }

    pub fn same_point(&self, a: Point, b: Point) -> bool {
        a.dist(b) <= self.abs
    }

    /// Orientation of `c` relative to the directed line `ab`.
    ///
    /// Returns [`Sign::Zero`] when the smallest altitude of the triangle is
    /// at most `abs`. The determinant is always evaluated on the
    /// lexicographically sorted triple, so swapping two arguments flips the
    /// sign exactly.
    pub fn orient(&self, a: Point, b: Point, c: Point) -> Sign {
        let mut pts = [a, b, c];
        let mut parity = false;
        // three-element sorting network, tracking permutation parity
        for (i, j) in [(0, 1), (1, 2), (0, 1)] {
            if pts[j].lex_cmp(&pts[i]) == Ordering::Less {
                pts.swap(i, j);
                parity = !parity;
            }
        }
        let [p, q, r] = pts;
        let det = (q - p).cross(r - p);
        let longest = (q - p).norm().max((r - p).norm()).max((r - q).norm());
        if det.abs() <= self.abs * longest || longest == 0.0 {
            return Sign::Zero;
        }
        let s = if det > 0.0 { Sign::Positive } else { Sign::Negative };
        if parity {
            -s
        } else {
            s
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Orientation with a zero band scaled to the magnitude of the inputs.
pub fn orient(a: Point, b: Point, c: Point) -> Sign {
    let scale = [a, b, c]
        .iter()
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);
    Tolerance {
        abs: 1e-12 * scale,
        rel: 1e-12,
    }
    .orient(a, b, c)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SegmentIntersection {
    Disjoint,
    /// Interiors cross transversally at a single point.
    Crossing(Point),
    /// The segments meet at a single point that is an endpoint of at least
    /// one of them.
    Touch(Point),
    /// Collinear segments sharing a sub-segment of positive length.
    Overlap(Point, Point),
}

/// Classifies how the closed segments `ab` and `cd` meet.
///
/// The result does not depend on the order of the two segments or on the
/// direction of either one.
pub fn segment_intersection(a: Point, b: Point, c: Point, d: Point, tol: &Tolerance) -> Result<SegmentIntersection> {
    for p in [a, b, c, d] {
        if !p.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    if tol.same_point(a, b) {
        return Err(Error::DegenerateSegment(a));
    }
    if tol.same_point(c, d) {
        return Err(Error::DegenerateSegment(c));
    }
    // canonical order makes the witness independent of argument order
    let (a, b) = if b.lex_cmp(&a) == Ordering::Less {
        (b, a)
    } else {
        (a, b)
    };
    let (c, d) = if d.lex_cmp(&c) == Ordering::Less {
        (d, c)
    } else {
        (c, d)
    };
    let ((a, b), (c, d)) = if c.lex_cmp(&a).then(d.lex_cmp(&b)) == Ordering::Less {
        ((c, d), (a, b))
    } else {
        ((a, b), (c, d))
    };
    Ok(classify_segments(a, b, c, d, tol))
}

pub(crate) fn classify_segments(a: Point, b: Point, c: Point, d: Point, tol: &Tolerance) -> SegmentIntersection {
    let o1 = tol.orient(a, b, c);
    let o2 = tol.orient(a, b, d);
    let o3 = tol.orient(c, d, a);
    let o4 = tol.orient(c, d, b);

    if o1 == Sign::Zero && o2 == Sign::Zero {
        // collinear: project onto ab
        let dir = b - a;
        let len2 = dir.norm2();
        let tc = (c - a).dot(dir) / len2;
        let td = (d - a).dot(dir) / len2;
        let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
        let s = lo.max(0.0);
        let e = hi.min(1.0);
        let len = len2.sqrt();
        if (e - s) * len > tol.abs {
            return SegmentIntersection::Overlap(a.lerp(b, s), a.lerp(b, e));
        }
        if (e - s) * len >= -tol.abs {
            return SegmentIntersection::Touch(a.lerp(b, s.clamp(0.0, 1.0)));
        }
        return SegmentIntersection::Disjoint;
    }

    if o1 != Sign::Zero && o2 != Sign::Zero && o3 != Sign::Zero && o4 != Sign::Zero {
        if o1 != o2 && o3 != o4 {
            return SegmentIntersection::Crossing(line_intersection(a, b, c, d).unwrap_or(a));
        }
        return SegmentIntersection::Disjoint;
    }

    // at least one endpoint lies on the other segment's supporting line
    if o1 == Sign::Zero && on_segment(c, a, b, tol) {
        return SegmentIntersection::Touch(c);
    }
    if o2 == Sign::Zero && on_segment(d, a, b, tol) {
        return SegmentIntersection::Touch(d);
    }
    if o3 == Sign::Zero && on_segment(a, c, d, tol) {
        return SegmentIntersection::Touch(a);
    }
    if o4 == Sign::Zero && on_segment(b, c, d, tol) {
        return SegmentIntersection::Touch(b);
    }
    SegmentIntersection::Disjoint
}

/// `p` is within `tol.abs` of the closed segment `ab`.
#[inline]
pub fn on_segment(p: Point, a: Point, b: Point, tol: &Tolerance) -> bool {
    dist_point_segment(p, a, b) <= tol.abs
}

/// Parameter of the orthogonal projection of `p` onto line `ab` (0 at `a`).
#[inline]
pub fn project_param(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let l2 = d.norm2();
    if l2 == 0.0 {
        0.0
    } else {
        (p - a).dot(d) / l2
    }
}

pub fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let t = project_param(p, a, b).clamp(0.0, 1.0);
    p.dist(a.lerp(b, t))
}

/// Intersection of the supporting lines of `ab` and `cd`.
pub fn line_intersection(a: Point, b: Point, c: Point, d: Point) -> Option<Point> {
    let r = b - a;
    let s = d - c;
    let den = r.cross(s);
    if den == 0.0 {
        return None;
    }
    let t = (c - a).cross(s) / den;
    Some(a + r * t)
}

/// Where a point lies relative to a closed region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Even-odd classification of `p` against a simple ring.
pub fn point_in_ring(p: Point, ring: &[Point], tol: &Tolerance) -> Result<Location> {
    if !p.is_finite() || ring.iter().any(|q| !q.is_finite()) {
        return Err(Error::NonFinite);
    }
    if ring.len() < 3 || !ring_is_simple(ring, tol) {
        return Err(Error::NonSimpleRing);
    }
    Ok(locate_in_ring(p, ring, tol))
}

/// Same as [`point_in_ring`] without the simplicity check.
pub(crate) fn locate_in_ring(p: Point, ring: &[Point], tol: &Tolerance) -> Location {
    let mut inside = false;
    let n = ring.len();
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if on_segment(p, a, b, tol) {
            return Location::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Shoelace signed area; positive for counterclockwise rings.
pub fn signed_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    if n < 3 {
        return 0.0;
    }
    let o = ring[0];
    let mut s = 0.0;
    for i in 1..n - 1 {
        s += (ring[i] - o).cross(ring[i + 1] - o);
    }
    0.5 * s
}

/// No two non-adjacent edges meet, and adjacent edges meet only at their
/// shared vertex.
pub fn ring_is_simple(ring: &[Point], tol: &Tolerance) -> bool {
    ring_self_intersection(ring, tol).is_none()
}

/// First witness of a self-intersection, as (edge i, edge j, point).
pub(crate) fn ring_self_intersection(ring: &[Point], tol: &Tolerance) -> Option<(usize, usize, Point)> {
    let n = ring.len();
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        if tol.same_point(a, b) {
            return Some((i, i, a));
        }
        for j in i + 1..n {
            let (c, d) = (ring[j], ring[(j + 1) % n]);
            let adjacent_next = j == i + 1;
            let adjacent_prev = i == 0 && j == n - 1;
            match classify_segments(a, b, c, d, tol) {
                SegmentIntersection::Disjoint => {}
                SegmentIntersection::Touch(p) => {
                    let shared = if adjacent_next {
                        Some(b)
                    } else if adjacent_prev {
                        Some(a)
                    } else {
                        None
                    };
                    match shared {
                        Some(s) if tol.same_point(p, s) => {}
                        _ => return Some((i, j, p)),
                    }
                }
                SegmentIntersection::Crossing(p) => return Some((i, j, p)),
                SegmentIntersection::Overlap(p, _) => return Some((i, j, p)),
            }
        }
    }
    None
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn of(points: impl IntoIterator<Item = Point>) -> BBox {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        BBox { min, max }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn diagonal(&self) -> f64 {
        (self.max - self.min).norm()
    }

    pub fn longest_side(&self) -> f64 {
        self.width().max(self.height())
    }

    pub fn contains(&self, p: Point, slack: f64) -> bool {
        p.x >= self.min.x - slack && p.x <= self.max.x + slack && p.y >= self.min.y - slack && p.y <= self.max.y + slack
    }
}
