//! Geodesic distances, shortest paths and shortest path trees.
//!
//! A shortest path that is not a straight segment turns only at corners, so
//! every distance query reduces to the corner-to-corner table plus the
//! corners visible from each endpoint: `d(s,t) = min |s-u| + d(u,v) + |v-t|`.

use serde::Serialize;

use crate::domain::{Containment, PolygonalDomain};
use crate::error::{Error, Result};
use crate::geom::{Point, Tolerance};
use crate::visibility::{segment_in_domain, visibility_radius, visible_corners_unchecked, VisibilityGraph};

/// All-pairs shortest path lengths between corners.
#[derive(Clone, Debug, Serialize)]
pub struct CornerTable {
    n: usize,
    dist: Vec<f64>,
}

impl CornerTable {
    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.dist[u * self.n + v]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Row-major `n x n` matrix.
    pub fn as_slice(&self) -> &[f64] {
        &self.dist
    }
}

/// Runs one dense Dijkstra per corner over the visibility graph.
pub fn corner_distance_table(graph: &VisibilityGraph) -> CornerTable {
    let n = graph.node_count();
    let mut dist = vec![f64::INFINITY; n * n];
    for src in 0..n {
        let row = &mut dist[src * n..(src + 1) * n];
        let mut done = vec![false; n];
        row[src] = 0.0;
        for _ in 0..n {
            let mut u = usize::MAX;
            let mut best = f64::INFINITY;
            for (v, &d) in row.iter().enumerate() {
                if !done[v] && d < best {
                    best = d;
                    u = v;
                }
            }
            if u == usize::MAX {
                break;
            }
            done[u] = true;
            for &(v, w) in graph.neighbors(u) {
                if best + w < row[v] {
                    row[v] = best + w;
                }
            }
        }
    }
    // symmetrize away floating-point asymmetry from summation order
    for u in 0..n {
        for v in u + 1..n {
            let m = dist[u * n + v].min(dist[v * n + u]);
            dist[u * n + v] = m;
            dist[v * n + u] = m;
        }
    }
    CornerTable { n, dist }
}

/// Label of a shortest-path-tree node or shortest-path-map root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootLabel {
    Source,
    Corner(usize),
}

impl std::fmt::Display for RootLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootLabel::Source => f.write_str("s"),
            RootLabel::Corner(i) => write!(f, "v{i}"),
        }
    }
}

/// A polygonal path `(s, v1, ..., vk, t)` through corners.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeodesicPath {
    pub source: Point,
    pub target: Point,
    pub corners: Vec<usize>,
    pub length: f64,
}

impl GeodesicPath {
    /// The full vertex sequence, endpoints included.
    pub fn points(&self, domain: &PolygonalDomain) -> Vec<Point> {
        std::iter::once(self.source)
            .chain(self.corners.iter().map(|&c| domain.corner(c)))
            .chain(std::iter::once(self.target))
            .collect()
    }

    /// Sum of segment lengths, recomputed from the vertices.
    pub fn polyline_length(&self, domain: &PolygonalDomain) -> f64 {
        self.points(domain).windows(2).map(|w| w[0].dist(w[1])).sum()
    }
}

/// Shortest path tree of a source point over `V ∪ {s}`.
#[derive(Clone, Debug, Serialize)]
pub struct ShortestPathTree {
    pub source: Point,
    pub dist: Vec<f64>,
    pub parent: Vec<RootLabel>,
    /// Whether corner `v` sees the source directly.
    pub sees_source: Vec<bool>,
}

impl ShortestPathTree {
    /// Corner ids from the first corner after `s` to `v`, inclusive.
    pub fn path_to(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let RootLabel::Corner(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// First corner on the tree path from `s` to `v`.
    pub fn first_corner(&self, v: usize) -> usize {
        self.path_to(v)[0]
    }
}

/// Precomputed corner structure for geodesic queries on one domain.
///
/// Construction is `O(n^3)`; afterwards every query only reads shared state.
#[derive(Clone, Debug)]
pub struct GeodesicIndex {
    domain: PolygonalDomain,
    graph: VisibilityGraph,
    table: CornerTable,
    sight: Vec<f64>,
}

impl GeodesicIndex {
    pub fn new(domain: PolygonalDomain) -> Self {
        let graph = VisibilityGraph::build(&domain);
        let table = corner_distance_table(&graph);
        let sight = (0..domain.corner_count())
            .map(|v| visibility_radius(&domain, domain.corner(v)))
            .collect();
        GeodesicIndex {
            domain,
            graph,
            table,
            sight,
        }
    }

    /// Largest distance from corner `v` to a point it sees.
    pub fn visibility_radius(&self, v: usize) -> f64 {
        self.sight[v]
    }

    pub fn domain(&self) -> &PolygonalDomain {
        &self.domain
    }

    pub fn graph(&self) -> &VisibilityGraph {
        &self.graph
    }

    pub fn table(&self) -> &CornerTable {
        &self.table
    }

    fn tol(&self) -> Tolerance {
        self.domain.tolerance()
    }

    fn check_inside(&self, p: Point) -> Result<()> {
        if !p.is_finite() || self.domain.contains(p) == Containment::Outside {
            return Err(Error::OutsideDomain(p));
        }
        Ok(())
    }

    /// Length of the paths that leave `s` straight to corner `u`, follow a
    /// shortest path to corner `v` and go straight to `t`.
    pub fn path_length(&self, u: usize, v: usize, s: Point, t: Point) -> Result<f64> {
        self.check_inside(s)?;
        self.check_inside(t)?;
        if !segment_in_domain(&self.domain, s, self.domain.corner(u)) {
            return Err(Error::NotVisible(format!("source does not see corner {u}")));
        }
        if !segment_in_domain(&self.domain, t, self.domain.corner(v)) {
            return Err(Error::NotVisible(format!("target does not see corner {v}")));
        }
        Ok(s.dist(self.domain.corner(u)) + self.table.get(u, v) + self.domain.corner(v).dist(t))
    }

    /// Lexicographically smallest shortest corner sequence from `u` to `v`.
    pub fn corner_path(&self, u: usize, v: usize) -> Vec<usize> {
        let tol = self.tol();
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            let remaining = self.table.get(cur, v);
            cur = self
                .graph
                .neighbors(cur)
                .iter()
                .find(|&&(w, len)| len > tol.abs && tol.eq_len(len + self.table.get(w, v), remaining))
                .map(|&(w, _)| w)
                .expect("a shortest path leaves every corner of a connected domain");
            path.push(cur);
        }
        path
    }

    /// Geodesic distance and a shortest path between two points of the domain.
    ///
    /// Among equally short paths the one with the lexicographically smallest
    /// corner sequence is returned.
    pub fn distance(&self, s: Point, t: Point) -> Result<(f64, GeodesicPath)> {
        self.check_inside(s)?;
        self.check_inside(t)?;
        if segment_in_domain(&self.domain, s, t) {
            let length = s.dist(t);
            return Ok((
                length,
                GeodesicPath {
                    source: s,
                    target: t,
                    corners: Vec::new(),
                    length,
                },
            ));
        }
        let tol = self.tol();
        let from_s = visible_corners_unchecked(&self.domain, s);
        let to_t = visible_corners_unchecked(&self.domain, t);
        let mut best = f64::INFINITY;
        let mut pairs: Vec<(usize, usize, f64)> = Vec::new();
        for &u in &from_s {
            let su = s.dist(self.domain.corner(u));
            for &v in &to_t {
                let len = su + self.table.get(u, v) + self.domain.corner(v).dist(t);
                if len < best {
                    best = len;
                }
                pairs.push((u, v, len));
            }
        }
        if !best.is_finite() {
            return Err(Error::InvalidDomain("domain is not connected".into()));
        }
        let corners = pairs
            .into_iter()
            .filter(|&(_, _, len)| tol.eq_len(len, best))
            .map(|(u, v, _)| self.trimmed(self.corner_path(u, v), s, t))
            .min()
            .expect("at least one pair attains the minimum");
        let path = GeodesicPath {
            source: s,
            target: t,
            corners,
            length: 0.0,
        };
        let length = path.polyline_length(&self.domain);
        Ok((length, GeodesicPath { length, ..path }))
    }

    /// Drops leading/trailing corners that coincide with the endpoints.
    fn trimmed(&self, mut corners: Vec<usize>, s: Point, t: Point) -> Vec<usize> {
        let tol = self.tol();
        if corners.len() > 1 && tol.same_point(self.domain.corner(corners[0]), s) {
            corners.remove(0);
        }
        if corners.len() > 1 && tol.same_point(self.domain.corner(*corners.last().unwrap()), t) {
            corners.pop();
        }
        corners
    }

    /// Shortest path tree from `s`. Ties between parents are broken in
    /// favor of `s`, then of the smallest corner id.
    pub fn spt(&self, s: Point) -> Result<ShortestPathTree> {
        self.check_inside(s)?;
        Ok(self.spt_unchecked(s))
    }

    pub(crate) fn spt_unchecked(&self, s: Point) -> ShortestPathTree {
        let n = self.domain.corner_count();
        let tol = self.tol();
        let sees_source: Vec<bool> = (0..n)
            .map(|v| segment_in_domain(&self.domain, s, self.domain.corner(v)))
            .collect();
        let mut dist = vec![f64::INFINITY; n];
        for u in (0..n).filter(|&u| sees_source[u]) {
            let su = s.dist(self.domain.corner(u));
            for (v, d) in dist.iter_mut().enumerate() {
                let cand = su + self.table.get(u, v);
                if cand < *d {
                    *d = cand;
                }
            }
        }
        let parent = (0..n)
            .map(|v| {
                let pv = self.domain.corner(v);
                if sees_source[v] && tol.eq_len(s.dist(pv), dist[v]) {
                    return RootLabel::Source;
                }
                self.graph
                    .neighbors(v)
                    .iter()
                    .find(|&&(w, len)| len > tol.abs && tol.eq_len(dist[w] + len, dist[v]))
                    .map(|&(w, _)| RootLabel::Corner(w))
                    .unwrap_or(RootLabel::Source)
            })
            .collect();
        ShortestPathTree {
            source: s,
            dist,
            parent,
            sees_source,
        }
    }

    /// Distance field `x -> d(s, x)` backed by the tree of `s`.
    pub fn field(&self, s: Point) -> Result<DistanceField<'_>> {
        let spt = self.spt(s)?;
        Ok(DistanceField::new(self, spt))
    }
}

/// A weighted root: a point that some shortest path from the source can
/// leave in a straight line, with the geodesic distance needed to get there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightedRoot {
    pub label: RootLabel,
    pub pos: Point,
    pub weight: f64,
}

/// Evaluates `d(s, x) = min { w(r) + |r - x| : r sees x }` over the source
/// and the reflex corners, which are the only possible last turns.
#[derive(Clone, Debug)]
pub struct DistanceField<'a> {
    index: &'a GeodesicIndex,
    spt: ShortestPathTree,
    roots: Vec<WeightedRoot>,
}

impl<'a> DistanceField<'a> {
    pub fn new(index: &'a GeodesicIndex, spt: ShortestPathTree) -> Self {
        let domain = index.domain();
        let roots = std::iter::once(WeightedRoot {
            label: RootLabel::Source,
            pos: spt.source,
            weight: 0.0,
        })
        .chain(
            (0..domain.corner_count())
                .filter(|&v| domain.is_reflex(v))
                .map(|v| WeightedRoot {
                    label: RootLabel::Corner(v),
                    pos: domain.corner(v),
                    weight: spt.dist[v],
                }),
        )
        .collect();
        DistanceField { index, spt, roots }
    }

    pub fn index(&self) -> &'a GeodesicIndex {
        self.index
    }

    pub fn spt(&self) -> &ShortestPathTree {
        &self.spt
    }

    pub fn roots(&self) -> &[WeightedRoot] {
        &self.roots
    }

    pub fn source(&self) -> Point {
        self.spt.source
    }

    /// `d(s, x)` and the root realizing it; `None` when `x` is not in the domain.
    pub fn eval(&self, x: Point) -> Option<(f64, RootLabel)> {
        let domain = self.index.domain();
        if domain.contains(x) == Containment::Outside {
            return None;
        }
        let mut order: Vec<(f64, usize)> = self
            .roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.weight + r.pos.dist(x), i))
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        order
            .into_iter()
            .find(|&(_, i)| segment_in_domain(domain, self.roots[i].pos, x))
            .map(|(d, i)| (d, self.roots[i].label))
    }

    pub fn distance(&self, x: Point) -> Option<f64> {
        self.eval(x).map(|(d, _)| d)
    }

    /// Geodesic distance from the source to corner `v`.
    pub fn corner_distance(&self, v: usize) -> f64 {
        self.spt.dist[v]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn holed() -> GeodesicIndex {
        GeodesicIndex::new(fixtures::holed_square())
    }

    fn id(ix: &GeodesicIndex, q: Point) -> usize {
        ix.domain().corner_at(q).unwrap()
    }

    #[test]
    fn path_length_examples() {
        let ix = holed();
        let (u, v) = (id(&ix, p(4., 4.)), id(&ix, p(6., 4.)));
        let len = ix.path_length(u, v, p(2., 5.), p(8., 5.)).unwrap();
        assert!((len - (2.0 + 2.0 * 5f64.sqrt())).abs() < 1e-12);
        // u = v: d(u,u) = 0
        let len = ix.path_length(u, u, p(2., 5.), p(5., 2.)).unwrap();
        assert!((len - (p(2., 5.).dist(p(4., 4.)) + p(4., 4.).dist(p(5., 2.)))).abs() < 1e-12);
        // s = u, t = v
        let len = ix.path_length(u, v, p(4., 4.), p(6., 4.)).unwrap();
        assert!((len - 2.0).abs() < 1e-12);
    }

    #[test]
    fn path_length_requires_visibility() {
        let ix = holed();
        let u = id(&ix, p(6., 6.));
        assert!(matches!(
            ix.path_length(u, u, p(2., 5.), p(8., 5.)),
            Err(Error::NotVisible(_))
        ));
    }

    #[test]
    fn distance_examples() {
        let sq = GeodesicIndex::new(fixtures::unit_square());
        let (d, path) = sq.distance(p(0., 0.), p(1., 1.)).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
        assert!(path.corners.is_empty());

        let ix = holed();
        let (d, path) = ix.distance(p(2., 5.), p(8., 5.)).unwrap();
        assert!((d - (2.0 + 2.0 * 5f64.sqrt())).abs() < 1e-12);
        // two mirror-image paths; the smaller corner sequence wins
        assert_eq!(path.corners, vec![id(&ix, p(4., 4.)), id(&ix, p(6., 4.))]);
        assert!((path.polyline_length(ix.domain()) - d).abs() < 1e-12);

        let (d, path) = ix.distance(p(3., 3.), p(3., 3.)).unwrap();
        assert_eq!(d, 0.0);
        assert!(path.corners.is_empty());
    }

    #[test]
    fn distance_rejects_outside_points() {
        let ix = holed();
        assert!(matches!(
            ix.distance(p(5., 5.), p(1., 1.)),
            Err(Error::OutsideDomain(_))
        ));
    }

    #[test]
    fn table_examples() {
        let sq = GeodesicIndex::new(fixtures::unit_square());
        let t = sq.table();
        assert!((t.get(0, 2) - 2f64.sqrt()).abs() < 1e-12);

        let ix = holed();
        let t = ix.table();
        assert!((t.get(id(&ix, p(4., 4.)), id(&ix, p(6., 6.))) - 4.0).abs() < 1e-12);
        for u in 0..t.size() {
            assert_eq!(t.get(u, u), 0.0);
            for v in 0..t.size() {
                assert_eq!(t.get(u, v), t.get(v, u));
            }
        }
    }

    #[test]
    fn spt_examples() {
        let hexagon: Vec<Point> = (0..6)
            .map(|k| p(1., 0.).rotate(k as f64 * std::f64::consts::PI / 3.0))
            .collect();
        let hex = GeodesicIndex::new(PolygonalDomain::from_rings(hexagon, vec![]).unwrap());
        let spt = hex.spt(p(0.1, 0.2)).unwrap();
        assert!(spt.parent.iter().all(|&q| q == RootLabel::Source));

        let ix = holed();
        let s = p(2., 5.);
        let spt = ix.spt(s).unwrap();
        assert_eq!(spt.parent[id(&ix, p(6., 4.))], RootLabel::Corner(id(&ix, p(4., 4.))));
        for v in 0..ix.domain().corner_count() {
            assert!(spt.dist[v] >= s.dist(ix.domain().corner(v)) - 1e-12);
        }
    }

    #[test]
    fn spt_parent_pointers_are_consistent() {
        let ix = GeodesicIndex::new(fixtures::three_lobes());
        let s = p(0.05, -0.02);
        let spt = ix.spt(s).unwrap();
        let d = ix.domain();
        for v in 0..d.corner_count() {
            let (pd, pp) = match spt.parent[v] {
                RootLabel::Source => (0.0, s),
                RootLabel::Corner(u) => (spt.dist[u], d.corner(u)),
            };
            assert!((pd + pp.dist(d.corner(v)) - spt.dist[v]).abs() < 1e-9);
            assert!(segment_in_domain(d, pp, d.corner(v)));
            // following parents terminates at the source
            assert!(spt.path_to(v).len() <= d.corner_count());
        }
    }

    #[test]
    fn field_matches_distance_queries() {
        let ix = holed();
        let s = p(2., 5.);
        let field = ix.field(s).unwrap();
        for t in [p(8., 5.), p(8., 4.9), p(9.5, 9.5), p(5., 1.), p(6., 7.)] {
            let (d, _) = ix.distance(s, t).unwrap();
            assert!((field.distance(t).unwrap() - d).abs() < 1e-12, "{t:?}");
        }
        assert!(field.eval(p(5., 5.)).is_none());
    }
}
