//! Shortest path maps and farthest neighbors.
//!
//! The map of a source `s` splits the domain into cells by the last corner of
//! the shortest path. It is built from additively weighted bisectors of the
//! roots (`s` and the reflex corners a shortest path can bend around): the
//! vertices are the corners, the places where two roots tie on the boundary,
//! and the places where three roots tie inside. Every farthest neighbor of
//! `s` is such a vertex, so `phi` only has to enumerate vertex candidates.

mod bisector;
mod faces;
mod roots;

use std::collections::BTreeMap;

use serde::Serialize;

pub use bisector::{Bisector, CurveKind};

use crate::domain::{Containment, PolygonalDomain};
use crate::error::{Error, Result};
use crate::geodesic::{GeodesicIndex, RootLabel};
use crate::geom::{dist_point_segment, project_param, Point};
use bisector::{pair_on_segment, polish, rough_triple_point};
use faces::HalfEdge;
use roots::{Candidate, RootSet};

/// A cell label with its additive weight `d(s, label)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpmRoot {
    pub label: RootLabel,
    pub pos: Point,
    pub weight: f64,
}

/// How many shortest paths meet at a map vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexClass {
    /// A corner of the domain.
    Corner,
    /// An endpoint of an arc on the boundary, away from corners.
    BoundaryEdgeEndpoint,
    /// An interior point where three or more cells meet.
    InteriorTriple,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpmVertex {
    pub pos: Point,
    /// `d(s, pos)`.
    pub distance: f64,
    pub roots: Vec<RootLabel>,
    pub class: VertexClass,
}

impl SpmVertex {
    pub fn multiplicity(&self) -> usize {
        self.roots.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BisectorArc {
    pub roots: (RootLabel, RootLabel),
    pub kind: CurveKind,
    pub foci: (Point, Point),
    /// `|x - foci.0| - |x - foci.1|` along the arc.
    pub focal_difference: f64,
    pub endpoints: (usize, usize),
    pub polyline: Vec<Point>,
}

/// A piece of a domain edge between two consecutive map vertices.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundaryPiece {
    pub edge: usize,
    pub endpoints: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub root: RootLabel,
    pub boundary: Vec<Point>,
    pub holes: Vec<Vec<Point>>,
    pub area: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShortestPathMap {
    pub source: Point,
    pub roots: Vec<SpmRoot>,
    pub vertices: Vec<SpmVertex>,
    pub arcs: Vec<BisectorArc>,
    pub boundary_pieces: Vec<BoundaryPiece>,
    pub cells: Vec<Cell>,
    /// Sum of cell areas over the domain area.
    pub coverage: f64,
    #[serde(skip)]
    domain: PolygonalDomain,
}

/// `Phi(p)` with every map vertex attaining it.
#[derive(Clone, Debug, Serialize)]
pub struct FarthestNeighbors {
    pub source: Point,
    pub phi: f64,
    pub witnesses: Vec<SpmVertex>,
}

fn check_inside(domain: &PolygonalDomain, p: Point) -> Result<()> {
    if !p.is_finite() || domain.contains(p) == Containment::Outside {
        return Err(Error::OutsideDomain(p));
    }
    Ok(())
}

impl ShortestPathMap {
    /// Label of a cell containing `x`.
    pub fn locate(&self, x: Point) -> Result<RootLabel> {
        check_inside(&self.domain, x)?;
        let mut order: Vec<(f64, usize)> = self
            .roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.weight + r.pos.dist(x), i))
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        order
            .into_iter()
            .find(|&(_, i)| crate::visibility::segment_in_domain(&self.domain, self.roots[i].pos, x))
            .map(|(_, i)| self.roots[i].label)
            .ok_or(Error::OutsideDomain(x))
    }

    pub fn root(&self, label: RootLabel) -> Option<&SpmRoot> {
        self.roots.iter().find(|r| r.label == label)
    }

    pub fn domain(&self) -> &PolygonalDomain {
        &self.domain
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("map serializes")
    }
}

/// Merges candidates closer than the merge radius; earlier ones keep their position.
fn merge(cands: Vec<Candidate>, radius: f64) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = Vec::new();
    for c in cands {
        match out.iter_mut().find(|o| o.pos.dist(c.pos) <= radius) {
            Some(o) => {
                for r in c.roots {
                    if !o.roots.contains(&r) {
                        o.roots.push(r);
                    }
                }
                o.roots.sort_unstable();
            }
            None => out.push(c),
        }
    }
    out
}

fn to_vertex(rs: &RootSet, c: &Candidate, at_corner: bool) -> SpmVertex {
    let class = if at_corner {
        VertexClass::Corner
    } else if rs
        .domain
        .edges()
        .iter()
        .any(|e| dist_point_segment(c.pos, e.a, e.b) <= rs.merge)
    {
        VertexClass::BoundaryEdgeEndpoint
    } else {
        VertexClass::InteriorTriple
    };
    SpmVertex {
        pos: c.pos,
        distance: c.rho,
        roots: c.roots.iter().map(|&i| rs.roots[i].label).collect(),
        class,
    }
}

fn corner_candidates(rs: &RootSet, dist: &[f64], parent: &[RootLabel]) -> Vec<Candidate> {
    (0..rs.domain.corner_count())
        .map(|v| {
            let pos = rs.domain.corner(v);
            let mut roots = rs.tied_at(pos, dist[v]);
            if roots.is_empty() {
                // numerically borderline wedge; fall back to the tree parent
                if let Some(i) = rs.roots.iter().position(|r| r.label == parent[v]) {
                    roots.push(i);
                }
            }
            Candidate {
                pos,
                rho: dist[v],
                roots,
            }
        })
        .collect()
}

/// Tie points of root pairs on boundary edges and of root triples, keeping
/// only those whose value can reach `floor`.
fn raw_candidates(rs: &RootSet, floor: f64) -> Vec<(f64, Point, Vec<usize>)> {
    let domain = rs.domain;
    let live: Vec<usize> = (0..rs.len()).filter(|&i| rs.reach(i) >= floor).collect();
    // edges each live root could tie on: within its sight and far enough
    let usable: Vec<Vec<bool>> = live
        .iter()
        .map(|&i| {
            let (r, w) = (rs.roots[i].pos, rs.roots[i].weight);
            domain
                .edges()
                .iter()
                .map(|e| {
                    w + r.dist(e.a).max(r.dist(e.b)) >= floor
                        && rs.in_sight(i, e.a.lerp(e.b, project_param(r, e.a, e.b).clamp(0.0, 1.0)))
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for (x, &i) in live.iter().enumerate() {
        let (ri, wi) = (rs.roots[i].pos, rs.roots[i].weight);
        for (y, &j) in live.iter().enumerate().skip(x + 1) {
            let (rj, wj) = (rs.roots[j].pos, rs.roots[j].weight);
            if (wi - wj).abs() > ri.dist(rj) + rs.tie {
                continue;
            }
            for (k, e) in domain.edges().iter().enumerate() {
                if !(usable[x][k] && usable[y][k]) {
                    continue;
                }
                for p in pair_on_segment(ri, wi, rj, wj, e.a, e.b) {
                    let rho = rs.value(i, p);
                    if rho >= floor && rs.in_sight(i, p) && rs.in_sight(j, p) {
                        out.push((rho, p, vec![i, j]));
                    }
                }
            }
        }
    }
    for (x, &i) in live.iter().enumerate() {
        for (y, &j) in live.iter().enumerate().skip(x + 1) {
            let (ri, rj) = (rs.roots[i], rs.roots[j]);
            if (ri.weight - rj.weight).abs() > ri.pos.dist(rj.pos) + rs.tie {
                continue;
            }
            for &k in &live[y + 1..] {
                let roots = [i, j, k].map(|r| (rs.roots[r].pos, rs.roots[r].weight));
                for mut p in rough_triple_point(roots) {
                    if rs.value(i, p) < floor - rs.tie || ![i, j, k].iter().all(|&r| rs.in_sight(r, p)) {
                        continue;
                    }
                    polish(&mut p, roots);
                    let rho = rs.value(i, p);
                    if rho >= floor {
                        out.push((rho, p, vec![i, j, k]));
                    }
                }
            }
        }
    }
    out
}

/// Builds the full shortest path map of `s`.
pub fn build_spm(index: &GeodesicIndex, s: Point) -> Result<ShortestPathMap> {
    let domain = index.domain();
    check_inside(domain, s)?;
    let spt = index.spt(s)?;
    let rs = RootSet::new(index, &spt);
    let n = domain.corner_count();

    let mut cands = corner_candidates(&rs, &spt.dist, &spt.parent);
    for (_, p, involved) in raw_candidates(&rs, f64::NEG_INFINITY) {
        if let Some(c) = rs.validate(p, &involved) {
            cands.push(c);
        }
    }
    let merged = merge(cands, rs.merge);
    let vertices: Vec<SpmVertex> = merged
        .iter()
        .enumerate()
        .map(|(i, c)| to_vertex(&rs, c, i < n))
        .collect();

    // arcs: consecutive vertices along each bisector whose middle is a valid tie
    let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (v, c) in merged.iter().enumerate() {
        for (x, &i) in c.roots.iter().enumerate() {
            for &j in &c.roots[x + 1..] {
                by_pair.entry((i, j)).or_default().push(v);
            }
        }
    }
    let mut arcs = Vec::new();
    for (&(i, j), vs) in &by_pair {
        if vs.len() < 2 {
            continue;
        }
        let (ri, rj) = (rs.roots[i], rs.roots[j]);
        let Some(bis) = Bisector::new(ri.pos, ri.weight, rj.pos, rj.weight) else {
            continue;
        };
        let mut along: Vec<(f64, usize)> = vs.iter().map(|&v| (bis.param(merged[v].pos), v)).collect();
        along.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in along.windows(2) {
            let ((t0, u), (t1, v)) = (w[0], w[1]);
            if merged[u].pos.dist(merged[v].pos) <= rs.merge {
                continue;
            }
            let mid = bis.point(0.5 * (t0 + t1));
            // a window running along a boundary edge separates nothing
            if domain.contains(mid) == Containment::Boundary || rs.validate(mid, &[i, j]).is_none() {
                continue;
            }
            // collinear roots along one window produce the same arc several times
            let duplicate = arcs.iter().any(|a: &BisectorArc| {
                let (p, q) = a.endpoints;
                ((p, q) == (u, v) || (p, q) == (v, u)) && a.polyline[a.polyline.len() / 2].dist(mid) <= rs.merge
            });
            if duplicate {
                continue;
            }
            arcs.push(BisectorArc {
                roots: (ri.label, rj.label),
                kind: bis.kind,
                foci: (ri.pos, rj.pos),
                focal_difference: bis.delta,
                endpoints: (u, v),
                polyline: bis.sample(t0, t1, 16),
            });
        }
    }

    // boundary pieces between consecutive vertices on each domain edge
    let mut boundary_pieces = Vec::new();
    let on_boundary: Vec<usize> = (0..vertices.len())
        .filter(|&v| vertices[v].class != VertexClass::InteriorTriple)
        .collect();
    for (ei, e) in domain.edges().iter().enumerate() {
        let mut along: Vec<(f64, usize)> = on_boundary
            .iter()
            .filter(|&&v| {
                v == e.from || v == e.to || (v >= n && dist_point_segment(vertices[v].pos, e.a, e.b) <= rs.merge)
            })
            .map(|&v| (project_param(vertices[v].pos, e.a, e.b), v))
            .collect();
        along.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in along.windows(2) {
            boundary_pieces.push(BoundaryPiece {
                edge: ei,
                endpoints: (w[0].1, w[1].1),
            });
        }
    }

    let cells = assemble_cells(&rs, &vertices, &arcs, &boundary_pieces);
    let coverage = cells.iter().map(|c| c.area).sum::<f64>() / domain.area();
    Ok(ShortestPathMap {
        source: s,
        roots: rs.roots.clone(),
        vertices,
        arcs,
        boundary_pieces,
        cells,
        coverage,
        domain: domain.clone(),
    })
}

fn assemble_cells(rs: &RootSet, vertices: &[SpmVertex], arcs: &[BisectorArc], pieces: &[BoundaryPiece]) -> Vec<Cell> {
    let mut half_edges = Vec::new();
    for arc in arcs {
        let (u, v) = arc.endpoints;
        let mut pts = arc.polyline.clone();
        let last = pts.len() - 1;
        pts[0] = vertices[u].pos;
        pts[last] = vertices[v].pos;
        let mut rev = pts.clone();
        rev.reverse();
        half_edges.push(HalfEdge { from: u, to: v, pts });
        half_edges.push(HalfEdge {
            from: v,
            to: u,
            pts: rev,
        });
    }
    for piece in pieces {
        let (u, v) = piece.endpoints;
        half_edges.push(HalfEdge {
            from: u,
            to: v,
            pts: vec![vertices[u].pos, vertices[v].pos],
        });
    }
    let cycles = faces::cycles(vertices.len(), &half_edges, rs.domain);
    let tol = rs.domain.tolerance();
    let (outer, inner): (Vec<_>, Vec<_>) = cycles.into_iter().partition(|c| c.area > 0.0);

    let mut cells: Vec<Cell> = outer
        .iter()
        .map(|c| Cell {
            root: c
                .sample
                .and_then(|q| rs.eval(q))
                .map(|(_, i)| rs.roots[i].label)
                .unwrap_or(RootLabel::Source),
            boundary: c.polygon.clone(),
            holes: Vec::new(),
            area: c.area,
        })
        .collect();
    for loop_ in inner {
        let Some(q) = loop_.sample else { continue };
        let host = cells
            .iter_mut()
            .filter(|c| crate::geom::locate_in_ring(q, &c.boundary, &tol) == crate::geom::Location::Inside)
            .min_by(|a, b| a.area.total_cmp(&b.area));
        if let Some(cell) = host {
            cell.area += loop_.area;
            cell.holes.push(loop_.polygon);
        }
    }
    cells
}

/// `Phi(p)` and all map vertices of `SPM(p)` attaining it.
///
/// Only vertex candidates whose value can beat the farthest corner are
/// generated, and they are validated lazily from the top.
pub fn farthest_neighbors(index: &GeodesicIndex, p: Point) -> Result<FarthestNeighbors> {
    let domain = index.domain();
    check_inside(domain, p)?;
    let spt = index.spt(p)?;
    let rs = RootSet::new(index, &spt);
    let n = domain.corner_count();
    let corner_max = spt.dist.iter().copied().fold(0.0, f64::max);

    let mut raw = raw_candidates(&rs, corner_max - rs.tie);
    raw.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut phi = corner_max;
    let mut found: Vec<Candidate> = Vec::new();
    for (rho, x, involved) in raw {
        if rho < phi - rs.tie {
            break;
        }
        if let Some(c) = rs.validate(x, &involved) {
            phi = phi.max(c.rho);
            found.push(c);
        }
    }

    let corners: Vec<usize> = (0..n).filter(|&v| spt.dist[v] >= phi - rs.tie).collect();
    let corner_cands: Vec<Candidate> = corner_candidates(&rs, &spt.dist, &spt.parent)
        .into_iter()
        .enumerate()
        .filter(|(v, _)| corners.contains(v))
        .map(|(_, c)| c)
        .collect();
    let k = corner_cands.len();
    let all: Vec<Candidate> = corner_cands
        .into_iter()
        .chain(found.into_iter().filter(|c| c.rho >= phi - rs.tie))
        .collect();
    let witnesses = merge(all, rs.merge)
        .iter()
        .enumerate()
        .map(|(i, c)| to_vertex(&rs, c, i < k))
        .collect();
    Ok(FarthestNeighbors {
        source: p,
        phi,
        witnesses,
    })
}

/// Every vertex of `SPM(p)` at geodesic distance at least `floor` from `p`.
pub fn vertices_above(index: &GeodesicIndex, p: Point, floor: f64) -> Result<Vec<SpmVertex>> {
    let domain = index.domain();
    check_inside(domain, p)?;
    let spt = index.spt(p)?;
    let rs = RootSet::new(index, &spt);
    let corner_cands: Vec<Candidate> = corner_candidates(&rs, &spt.dist, &spt.parent)
        .into_iter()
        .filter(|c| c.rho >= floor)
        .collect();
    let k = corner_cands.len();
    let found = raw_candidates(&rs, floor - rs.tie)
        .into_iter()
        .filter_map(|(_, x, involved)| rs.validate(x, &involved))
        .filter(|c| c.rho >= floor);
    let all: Vec<Candidate> = corner_cands.into_iter().chain(found).collect();
    Ok(merge(all, rs.merge)
        .iter()
        .enumerate()
        .map(|(i, c)| to_vertex(&rs, c, i < k))
        .collect())
}

/// The largest geodesic distance from `p` to any point of the domain.
pub fn phi(index: &GeodesicIndex, p: Point) -> Result<f64> {
    farthest_neighbors(index, p).map(|f| f.phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn convex_map_is_one_cell() {
        let ix = GeodesicIndex::new(fixtures::unit_square());
        let spm = build_spm(&ix, p(0.3, 0.6)).unwrap();
        assert_eq!(spm.roots.len(), 1);
        assert_eq!(spm.vertices.len(), 4);
        assert!(spm.arcs.is_empty());
        assert_eq!(spm.cells.len(), 1);
        assert!((spm.coverage - 1.0).abs() < 1e-12);
        assert!(spm.vertices.iter().all(|v| v.class == VertexClass::Corner));
    }

    #[test]
    fn holed_square_map() {
        let ix = GeodesicIndex::new(fixtures::holed_square());
        let s = p(2., 5.);
        let spm = build_spm(&ix, s).unwrap();
        assert!((spm.coverage - 1.0).abs() < 5e-3, "coverage {}", spm.coverage);
        // cells are keyed by the last corner: right of the hole that is
        // (6,4) or (6,6), since (4,4) and (4,6) cannot see past x = 6
        let a = RootLabel::Corner(ix.domain().corner_at(p(6., 4.)).unwrap());
        let b = RootLabel::Corner(ix.domain().corner_at(p(6., 6.)).unwrap());
        assert!(!crate::visible(ix.domain(), p(4., 4.), p(8., 4.9)).unwrap());
        let arc = spm
            .arcs
            .iter()
            .find(|arc| (arc.roots == (a, b)) || (arc.roots == (b, a)))
            .expect("bisector of (6,4) and (6,6)");
        for q in &arc.polyline {
            assert!((q.y - 5.0).abs() < 1e-9 && q.x >= 6.0 - 1e-9);
        }
        assert_eq!(spm.locate(p(8., 4.9)).unwrap(), a);
        assert_eq!(spm.locate(p(1., 1.)).unwrap(), RootLabel::Source);
        for v in 0..ix.domain().corner_count() {
            assert!(spm.vertices.iter().any(|x| x.pos == ix.domain().corner(v)));
        }
    }

    #[test]
    fn unit_square_farthest_neighbors() {
        let ix = GeodesicIndex::new(fixtures::unit_square());
        let f = farthest_neighbors(&ix, p(0.5, 0.5)).unwrap();
        assert!((f.phi - 0.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(f.witnesses.len(), 4);
        assert!((phi(&ix, p(0., 0.)).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn phi_dominates_corner_distances() {
        let ix = GeodesicIndex::new(fixtures::holed_square());
        for q in [p(2., 5.), p(0.5, 9.), p(7., 3.), p(5., 8.)] {
            let spt = ix.spt(q).unwrap();
            let f = phi(&ix, q).unwrap();
            assert!(spt.dist.iter().all(|&d| d <= f + 1e-12));
        }
    }

    #[test]
    fn holed_square_center_has_interior_witnesses_behind_the_hole() {
        let ix = GeodesicIndex::new(fixtures::holed_square());
        let f = farthest_neighbors(&ix, p(2., 5.)).unwrap();
        // the farthest points lie right of the hole where paths around both sides meet
        assert!(f.witnesses.iter().all(|w| w.pos.x > 6.0));
        let field = ix.field(p(2., 5.)).unwrap();
        for w in &f.witnesses {
            assert!((field.distance(w.pos).unwrap() - f.phi).abs() < 1e-9);
        }
    }

    #[test]
    fn outside_points_are_rejected() {
        let ix = GeodesicIndex::new(fixtures::holed_square());
        assert!(build_spm(&ix, p(5., 5.)).is_err());
        assert!(phi(&ix, p(11., 5.)).is_err());
    }
}
