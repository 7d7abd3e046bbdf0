//! Weighted roots of a shortest path map and the point-wise referee.

use crate::domain::{Containment, PolygonalDomain};
use crate::geodesic::{GeodesicIndex, RootLabel, ShortestPathTree};
use crate::geom::{BBox, Point};
use crate::visibility::{segment_in_domain, visibility_radius};

use super::SpmRoot;

const ANGLE_SLACK: f64 = 1e-9;

/// A closed counterclockwise wedge `[from, to]`, narrower than a half-turn.
#[derive(Clone, Copy, Debug)]
struct Wedge {
    from: Point,
    to: Point,
}

impl Wedge {
    fn contains(&self, d: Point) -> bool {
        let n = d.norm();
        self.from.cross(d) >= -ANGLE_SLACK * n * self.from.norm()
            && d.cross(self.to) >= -ANGLE_SLACK * n * self.to.norm()
    }
}

/// Counterclockwise angle from `b` to `d`, in `[0, 2pi)`.
fn ccw_angle(b: Point, d: Point) -> f64 {
    let a = b.cross(d).atan2(b.dot(d));
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// A candidate SPM vertex: a point where the listed roots tie at distance `rho`
/// and no visible root does better.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub pos: Point,
    pub rho: f64,
    pub roots: Vec<usize>,
}

/// The source plus every reflex corner through which some shortest path
/// can continue, each with the wedge of directions a taut path may take.
pub(crate) struct RootSet<'a> {
    pub domain: &'a PolygonalDomain,
    pub roots: Vec<SpmRoot>,
    wedges: Vec<Vec<Wedge>>,
    /// Farthest distance each root sees.
    sight: Vec<f64>,
    bbox: BBox,
    pub tie: f64,
    pub merge: f64,
}

impl<'a> RootSet<'a> {
    pub fn new(index: &'a GeodesicIndex, spt: &ShortestPathTree) -> Self {
        let domain = index.domain();
        let tol = domain.tolerance();
        let s = spt.source;
        let mut roots = vec![SpmRoot {
            label: RootLabel::Source,
            pos: s,
            weight: 0.0,
        }];
        let mut wedges = vec![Vec::new()];
        let mut sight = vec![visibility_radius(domain, s)];
        for v in (0..domain.corner_count()).filter(|&v| domain.is_reflex(v)) {
            let r = domain.corner(v);
            let (prev, next) = domain.ring_neighbors(v);
            let a = domain.corner(prev) - r;
            let b = domain.corner(next) - r;
            let span = ccw_angle(b, a);
            let mut preds: Vec<Point> = Vec::new();
            if spt.sees_source[v] && tol.eq_len(s.dist(r), spt.dist[v]) {
                preds.push(s);
            }
            for &(w, len) in index.graph().neighbors(v) {
                if len > tol.abs && tol.eq_len(spt.dist[w] + len, spt.dist[v]) {
                    preds.push(domain.corner(w));
                }
            }
            let ws: Vec<Wedge> = preds
                .into_iter()
                .filter(|q| q.dist(r) > tol.abs)
                .filter_map(|q| {
                    let u = r - q;
                    let theta = ccw_angle(b, u);
                    if theta < std::f64::consts::PI {
                        Some(Wedge { from: b, to: u })
                    } else if theta <= span + ANGLE_SLACK {
                        Some(Wedge { from: u, to: a })
                    } else {
                        None
                    }
                })
                .collect();
            if !ws.is_empty() {
                roots.push(SpmRoot {
                    label: RootLabel::Corner(v),
                    pos: r,
                    weight: spt.dist[v],
                });
                wedges.push(ws);
                sight.push(index.visibility_radius(v));
            }
        }
        RootSet {
            domain,
            roots,
            wedges,
            sight,
            bbox: domain.bbox(),
            tie: 10.0 * tol.abs,
            merge: 100.0 * tol.abs,
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn value(&self, i: usize, x: Point) -> f64 {
        self.roots[i].weight + self.roots[i].pos.dist(x)
    }

    /// Whether a taut path through root `i` can leave toward `x`.
    pub fn taut(&self, i: usize, x: Point) -> bool {
        let d = x - self.roots[i].pos;
        if i == 0 || d.norm() <= self.tie {
            return true;
        }
        self.wedges[i].iter().any(|w| w.contains(d))
    }

    pub fn sees(&self, i: usize, x: Point) -> bool {
        segment_in_domain(self.domain, self.roots[i].pos, x)
    }

    /// `d(s, x)` and the index of a minimizing root.
    pub fn eval(&self, x: Point) -> Option<(f64, usize)> {
        if self.domain.contains(x) == Containment::Outside {
            return None;
        }
        let mut order: Vec<(f64, usize)> = (0..self.len()).map(|i| (self.value(i, x), i)).collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        order.into_iter().find(|&(_, i)| self.taut(i, x) && self.sees(i, x))
    }

    /// Checks that `involved` tie at `x` and realize `d(s, x)`; returns the
    /// full set of tied roots.
    pub fn validate(&self, x: Point, involved: &[usize]) -> Option<Candidate> {
        if !x.is_finite() || !self.bbox.contains(x, self.merge) {
            return None;
        }
        let rho = self.value(involved[0], x);
        if involved
            .iter()
            .any(|&i| (self.value(i, x) - rho).abs() > self.tie || !self.taut(i, x))
        {
            return None;
        }
        if self.domain.contains(x) == Containment::Outside {
            return None;
        }
        if involved.iter().any(|&i| !self.sees(i, x)) {
            return None;
        }
        let mut others: Vec<(f64, usize)> = (0..self.len())
            .filter(|i| !involved.contains(i))
            .map(|i| (self.value(i, x), i))
            .filter(|&(v, _)| v <= rho + self.tie)
            .collect();
        others.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut roots = involved.to_vec();
        for (v, i) in others {
            if !self.taut(i, x) || !self.sees(i, x) {
                continue;
            }
            if v < rho - self.tie {
                return None;
            }
            roots.push(i);
        }
        roots.sort_unstable();
        Some(Candidate { pos: x, rho, roots })
    }

    /// Roots realizing the distance at a point already known to be in the domain.
    pub fn tied_at(&self, x: Point, rho: f64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (self.value(i, x) - rho).abs() <= self.tie)
            .filter(|&i| self.taut(i, x) && self.sees(i, x))
            .collect()
    }

    /// Upper bound on the distance value root `i` can reach inside the bbox.
    /// Cheap necessary condition for root `i` to see `x`.
    pub fn in_sight(&self, i: usize, x: Point) -> bool {
        self.roots[i].pos.dist(x) <= self.sight[i] + self.tie
    }

    pub fn reach(&self, i: usize) -> f64 {
        let r = self.roots[i].pos;
        let (lo, hi) = (self.bbox.min, self.bbox.max);
        let dx = (r.x - lo.x).abs().max((hi.x - r.x).abs());
        let dy = (r.y - lo.y).abs().max((hi.y - r.y).abs());
        self.roots[i].weight + dx.hypot(dy).min(self.sight[i])
    }
}
