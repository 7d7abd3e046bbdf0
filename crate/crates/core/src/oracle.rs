//! Brute-force validators and random inputs for tests and the `check` command.
//!
//! Nothing here builds a shortest path map: distances come from plain graph
//! searches or the distance field of the source, and maxima from sampling.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{validate, Containment, PolygonalDomain, RawDomain};
use crate::error::{Error, Result};
use crate::geodesic::GeodesicIndex;
use crate::geom::Point;
use crate::spm;
use crate::visibility::segment_in_domain;

/// Min-heap entry keyed by an estimated path length.
struct Entry(f64, usize);

impl PartialEq for Entry {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Entry {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}

/// Corners plus a square lattice of step `side / k` over the bounding box,
/// restricted to the domain, with every mutually visible pair joined.
///
/// Lattices for `k` and `2k` nest, so distances never grow with `k`.
pub struct DenseGraph {
    nodes: Vec<Point>,
    k: usize,
    words: usize,
    visible: Vec<u64>,
}

impl DenseGraph {
    pub fn build(domain: &PolygonalDomain, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::OutOfRange(format!("k must be at least 2, got {k}")));
        }
        let bbox = domain.bbox();
        let step = bbox.longest_side() / k as f64;
        let mut nodes: Vec<Point> = (0..domain.corner_count()).map(|v| domain.corner(v)).collect();
        for i in 0..=k {
            for j in 0..=k {
                let q = Point::new(bbox.min.x + i as f64 * step, bbox.min.y + j as f64 * step);
                if domain.contains(q) != Containment::Outside && domain.corner_at(q).is_none() {
                    nodes.push(q);
                }
            }
        }
        let n = nodes.len();
        let words = n.div_ceil(64);
        let rows: Vec<Vec<u64>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words];
                for j in i + 1..n {
                    if segment_in_domain(domain, nodes[i], nodes[j]) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        let mut visible = vec![0u64; n * words];
        for (i, row) in rows.iter().enumerate() {
            for j in i + 1..n {
                if row[j / 64] >> (j % 64) & 1 == 1 {
                    visible[i * words + j / 64] |= 1 << (j % 64);
                    visible[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        Ok(DenseGraph {
            nodes,
            k,
            words,
            visible,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn resolution(&self) -> usize {
        self.k
    }

    fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.visible[i * self.words..(i + 1) * self.words];
        row.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// Shortest path length from `s` to `t` through the graph nodes.
    pub fn distance(&self, domain: &PolygonalDomain, s: Point, t: Point) -> Result<f64> {
        for q in [s, t] {
            if !q.is_finite() || domain.contains(q) == Containment::Outside {
                return Err(Error::OutsideDomain(q));
            }
        }
        let mut best = if segment_in_domain(domain, s, t) {
            s.dist(t)
        } else {
            f64::INFINITY
        };
        let n = self.nodes.len();
        let to_t: Vec<f64> = self
            .nodes
            .iter()
            .map(|&q| {
                if segment_in_domain(domain, q, t) {
                    q.dist(t)
                } else {
                    f64::INFINITY
                }
            })
            .collect();
        // A* with the straight-line bound to t, which is consistent
        let mut dist = vec![f64::INFINITY; n];
        let mut heap = BinaryHeap::new();
        for (i, &q) in self.nodes.iter().enumerate() {
            if segment_in_domain(domain, s, q) {
                dist[i] = s.dist(q);
                heap.push(Entry(dist[i] + q.dist(t), i));
            }
        }
        while let Some(Entry(key, u)) = heap.pop() {
            if key >= best {
                break;
            }
            let du = dist[u];
            if key > du + self.nodes[u].dist(t) {
                continue;
            }
            best = best.min(du + to_t[u]);
            for v in self.neighbors(u) {
                let cand = du + self.nodes[u].dist(self.nodes[v]);
                if cand < dist[v] {
                    dist[v] = cand;
                    heap.push(Entry(cand + self.nodes[v].dist(t), v));
                }
            }
        }
        Ok(best)
    }
}

/// Dense-graph upper bound on `d(s, t)`.
pub fn dense_distance(domain: &PolygonalDomain, s: Point, t: Point, k: usize) -> Result<f64> {
    DenseGraph::build(domain, k)?.distance(domain, s, t)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BrutePhi {
    pub value: f64,
    pub argmax: Point,
    /// Lattice step of the samples.
    pub spacing: f64,
}

/// Largest geodesic distance from `p` over a `k x k` lattice and the corners.
pub fn brute_phi(index: &GeodesicIndex, p: Point, k: usize) -> Result<BrutePhi> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("k must be at least 2, got {k}")));
    }
    let domain = index.domain();
    let field = index.field(p)?;
    let bbox = domain.bbox();
    let spacing = bbox.longest_side() / (k - 1) as f64;
    let lattice = (0..k).flat_map(|i| {
        (0..k).map(move |j| Point::new(bbox.min.x + i as f64 * spacing, bbox.min.y + j as f64 * spacing))
    });
    let corners = (0..domain.corner_count()).map(|v| domain.corner(v));
    let mut best = BrutePhi {
        value: 0.0,
        argmax: p,
        spacing,
    };
    for q in corners.chain(lattice) {
        if let Some(d) = field.distance(q) {
            if d > best.value {
                best.value = d;
                best.argmax = q;
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma1Trial {
    pub trial: usize,
    pub point: Point,
    pub phi: f64,
    pub brute: f64,
    pub argmax: Point,
    /// Distance from the sampled argmax to the nearest map vertex at least as far.
    pub vertex_gap: f64,
    pub spacing: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma1Report {
    pub trials: Vec<Lemma1Trial>,
    pub passed: usize,
}

impl Lemma1Report {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials.len()
    }
}

/// Samples `trials` random points and compares `phi` with [`brute_phi`].
///
/// A trial passes when the sampled maximum does not exceed `phi`, falls
/// short of it by at most twice the sample spacing, and the sampled argmax
/// lies within twice the spacing of a map vertex whose distance is at least
/// the sampled maximum minus that slack.
pub fn check_lemma1(index: &GeodesicIndex, trials: usize, k: usize, seed: u64) -> Result<Lemma1Report> {
    let domain = index.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Point> = (0..trials).map(|_| random_point(domain, &mut rng)).collect();
    let trials = points
        .par_iter()
        .enumerate()
        .map(|(trial, &p)| {
            let brute = brute_phi(index, p, k)?;
            let phi = spm::phi(index, p)?;
            let slack = 2.0 * brute.spacing;
            let vertex_gap = spm::vertices_above(index, p, brute.value - slack)?
                .iter()
                .map(|v| v.pos.dist(brute.argmax))
                .fold(f64::INFINITY, f64::min);
            let tau = domain.tolerance().abs;
            let pass = brute.value <= phi + tau && phi - brute.value <= slack && vertex_gap <= slack;
            Ok(Lemma1Trial {
                trial,
                point: p,
                phi,
                brute: brute.value,
                argmax: brute.argmax,
                vertex_gap,
                spacing: brute.spacing,
                pass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = trials.iter().filter(|t| t.pass).count();
    Ok(Lemma1Report { trials, passed })
}

/// Uniform point of the domain interior, by rejection from the bounding box.
pub fn random_point(domain: &PolygonalDomain, rng: &mut impl Rng) -> Point {
    let bbox = domain.bbox();
    loop {
        let q = Point::new(
            rng.random_range(bbox.min.x..=bbox.max.x),
            rng.random_range(bbox.min.y..=bbox.max.y),
        );
        if domain.contains(q) == Containment::Interior {
            return q;
        }
    }
}

/// Options for [`random_domain`].
#[derive(Clone, Copy, Debug)]
pub struct RandomDomainSpec {
    pub outer_vertices: (usize, usize),
    pub holes: (usize, usize),
    pub hole_vertices: (usize, usize),
    pub radius: f64,
}

impl Default for RandomDomainSpec {
    fn default() -> Self {
        RandomDomainSpec {
            outer_vertices: (8, 16),
            holes: (1, 3),
            hole_vertices: (3, 6),
            radius: 10.0,
        }
    }
}

impl RandomDomainSpec {
    pub fn simple() -> Self {
        RandomDomainSpec {
            holes: (0, 0),
            ..Self::default()
        }
    }
}

fn round6(q: Point) -> Point {
    Point::new((q.x * 1e6).round() / 1e6, (q.y * 1e6).round() / 1e6)
}

/// Seeded random domain: a radially perturbed convex outer ring with small
/// convex holes, retried until it validates.
pub fn random_domain(seed: u64, spec: RandomDomainSpec) -> PolygonalDomain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(d) = try_random_domain(&mut rng, &spec) {
            return d;
        }
    }
}

fn try_random_domain(rng: &mut ChaCha8Rng, spec: &RandomDomainSpec) -> Option<PolygonalDomain> {
    let tau = std::f64::consts::TAU;
    let r = spec.radius;
    let m = rng.random_range(spec.outer_vertices.0..=spec.outer_vertices.1);
    let outer: Vec<Point> = (0..m)
        .map(|i| {
            let a = (i as f64 + rng.random_range(-0.3..0.3)) * tau / m as f64;
            let rad = r * rng.random_range(0.55..1.0);
            round6(Point::new(rad * a.cos(), rad * a.sin()))
        })
        .collect();
    let count = rng.random_range(spec.holes.0..=spec.holes.1);
    let mut holes: Vec<Vec<Point>> = Vec::new();
    let mut centers: Vec<(Point, f64)> = Vec::new();
    let mut attempts = 0;
    while holes.len() < count {
        attempts += 1;
        if attempts > 200 {
            return None;
        }
        let c = Point::new(rng.random_range(-0.6 * r..0.6 * r), rng.random_range(-0.6 * r..0.6 * r));
        let hr = r * rng.random_range(0.06..0.16);
        if centers.iter().any(|&(o, or)| o.dist(c) < 1.3 * (or + hr)) {
            continue;
        }
        let k = rng.random_range(spec.hole_vertices.0..=spec.hole_vertices.1);
        let phase = rng.random_range(0.0..tau);
        let hole: Vec<Point> = (0..k)
            .map(|i| {
                let a = phase + (i as f64 + rng.random_range(-0.2..0.2)) * tau / k as f64;
                round6(c + Point::new(a.cos(), a.sin()) * hr)
            })
            .collect();
        centers.push((c, hr));
        holes.push(hole);
    }
    let raw = RawDomain::new(outer, holes);
    if !validate(&raw).ok {
        return None;
    }
    let domain = PolygonalDomain::new(raw).ok()?;
    // keep holes comfortably inside so no corridor is thinner than the lattice
    let clearance = 0.04 * r;
    for h in domain.holes() {
        for &q in h {
            let gap = domain.outer().iter().enumerate().fold(f64::INFINITY, |g, (i, &a)| {
                let b = domain.outer()[(i + 1) % domain.outer().len()];
                g.min(crate::geom::dist_point_segment(q, a, b))
            });
            if gap < clearance {
                return None;
            }
        }
    }
    Some(domain)
}
