//! Radius, center and diameter estimates with certified bounds.
//!
//! The certificate comes from a grid: every point of the domain sees a
//! candidate in its own grid cell, so the best candidate is within one cell
//! diagonal of the true center. Local refinement only ever lowers the upper
//! bound.

use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{Containment, PolygonalDomain};
use crate::error::{Error, Result};
use crate::geodesic::GeodesicIndex;
use crate::geom::Point;
use crate::spm::{farthest_neighbors, phi, SpmVertex};

/// A candidate center with bounds on the geodesic radius.
#[derive(Clone, Debug, Serialize)]
pub struct CenterEstimate {
    pub c: Point,
    /// `Phi(c)`, an upper bound on the radius.
    #[serde(rename = "U")]
    pub upper: f64,
    /// A lower bound on the radius.
    #[serde(rename = "L")]
    pub lower: f64,
    pub eps: f64,
    /// Farthest map vertices of `c`.
    pub witnesses: Vec<SpmVertex>,
    pub candidates_evaluated: usize,
    /// Other candidates whose `Phi` ties with `U`.
    pub near_ties: Vec<Point>,
}

impl CenterEstimate {
    /// Pattern search from `c`, keeping the certified lower bound.
    pub fn refined(&self, index: &GeodesicIndex, tol: f64) -> Result<CenterEstimate> {
        let r = refine_center(index, self.c, tol)?;
        Ok(CenterEstimate {
            lower: self.lower,
            eps: self.eps,
            candidates_evaluated: self.candidates_evaluated + r.candidates_evaluated,
            near_ties: self.near_ties.clone(),
            ..r
        })
    }
}

/// Grid candidates for the center and diameter searches.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateSet {
    /// Grid step.
    pub g: f64,
    pub points: Vec<Point>,
}

/// Bounds on the geodesic diameter and a pair realizing the lower one.
#[derive(Clone, Debug, Serialize)]
pub struct DiameterEstimate {
    #[serde(rename = "L")]
    pub lower: f64,
    #[serde(rename = "U")]
    pub upper: f64,
    pub eps: f64,
    pub pair: (Point, Point),
    pub candidates_evaluated: usize,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("eps must lie in (0, 1], got {eps}")))
    }
}

/// `(Phi(s) / 2, Phi(s))`: the radius lies between them.
pub fn two_approx_radius(index: &GeodesicIndex, s: Point) -> Result<(f64, f64)> {
    let u = phi(index, s)?;
    Ok((0.5 * u, u))
}

/// The default candidate set: grid step `eps * side / (4 sqrt 2)` where
/// `side` is the longest bounding box side.
pub fn grid_candidates(domain: &PolygonalDomain, eps: f64) -> Result<CandidateSet> {
    check_eps(eps)?;
    Ok(candidates_with_step(domain, default_step(domain, eps)))
}

fn default_step(domain: &PolygonalDomain, eps: f64) -> f64 {
    eps * domain.bbox().longest_side() / (4.0 * std::f64::consts::SQRT_2)
}

/// Lattice points in the domain, crossings of boundary edges with lattice
/// lines, and all corners. The lattice is anchored at the bounding box
/// minimum, so halving the step nests the sets.
pub fn candidates_with_step(domain: &PolygonalDomain, g: f64) -> CandidateSet {
    let bbox = domain.bbox();
    let (o, hi) = (bbox.min, bbox.max);
    let nx = ((hi.x - o.x) / g).floor() as i64;
    let ny = ((hi.y - o.y) / g).floor() as i64;
    let line_x = |i: i64| o.x + i as f64 * g;
    let line_y = |j: i64| o.y + j as f64 * g;

    let mut points: Vec<Point> = (0..=nx)
        .flat_map(|i| (0..=ny).map(move |j| Point::new(line_x(i), line_y(j))))
        .filter(|&p| domain.contains(p) != Containment::Outside)
        .collect();
    for e in domain.edges() {
        let (a, b) = (e.a, e.b);
        let (lo, hi) = (a.x.min(b.x), a.x.max(b.x));
        if b.x != a.x {
            for i in ((lo - o.x) / g).ceil() as i64..=((hi - o.x) / g).floor() as i64 {
                let x = line_x(i);
                let t = (x - a.x) / (b.x - a.x);
                points.push(Point::new(x, a.y + t * (b.y - a.y)));
            }
        }
        let (lo, hi) = (a.y.min(b.y), a.y.max(b.y));
        if b.y != a.y {
            for j in ((lo - o.y) / g).ceil() as i64..=((hi - o.y) / g).floor() as i64 {
                let y = line_y(j);
                let t = (y - a.y) / (b.y - a.y);
                points.push(Point::new(a.x + t * (b.x - a.x), y));
            }
        }
    }
    points.extend(domain.corners().iter().map(|c| c.pos));
    points.sort_by(|p, q| p.lex_cmp(q));
    points.dedup();
    CandidateSet { g, points }
}

/// A lower bound on the radius that needs no search: half of `Phi` at the
/// first corner, or half of the largest corner-to-corner distance.
fn radius_floor(index: &GeodesicIndex) -> Result<f64> {
    let (l, _) = two_approx_radius(index, index.domain().corner(0))?;
    let table = index.table();
    let corner_diam = table.as_slice().iter().copied().fold(0.0, f64::max);
    Ok(l.max(0.5 * corner_diam))
}

/// `Phi` at every candidate; candidates whose `Phi` fails are skipped.
fn evaluate(index: &GeodesicIndex, points: &[Point]) -> Vec<(Point, f64)> {
    points
        .par_iter()
        .filter_map(|&z| phi(index, z).ok().map(|v| (z, v)))
        .collect()
}

/// The best grid candidate, with `L = U / (1 + eps)`.
///
/// The step is `eps * side / (4 sqrt 2)` unless the radius may be smaller
/// than a quarter of the side, in which case it shrinks to keep one cell
/// diagonal below `eps` times a radius lower bound.
pub fn approx_center(index: &GeodesicIndex, eps: f64) -> Result<CenterEstimate> {
    check_eps(eps)?;
    let domain = index.domain();
    let floor = radius_floor(index)?;
    let g = default_step(domain, eps).min(eps * floor / std::f64::consts::SQRT_2);
    let set = candidates_with_step(domain, g);
    let values = evaluate(index, &set.points);
    let &(c, upper) = values
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.lex_cmp(&b.0)))
        .ok_or_else(|| Error::InvalidDomain("no grid candidate lies in the domain".into()))?;
    let tol = domain.tolerance();
    let near_ties = values
        .iter()
        .filter(|(z, v)| *z != c && tol.eq_len(*v, upper))
        .map(|(z, _)| *z)
        .collect();
    let witnesses = farthest_neighbors(index, c)?.witnesses;
    Ok(CenterEstimate {
        c,
        upper,
        lower: upper / (1.0 + eps),
        eps,
        witnesses,
        candidates_evaluated: values.len(),
        near_ties,
    })
}

const DIRECTIONS: usize = 16;
const MAX_EVALUATIONS: usize = 20_000;

/// Pattern search on `Phi` from `start`.
///
/// Sixteen directions, rotated a little after every failed round so that a
/// narrow descent cone cannot hide between them; the step halves when no
/// direction improves and the search stops below `tol`. `L` is the search-free
/// radius floor, so `eps` reports the certified ratio `U / L - 1`.
pub fn refine_center(index: &GeodesicIndex, start: Point, tol: f64) -> Result<CenterEstimate> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::OutOfRange(format!("tol must be positive, got {tol}")));
    }
    let domain = index.domain();
    let mut c = start;
    let mut best = phi(index, c)?;
    let mut evaluated = 1;
    let mut step = domain.bbox().longest_side() / 32.0;
    let mut phase = 0.0;
    while step >= tol && evaluated < MAX_EVALUATIONS {
        let trials: Vec<Point> = (0..DIRECTIONS)
            .map(|k| {
                let a = phase + k as f64 * std::f64::consts::TAU / DIRECTIONS as f64;
                c + Point::new(a.cos(), a.sin()) * step
            })
            .filter(|&z| domain.contains(z) != Containment::Outside)
            .collect();
        evaluated += trials.len();
        let found = evaluate(index, &trials)
            .into_iter()
            .filter(|&(_, v)| v < best)
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.lex_cmp(&b.0)));
        match found {
            Some((z, v)) => {
                c = z;
                best = v;
            }
            None => {
                step *= 0.5;
                // golden angle keeps the rotated direction sets well spread
                phase += 2.399_963_229_728_653 / DIRECTIONS as f64;
            }
        }
    }
    let lower = radius_floor(index)?.min(best);
    let witnesses = farthest_neighbors(index, c)?.witnesses;
    Ok(CenterEstimate {
        c,
        upper: best,
        lower,
        eps: best / lower - 1.0,
        witnesses,
        candidates_evaluated: evaluated,
        near_ties: Vec::new(),
    })
}

/// `L = max Phi(z)` over grid candidates `z`, which is a realized distance,
/// and `U = (1 + eps) L`.
///
/// The step keeps one cell diagonal below `eps / (1 + eps)` times a diameter
/// lower bound, which is what `U` needs.
pub fn approx_diameter(index: &GeodesicIndex, eps: f64) -> Result<DiameterEstimate> {
    check_eps(eps)?;
    let domain = index.domain();
    let floor = 2.0 * radius_floor(index)?;
    let g = default_step(domain, eps).min(eps / (1.0 + eps) * floor / std::f64::consts::SQRT_2);
    let set = candidates_with_step(domain, g);
    let values = evaluate(index, &set.points);
    let &(z, lower) = values
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.lex_cmp(&a.0)))
        .ok_or_else(|| Error::InvalidDomain("no grid candidate lies in the domain".into()))?;
    let far = farthest_neighbors(index, z)?;
    let q = far.witnesses.first().map_or(z, |w| w.pos);
    Ok(DiameterEstimate {
        lower,
        upper: (1.0 + eps) * lower,
        eps,
        pair: (z, q),
        candidates_evaluated: values.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    const HALF_DIAG: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn two_approx_examples() {
        let ix = GeodesicIndex::new(fixtures::unit_square());
        let (l, u) = two_approx_radius(&ix, p(0.5, 0.5)).unwrap();
        assert!((u - HALF_DIAG).abs() < 1e-12 && (l - HALF_DIAG / 2.0).abs() < 1e-12);
        let (l, u) = two_approx_radius(&ix, p(0., 0.)).unwrap();
        assert!((u - 2f64.sqrt()).abs() < 1e-12 && (l - HALF_DIAG).abs() < 1e-12);
        assert_eq!(u / l, 2.0);
        assert!(two_approx_radius(&ix, p(2., 2.)).is_err());
    }

    #[test]
    fn unit_square_grid() {
        let d = fixtures::unit_square();
        let set = grid_candidates(&d, 1.0).unwrap();
        assert!((set.g - 1.0 / (4.0 * 2f64.sqrt())).abs() < 1e-15);
        // a 6 x 6 lattice fits; the lattice lines cross the right and top
        // edges in 6 new points each, and the corner (1,1) is the last one
        assert_eq!(set.points.len(), 36 + 6 + 6 + 1);
        assert!(grid_candidates(&d, 0.0).is_err());
        assert!(grid_candidates(&d, 1.5).is_err());
    }

    #[test]
    fn candidates_lie_in_the_domain_and_scale_with_the_step() {
        let d = fixtures::holed_square();
        let coarse = grid_candidates(&d, 0.2).unwrap();
        let fine = grid_candidates(&d, 0.1).unwrap();
        for z in &fine.points {
            assert_ne!(d.contains(*z), Containment::Outside);
        }
        for z in &coarse.points {
            assert!(
                fine.points.binary_search_by(|q| q.lex_cmp(z)).is_ok(),
                "{z:?} not nested"
            );
        }
        let ratio = fine.points.len() as f64 / coarse.points.len() as f64;
        assert!((3.0..=5.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn convex_centers() {
        let ix = GeodesicIndex::new(fixtures::unit_square());
        let est = approx_center(&ix, 0.1).unwrap();
        assert!(est.upper >= HALF_DIAG - 1e-12 && est.upper <= 1.1 * HALF_DIAG);
        assert!(est.c.dist(p(0.5, 0.5)) <= grid_candidates(ix.domain(), 0.1).unwrap().g);
        assert!(est.lower <= est.upper && est.upper <= (1.0 + est.eps) * est.lower * (1.0 + 1e-12));

        let r = refine_center(&ix, p(0.3, 0.3), 1e-6).unwrap();
        assert!(r.c.dist(p(0.5, 0.5)) < 1e-5, "{:?}", r.c);
        assert!((r.upper - HALF_DIAG).abs() < 1e-6);

        let tri = GeodesicIndex::new(fixtures::equilateral_triangle());
        let est = approx_center(&tri, 0.1).unwrap();
        let circ = 1.0 / 3f64.sqrt();
        assert!(est.upper >= circ - 1e-12 && est.upper <= 1.1 * circ, "{}", est.upper);
    }

    #[test]
    fn refinement_never_raises_u_or_moves_l() {
        let ix = GeodesicIndex::new(fixtures::holed_square());
        let est = approx_center(&ix, 0.2).unwrap();
        let r = est.refined(&ix, 1e-4).unwrap();
        assert!(r.upper <= est.upper);
        assert_eq!(r.lower, est.lower);
        assert!((phi(&ix, r.c).unwrap() - r.upper).abs() < 1e-12);
    }

    #[test]
    fn diameter_examples() {
        let ix = GeodesicIndex::new(fixtures::unit_square());
        let dm = approx_diameter(&ix, 0.1).unwrap();
        assert!(dm.lower <= 2f64.sqrt() + 1e-12 && dm.lower >= 2f64.sqrt() / 1.1);
        assert!(dm.upper >= 2f64.sqrt());

        let ix = GeodesicIndex::new(fixtures::holed_square());
        let dm = approx_diameter(&ix, 0.2).unwrap();
        let (corner_diam, _) = ix.distance(p(0., 0.), p(10., 10.)).unwrap();
        assert!(dm.lower >= corner_diam - 1e-9 && dm.upper >= dm.lower);
        // rad >= diam / 2, so no realized distance exceeds twice any radius
        // upper bound
        let est = approx_center(&ix, 0.2).unwrap();
        assert!(dm.lower <= 2.0 * est.upper + 1e-9);
    }
}
