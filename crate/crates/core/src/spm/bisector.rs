//! Additively weighted bisectors and the tie-point solvers built on them.

use serde::Serialize;

use crate::geom::Point;

/// Shape of the locus `w_a + |a - x| = w_b + |b - x|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    /// Equal weights: the perpendicular bisector.
    Line,
    /// One root lies on a shortest path to the other: a ray leaving the heavier one.
    Ray,
    Hyperbola,
}

/// One branch of an additively weighted bisector, parametrized so that
/// the parameter increases monotonically along the curve.
#[derive(Clone, Copy, Debug)]
pub struct Bisector {
    pub kind: CurveKind,
    /// `|x - a| - |x - b|` along the curve.
    pub delta: f64,
    a: Point,
    b: Point,
    mid: Point,
    axis: Point,
    normal: Point,
    semi_major: f64,
    semi_minor: f64,
}

impl Bisector {
    /// `None` when the two roots coincide or the locus is empty.
    pub fn new(a: Point, wa: f64, b: Point, wb: f64) -> Option<Self> {
        let ab = a.dist(b);
        if ab == 0.0 {
            return None;
        }
        let delta = wb - wa;
        let half = 0.5 * ab;
        let axis = (b - a) / ab;
        let semi_major = 0.5 * delta.abs();
        let kind = if delta.abs() >= ab * (1.0 - 1e-10) {
            if delta.abs() > ab * (1.0 + 1e-9) {
                return None;
            }
            CurveKind::Ray
        } else if delta == 0.0 {
            CurveKind::Line
        } else {
            CurveKind::Hyperbola
        };
        Some(Bisector {
            kind,
            delta,
            a,
            b,
            mid: a.lerp(b, 0.5),
            axis,
            normal: axis.perp(),
            semi_major,
            semi_minor: (half * half - semi_major * semi_major).max(0.0).sqrt(),
        })
    }

    fn ray(&self) -> (Point, Point) {
        if self.delta > 0.0 {
            (self.b, self.axis)
        } else {
            (self.a, -self.axis)
        }
    }

    pub fn param(&self, x: Point) -> f64 {
        match self.kind {
            CurveKind::Ray => {
                let (start, dir) = self.ray();
                (x - start).dot(dir)
            }
            _ => (x - self.mid).dot(self.normal),
        }
    }

    pub fn point(&self, t: f64) -> Point {
        match self.kind {
            CurveKind::Ray => {
                let (start, dir) = self.ray();
                start + dir * t
            }
            _ => {
                let along = self.semi_major * (1.0 + (t / self.semi_minor).powi(2)).sqrt();
                self.mid + self.axis * (along * self.delta.signum()) + self.normal * t
            }
        }
    }

    /// Samples `count + 1` points between two parameters, endpoints included.
    pub fn sample(&self, t0: f64, t1: f64, count: usize) -> Vec<Point> {
        (0..=count)
            .map(|k| self.point(t0 + (t1 - t0) * k as f64 / count as f64))
            .collect()
    }
}

/// Real roots of `a t^2 + b t + c`, tolerating tiny negative discriminants.
fn quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() <= 1e-14 * scale {
        return if b != 0.0 { vec![-c / b] } else { Vec::new() };
    }
    let mut disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc < -1e-12 * b * b.max(4.0 * (a * c).abs()) {
            return Vec::new();
        }
        disc = 0.0;
    }
    // stable form: avoid cancellation between -b and sqrt(disc)
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

fn gap(x: Point, a: Point, wa: f64, b: Point, wb: f64) -> f64 {
    (wa + a.dist(x)) - (wb + b.dist(x))
}

/// Points of segment `pq` where roots `a` and `b` tie.
pub(crate) fn pair_on_segment(a: Point, wa: f64, b: Point, wb: f64, p: Point, q: Point) -> Vec<Point> {
    let Some(bis) = Bisector::new(a, wa, b, wb) else {
        return Vec::new();
    };
    let dir = q - p;
    let len2 = dir.norm2();
    if len2 == 0.0 {
        return Vec::new();
    }
    let slack = 1e-9;
    let mut ts: Vec<f64> = Vec::new();
    if bis.kind == CurveKind::Ray {
        let (start, u) = bis.ray();
        let den = u.cross(dir);
        if den.abs() <= 1e-14 * dir.norm() {
            return Vec::new();
        }
        let w = p - start;
        let t = u.cross(w) / -den;
        let s = w.cross(dir) / den;
        if s >= -slack * dir.norm() {
            ts.push(t);
        }
    } else {
        // work relative to a so the squared terms stay small
        let (b0, p0) = (b - a, p - a);
        let delta = wb - wa;
        let k0 = -b0.norm2() + 2.0 * p0.dot(b0) - delta * delta;
        let k1 = 2.0 * dir.dot(b0);
        if bis.kind == CurveKind::Line {
            if k1 != 0.0 {
                ts.push(-k0 / k1);
            }
        } else {
            let pb = p0 - b0;
            let d2 = 4.0 * delta * delta;
            for t in quadratic(
                k1 * k1 - d2 * len2,
                2.0 * k0 * k1 - 2.0 * d2 * dir.dot(pb),
                k0 * k0 - d2 * pb.norm2(),
            ) {
                if (k0 + k1 * t) * delta >= -1e-9 * (k0.abs() + k1.abs()) * delta.abs() {
                    ts.push(t);
                }
            }
        }
    }
    ts.into_iter()
        .filter(|t| (-slack..=1.0 + slack).contains(t))
        .map(|t| {
            // Newton polish along the segment
            let mut t = t.clamp(0.0, 1.0);
            for _ in 0..4 {
                let x = p + dir * t;
                let g = gap(x, a, wa, b, wb);
                let dg = dir.dot(unit(x - a) - unit(x - b));
                if dg.abs() < 1e-300 {
                    break;
                }
                let nt = (t - g / dg).clamp(0.0, 1.0);
                if gap(p + dir * nt, a, wa, b, wb).abs() >= g.abs() {
                    break;
                }
                t = nt;
            }
            p + dir * t
        })
        .collect()
}

fn unit(d: Point) -> Point {
    let n = d.norm();
    if n == 0.0 {
        d
    } else {
        d / n
    }
}

/// Points where three weighted roots tie (at most two).
#[cfg(test)]
fn triple_point(roots: [(Point, f64); 3]) -> Vec<Point> {
    let mut out = rough_triple_point(roots);
    for x in &mut out {
        polish(x, roots);
    }
    out
}

/// [`triple_point`] before Newton polishing; callers that discard most
/// solutions polish the survivors themselves.
pub(crate) fn rough_triple_point(roots: [(Point, f64); 3]) -> Vec<Point> {
    let [(a, wa), (b, wb), (c, wc)] = roots;
    let (b0, c0) = (b - a, c - a);
    let (db, dc) = (wb - wa, wc - wa);
    // rows: 2 B.x - 2 db r = |B|^2 - db^2, unknowns (x, y, r)
    let m = [[2.0 * b0.x, 2.0 * b0.y, -2.0 * db], [2.0 * c0.x, 2.0 * c0.y, -2.0 * dc]];
    let k = [b0.norm2() - db * db, c0.norm2() - dc * dc];
    let scale = b0.norm().max(c0.norm());
    if scale == 0.0 {
        return Vec::new();
    }
    let minor = |i: usize, j: usize| m[0][i] * m[1][j] - m[0][j] * m[1][i];
    let (free, i, j) = [(2, 0, 1), (1, 0, 2), (0, 1, 2)]
        .into_iter()
        .max_by(|x, y| minor(x.1, x.2).abs().total_cmp(&minor(y.1, y.2).abs()))
        .unwrap();
    let det = minor(i, j);
    if det.abs() <= 1e-12 * scale * scale {
        return Vec::new();
    }
    // v_i = al_i + be_i * v_free (Cramer's rule)
    let solve = |r0: f64, r1: f64| ((r0 * m[1][j] - m[0][j] * r1) / det, (m[0][i] * r1 - r0 * m[1][i]) / det);
    let (al_i, al_j) = solve(k[0], k[1]);
    let (be_i, be_j) = solve(-m[0][free], -m[1][free]);
    let mut alpha = [0.0; 3];
    let mut beta = [0.0; 3];
    alpha[i] = al_i;
    alpha[j] = al_j;
    beta[i] = be_i;
    beta[j] = be_j;
    beta[free] = 1.0;
    // x^2 + y^2 - r^2 = 0
    let qa = beta[0] * beta[0] + beta[1] * beta[1] - beta[2] * beta[2];
    let qb = 2.0 * (alpha[0] * beta[0] + alpha[1] * beta[1] - alpha[2] * beta[2]);
    let qc = alpha[0] * alpha[0] + alpha[1] * alpha[1] - alpha[2] * alpha[2];
    let mut out = Vec::new();
    for v in quadratic(qa, qb, qc) {
        let r = alpha[2] + beta[2] * v;
        let slack = 1e-9 * scale;
        if r < -slack || r - db < -slack || r - dc < -slack {
            continue;
        }
        out.push(a + Point::new(alpha[0] + beta[0] * v, alpha[1] + beta[1] * v));
    }
    out
}

/// A few Newton steps on the two tie equations.
pub(crate) fn polish(x: &mut Point, [(a, wa), (b, wb), (c, wc)]: [(Point, f64); 3]) {
    let residual = |x: Point| {
        let f1 = gap(x, a, wa, b, wb);
        let f2 = gap(x, a, wa, c, wc);
        (f1, f2)
    };
    for _ in 0..6 {
        let (f1, f2) = residual(*x);
        let ua = unit(*x - a);
        let g1 = ua - unit(*x - b);
        let g2 = ua - unit(*x - c);
        let det = g1.cross(g2);
        if det.abs() < 1e-14 {
            return;
        }
        let step = Point::new((f1 * g2.y - f2 * g1.y) / det, (g1.x * f2 - g2.x * f1) / det);
        let next = *x - step;
        let (n1, n2) = residual(next);
        if n1.abs().max(n2.abs()) >= f1.abs().max(f2.abs()) {
            return;
        }
        *x = next;
    }
}
