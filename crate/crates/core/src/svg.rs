//! SVG figures of domains, shortest path maps and center estimates.
//!
//! World coordinates are kept as they are and flipped by one group
//! transform, so the y axis points up as in the input.

use std::fmt::Write;

use crate::center::{CandidateSet, CenterEstimate};
use crate::domain::PolygonalDomain;
use crate::geodesic::{GeodesicIndex, RootLabel};
use crate::geom::Point;
use crate::spm::ShortestPathMap;

struct Canvas {
    body: String,
    unit: f64,
    header: String,
}

impl Canvas {
    fn new(domain: &PolygonalDomain) -> Self {
        let bbox = domain.bbox();
        let margin = 0.03 * bbox.diagonal();
        let (x0, y0) = (bbox.min.x - margin, bbox.min.y - margin);
        let (w, h) = (bbox.width() + 2.0 * margin, bbox.height() + 2.0 * margin);
        let px = 800.0;
        let header = format!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{} {} {} {}">"#,
            px,
            px * h / w,
            x0,
            -(y0 + h),
            w,
            h
        );
        let mut c = Canvas {
            body: String::new(),
            unit: bbox.diagonal() / 400.0,
            header,
        };
        c.domain(domain);
        c
    }

    fn domain(&mut self, domain: &PolygonalDomain) {
        let mut d = String::new();
        for ring in domain.rings() {
            d.push_str(&path_data(ring));
        }
        let _ = write!(
            self.body,
            r##"<path class="domain" d="{d}" fill="#f4f4f0" fill-rule="evenodd" stroke="#222" stroke-width="{}"/>"##,
            self.unit
        );
    }

    fn polyline(&mut self, class: &str, pts: &[Point], color: &str, width: f64) {
        let list: Vec<String> = pts.iter().map(|p| format!("{},{}", p.x, p.y)).collect();
        let _ = write!(
            self.body,
            r#"<polyline class="{class}" points="{}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
            list.join(" "),
            width * self.unit
        );
    }

    fn dot(&mut self, class: &str, p: Point, radius: f64, color: &str) {
        let _ = write!(
            self.body,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{color}"/>"#,
            p.x,
            p.y,
            radius * self.unit
        );
    }

    fn finish(self) -> String {
        format!("{}<g transform=\"scale(1,-1)\">{}</g></svg>\n", self.header, self.body)
    }
}

fn path_data(ring: &[Point]) -> String {
    let mut d = String::new();
    for (i, p) in ring.iter().enumerate() {
        let _ = write!(d, "{}{},{} ", if i == 0 { "M" } else { "L" }, p.x, p.y);
    }
    d.push_str("Z ");
    d
}

/// A stable pastel color per root.
fn root_color(label: RootLabel) -> String {
    let k = match label {
        RootLabel::Source => 0,
        RootLabel::Corner(v) => v + 1,
    };
    let hue = (k as f64 * 137.507_764) % 360.0;
    format!("hsl({hue:.1},60%,80%)")
}

/// The domain alone.
pub fn domain_svg(domain: &PolygonalDomain) -> String {
    Canvas::new(domain).finish()
}

/// Cells filled by root, bisector arcs, map vertices, roots and the source.
pub fn spm_svg(map: &ShortestPathMap) -> String {
    let mut c = Canvas::new(map.domain());
    for cell in &map.cells {
        let mut d = path_data(&cell.boundary);
        for h in &cell.holes {
            d.push_str(&path_data(h));
        }
        let _ = write!(
            c.body,
            r#"<path class="cell" data-root="{}" d="{d}" fill="{}" fill-rule="evenodd" stroke="none"/>"#,
            cell.root,
            root_color(cell.root)
        );
    }
    for arc in &map.arcs {
        c.polyline("arc", &arc.polyline, "#1f5fa8", 0.8);
    }
    for v in &map.vertices {
        c.dot("vertex", v.pos, 1.2, "#1f5fa8");
    }
    for r in &map.roots {
        c.dot("root", r.pos, 1.8, "#c0392b");
    }
    c.dot("source", map.source, 3.0, "#000");
    c.finish()
}

/// Grid candidates, the center, its witnesses and a shortest path to each.
pub fn center_svg(index: &GeodesicIndex, est: &CenterEstimate, grid: Option<&CandidateSet>) -> String {
    let domain = index.domain();
    let mut c = Canvas::new(domain);
    if let Some(set) = grid {
        for &z in &set.points {
            c.dot("grid", z, 0.5, "#999");
        }
    }
    for w in &est.witnesses {
        if let Ok((_, path)) = index.distance(est.c, w.pos) {
            c.polyline("path", &path.points(domain), "#c0392b", 1.0);
        }
        c.dot("witness", w.pos, 2.5, "#c0392b");
    }
    c.dot("center", est.c, 3.5, "#000");
    c.finish()
}
