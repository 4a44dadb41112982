//! Static renderings of a threshold-edge view: SVG, edge CSV
//! `g1,g2,eucl,target,shade`, and the JSON body served over HTTP.

use std::fmt::Write as _;

use latclust_core::embed::EmbeddingModel;
use latclust_core::render::EdgeRender;
use serde::{Deserialize, Serialize};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub g1: u32,
    pub g2: u32,
    pub eucl: f64,
    pub target: f64,
    pub shade: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderDoc {
    pub mode: String,
    pub threshold: f64,
    pub edges: Vec<EdgeDoc>,
}

impl RenderDoc {
    pub fn from_render(r: &EdgeRender) -> Self {
        RenderDoc { mode: r.mode.as_str().into(), threshold: r.threshold, edges: edge_docs(r) }
    }
}

fn edge_docs(r: &EdgeRender) -> Vec<EdgeDoc> {
    r.edges
        .iter()
        .map(|e| EdgeDoc { g1: e.a as u32, g2: e.b as u32, eucl: e.eucl, target: e.target, shade: e.shade })
        .collect()
}

pub fn export_csv(r: &EdgeRender) -> String {
    crate::tables::write_rows(&edge_docs(r), &["g1", "g2", "eucl", "target", "shade"])
}

/// Maps model coordinates into the canvas, preserving aspect ratio.
struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(model: &EmbeddingModel) -> Frame {
        let xs = model.points.iter().map(|p| p.x);
        let ys = model.points.iter().map(|p| p.y);
        let (min_x, max_x) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        let (min_y, max_y) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        let extent = (max_x - min_x).max(max_y - min_y);
        if !extent.is_finite() || extent <= 0.0 {
            let (min_x, max_y) = if min_x.is_finite() { (min_x - 0.5, max_y + 0.5) } else { (0.0, 1.0) };
            return Frame { min_x, max_y, scale: SIZE - 2.0 * MARGIN };
        }
        Frame { min_x, max_y, scale: (SIZE - 2.0 * MARGIN) / extent }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + (x - self.min_x) * self.scale, MARGIN + (self.max_y - y) * self.scale)
    }
}

/// Edges drawn under the points; shade 1 is black.
pub fn render_svg(r: &EdgeRender, model: &EmbeddingModel) -> String {
    let frame = Frame::fit(model);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "<desc>mode={} threshold={} groups={} edges={}</desc>", r.mode, r.threshold, model.len(), r.edges.len());
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(out, r#"<g stroke-width="1">"#);
    for e in &r.edges {
        let (pa, pb) = (model.points[e.a], model.points[e.b]);
        let ((x1, y1), (x2, y2)) = (frame.map(pa.x, pa.y), frame.map(pb.x, pb.y));
        let level = ((1.0 - e.shade) * 255.0).round() as u8;
        let _ = writeln!(
            out,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="rgb({level},{level},{level})"/>"#
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="crimson">"#);
    for (g, p) in model.points.iter().enumerate() {
        let (x, y) = frame.map(p.x, p.y);
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3"><title>group {g}</title></circle>"#);
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
