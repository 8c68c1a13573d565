//! Minimal SVG writer for body outlines and cuts.

use fencekit_core::{CircularArc, Point2};
use std::fmt::Write;

const ARC_SEGMENTS: usize = 64;
const PALETTE: [&str; 6] = ["#c0392b", "#2471a3", "#1e8449", "#b9770e", "#7d3c98", "#5d6d7e"];

pub struct Cut {
    pub arc: CircularArc,
    pub label: Option<String>,
}

impl Cut {
    pub fn new(arc: CircularArc, label: impl Into<String>) -> Self {
        Self { arc, label: Some(label.into()) }
    }

    pub fn unlabelled(arc: CircularArc) -> Self {
        Self { arc, label: None }
    }
}

fn path_data(points: &[Point2], close: bool) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        // y is flipped so the picture keeps the mathematical orientation.
        let _ = write!(d, "{cmd}{:.6},{:.6} ", p.x, -p.y);
    }
    if close {
        d.push('Z');
    }
    d.trim_end().to_string()
}

/// SVG document with the outline, the cuts and an optional title. The
/// viewBox is the outline's bounding box plus a 5% margin.
pub fn render(outline: &[Point2], cuts: &[Cut], title: Option<&str>) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in outline {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    let size = (x1 - x0).max(y1 - y0).max(1e-12);
    let pad = 0.05 * size;
    let stroke = 0.004 * size;
    let font = 0.035 * size;
    let (vx, vy, vw, vh) = (x0 - pad, -y1 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx:.6} {vy:.6} {vw:.6} {vh:.6}" width="600" height="{:.0}">"#,
        600.0 * vh / vw
    );
    if let Some(t) = title {
        let _ = writeln!(s, "  <title>{}</title>", escape(t));
    }
    let _ = writeln!(
        s,
        r##"  <path d="{}" fill="#f4f6f7" stroke="#17202a" stroke-width="{stroke:.6}"/>"##,
        path_data(outline, true)
    );
    for (i, cut) in cuts.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts = cut.arc.polyline(ARC_SEGMENTS);
        let _ = writeln!(
            s,
            r#"  <path d="{}" fill="none" stroke="{color}" stroke-width="{stroke:.6}"/>"#,
            path_data(&pts, false)
        );
        if let Some(label) = &cut.label {
            let m = cut.arc.point_at(0.5);
            let _ = writeln!(
                s,
                r#"  <text x="{:.6}" y="{:.6}" font-size="{font:.6}" fill="{color}" font-family="sans-serif">{}</text>"#,
                m.x + 0.01 * size,
                -m.y - 0.01 * size,
                escape(label)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
