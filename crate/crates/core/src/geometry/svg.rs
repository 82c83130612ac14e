//! SVG pictures of attractors with their boundary and critical points.

use std::fmt::Write;

use super::{attractor_points, ExtractionResult, PlanarIfs, Point};

const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
];
/// Upper bound on the dots drawn when the depth is chosen automatically.
const AUTO_DOTS: usize = 20_000;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    /// Subdivision depth; `None` picks the deepest level under a dot budget.
    pub depth: Option<u32>,
    /// Picture width in pixels.
    pub width: f64,
    pub dot_radius: f64,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { depth: None, width: 600.0, dot_radius: 1.2, labels: true }
    }
}

fn auto_depth(m: usize) -> u32 {
    if m == 1 {
        return 1;
    }
    let mut d = 1;
    while m.pow(d + 1) <= AUTO_DOTS && d < 16 {
        d += 1;
    }
    d
}

struct Frame {
    min: Point,
    scale: f64,
    height: f64,
    pad: f64,
}

impl Frame {
    fn new(points: &[Point], width: f64) -> Frame {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                min[k] = min[k].min(p[k]);
                max[k] = max[k].max(p[k]);
            }
        }
        let pad = 0.08 * width;
        let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-12);
        let scale = (width - 2.0 * pad) / span;
        let height = (max[1] - min[1]) * scale + 2.0 * pad;
        Frame { min: [min[0], max[1]], scale, height, pad }
    }

    /// Screen position, with y pointing down.
    fn screen(&self, p: Point) -> (f64, f64) {
        (
            self.pad + (p[0] - self.min[0]) * self.scale,
            self.pad + (self.min[1] - p[1]) * self.scale,
        )
    }
}

/// Draws the depth-`d` copies coloured by their first map and, when an
/// extraction is given, marks its boundary and critical points.
pub fn render_svg(ifs: &PlanarIfs, result: Option<&ExtractionResult>, options: &RenderOptions) -> String {
    let m = ifs.num_maps();
    let depth = options.depth.unwrap_or_else(|| auto_depth(m)).max(1);
    let points = attractor_points(ifs, depth).unwrap_or_else(|_| {
        attractor_points(ifs, auto_depth(m)).expect("automatic depth stays under the cap")
    });
    // Marked points join the frame: the dots only approach the boundary.
    let mut extent = points.clone();
    extent.extend(result.iter().flat_map(|r| r.points.iter().map(|p| [p.x, p.y])));
    let frame = Frame::new(&extent, options.width);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.3}" height="{:.3}" viewBox="0 0 {:.3} {:.3}">"#,
        options.width, frame.height, options.width, frame.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let block = points.len() / m;
    for (k, copy) in points.chunks(block).enumerate() {
        let _ = writeln!(out, r#"<g class="copy" id="copy{}" fill="{}">"#, k + 1, PALETTE[k % PALETTE.len()]);
        for &p in copy {
            let (x, y) = frame.screen(p);
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}"/>"#, options.dot_radius);
        }
        let _ = writeln!(out, "</g>");
    }
    if let Some(result) = result {
        let _ = writeln!(out, r#"<g class="marks" font-family="sans-serif" font-size="14">"#);
        for rec in &result.points {
            let (x, y) = frame.screen([rec.x, rec.y]);
            let class = if rec.critical { "critical" } else { "boundary" };
            let fill = if rec.critical { "black" } else { "white" };
            let _ = writeln!(
                out,
                r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="5.000" fill="{fill}" stroke="black" stroke-width="1.5"/>"#
            );
            if options.labels {
                let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}">{}</text>"#, x + 7.0, y - 7.0, rec.name);
            }
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}
