use std::fmt::Write as _;

use num_traits::ToPrimitive;

use super::{LtqDrawing, MeshDrawing};
use crate::error::Result;
use crate::geometry::{CrossingReport, Point, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvgOptions {
    /// Mark every crossing with a small circle.
    pub markers: bool,
    /// Print decimal labels next to vertices.
    pub labels: bool,
    /// Width of the output in pixels; the height follows the aspect ratio.
    pub width: u32,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self { markers: false, labels: true, width: 800 }
    }
}

struct Scene {
    axes: Vec<((f64, f64), (f64, f64))>,
    vertices: Vec<((f64, f64), String)>,
    paths: Vec<Vec<(f64, f64)>>,
    crossings: Vec<(f64, f64)>,
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn fp(p: &Point) -> (f64, f64) {
    (f(&p.x), f(&p.y))
}

fn crossing_points(report: &CrossingReport) -> Vec<(f64, f64)> {
    report.crossings.iter().map(|c| fp(&c.point)).collect()
}

pub fn export_svg(d: &LtqDrawing, options: &SvgOptions) -> Result<String> {
    let crossings = if options.markers { crossing_points(&d.crossing_report()?) } else { Vec::new() };
    let axes = d.axes.iter().map(|a| (fp(&a.origin), (f(&a.dx), f(&a.dy)))).collect();
    let vertices = d.placements.iter().map(|(x, p)| (fp(&p.point), x.to_decimal().to_string())).collect();
    let paths = d.edges.values().map(|pl| pl.points().iter().map(fp).collect()).collect();
    Ok(render(&Scene { axes, vertices, paths, crossings }, options))
}

pub fn export_mesh_svg(m: &MeshDrawing, options: &SvgOptions) -> Result<String> {
    let crossings = if options.markers { crossing_points(&m.crossing_report()?) } else { Vec::new() };
    let vertices = vec![(fp(&m.interval.0), "O".to_string()), (fp(&m.interval.1), "I".to_string())];
    let paths = m.segments().iter().map(|(_, a, b)| vec![fp(a), fp(b)]).collect();
    Ok(render(&Scene { axes: vec![((0.0, 0.0), (1.0, 0.0))], vertices, paths, crossings }, options))
}

/// Clips the line through `o` with direction `d` to the box.
fn clip(o: (f64, f64), d: (f64, f64), lo: (f64, f64), hi: (f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (oc, dc, l, h) in [(o.0, d.0, lo.0, hi.0), (o.1, d.1, lo.1, hi.1)] {
        if dc == 0.0 {
            if oc < l || oc > h {
                return None;
            }
        } else {
            let (a, b) = ((l - oc) / dc, (h - oc) / dc);
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
    }
    (t0 < t1).then_some(((o.0 + t0 * d.0, o.1 + t0 * d.1), (o.0 + t1 * d.0, o.1 + t1 * d.1)))
}

fn render(scene: &Scene, options: &SvgOptions) -> String {
    let all = scene.vertices.iter().map(|(p, _)| *p).chain(scene.paths.iter().flatten().copied());
    let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
    for (x, y) in all {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    if lo.0 > hi.0 {
        lo = (0.0, 0.0);
        hi = (1.0, 1.0);
    }
    let size = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
    let m = 0.05 * size;
    let (vx, vy, vw, vh) = (lo.0 - m, -hi.1 - m, hi.0 - lo.0 + 2.0 * m, hi.1 - lo.1 + 2.0 * m);
    let height = (options.width as f64 * vh / vw).round().max(1.0) as u32;
    let stroke = size / 600.0;
    let r = size / 200.0;
    let xy = |p: (f64, f64)| format!("{:.4} {:.4}", p.0, -p.1);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{height}" viewBox="{vx:.4} {vy:.4} {vw:.4} {vh:.4}">"#,
        options.width
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="grey" stroke-width="{:.5}" stroke-dasharray="{:.5}">"#, stroke, 4.0 * stroke);
    let (blo, bhi) = ((lo.0 - m, lo.1 - m), (hi.0 + m, hi.1 + m));
    for (o, d) in &scene.axes {
        if let Some((a, b)) = clip(*o, *d, blo, bhi) {
            let _ = writeln!(out, r#"<path class="axis" d="M {} L {}"/>"#, xy(a), xy(b));
        }
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="{stroke:.5}">"#);
    for p in &scene.paths {
        let mut d = format!("M {}", xy(p[0]));
        for q in &p[1..] {
            let _ = write!(d, " L {}", xy(*q));
        }
        let _ = writeln!(out, r#"<path class="edge" d="{d}"/>"#);
    }
    let _ = writeln!(out, "</g>");
    for (p, label) in &scene.vertices {
        let _ = writeln!(out, r#"<circle class="vertex" cx="{:.4}" cy="{:.4}" r="{r:.5}" fill="black"/>"#, p.0, -p.1);
        if options.labels {
            let _ = writeln!(out, r#"<text x="{:.4}" y="{:.4}" font-size="{:.5}">{label}</text>"#, p.0 + r, -p.1 - r, 3.0 * r);
        }
    }
    for p in &scene.crossings {
        let _ = writeln!(
            out,
            r#"<circle class="crossing" cx="{:.4}" cy="{:.4}" r="{:.5}" fill="none" stroke="red" stroke-width="{stroke:.5}"/>"#,
            p.0,
            -p.1,
            0.7 * r
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}
