use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Axis, LtqDrawing, Placement};
use crate::error::{Error, Result};
use crate::geometry::{format_rational, parse_rational, Point, Polyline, Rational};
use crate::graph::Edge;
use crate::label::VertexLabel;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn rational(line: usize, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|_| perr(line, format!("invalid rational {s:?}")))
}

fn label(line: usize, s: &str, n: usize) -> Result<VertexLabel> {
    let v = VertexLabel::from_bit_str(s).map_err(|_| perr(line, format!("invalid vertex label {s:?}")))?;
    if v.dim() != n {
        return Err(perr(line, format!("label {s} has {} bits, expected {n}", v.dim())));
    }
    Ok(v)
}

fn point(line: usize, x: &str, y: &str) -> Result<Point> {
    Ok(Point::new(rational(line, x)?, rational(line, y)?))
}

/// Parses an LTQDRAW document and checks its structure, including that every
/// vertex lies on its declared axis.
pub fn load_drawing(bytes: &[u8]) -> Result<LtqDrawing> {
    let d = parse(bytes)?;
    d.check_structure()?;
    if let Some(x) = d.off_axis_vertices().first() {
        return Err(Error::Structure(format!("vertex {x} does not lie on axis {}", d.placements[x].axis)));
    }
    Ok(d)
}

fn parse(bytes: &[u8]) -> Result<LtqDrawing> {
    let text = std::str::from_utf8(bytes).map_err(|e| perr(0, format!("not UTF-8: {e}")))?;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim())).filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, "LTQDRAW 1")) => {}
        Some((no, l)) => return Err(perr(no, format!("expected header `LTQDRAW 1`, found {l:?}"))),
        None => return Err(perr(0, "empty document")),
    }
    let n = match lines.next() {
        Some((no, l)) => {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 2 || t[0] != "n" {
                return Err(perr(no, "expected `n <dim>`"));
            }
            t[1].parse::<usize>().map_err(|_| perr(no, format!("invalid dimension {:?}", t[1])))?
        }
        None => return Err(perr(0, "missing `n` line")),
    };

    let mut d = LtqDrawing { n, axes: Vec::new(), placements: BTreeMap::new(), edges: BTreeMap::new() };
    for (no, l) in lines {
        let t: Vec<&str> = l.split_whitespace().collect();
        match t[0] {
            "axis" => {
                if t.len() != 6 {
                    return Err(perr(no, "axis needs `axis <id> <ox> <oy> <dx> <dy>`"));
                }
                if d.axis(t[1]).is_some() {
                    return Err(perr(no, format!("duplicate axis {}", t[1])));
                }
                let axis = Axis::new(t[1], point(no, t[2], t[3])?, rational(no, t[4])?, rational(no, t[5])?)
                    .map_err(|e| perr(no, e.to_string()))?;
                d.axes.push(axis);
            }
            "vertex" => {
                if t.len() != 5 {
                    return Err(perr(no, "vertex needs `vertex <bits> <axis-id> <x> <y>`"));
                }
                let x = label(no, t[1], n)?;
                let p = Placement { point: point(no, t[3], t[4])?, axis: t[2].to_string() };
                if d.placements.insert(x, p).is_some() {
                    return Err(perr(no, format!("duplicate vertex {x}")));
                }
            }
            "edge" => {
                if t.len() < 4 {
                    return Err(perr(no, "edge needs `edge <bits> <bits> <k> <x1> <y1> ...`"));
                }
                let a = label(no, t[1], n)?;
                let b = label(no, t[2], n)?;
                let e = Edge::new(a, b).map_err(|e| perr(no, e.to_string()))?;
                let k: usize = t[3].parse().map_err(|_| perr(no, format!("invalid point count {:?}", t[3])))?;
                if k < 2 {
                    return Err(perr(no, "an edge needs at least 2 points"));
                }
                if t.len() != 4 + 2 * k {
                    return Err(perr(no, format!("expected {k} points, found {} coordinates", t.len() - 4)));
                }
                let pts = t[4..].chunks(2).map(|c| point(no, c[0], c[1])).collect::<Result<Vec<_>>>()?;
                let mut pl = Polyline::new(pts).map_err(|e| perr(no, e.to_string()))?;
                if a != e.lo() {
                    pl = pl.reversed();
                }
                if d.edges.insert(e, pl).is_some() {
                    return Err(perr(no, format!("duplicate edge {e}")));
                }
            }
            other => return Err(perr(no, format!("unknown record {other:?}"))),
        }
    }
    Ok(d)
}

/// Serializes a drawing; `load_drawing(save_drawing(d))` reproduces `d`.
pub fn save_drawing(d: &LtqDrawing) -> Vec<u8> {
    let mut out = String::new();
    let _ = writeln!(out, "LTQDRAW 1");
    let _ = writeln!(out, "n {}", d.n);
    for a in &d.axes {
        let _ = writeln!(
            out,
            "axis {} {} {} {} {}",
            a.id,
            format_rational(&a.origin.x),
            format_rational(&a.origin.y),
            format_rational(&a.dx),
            format_rational(&a.dy)
        );
    }
    for (x, p) in &d.placements {
        let _ = writeln!(out, "vertex {x} {} {} {}", p.axis, format_rational(&p.point.x), format_rational(&p.point.y));
    }
    for (e, pl) in &d.edges {
        let _ = write!(out, "edge {} {} {}", e.lo(), e.hi(), pl.points().len());
        for p in pl.points() {
            let _ = write!(out, " {} {}", format_rational(&p.x), format_rational(&p.y));
        }
        out.push('\n');
    }
    out.into_bytes()
}
