//! Regenerates `assets/ltq5.ltqdraw` and `assets/d6.ltqdraw` from
//! `assets/ltq4.ltqdraw`.
//!
//! Every vertex of the LTQ_4 drawing gets an axis splitting its four edges
//! two and two; among all such choices the one needing the fewest bundle
//! crossings is kept. The result is doubled twice.
//!
//! Run with `cargo run --release -p ltq-core --example build_assets`.

use std::f64::consts::PI;
use std::path::Path;

use ltq_core::construct::{bundle_swaps, double_drawing, forward_orientation, min_swap_orientation};
use ltq_core::drawing::{load_drawing, save_drawing, validate_properties, LtqDrawing};
use ltq_core::geometry::Rational;
use ltq_core::{Edge, VertexLabel};
use num_traits::ToPrimitive;

fn rat(v: f64) -> Rational {
    Rational::new(((v * 1e6).round() as i64).into(), 1_000_000.into())
}

/// Angles of the first segments at `x`, sorted.
fn rotation(d: &LtqDrawing, x: &VertexLabel) -> Vec<f64> {
    let mut out: Vec<f64> = d
        .edges
        .iter()
        .filter(|(e, _)| e.contains(x))
        .map(|(e, pl): (&Edge, _)| {
            let p = pl.points();
            let (s, n) = if e.lo() == *x { (&p[0], &p[1]) } else { (&p[p.len() - 1], &p[p.len() - 2]) };
            let f = |r: Rational| r.to_f64().unwrap_or(0.0);
            f(&n.y - &s.y).atan2(f(&n.x - &s.x))
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Axis angle with `up` strictly on its left and `down` on its right, with
/// the widest margin, if one exists.
fn separating_angle(up: &[f64], down: &[f64]) -> Option<f64> {
    let mut best: Option<(f64, f64)> = None;
    for i in 0..7200 {
        let th = f64::from(i) * PI / 3600.0;
        let margin = up.iter().map(|a| (a - th).sin()).chain(down.iter().map(|a| -(a - th).sin())).fold(f64::INFINITY, f64::min);
        if margin > 0.0 && best.is_none_or(|b| margin > b.1) {
            best = Some((th, margin));
        }
    }
    best.map(|b| b.0)
}

fn with_axes(d: &LtqDrawing, angles: &[(VertexLabel, f64)]) -> LtqDrawing {
    let mut out = d.clone();
    for (x, th) in angles {
        let p = out.placements[x].clone();
        let axis = out.axes.iter_mut().find(|a| a.id == p.axis).expect("declared axis");
        axis.origin = p.point;
        axis.dx = rat(th.cos());
        axis.dy = rat(th.sin());
    }
    out
}

fn best_axes(d: &LtqDrawing) -> LtqDrawing {
    let verts: Vec<VertexLabel> = d.placements.keys().copied().collect();
    let options: Vec<Vec<f64>> = verts
        .iter()
        .map(|x| {
            let a = rotation(d, x);
            assert_eq!(a.len(), 4, "LTQ_4 is 4-regular");
            (0..2).filter_map(|k| separating_angle(&[a[k], a[k + 1]], &[a[k + 2], a[(k + 3) % 4]])).collect()
        })
        .collect();
    let total: usize = options.iter().map(Vec::len).product();
    let mut best: Option<(usize, LtqDrawing)> = None;
    for mut code in 0..total {
        let angles: Vec<(VertexLabel, f64)> = verts
            .iter()
            .zip(&options)
            .map(|(x, o)| {
                let th = o[code % o.len()];
                code /= o.len();
                (*x, th)
            })
            .collect();
        let cand = with_axes(d, &angles);
        let swaps = bundle_swaps(&cand, &min_swap_orientation(&cand).expect("orientation")).expect("swaps").len();
        if best.as_ref().is_none_or(|b| swaps < b.0) {
            best = Some((swaps, cand));
        }
    }
    best.expect("at least one realizable split").1
}

fn write(path: &Path, d: &LtqDrawing) {
    std::fs::write(path, save_drawing(d)).expect("write asset");
    let r = validate_properties(d).expect("valid drawing");
    println!("{}: {} crossings", path.display(), r.crossings);
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets").canonicalize().expect("assets directory");
    let f = load_drawing(&std::fs::read(dir.join("ltq4.ltqdraw")).expect("read ltq4")).expect("parse ltq4");
    let f = best_axes(&f);
    let (e, trace) = double_drawing(&f, &min_swap_orientation(&f).expect("orientation")).expect("double LTQ_4");
    print!("{}", trace.report());
    write(&dir.join("ltq5.ltqdraw"), &e);

    let mut best: Option<LtqDrawing> = None;
    for plus in [forward_orientation(&e), min_swap_orientation(&e)].into_iter().flatten() {
        let (d6, trace) = double_drawing(&e, &plus).expect("double LTQ_5");
        if best.as_ref().is_none_or(|b| d6.crossing_count().ok() < b.crossing_count().ok()) {
            print!("{}", trace.report());
            best = Some(d6);
        }
    }
    write(&dir.join("d6.ltqdraw"), &best.expect("an orientation"));
}
