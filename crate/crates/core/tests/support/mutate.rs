//! Seeded perturbations that each break one drawing property.

use ltq_core::drawing::Axis;
use ltq_core::label::partner;
use ltq_core::{Edge, LtqDrawing, Point, Polyline, Rational, VertexLabel};

pub fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn eps() -> Rational {
    q(1, 1_000_000_000)
}

/// Replaces the curve of `e`, given in order starting at `x`.
fn set_points_from(d: &mut LtqDrawing, x: &VertexLabel, e: &Edge, pts: Vec<Point>) {
    let pl = Polyline::new(pts).unwrap();
    let pl = if e.lo() == *x { pl } else { pl.reversed() };
    d.edges.insert(*e, pl);
}

pub fn incident(d: &LtqDrawing, x: &VertexLabel) -> Vec<Edge> {
    d.edges.keys().filter(|e| e.contains(x)).copied().collect()
}

/// Moves `x` and the ends of its curves to `target`.
fn relocate(d: &mut LtqDrawing, x: &VertexLabel, target: Point) {
    for e in incident(d, x) {
        let mut pts = d.points_from(x, &e).unwrap();
        pts[0] = target.clone();
        set_points_from(d, x, &e, pts);
    }
    d.placements.get_mut(x).unwrap().point = target;
}

/// Shifts `x` slightly off its axis.
pub fn off_axis(d: &LtqDrawing, x: &VertexLabel) -> LtqDrawing {
    let mut d = d.clone();
    let axis = d.axis_of(x).unwrap().clone();
    let moved = d.placements[x].point.add(&(-&axis.dy * eps()), &(&axis.dx * eps()));
    relocate(&mut d, x, moved);
    d
}

/// Makes `e` leave `x` along the axis of `x`.
pub fn along_axis(d: &LtqDrawing, x: &VertexLabel, e: &Edge) -> LtqDrawing {
    let mut d = d.clone();
    let axis = d.axis_of(x).unwrap().clone();
    let mut pts = d.points_from(x, e).unwrap();
    pts.insert(1, pts[0].add(&(&axis.dx * eps()), &(&axis.dy * eps())));
    set_points_from(&mut d, x, e, pts);
    d
}

/// Puts `x` on a new axis that coincides with its old one.
pub fn renamed_axis(d: &LtqDrawing, x: &VertexLabel) -> LtqDrawing {
    let mut d = d.clone();
    let old = d.axis_of(x).unwrap().clone();
    d.axes.push(Axis::new("mutant", old.origin.clone(), old.dx.clone(), old.dy.clone()).unwrap());
    d.placements.get_mut(x).unwrap().axis = "mutant".into();
    d
}

/// Slides `x` along its axis to the far side of the other vertices there,
/// away from its partner. Needs at least three vertices on the axis.
pub fn slide_past(d: &LtqDrawing, x: &VertexLabel) -> LtqDrawing {
    let mut d = d.clone();
    let axis = d.axis_of(x).unwrap().clone();
    let mut on_axis: Vec<(Rational, VertexLabel)> =
        d.placements.iter().filter(|(_, p)| p.axis == axis.id).map(|(y, p)| (axis.param(&p.point), *y)).collect();
    on_axis.sort();
    let u = partner(x);
    let t_x = &on_axis.iter().find(|(_, y)| y == x).unwrap().0;
    let t_u = &on_axis.iter().find(|(_, y)| *y == u).unwrap().0;
    let others: Vec<&Rational> = on_axis.iter().filter(|(_, y)| y != x && *y != u).map(|(t, _)| t).collect();
    assert!(!others.is_empty(), "axis {} carries only {x} and its partner", axis.id);
    let (lo, hi) = (others[0], others[others.len() - 1]);
    let gap = (&on_axis[on_axis.len() - 1].0 - &on_axis[0].0) * q(1, 3);
    let t = if t_u < lo { hi + &gap } else { lo - &gap };
    let dt = &t - t_x;
    let target = d.placements[x].point.add(&(&axis.dx * &dt), &(&axis.dy * &dt));
    relocate(&mut d, x, target);
    d
}

/// Mirrors the first direction of `e` at `x` across the axis of `x`.
pub fn flip_arc(d: &LtqDrawing, x: &VertexLabel, e: &Edge) -> LtqDrawing {
    let mut d = d.clone();
    let axis = d.axis_of(x).unwrap().clone();
    let mut pts = d.points_from(x, e).unwrap();
    let (vx, vy) = (&pts[1].x - &pts[0].x, &pts[1].y - &pts[0].y);
    let k = (&vx * &axis.dx + &vy * &axis.dy) / (&axis.dx * &axis.dx + &axis.dy * &axis.dy) * q(2, 1);
    let (rx, ry) = (&k * &axis.dx - &vx, &k * &axis.dy - &vy);
    pts.insert(1, pts[0].add(&(rx * eps()), &(ry * eps())));
    set_points_from(&mut d, x, e, pts);
    d
}

/// Reroutes `e` straight through the middle of `f`'s first segment.
pub fn detour_through(d: &LtqDrawing, e: &Edge, f: &Edge) -> LtqDrawing {
    let mut d = d.clone();
    let fp = d.edges[f].points().to_vec();
    let half = q(1, 2);
    let m = Point::new((&fp[0].x + &fp[1].x) * &half, (&fp[0].y + &fp[1].y) * &half);
    let (sx, sy) = (&fp[1].x - &fp[0].x, &fp[1].y - &fp[0].y);
    let (nx, ny) = (-sy * eps(), sx * eps());
    let pts =
        vec![d.placements[&e.lo()].point.clone(), m.add(&nx, &ny), m.add(&-nx.clone(), &-ny.clone()), d.placements[&e.hi()].point.clone()];
    set_points_from(&mut d, &e.lo(), e, pts);
    d
}

/// Edges below the top dimension with a distinct paired edge.
pub fn paired_edges(d: &LtqDrawing) -> Vec<(Edge, Edge)> {
    d.edges
        .keys()
        .filter(|e| e.dimension() < d.n)
        .map(|e| (*e, Edge::new(partner(&e.lo()), partner(&e.hi())).unwrap()))
        .filter(|(e, f)| e != f)
        .collect()
}

/// `(a, b)` sorted.
pub fn ordered<T: Ord>(a: T, b: T) -> (T, T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
