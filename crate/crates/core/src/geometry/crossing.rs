use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::point::{Point, Polyline};
use super::segment::{classify, common_denominator, cross, dot, orient, proper_point, Coord, IPt, RawHit};
use crate::error::{Error, Result};

/// One drawn edge: caller-chosen id, endpoint vertex ids and its curve.
#[derive(Clone, Debug)]
pub struct EdgeInput {
    pub id: usize,
    pub endpoints: (usize, usize),
    pub polyline: Polyline,
}

/// A crossing between edges `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Crossing {
    pub a: usize,
    pub b: usize,
    pub point: Point,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    SelfCross,
    AdjacentCross,
    DoubleCross,
    TriplePoint,
    VertexOnEdge,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SelfCross => "SELF_CROSS",
            Self::AdjacentCross => "ADJACENT_CROSS",
            Self::DoubleCross => "DOUBLE_CROSS",
            Self::TriplePoint => "TRIPLE_POINT",
            Self::VertexOnEdge => "VERTEX_ON_EDGE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    pub edges: Vec<usize>,
    pub point: Option<Point>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} edges {:?}", self.kind, self.edges)?;
        if let Some(p) = &self.point {
            write!(f, " at {p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingReport {
    /// Sorted by `(a, b, point)`.
    pub crossings: Vec<Crossing>,
    pub total: usize,
    /// Sorted and free of duplicates.
    pub violations: Vec<Violation>,
}

impl CrossingReport {
    pub fn is_good(&self) -> bool {
        self.violations.is_empty()
    }

    /// Number of crossings per unordered edge pair.
    pub fn pair_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for c in &self.crossings {
            *m.entry((c.a, c.b)).or_insert(0) += 1;
        }
        m
    }

    pub fn crossings_between(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.crossings.iter().filter(|c| c.a == a && c.b == b).count()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// Counts all crossings between distinct edges and collects good-drawing
/// violations.
///
/// Two edges meeting at a common endpoint vertex do not cross there. A contact
/// at a bend point counts as a crossing when the two curves locally pass
/// through each other and as a tangency (`DOUBLE_CROSS`) otherwise.
pub fn count_crossings(edges: &[EdgeInput]) -> Result<CrossingReport> {
    let mut ids = BTreeSet::new();
    for e in edges {
        if !ids.insert(e.id) {
            return Err(Error::Geometry(format!("duplicate edge id {}", e.id)));
        }
        if e.endpoints.0 == e.endpoints.1 {
            return Err(Error::MalformedPolyline { edge: e.id.to_string(), reason: "loop edge".into() });
        }
    }
    let scale = common_denominator(edges.iter().flat_map(|e| e.polyline.points().iter().flat_map(|p| [&p.x, &p.y])));
    let big: Vec<Vec<IPt<BigInt>>> = edges.iter().map(|e| e.polyline.points().iter().map(|p| IPt::scaled(p, &scale)).collect()).collect();
    let limit = BigInt::from(1u64 << 61);
    let fits = big.iter().flatten().all(|p| p.x.abs() < limit && p.y.abs() < limit);
    if fits {
        let small: Vec<Vec<IPt<i128>>> = big
            .iter()
            .map(|pl| pl.iter().map(|p| IPt { x: p.x.to_i128().expect("fits"), y: p.y.to_i128().expect("fits") }).collect())
            .collect();
        Ok(Engine::new(edges, &small, &scale).run(true))
    } else {
        Ok(Engine::new(edges, &big, &scale).run(true))
    }
}

/// `true` iff the report carries no violations; the list is returned alongside.
pub fn is_good_drawing(edges: &[EdgeInput]) -> Result<(bool, Vec<Violation>)> {
    let r = count_crossings(edges)?;
    Ok((r.is_good(), r.violations))
}

/// Same as [`count_crossings`] but compares every segment pair, without the
/// sweep or the machine-integer fast path. Quadratic; meant for checking.
pub fn count_crossings_pairwise(edges: &[EdgeInput]) -> CrossingReport {
    let scale = common_denominator(edges.iter().flat_map(|e| e.polyline.points().iter().flat_map(|p| [&p.x, &p.y])));
    let big: Vec<Vec<IPt<BigInt>>> = edges.iter().map(|e| e.polyline.points().iter().map(|p| IPt::scaled(p, &scale)).collect()).collect();
    Engine::new(edges, &big, &scale).run(false)
}

struct Seg<T> {
    edge: usize,
    k: usize,
    x0: T,
    x1: T,
    y0: T,
    y1: T,
}

struct Engine<'a, T> {
    edges: &'a [EdgeInput],
    pts: &'a [Vec<IPt<T>>],
    scale: &'a BigInt,
}

struct Found<T> {
    proper: Vec<(usize, usize, Point)>,
    touches: BTreeSet<(usize, usize, IPt<T>)>,
    overlaps: BTreeSet<(usize, usize)>,
    self_edges: BTreeSet<usize>,
}

impl<'a, T: Coord> Engine<'a, T> {
    fn new(edges: &'a [EdgeInput], pts: &'a [Vec<IPt<T>>], scale: &'a BigInt) -> Self {
        Self { edges, pts, scale }
    }

    fn segments(&self) -> Vec<Seg<T>> {
        let mut segs = Vec::new();
        for (e, pl) in self.pts.iter().enumerate() {
            for k in 0..pl.len() - 1 {
                let (a, b) = (&pl[k], &pl[k + 1]);
                segs.push(Seg {
                    edge: e,
                    k,
                    x0: a.x.clone().min(b.x.clone()),
                    x1: a.x.clone().max(b.x.clone()),
                    y0: a.y.clone().min(b.y.clone()),
                    y1: a.y.clone().max(b.y.clone()),
                });
            }
        }
        segs
    }

    fn run(&self, sweep: bool) -> CrossingReport {
        let mut segs = self.segments();
        let mut found = Found { proper: Vec::new(), touches: BTreeSet::new(), overlaps: BTreeSet::new(), self_edges: BTreeSet::new() };
        if sweep {
            segs.sort_by(|a, b| a.x0.cmp(&b.x0));
            for i in 0..segs.len() {
                for j in i + 1..segs.len() {
                    if segs[j].x0 > segs[i].x1 {
                        break;
                    }
                    if segs[j].y0 <= segs[i].y1 && segs[i].y0 <= segs[j].y1 {
                        self.pair(&segs[i], &segs[j], &mut found);
                    }
                }
            }
        } else {
            for i in 0..segs.len() {
                for j in i + 1..segs.len() {
                    self.pair(&segs[i], &segs[j], &mut found);
                }
            }
        }
        self.finish(found)
    }

    fn pair(&self, s: &Seg<T>, t: &Seg<T>, found: &mut Found<T>) {
        let (s, t) = if (s.edge, s.k) <= (t.edge, t.k) { (s, t) } else { (t, s) };
        let (ps, pt) = (&self.pts[s.edge], &self.pts[t.edge]);
        let hit = classify(&ps[s.k], &ps[s.k + 1], &pt[t.k], &pt[t.k + 1]);
        if s.edge == t.edge {
            let consecutive = t.k == s.k + 1;
            let bad = match hit {
                RawHit::None => false,
                RawHit::Overlap => true,
                RawHit::Touch(_) | RawHit::Proper => !consecutive,
            };
            if bad {
                found.self_edges.insert(s.edge);
            }
            return;
        }
        let (a, b) = (s.edge, t.edge);
        let key = |x: usize, y: usize| if self.edges[x].id <= self.edges[y].id { (x, y) } else { (y, x) };
        let (a, b) = key(a, b);
        match hit {
            RawHit::None => {}
            RawHit::Overlap => {
                found.overlaps.insert((a, b));
            }
            RawHit::Proper => {
                let p = proper_point(&ps[s.k], &ps[s.k + 1], &pt[t.k], &pt[t.k + 1], self.scale);
                found.proper.push((a, b, p));
            }
            RawHit::Touch(p) => {
                found.touches.insert((a, b, p));
            }
        }
    }

    /// Vertex id if `p` is a terminal point of edge `e`.
    fn terminal(&self, e: usize, p: &IPt<T>) -> Option<usize> {
        let pl = &self.pts[e];
        if *p == pl[0] {
            Some(self.edges[e].endpoints.0)
        } else if p == pl.last().expect("non-empty") {
            Some(self.edges[e].endpoints.1)
        } else {
            None
        }
    }

    /// Directions of the two arms of edge `e` leaving the interior point `p`.
    fn arms(&self, e: usize, p: &IPt<T>) -> Option<[(T, T); 2]> {
        let pl = &self.pts[e];
        if let Some(k) = pl.iter().position(|q| q == p) {
            if k == 0 || k + 1 == pl.len() {
                return None;
            }
            return Some([pl[k - 1].sub(p), pl[k + 1].sub(p)]);
        }
        for w in pl.windows(2) {
            if orient(&w[0], &w[1], p).is_zero() {
                let inside = |a: &T, b: &T, v: &T| (a <= v && v <= b) || (b <= v && v <= a);
                if inside(&w[0].x, &w[1].x, &p.x) && inside(&w[0].y, &w[1].y, &p.y) {
                    return Some([w[0].sub(p), w[1].sub(p)]);
                }
            }
        }
        None
    }

    fn finish(&self, found: Found<T>) -> CrossingReport {
        let id = |e: usize| self.edges[e].id;
        let mut violations: BTreeSet<Violation> = BTreeSet::new();
        let mut crossings: BTreeSet<(usize, usize, Point)> = found.proper.into_iter().collect();
        for e in found.self_edges {
            violations.insert(Violation { kind: ViolationKind::SelfCross, edges: vec![id(e)], point: None });
        }
        for (a, b) in found.overlaps {
            violations.insert(Violation { kind: ViolationKind::DoubleCross, edges: vec![id(a), id(b)], point: None });
        }
        for (a, b, p) in found.touches {
            let ta = self.terminal(a, &p);
            let tb = self.terminal(b, &p);
            let point = p.unscale(self.scale);
            match (ta, tb) {
                (Some(u), Some(w)) if u == w => {}
                (None, None) => match (self.arms(a, &p), self.arms(b, &p)) {
                    (Some(ua), Some(ub)) => match alternation(&ua, &ub) {
                        Some(true) => {
                            crossings.insert((a, b, point));
                        }
                        _ => {
                            violations.insert(Violation {
                                kind: ViolationKind::DoubleCross,
                                edges: vec![id(a), id(b)],
                                point: Some(point),
                            });
                        }
                    },
                    _ => unreachable!("touch point lies on both edges"),
                },
                _ => {
                    violations.insert(Violation { kind: ViolationKind::VertexOnEdge, edges: vec![id(a), id(b)], point: Some(point) });
                }
            }
        }
        let crossings: Vec<Crossing> = {
            let mut v: Vec<Crossing> = crossings.into_iter().map(|(a, b, point)| Crossing { a: id(a), b: id(b), point }).collect();
            v.sort();
            v
        };
        let mut per_pair: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut at_point: BTreeMap<&Point, BTreeSet<usize>> = BTreeMap::new();
        let by_id: BTreeMap<usize, usize> = self.edges.iter().enumerate().map(|(i, e)| (e.id, i)).collect();
        for c in &crossings {
            *per_pair.entry((c.a, c.b)).or_insert(0) += 1;
            at_point.entry(&c.point).or_default().extend([c.a, c.b]);
            let (ea, eb) = (&self.edges[by_id[&c.a]], &self.edges[by_id[&c.b]]);
            let (u, v) = ea.endpoints;
            if eb.endpoints.0 == u || eb.endpoints.0 == v || eb.endpoints.1 == u || eb.endpoints.1 == v {
                violations.insert(Violation { kind: ViolationKind::AdjacentCross, edges: vec![c.a, c.b], point: Some(c.point.clone()) });
            }
        }
        for ((a, b), k) in per_pair {
            if k >= 2 {
                violations.insert(Violation { kind: ViolationKind::DoubleCross, edges: vec![a, b], point: None });
            }
        }
        for (p, es) in at_point {
            if es.len() >= 3 {
                violations.insert(Violation { kind: ViolationKind::TriplePoint, edges: es.into_iter().collect(), point: Some(p.clone()) });
            }
        }
        CrossingReport { total: crossings.len(), crossings, violations: violations.into_iter().collect() }
    }
}

fn same_direction<T: Coord>(u: &(T, T), v: &(T, T)) -> bool {
    cross(u, v).is_zero() && dot(u, v).is_positive()
}

/// `v` strictly inside the counter-clockwise sweep from `u1` to `u2`.
fn strictly_between<T: Coord>(u1: &(T, T), u2: &(T, T), v: &(T, T)) -> bool {
    let c12 = cross(u1, u2);
    if c12.is_positive() {
        cross(u1, v).is_positive() && cross(v, u2).is_positive()
    } else if c12.is_negative() {
        !(!cross(u2, v).is_negative() && !cross(v, u1).is_negative())
    } else {
        cross(u1, v).is_positive()
    }
}

/// Whether the arms `b` separate the arms `a` at a common point: `Some(true)`
/// for a crossing, `Some(false)` for a touch, `None` when arms overlap.
fn alternation<T: Coord>(a: &[(T, T); 2], b: &[(T, T); 2]) -> Option<bool> {
    if same_direction(&a[0], &a[1]) || same_direction(&b[0], &b[1]) {
        return None;
    }
    if a.iter().any(|u| b.iter().any(|v| same_direction(u, v))) {
        return None;
    }
    Some(strictly_between(&a[0], &a[1], &b[0]) != strictly_between(&a[0], &a[1], &b[1]))
}
