//! Independent oracles shared by the integration tests.
//!
//! The oracles never call the closed-form neighbor rule or the production
//! geometry predicates. `check_*` and `agrees` compare production results
//! against them.

#![allow(dead_code)]

pub mod mutate;

use std::collections::{BTreeMap, BTreeSet};

use ltq_core::geometry::count_crossings_pairwise;
use ltq_core::label::{epsilon_zeta, partner};
use ltq_core::{count_crossings, EdgeInput, Point, Polyline, Rational, VertexLabel, ViolationKind};
use rand::Rng;

/// Edge set of LTQ_n built literally from the recursive definition, as
/// unordered decimal pairs `(lo, hi)`. Bit `x_1` is the most significant.
pub fn recursive_ltq(n: usize) -> BTreeSet<(u64, u64)> {
    assert!(n >= 2);
    if n == 2 {
        return [(0, 1), (1, 3), (2, 3), (0, 2)].into_iter().collect();
    }
    let sub = recursive_ltq(n - 1);
    let top = 1u64 << (n - 1);
    let mut out = BTreeSet::new();
    for &(a, b) in &sub {
        out.insert((a, b));
        out.insert((a | top, b | top));
    }
    // 0 x_2 ... x_n joins 1 (x_2 + x_n) x_3 ... x_n
    for x in 0..top {
        let xn = x & 1;
        let y = x ^ (xn << (n - 2));
        out.insert((x, top | y));
    }
    out
}

/// Adjacency lists of [`recursive_ltq`].
pub fn adjacency(n: usize) -> Vec<Vec<u64>> {
    let mut adj = vec![Vec::new(); 1 << n];
    for (a, b) in recursive_ltq(n) {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    adj
}

/// First differing position, 1-based from the most significant of `n` bits,
/// found by scanning.
pub fn lambda(n: usize, x: u64, y: u64) -> usize {
    (1..=n).find(|&i| (x >> (n - i)) & 1 != (y >> (n - i)) & 1).expect("distinct labels")
}

/// Canonical path from `u` to `v`, stepping to the unique neighbor `w` of the
/// current vertex with `lambda(cur, w) = lambda(cur, v)`.
pub fn oracle_path(n: usize, adj: &[Vec<u64>], u: u64, v: u64) -> Vec<u64> {
    let mut path = vec![u];
    let mut cur = u;
    while cur != v {
        let i = lambda(n, cur, v);
        let next: Vec<u64> = adj[cur as usize].iter().copied().filter(|&w| lambda(n, cur, w) == i).collect();
        assert_eq!(next.len(), 1, "dimension {i} at {cur} is not unique");
        cur = next[0];
        path.push(cur);
        assert!(path.len() <= n + 1, "path from {u} to {v} does not terminate");
    }
    path
}

/// Directed traversal counts `(x, y) -> paths using x immediately before y`
/// over all ordered pairs of distinct vertices.
pub fn oracle_loads(n: usize) -> BTreeMap<(u64, u64), u64> {
    let adj = adjacency(n);
    let mut loads = BTreeMap::new();
    for u in 0..1u64 << n {
        for v in 0..1u64 << n {
            if u == v {
                continue;
            }
            for w in oracle_path(n, &adj, u, v).windows(2) {
                *loads.entry((w[0], w[1])).or_insert(0) += 1;
            }
        }
    }
    loads
}

/// A segment in integer coordinates (all inputs scaled by [`SCALE`]).
type Seg = ((i128, i128), (i128, i128));

/// Common denominator of the random coordinates.
pub const SCALE: i64 = 12;

fn sub(a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// Result of the parametric solve for one segment pair.
#[derive(Debug, PartialEq, Eq)]
pub enum Meet {
    None,
    /// Interior of both segments; the point is `(num_x / den, num_y / den)`.
    Proper {
        num: (i128, i128),
        den: i128,
    },
    /// A single contact point involving a segment end.
    Degenerate((i128, i128), i128),
    /// Collinear segments sharing at least one point.
    Overlap,
}

/// Solves `p + t r = q + u s` for `t` and `u` and classifies the solution.
pub fn meet(a: Seg, b: Seg) -> Meet {
    let (p, q) = (a.0, b.0);
    let (r, s) = (sub(a.1, a.0), sub(b.1, b.0));
    let mut den = cross(r, s);
    let qp = sub(q, p);
    if den == 0 {
        if cross(qp, r) != 0 {
            return Meet::None;
        }
        // collinear: project b onto a
        let rr = r.0 * r.0 + r.1 * r.1;
        let t0 = qp.0 * r.0 + qp.1 * r.1;
        let t1 = t0 + s.0 * r.0 + s.1 * r.1;
        let (lo, hi) = (t0.min(t1), t0.max(t1));
        if hi < 0 || lo > rr {
            return Meet::None;
        }
        return Meet::Overlap;
    }
    let (mut tn, mut un) = (cross(qp, s), cross(qp, r));
    if den < 0 {
        den = -den;
        tn = -tn;
        un = -un;
    }
    if tn < 0 || tn > den || un < 0 || un > den {
        return Meet::None;
    }
    let point = (p.0 * den + tn * r.0, p.1 * den + tn * r.1);
    if tn == 0 || tn == den || un == 0 || un == den {
        return Meet::Degenerate(point, den);
    }
    Meet::Proper { num: point, den }
}

/// `(u, v, interior bend points)` in scaled integer coordinates.
pub type BentEdge = (usize, usize, Vec<(i64, i64)>);

/// A random instance: vertex positions plus edges as point-index polylines.
#[derive(Clone, Debug)]
pub struct Instance {
    pub vertices: Vec<(i64, i64)>,
    pub edges: Vec<BentEdge>,
}

impl Instance {
    pub fn random<R: Rng>(rng: &mut R, max_segments: usize) -> Self {
        let span = 40 * SCALE;
        let coord = |rng: &mut R| {
            let den = [1, 2, 3, 4, 6][rng.gen_range(0..5)];
            rng.gen_range(-span / SCALE * den..=span / SCALE * den) * (SCALE / den)
        };
        let nv = rng.gen_range(3..8);
        let vertices: Vec<(i64, i64)> = (0..nv).map(|_| (coord(rng), coord(rng))).collect();
        let mut edges = Vec::new();
        let mut segments = 0;
        let target = rng.gen_range(2..=max_segments);
        while segments < target {
            let u = rng.gen_range(0..nv);
            let v = rng.gen_range(0..nv);
            if u == v {
                continue;
            }
            let bends = rng.gen_range(0..3).min(target - segments - 1);
            let pts = (0..bends).map(|_| (coord(rng), coord(rng))).collect();
            segments += bends + 1;
            edges.push((u, v, pts));
        }
        Self { vertices, edges }
    }

    pub fn polyline(&self, k: usize) -> Vec<(i64, i64)> {
        let (u, v, bends) = &self.edges[k];
        let mut pts = vec![self.vertices[*u]];
        pts.extend(bends.iter().copied());
        pts.push(self.vertices[*v]);
        pts
    }

    fn segments(&self, k: usize) -> Vec<Seg> {
        self.polyline(k).windows(2).map(|w| ((i128::from(w[0].0), i128::from(w[0].1)), (i128::from(w[1].0), i128::from(w[1].1)))).collect()
    }

    /// Production input; `None` if some polyline has a repeated consecutive point.
    pub fn edge_inputs(&self) -> Option<Vec<EdgeInput>> {
        let r = |v: i64| Rational::new(v.into(), SCALE.into());
        (0..self.edges.len())
            .map(|k| {
                let pts = self.polyline(k).into_iter().map(|(x, y)| Point::new(r(x), r(y))).collect();
                let polyline = Polyline::new(pts).ok()?;
                Some(EdgeInput { id: k, endpoints: (self.edges[k].0, self.edges[k].1), polyline })
            })
            .collect()
    }

    /// Crossings per edge pair and their points, or `None` when the instance
    /// is not in general position (touching, overlaps, vertices on edges,
    /// self-intersections or three curves through one point).
    pub fn oracle(&self) -> Option<BTreeMap<(usize, usize), Vec<Point>>> {
        let vertex_set: BTreeSet<(i64, i64)> = self.vertices.iter().copied().collect();
        if vertex_set.len() != self.vertices.len() {
            return None;
        }
        let m = self.edges.len();
        let segs: Vec<Vec<Seg>> = (0..m).map(|k| self.segments(k)).collect();
        // bend points must avoid vertices and each other
        let mut all_bends = BTreeSet::new();
        for (_, _, bends) in &self.edges {
            for b in bends {
                if vertex_set.contains(b) || !all_bends.insert(*b) {
                    return None;
                }
            }
        }
        for s in &segs {
            for i in 0..s.len() {
                if s[i].0 == s[i].1 {
                    return None;
                }
                for j in i + 1..s.len() {
                    let touch = meet(s[i], s[j]);
                    let allowed = j == i + 1 && matches!(touch, Meet::Degenerate(p, d) if p == (s[i].1 .0 * d, s[i].1 .1 * d));
                    if touch != Meet::None && !allowed {
                        return None;
                    }
                }
            }
        }
        let mut out: BTreeMap<(usize, usize), Vec<Point>> = BTreeMap::new();
        let mut points: BTreeSet<(i128, i128, i128)> = BTreeSet::new();
        for a in 0..m {
            for b in a + 1..m {
                let shared: BTreeSet<usize> =
                    [self.edges[a].0, self.edges[a].1].into_iter().filter(|x| *x == self.edges[b].0 || *x == self.edges[b].1).collect();
                for (i, sa) in segs[a].iter().enumerate() {
                    for (j, sb) in segs[b].iter().enumerate() {
                        match meet(*sa, *sb) {
                            Meet::None => {}
                            Meet::Proper { num, den } => {
                                let g = gcd(gcd(num.0.abs(), num.1.abs()), den);
                                if !points.insert((num.0 / g, num.1 / g, den / g)) {
                                    return None;
                                }
                                let r = |v: i128| Rational::new((v as i64).into(), ((den as i64) * SCALE).into());
                                out.entry((a, b)).or_default().push(Point::new(r(num.0), r(num.1)));
                            }
                            Meet::Overlap => return None,
                            Meet::Degenerate(p, d) => {
                                // only the common endpoint of two adjacent edges may be shared
                                let ends_at = |k: usize, seg: usize, x: usize| {
                                    let (u, v, _) = &self.edges[k];
                                    (seg == 0 && *u == x) || (seg == segs[k].len() - 1 && *v == x)
                                };
                                let ok = shared.iter().any(|&x| {
                                    let pt = self.vertices[x];
                                    (i128::from(pt.0) * d, i128::from(pt.1) * d) == p && ends_at(a, i, x) && ends_at(b, j, x)
                                });
                                if !ok {
                                    return None;
                                }
                            }
                        }
                    }
                }
            }
        }
        Some(out)
    }
}

/// Checks one instance against the oracle and returns its crossing count;
/// `None` if it was not in general position.
pub fn agrees(inst: &Instance) -> Option<usize> {
    let want = inst.oracle()?;
    let edges = inst.edge_inputs()?;
    let r = count_crossings(&edges).unwrap();
    let total: usize = want.values().map(Vec::len).sum();
    assert_eq!(r.total, total, "{inst:?}");
    assert_eq!(r.crossings.len(), r.total);
    let got = r.pair_counts();
    for (pair, pts) in &want {
        assert_eq!(got.get(pair).copied().unwrap_or(0), pts.len(), "pair {pair:?} in {inst:?}");
        let have: BTreeSet<&Point> = r.crossings.iter().filter(|c| (c.a, c.b) == *pair).map(|c| &c.point).collect();
        assert_eq!(have, pts.iter().collect(), "points of {pair:?}");
    }
    // in general position only adjacency and repetition can make a drawing bad
    let shares = |a: usize, b: usize| {
        let (ea, eb) = (&inst.edges[a], &inst.edges[b]);
        [ea.0, ea.1].iter().any(|x| *x == eb.0 || *x == eb.1)
    };
    let mut kinds = BTreeSet::new();
    for (&(a, b), pts) in &want {
        if shares(a, b) {
            kinds.insert(ViolationKind::AdjacentCross);
        }
        if pts.len() > 1 {
            kinds.insert(ViolationKind::DoubleCross);
        }
    }
    let got_kinds: BTreeSet<ViolationKind> = r.violations.iter().map(|v| v.kind).collect();
    assert_eq!(got_kinds, kinds, "{inst:?}");
    assert_eq!(count_crossings_pairwise(&edges), r);
    Some(total)
}

fn pl(pts: &[(i64, i64)]) -> Polyline {
    Polyline::new(pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).unwrap()
}

pub fn edge(id: usize, ends: (usize, usize), pts: &[(i64, i64)]) -> EdgeInput {
    EdgeInput { id, endpoints: ends, polyline: pl(pts) }
}

/// One small drawing per violation kind, each showing only that kind.
pub fn violation_fixtures() -> Vec<(ViolationKind, Vec<EdgeInput>)> {
    vec![
        (ViolationKind::SelfCross, vec![edge(0, (0, 1), &[(0, 0), (3, 3), (3, 0), (0, 3)])]),
        (ViolationKind::AdjacentCross, vec![edge(0, (0, 1), &[(0, 0), (4, 4)]), edge(1, (0, 2), &[(0, 0), (4, 1), (1, 3)])]),
        (ViolationKind::DoubleCross, vec![edge(0, (0, 1), &[(0, 0), (6, 0)]), edge(1, (2, 3), &[(1, 2), (2, -2), (4, -2), (5, 2)])]),
        (
            ViolationKind::TriplePoint,
            vec![edge(0, (0, 1), &[(-2, -2), (2, 2)]), edge(1, (2, 3), &[(-2, 2), (2, -2)]), edge(2, (4, 5), &[(-3, 0), (3, 0)])],
        ),
        // vertex 2 sits on the interior of edge 0
        (ViolationKind::VertexOnEdge, vec![edge(0, (0, 1), &[(0, 0), (4, 0)]), edge(1, (2, 3), &[(2, 0), (2, 5)])]),
    ]
}

/// Violation kinds reported for a drawing.
pub fn kinds(edges: &[EdgeInput]) -> BTreeSet<ViolationKind> {
    count_crossings(edges).unwrap().violations.iter().map(|v| v.kind).collect()
}

/// `Dim(x, y)` computed on the recursive graph.
pub fn oracle_dim(n: usize, edges: &BTreeSet<(u64, u64)>, x: u64, y: u64) -> Option<usize> {
    edges.contains(&(x.min(y), x.max(y))).then(|| lambda(n, x, y))
}

/// Doubling both ends of an `LTQ_n` edge by its epsilon/zeta assignments
/// gives an `LTQ_{n+1}` edge of the expected dimension.
pub fn check_doubling(n: usize) {
    {
        let big = recursive_ltq(n + 1);
        for (a, b) in recursive_ltq(n) {
            let (x, y) = (VertexLabel::from_decimal(a, n).unwrap(), VertexLabel::from_decimal(b, n).unwrap());
            let d = lambda(n, a, b);
            let ez = epsilon_zeta(&x, &y).unwrap();
            assert!(ez.as_set() == [(0, 0), (1, 1)].into() || ez.as_set() == [(0, 1), (1, 0)].into());
            for (eps, zeta) in ez.assignments {
                let (xd, yd) = (x.double(eps).unwrap(), y.double(zeta).unwrap());
                let got = oracle_dim(n + 1, &big, xd.to_decimal(), yd.to_decimal());
                let want = if d < n { d } else { n + 1 };
                assert_eq!(got, Some(want), "{x}{eps} ~ {y}{zeta} in LTQ_{}", n + 1);
            }
        }
    }
}

/// Partners of adjacent vertices are adjacent along the same dimension.
pub fn check_partner_dims(n: usize) {
    {
        let adj = adjacency(n);
        // the dimension n-1 neighbor of every vertex, read off the recursive graph
        let mate: Vec<u64> = (0..1u64 << n)
            .map(|x| {
                let m: Vec<u64> = adj[x as usize].iter().copied().filter(|&u| lambda(n, x, u) == n - 1).collect();
                assert_eq!(m.len(), 1, "{x} in LTQ_{n}");
                m[0]
            })
            .collect();
        for x in 0..1u64 << n {
            let u = mate[x as usize];
            assert_eq!(partner(&VertexLabel::from_decimal(x, n).unwrap()).to_decimal(), u);
            for &y in &adj[x as usize] {
                let v = mate[y as usize];
                assert!(adj[u as usize].contains(&v), "x={x} y={y}: {u} !~ {v} in LTQ_{n}");
                assert_eq!(lambda(n, u, v), lambda(n, x, y), "x={x} y={y} u={u} v={v} n={n}");
            }
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Reads a file from the shipped `assets` directory.
pub fn asset(name: &str) -> Vec<u8> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../assets").join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}
