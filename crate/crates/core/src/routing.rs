//! Canonical paths and the congestion of embedding the doubled complete
//! graph `2K_{2^n}` into `LTQ_n`.
//!
//! Vertices of the multigraph map to themselves; the two parallel edges
//! between `u` and `v` map to the canonical paths `P(u, v)` and `P(v, u)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, LtqGraph};
use crate::label::{lambda_index, VertexLabel};

/// Default ceiling on `n` for all-pairs congestion sweeps.
pub const DEFAULT_CONGESTION_CAP: usize = 10;

/// `tau_v(u)`: the neighbor of `u` along dimension `lambda(u, v)`.
pub fn tau(v: &VertexLabel, u: &VertexLabel) -> Result<VertexLabel> {
    let i = lambda_index(u, v)?;
    Ok(u.neighbor_unchecked(i))
}

/// The vertex sequence `u = u_0, ..., u_l = v` obtained by iterating `tau_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPath {
    vertices: Vec<VertexLabel>,
}

impl CanonicalPath {
    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, w: &VertexLabel) -> bool {
        self.vertices.contains(w)
    }

    /// `lambda(u_i, v)` for every non-terminal vertex.
    pub fn lambda_sequence(&self) -> Vec<usize> {
        let v = self.vertices.last().expect("non-empty path");
        self.vertices[..self.len()].iter().map(|u| lambda_index(u, v).expect("non-terminal vertices differ from v")).collect()
    }
}

/// `P(u, v)`; the path from a vertex to itself has length 0.
pub fn canonical_path(u: &VertexLabel, v: &VertexLabel) -> Result<CanonicalPath> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch(u.dim(), v.dim()));
    }
    let mut vertices = vec![*u];
    let mut cur = *u;
    while cur != *v {
        cur = tau(v, &cur)?;
        vertices.push(cur);
    }
    Ok(CanonicalPath { vertices })
}

/// Calls `visit(from, dim)` for every step of `P(u, v)` without allocating.
fn walk_path(u: VertexLabel, v: VertexLabel, mut visit: impl FnMut(VertexLabel, usize)) {
    let mut cur = u;
    while cur != v {
        let i = lambda_index(&cur, &v).expect("distinct");
        visit(cur, i);
        cur = cur.neighbor_unchecked(i);
    }
}

/// `F(v, w; t1, t2)`: vertices `u != v` with `t1 <= lambda(u, v) <= t2`
/// whose canonical path to `v` passes through `w`. Sorted.
pub fn f_set(v: &VertexLabel, w: &VertexLabel, t1: usize, t2: usize) -> Result<Vec<VertexLabel>> {
    let n = v.dim();
    if w.dim() != n {
        return Err(Error::DimensionMismatch(n, w.dim()));
    }
    if v == w {
        return Err(Error::SameVertex(v.to_string(), w.to_string()));
    }
    if !(1 <= t1 && t1 <= t2 && t2 <= n) {
        return Err(Error::Parameter(format!("need 1 <= t1 <= t2 <= {n}, got t1 = {t1}, t2 = {t2}")));
    }
    let g = LtqGraph::new(n)?;
    let mut out = Vec::new();
    for u in g.vertices() {
        if u == *v {
            continue;
        }
        let lam = lambda_index(&u, v)?;
        if lam < t1 || lam > t2 {
            continue;
        }
        let mut hit = u == *w;
        walk_path(u, *v, |from, i| {
            if from.neighbor_unchecked(i) == *w {
                hit = true;
            }
        });
        if hit {
            out.push(u);
        }
    }
    Ok(out)
}

/// Directed loads of one host edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct EdgeLoad {
    /// Paths traversing `x` immediately before `y` (`x = lo`).
    pub p_xy: u64,
    pub p_yx: u64,
    pub total: u64,
}

/// Loads of edge `e` by brute force over all ordered pairs.
pub fn edge_congestion(n: usize, e: &Edge) -> Result<EdgeLoad> {
    let g = LtqGraph::new(n)?;
    let (x, y) = e.endpoints();
    if !g.contains_edge(&x, &y) {
        return Err(Error::NotAdjacent(x.to_string(), y.to_string()));
    }
    let mut load = EdgeLoad::default();
    for u in g.vertices() {
        for v in g.vertices() {
            if u == v {
                continue;
            }
            walk_path(u, v, |from, i| {
                let to = from.neighbor_unchecked(i);
                if from == x && to == y {
                    load.p_xy += 1;
                } else if from == y && to == x {
                    load.p_yx += 1;
                }
            });
        }
    }
    load.total = load.p_xy + load.p_yx;
    Ok(load)
}

/// `V_{x,y} = { v != x : tau_v(x) = y }`, sorted.
pub fn v_set(x: &VertexLabel, y: &VertexLabel) -> Result<Vec<VertexLabel>> {
    let g = LtqGraph::new(x.dim())?;
    if !g.contains_edge(x, y) {
        return Err(Error::NotAdjacent(x.to_string(), y.to_string()));
    }
    let mut out = Vec::new();
    for v in g.vertices() {
        if v != *x && tau(&v, x)? == *y {
            out.push(v);
        }
    }
    Ok(out)
}

pub fn v_set_size(x: &VertexLabel, y: &VertexLabel) -> Result<usize> {
    Ok(v_set(x, y)?.len())
}

/// Options for [`congestion_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CongestionOptions {
    pub max_n: usize,
    pub jobs: usize,
}

impl Default for CongestionOptions {
    fn default() -> Self {
        Self { max_n: DEFAULT_CONGESTION_CAP, jobs: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongestionReport {
    pub n: usize,
    pub per_edge: BTreeMap<Edge, EdgeLoad>,
    pub max_congestion: u64,
}

impl CongestionReport {
    /// CSV with header `x,y,p_xy,p_yx,total`, vertices in decimal.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,p_xy,p_yx,total\n");
        for (e, load) in &self.per_edge {
            let _ = writeln!(out, "{},{},{},{},{}", e.lo().to_decimal(), e.hi().to_decimal(), load.p_xy, load.p_yx, load.total);
        }
        out
    }
}

/// Congestion of every host edge under the canonical-path embedding.
///
/// Ordered pairs are split by target vertex across `jobs` workers; tallies are
/// summed, so the result does not depend on the worker count.
pub fn congestion_report(n: usize, opts: CongestionOptions) -> Result<CongestionReport> {
    let g = LtqGraph::new(n)?;
    if n > opts.max_n {
        return Err(Error::ResourceLimit { n, cap: opts.max_n });
    }
    let nv = g.vertex_count() as usize;
    let jobs = opts.jobs.clamp(1, nv);
    // directed slot (x, i) counts steps leaving x along dimension i
    let tally_range = |targets: std::ops::Range<usize>| -> Vec<u64> {
        let mut counts = vec![0u64; nv * n];
        for vd in targets {
            let v = VertexLabel::from_decimal(vd as u64, n).expect("in range");
            for ud in 0..nv {
                if ud == vd {
                    continue;
                }
                let u = VertexLabel::from_decimal(ud as u64, n).expect("in range");
                walk_path(u, v, |from, i| counts[from.to_decimal() as usize * n + (i - 1)] += 1);
            }
        }
        counts
    };
    let counts = if jobs == 1 {
        tally_range(0..nv)
    } else {
        let chunk = nv.div_ceil(jobs);
        let parts: Vec<Vec<u64>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let lo = (j * chunk).min(nv);
                    let hi = ((j + 1) * chunk).min(nv);
                    let f = &tally_range;
                    s.spawn(move || f(lo..hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut total = vec![0u64; nv * n];
        for part in parts {
            for (t, c) in total.iter_mut().zip(part) {
                *t += c;
            }
        }
        total
    };
    let mut per_edge = BTreeMap::new();
    let mut max_congestion = 0;
    for e in g.edges() {
        let d = e.dimension();
        let p_xy = counts[e.lo().to_decimal() as usize * n + (d - 1)];
        let p_yx = counts[e.hi().to_decimal() as usize * n + (d - 1)];
        let total = p_xy + p_yx;
        max_congestion = max_congestion.max(total);
        per_edge.insert(e, EdgeLoad { p_xy, p_yx, total });
    }
    Ok(CongestionReport { n, per_edge, max_congestion })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VertexLabel {
        s.parse().unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&v("111"), &v("000")).unwrap(), v("100"));
        assert_eq!(tau(&v("111"), &v("110")).unwrap(), v("111"));
        assert_eq!(tau(&v("000"), &v("011")).unwrap(), v("001"));
        assert!(tau(&v("000"), &v("000")).is_err());
    }

    #[test]
    fn canonical_path_examples() {
        let p = canonical_path(&v("000"), &v("111")).unwrap();
        assert_eq!(p.vertices(), &[v("000"), v("100"), v("110"), v("111")]);
        assert_eq!(p.lambda_sequence(), vec![1, 2, 3]);
        let p = canonical_path(&v("011"), &v("000")).unwrap();
        assert_eq!(p.vertices(), &[v("011"), v("001"), v("000")]);
        let p = canonical_path(&v("101"), &v("101")).unwrap();
        assert_eq!(p.len(), 0);
        assert!(p.is_empty());
        assert!(canonical_path(&v("101"), &v("1010")).is_err());
    }

    #[test]
    fn f_set_examples() {
        let (vv, w) = (v("0000"), v("0100"));
        assert_eq!(f_set(&vv, &w, 2, 2).unwrap(), vec![w]);
        assert_eq!(f_set(&vv, &w, 1, 2).unwrap().len(), 2);
        // n = 3 membership listed by enumerating every path into 000;
        // lambda(110, 000) = 1, so only 110 itself qualifies
        let (vv, w) = (v("000"), v("110"));
        let brute: Vec<VertexLabel> = LtqGraph::new(3)
            .unwrap()
            .vertices()
            .filter(|u| *u != vv)
            .filter(|u| (1..=2).contains(&lambda_index(u, &vv).unwrap()))
            .filter(|u| canonical_path(u, &vv).unwrap().contains(&w))
            .collect();
        assert_eq!(brute, vec![v("110")]);
        assert_eq!(f_set(&vv, &w, 1, 2).unwrap(), brute);
        assert_eq!(f_set(&vv, &v("010"), 1, 2).unwrap(), vec![v("010"), v("110")]);
        assert!(f_set(&vv, &w, 0, 2).is_err());
        assert!(f_set(&vv, &w, 3, 2).is_err());
        assert!(f_set(&vv, &vv, 1, 2).is_err());
    }

    #[test]
    fn edge_congestion_examples() {
        let e = Edge::new(v("000"), v("100")).unwrap();
        let load = edge_congestion(3, &e).unwrap();
        assert_eq!((load.p_xy, load.p_yx, load.total), (4, 4, 8));
        for e in LtqGraph::new(2).unwrap().edges() {
            assert_eq!(edge_congestion(2, &e).unwrap().total, 4);
        }
        let bad = Edge::from_adjacent(v("000"), v("011"));
        assert!(edge_congestion(3, &bad).is_err());
    }

    #[test]
    fn v_set_examples() {
        assert_eq!(v_set_size(&v("0110"), &v("0111")).unwrap(), 1);
        assert_eq!(v_set_size(&v("0111"), &v("1011")).unwrap(), 8);
        assert_eq!(v_set(&v("000"), &v("100")).unwrap(), vec![v("100"), v("101"), v("110"), v("111")]);
        assert!(v_set(&v("0110"), &v("0101")).is_err());
    }

    #[test]
    fn report_small_cases() {
        for (n, expect) in [(2, 4), (4, 16), (6, 64)] {
            let r = congestion_report(n, CongestionOptions::default()).unwrap();
            assert_eq!(r.max_congestion, expect);
            assert!(r.per_edge.values().all(|l| l.total == expect && l.p_xy == expect / 2));
        }
    }

    #[test]
    fn report_respects_cap_and_jobs() {
        let opts = CongestionOptions { max_n: 4, jobs: 1 };
        assert!(matches!(congestion_report(5, opts), Err(Error::ResourceLimit { n: 5, cap: 4 })));
        let one = congestion_report(5, CongestionOptions { max_n: 5, jobs: 1 }).unwrap();
        let three = congestion_report(5, CongestionOptions { max_n: 5, jobs: 3 }).unwrap();
        assert_eq!(one, three);
        let csv = one.to_csv();
        assert!(csv.starts_with("x,y,p_xy,p_yx,total\n"));
        assert_eq!(csv.lines().count(), 1 + 80);
    }
}
