//! The doubling step `D_n -> D_{n+1}`: each vertex splits into two copies on
//! its axis, each edge becomes a bundle of two parallel curves, and the two
//! copies are joined by a short arc.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::drawing::{classify_arc, validate_properties, ArcClass, LtqDrawing, Placement, PropertyStatus};
use crate::error::{Error, Result};
use crate::geometry::{CrossingReport, Point, Polyline, Rational};
use crate::graph::Edge;
use crate::label::{epsilon_zeta, forward_direction, partner, ForwardDirection, VertexLabel};

/// Number of times the offsets are halved before giving up.
pub const MAX_ATTEMPTS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeshKind {
    /// `M^k`
    Full(usize),
    /// `M_c^k`
    Chopped(usize),
}

impl MeshKind {
    pub fn crossings(&self) -> usize {
        match *self {
            Self::Full(k) => k * (k - 1),
            Self::Chopped(k) => (k - 1) * (k - 1),
        }
    }
}

impl fmt::Display for MeshKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Full(k) => write!(f, "M^{k}"),
            Self::Chopped(k) => write!(f, "M_c^{k}"),
        }
    }
}

/// The mesh formed near a doubled vertex of degree `n` with balanced arcs.
pub fn local_mesh_kind(n: usize) -> Result<(MeshKind, usize)> {
    if n < 6 {
        return Err(Error::Parameter(format!("local_mesh_kind needs n >= 6, got {n}")));
    }
    Ok(if n % 2 == 1 { (MeshKind::Chopped(n.div_ceil(2)), (n - 1) * (n - 1) / 4) } else { (MeshKind::Full(n / 2), n * (n - 2) / 4) })
}

/// Mesh kind for a vertex with `alpha` a-arcs and `beta` b-arcs, if balanced.
pub fn mesh_kind_for(alpha: usize, beta: usize) -> Option<MeshKind> {
    match alpha.abs_diff(beta) {
        0 => Some(MeshKind::Full(alpha)),
        1 => Some(MeshKind::Chopped(alpha.max(beta))),
        _ => None,
    }
}

/// `2^n (n-1)^2 / 4` for odd `n`, `2^n n (n-2) / 4` for even `n`.
pub fn expected_gamma(n: usize) -> Result<u128> {
    if !(2..=100).contains(&n) {
        return Err(Error::Parameter(format!("expected_gamma needs 2 <= n <= 100, got {n}")));
    }
    let m = n as u128;
    let per = if n % 2 == 1 { (m - 1) * (m - 1) } else { m * (m - 2) };
    Ok((per << n) / 4)
}

/// Pairs `{xy, uv}` of Dim-n edges with `u`, `v` the Dim-(n-1) partners of `x`, `y`.
pub fn dim_n_pairing(n: usize) -> Result<Vec<(Edge, Edge)>> {
    if !(3..=crate::label::MAX_DIM).contains(&n) {
        return Err(Error::Parameter(format!("dim_n_pairing needs 3 <= n <= {}, got {n}", crate::label::MAX_DIM)));
    }
    let mut out = Vec::with_capacity(1 << (n - 2));
    for high in 0..1u64 << (n - 2) {
        let x = VertexLabel::from_decimal(high << 2, n)?;
        let y = x.neighbor(n)?;
        out.push((Edge::new(x, y)?, Edge::new(partner(&x), partner(&y))?));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMeshRecord {
    /// The vertex of the input drawing that was doubled.
    pub vertex: VertexLabel,
    pub alpha: usize,
    pub beta: usize,
    pub kind: Option<MeshKind>,
    /// Crossings between curves both incident to the two copies, other than
    /// the two curves of one bundle.
    pub crossings: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub n: usize,
    pub input_crossings: usize,
    pub gamma: usize,
    /// Bundles whose two curves cross.
    pub bundle_cross_count: usize,
    pub output_crossings: usize,
    pub local: Vec<LocalMeshRecord>,
    pub swapped_bundles: Vec<Edge>,
    pub rho: Rational,
    pub attempts: usize,
}

impl ConstructionTrace {
    /// `ν_out = 4·ν_in + Γ + bundle crossings`.
    pub fn recurrence_holds(&self) -> bool {
        self.output_crossings == 4 * self.input_crossings + self.gamma + self.bundle_cross_count
    }

    /// One line per term of the recurrence.
    pub fn report(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input n = {}", self.n);
        let _ = writeln!(s, "input crossings = {}", self.input_crossings);
        let _ = writeln!(s, "4 * input crossings = {}", 4 * self.input_crossings);
        let _ = writeln!(s, "gamma (local mesh crossings) = {}", self.gamma);
        let _ = writeln!(s, "bundle crossings = {}", self.bundle_cross_count);
        let _ = writeln!(s, "output crossings = {}", self.output_crossings);
        let _ = writeln!(s, "recurrence holds = {}", self.recurrence_holds());
        s
    }
}

fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from_integer(BigInt::from(1) << k as usize)
    } else {
        Rational::new(BigInt::from(1), BigInt::from(1) << (-k) as usize)
    }
}

/// Largest power of two not above `v > 0`.
fn pow2_floor(v: f64) -> Result<Rational> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::Construction(format!("degenerate feature size {v}")));
    }
    Ok(pow2(v.log2().floor() as i64))
}

/// Smallest power of two not below `v > 0`.
fn pow2_ceil(v: &Rational) -> Rational {
    let mut k = v.to_f64().map_or(0, |f| f.log2().ceil() as i64);
    while pow2(k) < *v {
        k += 1;
    }
    while pow2(k - 1) >= *v {
        k -= 1;
    }
    pow2(k)
}

#[derive(Clone, Debug)]
struct Vec2 {
    x: Rational,
    y: Rational,
}

impl Vec2 {
    fn between(a: &Point, b: &Point) -> Self {
        Self { x: &b.x - &a.x, y: &b.y - &a.y }
    }

    /// Scaled by a power of two so the larger coordinate is in `(1/2, 1]`.
    fn normalized(&self) -> Self {
        let m = if self.x.abs() > self.y.abs() { self.x.abs() } else { self.y.abs() };
        let c = pow2_ceil(&m);
        Self { x: &self.x / &c, y: &self.y / &c }
    }

    fn perp(&self) -> Self {
        Self { x: -&self.y, y: self.x.clone() }
    }

    fn scale(&self, s: &Rational) -> Self {
        Self { x: &self.x * s, y: &self.y * s }
    }

    fn cross(&self, o: &Self) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn fp(p: &Point) -> (f64, f64) {
    (f(&p.x), f(&p.y))
}

/// `b - a`, rounded only after the exact subtraction.
fn diff(a: &Point, b: &Point) -> (f64, f64) {
    (f(&(&b.x - &a.x)), f(&(&b.y - &a.y)))
}

fn norm(v: (f64, f64)) -> f64 {
    v.0.hypot(v.1)
}

fn dist(a: &Point, b: &Point) -> f64 {
    norm(diff(a, b))
}

/// Distance from `p` to segment `ab` and the parameter of the closest point.
fn seg_dist(p: &Point, a: &Point, b: &Point) -> (f64, f64) {
    let (d, v) = (diff(a, b), diff(a, p));
    let l = d.0 * d.0 + d.1 * d.1;
    let t = if l > 0.0 { ((v.0 * d.0 + v.1 * d.1) / l).clamp(0.0, 1.0) } else { 0.0 };
    (norm((v.0 - t * d.0, v.1 - t * d.1)), t)
}

/// Same as [`seg_dist`] on rounded coordinates; off by at most the rounding slack.
fn seg_dist_approx(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let l = dx * dx + dy * dy;
    let t = if l > 0.0 { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / l).clamp(0.0, 1.0) } else { 0.0 };
    norm((p.0 - a.0 - t * dx, p.1 - a.1 - t * dy))
}

fn unit(v: (f64, f64)) -> (f64, f64) {
    let l = norm(v);
    (v.0 / l, v.1 / l)
}

fn sin_between(u: (f64, f64), v: (f64, f64)) -> f64 {
    let (u, v) = (unit(u), unit(v));
    (u.0 * v.1 - u.1 * v.0).abs()
}

fn shift(p: &Point, v: &Vec2) -> Point {
    Point::new(&p.x + &v.x, &p.y + &v.y)
}

fn add(a: &Vec2, b: &Vec2) -> Vec2 {
    Vec2 { x: &a.x + &b.x, y: &a.y + &b.y }
}

/// Which copy of each vertex sits on the positive side of its axis.
pub type Orientation = BTreeMap<VertexLabel, u8>;

/// The orientation that places `x^0 -> x^1` along the forward direction of `x`.
pub fn forward_orientation(d: &LtqDrawing) -> Result<Orientation> {
    let mut out = BTreeMap::new();
    for (x, p) in &d.placements {
        let y = partner(x);
        let py = d.placement(&y)?;
        if py.axis != p.axis {
            return Err(Error::Property { property: 3, witness: format!("partners {x} and {y} lie on different axes") });
        }
        let axis = d.axis_of(x)?;
        let y_to_x_positive = axis.param(&p.point) > axis.param(&py.point);
        let along = match forward_direction(x, &y)? {
            ForwardDirection::FromYToX => y_to_x_positive,
            ForwardDirection::FromXToY => !y_to_x_positive,
        };
        out.insert(*x, u8::from(along));
    }
    Ok(out)
}

struct Ends {
    /// Copy of `lo` on the left of the route at its start.
    left_lo: u8,
    /// Copy of `hi` on the left of the route at its end.
    left_hi: u8,
    zeta_of_left: u8,
}

fn ends(d: &LtqDrawing, e: &Edge, plus: &Orientation) -> Result<Ends> {
    let pts = d.polyline(e)?.points();
    let k = pts.len() - 1;
    let first = Vec2::between(&pts[0], &pts[1]);
    let last = Vec2::between(&pts[k - 1], &pts[k]);
    let side = |x: &VertexLabel, dir: &Vec2| -> Result<u8> {
        let a = d.axis_of(x)?;
        let c = dir.cross(&Vec2 { x: a.dx.clone(), y: a.dy.clone() });
        let p = *plus.get(x).ok_or_else(|| Error::Construction(format!("no orientation for {x}")))?;
        if c.is_positive() {
            Ok(p)
        } else if c.is_negative() {
            Ok(1 - p)
        } else {
            Err(Error::Structure(format!("edge {e} leaves {x} along its axis")))
        }
    };
    let left_lo = side(&e.lo(), &first)?;
    let left_hi = side(&e.hi(), &last)?;
    let zeta_of_left = epsilon_zeta(&e.lo(), &e.hi())?.zeta_for(left_lo);
    Ok(Ends { left_lo, left_hi, zeta_of_left })
}

/// Edges whose bundle must carry a crossing under `plus`.
pub fn bundle_swaps(d: &LtqDrawing, plus: &Orientation) -> Result<BTreeSet<Edge>> {
    let mut out = BTreeSet::new();
    for e in d.edges.keys() {
        let en = ends(d, e, plus)?;
        if en.zeta_of_left != en.left_hi {
            out.insert(*e);
        }
    }
    Ok(out)
}

/// An orientation with few bundle crossings: each connected component is
/// 2-coloured so that every edge of a spanning forest carries no crossing.
/// When the parities around every cycle allow it, no bundle crosses at all.
pub fn min_swap_orientation(d: &LtqDrawing) -> Result<Orientation> {
    let zero: Orientation = d.placements.keys().map(|x| (*x, 0)).collect();
    let base = bundle_swaps(d, &zero)?;
    let mut adj: BTreeMap<VertexLabel, Vec<(VertexLabel, u8)>> = BTreeMap::new();
    for e in d.edges.keys() {
        let w = u8::from(base.contains(e));
        adj.entry(e.lo()).or_default().push((e.hi(), w));
        adj.entry(e.hi()).or_default().push((e.lo(), w));
    }
    let mut out = Orientation::new();
    for start in d.placements.keys() {
        if out.contains_key(start) {
            continue;
        }
        out.insert(*start, 0);
        let mut queue = std::collections::VecDeque::from([*start]);
        while let Some(x) = queue.pop_front() {
            for (y, w) in adj.get(&x).map_or(&[][..], Vec::as_slice) {
                if !out.contains_key(y) {
                    out.insert(*y, out[&x] ^ w);
                    queue.push_back(*y);
                }
            }
        }
    }
    Ok(out)
}

/// Doubles `d` after checking that it satisfies Properties 2 to 5, with
/// copies ordered along forward directions.
pub fn construct_next(d: &LtqDrawing) -> Result<(LtqDrawing, ConstructionTrace)> {
    if d.n < 6 {
        return Err(Error::Parameter(format!("construct_next needs n >= 6, got {}", d.n)));
    }
    let report = validate_properties(d)?;
    for k in 2..=5 {
        if let PropertyStatus::Fail(w) = report.property(k) {
            return Err(Error::Property { property: k as u8, witness: w[0].clone() });
        }
    }
    let plus = forward_orientation(d)?;
    double_drawing(d, &plus)
}

struct Route {
    pts: Vec<Point>,
    fpts: Vec<(f64, f64)>,
    lens: Vec<f64>,
    /// `(segment, parameter)` of every crossing on the route.
    crossings: Vec<(usize, f64)>,
}

struct Params {
    t: Rational,
    rho: Rational,
    h: Rational,
    eta: Rational,
}

/// Doubles `d` with copy `plus[x]` of each vertex on the positive side of its
/// axis. Works for any `n`; no property gate.
pub fn double_drawing(d: &LtqDrawing, plus: &Orientation) -> Result<(LtqDrawing, ConstructionTrace)> {
    d.check_structure()?;
    if let Some(x) = d.off_axis_vertices().first() {
        return Err(Error::Structure(format!("vertex {x} is not on its axis")));
    }
    let report = d.crossing_report()?;
    if !report.is_good() {
        return Err(Error::Construction(format!("input is not a good drawing ({} violations)", report.violations.len())));
    }
    let mut classes = BTreeMap::new();
    for e in d.edges.keys() {
        for x in [e.lo(), e.hi()] {
            classes.insert((x, *e), classify_arc(d, &x, e)?);
        }
    }
    let mut profile: BTreeMap<VertexLabel, (usize, usize)> = d.placements.keys().map(|x| (*x, (0, 0))).collect();
    for ((x, _), c) in &classes {
        let ab = profile.get_mut(x).expect("placed");
        match c {
            ArcClass::A => ab.0 += 1,
            ArcClass::B => ab.1 += 1,
        }
    }
    let swaps = bundle_swaps(d, plus)?;
    let (routes, s_cross) = routes(d, &report);
    let base = choose_params(d, &routes, &report, s_cross)?;

    let c2 = |k: usize| k * k.saturating_sub(1) / 2;
    let expected_local: BTreeMap<VertexLabel, usize> = profile.iter().map(|(x, (a, b))| (*x, c2(*a) + c2(*b))).collect();
    let gamma: usize = expected_local.values().sum();
    let expected_total = 4 * report.total + gamma + swaps.len();

    let mut last_problem = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let s = pow2(-(attempt as i64));
        let params = Params { t: base.t.clone(), rho: &base.rho * &s, h: &base.h * &s, eta: &base.eta * &s };
        let out = build(d, plus, &routes, &swaps, &profile, &params)?;
        match verify(d, &out, &classes, &expected_local, &swaps, expected_total) {
            Ok((out_report, local, bundle_cross_count)) => {
                let trace = ConstructionTrace {
                    n: d.n,
                    input_crossings: report.total,
                    gamma: local.values().sum(),
                    bundle_cross_count,
                    output_crossings: out_report.total,
                    local: profile
                        .iter()
                        .map(|(x, (a, b))| LocalMeshRecord {
                            vertex: *x,
                            alpha: *a,
                            beta: *b,
                            kind: mesh_kind_for(*a, *b),
                            crossings: local[x],
                        })
                        .collect(),
                    swapped_bundles: swaps.iter().copied().collect(),
                    rho: params.rho,
                    attempts: attempt + 1,
                };
                return Ok((out, trace));
            }
            Err(problem) => last_problem = problem,
        }
    }
    Err(Error::Construction(format!("no valid offsets after {MAX_ATTEMPTS} attempts: {last_problem}")))
}

/// Segment of `pts` containing `p` and the parameter of `p` on it.
fn locate(pts: &[Point], p: &Point) -> (usize, f64) {
    for (j, w) in pts.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        let inside = |u: &Rational, v: &Rational, z: &Rational| (u.min(v)..=u.max(v)).contains(&z);
        if a.orient(b, p).is_zero() && inside(&a.x, &b.x, &p.x) && inside(&a.y, &b.y, &p.y) {
            let (dx, dy) = (&b.x - &a.x, &b.y - &a.y);
            let t = if dx.abs() > dy.abs() { (&p.x - &a.x) / dx } else { (&p.y - &a.y) / dy };
            return (j, f(&t));
        }
    }
    let best =
        (0..pts.len() - 1).map(|j| (seg_dist(p, &pts[j], &pts[j + 1]), j)).min_by(|a, b| a.0 .0.total_cmp(&b.0 .0)).expect("segment");
    (best.1, best.0 .1)
}

/// Routes with their crossings located, and the smallest crossing-angle sine.
fn routes(d: &LtqDrawing, report: &CrossingReport) -> (BTreeMap<Edge, Route>, f64) {
    let ids = d.edge_by_id();
    let mut out: BTreeMap<Edge, Route> = d
        .edges
        .iter()
        .map(|(e, pl)| {
            let pts = pl.points().to_vec();
            let fpts = pts.iter().map(fp).collect();
            let lens = pts.windows(2).map(|w| dist(&w[0], &w[1])).collect();
            (*e, Route { pts, fpts, lens, crossings: Vec::new() })
        })
        .collect();
    let mut s_cross = 1.0f64;
    for c in &report.crossings {
        let mut dirs = Vec::with_capacity(2);
        for id in [c.a, c.b] {
            let r = out.get_mut(&ids[id]).expect("edge");
            let (j, t) = locate(&r.pts, &c.point);
            r.crossings.push((j, t));
            dirs.push(diff(&r.pts[j], &r.pts[j + 1]));
        }
        s_cross = s_cross.min(sin_between(dirs[0], dirs[1]));
    }
    (out, s_cross)
}

fn choose_params(d: &LtqDrawing, routes: &BTreeMap<Edge, Route>, report: &CrossingReport, s_cross: f64) -> Result<Params> {
    let mut feat = f64::INFINITY;
    let keep = |v: f64, feat: &mut f64| {
        if v > 0.0 && v < *feat {
            *feat = v;
        }
    };
    let scale = routes.values().flat_map(|r| r.fpts.iter()).fold(1.0f64, |m, p| m.max(p.0.abs()).max(p.1.abs()));
    let slack = scale * 1e-9;
    let verts: Vec<(VertexLabel, &Point, (f64, f64))> = d.placements.iter().map(|(x, p)| (*x, &p.point, fp(&p.point))).collect();
    for (i, a) in verts.iter().enumerate() {
        for b in &verts[i + 1..] {
            keep(dist(a.1, b.1), &mut feat);
        }
    }
    let mut interior: Vec<(Edge, &Point, (f64, f64))> = Vec::new();
    for (e, r) in routes {
        for l in &r.lens {
            keep(*l, &mut feat);
        }
        interior.extend((1..r.pts.len() - 1).map(|j| (*e, &r.pts[j], r.fpts[j])));
    }
    let crossings: Vec<(&Point, (f64, f64))> = report.crossings.iter().map(|c| (&c.point, fp(&c.point))).collect();
    for (e, r) in routes {
        for j in 0..r.pts.len() - 1 {
            let (a, b, fa, fb) = (&r.pts[j], &r.pts[j + 1], r.fpts[j], r.fpts[j + 1]);
            let others = verts
                .iter()
                .filter(|(x, _, _)| !e.contains(x))
                .map(|(_, p, fp)| (*p, *fp))
                .chain(interior.iter().filter(|(f, _, _)| f != e).map(|(_, p, fp)| (*p, *fp)));
            for (p, fpt) in others {
                if seg_dist_approx(fpt, fa, fb) - slack < feat {
                    keep(seg_dist(p, a, b).0, &mut feat);
                }
            }
        }
    }
    for (i, (c, fc)) in crossings.iter().enumerate() {
        let points = verts.iter().map(|v| (v.1, v.2)).chain(interior.iter().map(|v| (v.1, v.2)));
        for (p, fpt) in points.chain(crossings[i + 1..].iter().copied()) {
            if norm((fc.0 - fpt.0, fc.1 - fpt.1)) - slack < feat {
                keep(dist(c, p), &mut feat);
            }
        }
    }

    let mut s_vert = 1.0f64;
    for x in d.placements.keys() {
        let a = d.axis_of(x)?;
        let ad = (f(&a.dx), f(&a.dy));
        let firsts: Vec<(f64, f64)> = routes
            .iter()
            .filter(|(e, _)| e.contains(x))
            .map(|(e, r)| {
                let m = r.pts.len();
                let (s, n) = if e.lo() == *x { (&r.pts[0], &r.pts[1]) } else { (&r.pts[m - 1], &r.pts[m - 2]) };
                unit(diff(s, n))
            })
            .collect();
        for (i, u) in firsts.iter().enumerate() {
            s_vert = s_vert.min(sin_between(ad, *u));
            for v in &firsts[i + 1..] {
                s_vert = s_vert.min(norm((u.0 - v.0, u.1 - v.1)) / 2.0);
            }
        }
    }
    let mut c_bend = 1.0f64;
    for r in routes.values() {
        for w in r.pts.windows(3) {
            let (u, v) = (unit(diff(&w[0], &w[1])), unit(diff(&w[1], &w[2])));
            c_bend = c_bend.min(((1.0 + u.0 * v.0 + u.1 * v.1) / 2.0).max(0.0).sqrt());
        }
    }
    let t = pow2_floor(feat / 16.0)?;
    let tf = f(&t);
    let rho = pow2_floor(tf * s_vert / 16.0)?;
    let h_bound = (f(&rho) / 2.0).min(tf * s_cross / 16.0).min(tf * c_bend / 16.0);
    let h = pow2_floor(h_bound)?;
    let eta = pow2_floor(f(&rho) * s_vert / 8.0)?;
    Ok(Params { t, rho, h, eta })
}

/// Parameter interval on segment `j` where the bundle may cross itself.
fn swap_site(r: &Route, t_len: f64) -> (usize, f64, f64) {
    let lens = &r.lens;
    let total: f64 = lens.iter().sum();
    let mut gaps: Vec<(usize, f64, f64, f64)> = Vec::new();
    let mut offset = 0.0;
    for (j, l) in lens.iter().enumerate() {
        // offset points start at distance up to sqrt(2) T from each end
        let margin = (2.0 * t_len / l).min(0.25);
        let mut cuts: Vec<f64> = r.crossings.iter().filter(|c| c.0 == j).map(|c| c.1).collect();
        cuts.push(margin);
        cuts.push(1.0 - margin);
        cuts.retain(|t| (margin..=1.0 - margin).contains(t));
        cuts.sort_by(f64::total_cmp);
        for w in cuts.windows(2) {
            let mid = offset + (w[0] + w[1]) / 2.0 * l;
            gaps.push((j, w[0], w[1], (w[1] - w[0]) * l - (mid - total / 2.0).abs() / 8.0));
        }
        offset += l;
    }
    let best = gaps.iter().max_by(|a, b| a.3.total_cmp(&b.3)).expect("a route has a gap");
    (best.0, best.1, best.2)
}

/// Dyadic rational within `[lo, hi]` near `v`, for `lo <= v <= hi`.
fn dyadic_near(v: f64, lo: f64, hi: f64) -> Rational {
    for k in 1..=52 {
        let s = (1u64 << k) as f64;
        let r = (v * s).round();
        if r / s >= lo && r / s <= hi {
            return Rational::new(BigInt::from(r as i64), BigInt::from(1u64) << k);
        }
    }
    Rational::from_float(v).expect("finite parameter")
}

fn build(
    d: &LtqDrawing,
    plus: &Orientation,
    routes: &BTreeMap<Edge, Route>,
    swaps: &BTreeSet<Edge>,
    profile: &BTreeMap<VertexLabel, (usize, usize)>,
    p: &Params,
) -> Result<LtqDrawing> {
    let mut placements = BTreeMap::new();
    let mut copies: BTreeMap<VertexLabel, [Point; 2]> = BTreeMap::new();
    let mut axis_dirs: BTreeMap<VertexLabel, Vec2> = BTreeMap::new();
    for (x, pl) in &d.placements {
        let a = d.axis_of(x)?;
        let ahat = Vec2 { x: a.dx.clone(), y: a.dy.clone() }.normalized();
        let fwd = shift(&pl.point, &ahat.scale(&p.rho));
        let back = shift(&pl.point, &ahat.scale(&-&p.rho));
        let pos = plus[x];
        let mut c = [back.clone(), back];
        c[pos as usize] = fwd;
        for delta in 0..2u8 {
            placements.insert(x.double(delta)?, Placement { point: c[delta as usize].clone(), axis: pl.axis.clone() });
        }
        copies.insert(*x, c);
        axis_dirs.insert(*x, ahat);
    }

    let mut edges = BTreeMap::new();
    let tf = f(&p.t);
    let hf = f(&p.h);
    for (e, r) in routes {
        let (x, y) = (e.lo(), e.hi());
        let en = ends(d, e, plus)?;
        let k = r.pts.len() - 1;
        let dirs: Vec<Vec2> = r.pts.windows(2).map(|w| Vec2::between(&w[0], &w[1]).normalized()).collect();
        let normals: Vec<Vec2> = dirs.iter().map(|u| u.perp().scale(&p.h)).collect();
        let steps: Vec<Vec2> = dirs.iter().map(|u| u.scale(&p.t)).collect();
        let swap = swaps.contains(e).then(|| {
            // a short, steep crossing keeps its angle bounded away from zero
            let (j, lo, hi) = swap_site(r, tf);
            let span = hi - lo;
            let mid = dyadic_near((lo + hi) / 2.0, lo + span / 4.0, hi - span / 4.0);
            let w = pow2_floor((4.0 * hf / r.lens[j]).min(span / 8.0)).expect("positive gap");
            (j, &mid - &w, &mid + &w)
        });
        let off = |j: usize, sign: i64| if sign > 0 { normals[j].clone() } else { normals[j].scale(&q(-1)) };
        let curve = |start: u8, sign0: i64, end: u8| -> Result<Polyline> {
            let mut pts = vec![copies[&x][start as usize].clone()];
            let mut sign = sign0;
            for (j, step) in steps.iter().enumerate().take(k) {
                pts.push(shift(&r.pts[j], &add(step, &off(j, sign))));
                if let Some((sj, t1, t2)) = &swap {
                    if *sj == j {
                        let u = Vec2::between(&r.pts[j], &r.pts[j + 1]);
                        pts.push(shift(&r.pts[j], &add(&u.scale(t1), &off(j, sign))));
                        pts.push(shift(&r.pts[j], &add(&u.scale(t2), &off(j, -sign))));
                        sign = -sign;
                    }
                }
                pts.push(shift(&r.pts[j + 1], &add(&step.scale(&q(-1)), &off(j, sign))));
            }
            pts.push(copies[&y][end as usize].clone());
            Polyline::new(pts)
        };
        let left = curve(en.left_lo, 1, en.zeta_of_left)?;
        let right_start = 1 - en.left_lo;
        let ez = epsilon_zeta(&x, &y)?;
        let right = curve(right_start, -1, ez.zeta_for(right_start))?;
        for (start, end, pl) in [(en.left_lo, en.zeta_of_left, left), (right_start, ez.zeta_for(right_start), right)] {
            let (a, b) = (x.double(start)?, y.double(end)?);
            let ne = Edge::new(a, b)?;
            let pl = if ne.lo() == a { pl } else { pl.reversed() };
            edges.insert(ne, pl);
        }
    }

    for (x, c) in &copies {
        let (alpha, beta) = profile[x];
        let side = if alpha <= beta { p.eta.clone() } else { -&p.eta };
        let mid = Point::new((&c[0].x + &c[1].x) / q(2), (&c[0].y + &c[1].y) / q(2));
        let apex = shift(&mid, &axis_dirs[x].perp().scale(&side));
        let e = Edge::new(x.double(0)?, x.double(1)?)?;
        edges.insert(e, Polyline::new(vec![c[0].clone(), apex, c[1].clone()])?);
    }

    Ok(LtqDrawing { n: d.n + 1, axes: d.axes.clone(), placements, edges })
}

type Verified = (CrossingReport, BTreeMap<VertexLabel, usize>, usize);

fn verify(
    d: &LtqDrawing,
    out: &LtqDrawing,
    classes: &BTreeMap<(VertexLabel, Edge), ArcClass>,
    expected_local: &BTreeMap<VertexLabel, usize>,
    swaps: &BTreeSet<Edge>,
    expected_total: usize,
) -> std::result::Result<Verified, String> {
    out.check_structure().map_err(|e| e.to_string())?;
    let report = out.crossing_report().map_err(|e| e.to_string())?;
    if !report.is_good() {
        return Err(format!("output is not good: {} violations", report.violations.len()));
    }
    if report.total != expected_total {
        return Err(format!("{} crossings, expected {expected_total}", report.total));
    }
    // which old edge each new edge comes from; None for the joining arcs
    let origin = |e: &Edge| -> Option<Edge> {
        let (a, _) = e.lo().undouble().ok()?;
        let (b, _) = e.hi().undouble().ok()?;
        (a != b).then(|| Edge::new(a, b).ok()).flatten()
    };
    let old_ends = |e: &Edge| -> [VertexLabel; 2] { [e.lo().undouble().expect("n >= 3").0, e.hi().undouble().expect("n >= 3").0] };
    let ids = out.edge_by_id();
    let mut local: BTreeMap<VertexLabel, usize> = d.placements.keys().map(|x| (*x, 0)).collect();
    let mut bundle: BTreeMap<Edge, usize> = BTreeMap::new();
    for c in &report.crossings {
        let (ea, eb) = (ids[c.a], ids[c.b]);
        let (oa, ob) = (origin(&ea), origin(&eb));
        if let Some(o) = oa.filter(|_| oa == ob) {
            *bundle.entry(o).or_default() += 1;
            continue;
        }
        let (na, nb) = (old_ends(&ea), old_ends(&eb));
        for x in na.iter().collect::<BTreeSet<_>>() {
            if nb.contains(x) {
                *local.get_mut(x).expect("vertex") += 1;
            }
        }
    }
    for (x, want) in expected_local {
        if local[x] != *want {
            return Err(format!("vertex {x} has {} local crossings, expected {want}", local[x]));
        }
    }
    for e in d.edges.keys() {
        let got = bundle.get(e).copied().unwrap_or(0);
        if got != usize::from(swaps.contains(e)) {
            return Err(format!("bundle of {e} has {got} internal crossings"));
        }
    }
    for ne in out.edges.keys() {
        if let Some(oe) = origin(ne) {
            for v in [ne.lo(), ne.hi()] {
                let old = v.undouble().expect("n >= 3").0;
                let got = classify_arc(out, &v, ne).map_err(|e| e.to_string())?;
                if got != classes[&(old, oe)] {
                    return Err(format!("edge {ne} changed arc class at {v}"));
                }
            }
        }
    }
    Ok((report, local, bundle.len()))
}
