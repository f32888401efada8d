use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{classify_arc, ArcClass, LtqDrawing};
use crate::bounds::ltq_upper_closed;
use crate::error::Result;
use crate::geometry::{format_rational, CrossingReport, Rational, Violation};
use crate::graph::Edge;
use crate::label::{partner, VertexLabel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyStatus {
    Pass,
    Fail(Vec<String>),
    NotApplicable(String),
}

impl PropertyStatus {
    fn from_witnesses(w: Vec<String>) -> Self {
        if w.is_empty() {
            Self::Pass
        } else {
            Self::Fail(w)
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Self::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Self::Fail(_))
    }

    pub fn witnesses(&self) -> &[String] {
        match self {
            Self::Fail(w) => w,
            _ => &[],
        }
    }
}

/// Outcome of checking Properties 1 to 5 on a drawing.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub n: usize,
    pub crossings: usize,
    /// The target crossing count for Property 1, when `n >= 6`.
    pub expected: Option<Rational>,
    /// Indexed by property number minus one.
    pub properties: [PropertyStatus; 5],
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    pub fn property(&self, k: usize) -> &PropertyStatus {
        &self.properties[k - 1]
    }

    pub fn is_good_drawing(&self) -> bool {
        self.violations.is_empty()
    }

    /// No property failed and the drawing is good.
    pub fn all_pass(&self) -> bool {
        self.is_good_drawing() && !self.properties.iter().any(PropertyStatus::is_fail)
    }

    /// Properties 2 to 5 hold.
    pub fn structural_pass(&self) -> bool {
        self.properties[1..].iter().all(PropertyStatus::is_pass)
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "crossings = {}", self.crossings)?;
        let good = if self.is_good_drawing() { "yes".to_string() } else { format!("no ({} violations)", self.violations.len()) };
        writeln!(f, "good drawing: {good}")?;
        for (i, st) in self.properties.iter().enumerate() {
            match st {
                PropertyStatus::Pass => writeln!(f, "P{} PASS", i + 1)?,
                PropertyStatus::NotApplicable(why) => writeln!(f, "P{} N/A {why}", i + 1)?,
                PropertyStatus::Fail(w) => {
                    writeln!(f, "P{} FAIL ({} witnesses)", i + 1, w.len())?;
                    for line in w.iter().take(10) {
                        writeln!(f, "  {line}")?;
                    }
                    if w.len() > 10 {
                        writeln!(f, "  ...")?;
                    }
                }
            }
        }
        for v in self.violations.iter().take(10) {
            writeln!(f, "violation {} on edges {:?}", v.kind, v.edges)?;
        }
        Ok(())
    }
}

/// Checks Properties 1 to 5. Structural defects are returned as errors;
/// property failures carry witnesses.
pub fn validate_properties(d: &LtqDrawing) -> Result<PropertyReport> {
    d.check_structure()?;
    let report = d.crossing_report()?;
    let classes = arc_classes(d);
    let profile = profile_of(d, &classes);

    let expected = (d.n >= 6).then(|| ltq_upper_closed(d.n));
    let p1 = match &expected {
        Some(target) if *target == Rational::from_integer(report.total.into()) => PropertyStatus::Pass,
        Some(target) => {
            PropertyStatus::Fail(vec![format!("crossings {} differ from the target {}", report.total, format_rational(target))])
        }
        None => PropertyStatus::NotApplicable(format!("the crossing target is stated for n >= 6, got n = {}", d.n)),
    };

    Ok(PropertyReport {
        n: d.n,
        crossings: report.total,
        expected,
        properties: [
            p1,
            PropertyStatus::from_witnesses(p2(d, &classes, &profile)),
            PropertyStatus::from_witnesses(p3(d, &profile)),
            PropertyStatus::from_witnesses(p4(d, &classes)),
            PropertyStatus::from_witnesses(p5(d, &report)),
        ],
        violations: report.violations,
    })
}

type Classes = BTreeMap<(VertexLabel, Edge), Option<ArcClass>>;

fn arc_classes(d: &LtqDrawing) -> Classes {
    let mut out = BTreeMap::new();
    for e in d.edges.keys() {
        for x in [e.lo(), e.hi()] {
            out.insert((x, *e), classify_arc(d, &x, e).ok());
        }
    }
    out
}

/// `(α, β)` per vertex, or `None` when some arc is unclassifiable.
fn profile_of(d: &LtqDrawing, classes: &Classes) -> BTreeMap<VertexLabel, Option<(usize, usize)>> {
    let mut out: BTreeMap<VertexLabel, Option<(usize, usize)>> = d.placements.keys().map(|x| (*x, Some((0, 0)))).collect();
    for ((x, _), c) in classes {
        let entry = out.get_mut(x).expect("placed");
        *entry = match (*entry, c) {
            (Some((a, b)), Some(ArcClass::A)) => Some((a + 1, b)),
            (Some((a, b)), Some(ArcClass::B)) => Some((a, b + 1)),
            _ => None,
        };
    }
    out
}

fn p2(d: &LtqDrawing, classes: &Classes, profile: &BTreeMap<VertexLabel, Option<(usize, usize)>>) -> Vec<String> {
    let mut w: Vec<String> =
        d.off_axis_vertices().into_iter().map(|x| format!("vertex {x} is not on axis {}", d.placements[&x].axis)).collect();
    for ((x, e), c) in classes {
        if c.is_none() {
            w.push(format!("edge {e} leaves vertex {x} along its axis"));
        }
    }
    for (x, ab) in profile {
        if let Some((a, b)) = ab {
            if a.abs_diff(*b) > 1 {
                w.push(format!("vertex {x} has alpha {a} and beta {b}"));
            }
        }
    }
    w
}

fn p3(d: &LtqDrawing, profile: &BTreeMap<VertexLabel, Option<(usize, usize)>>) -> Vec<String> {
    let mut order: BTreeMap<&str, Vec<(Rational, VertexLabel)>> = BTreeMap::new();
    for (x, p) in &d.placements {
        if let Some(a) = d.axis(&p.axis) {
            if a.contains(&p.point) {
                order.entry(p.axis.as_str()).or_default().push((a.param(&p.point), *x));
            }
        }
    }
    let mut rank: BTreeMap<VertexLabel, (usize, Rational)> = BTreeMap::new();
    for list in order.values_mut() {
        list.sort();
        for (i, (t, x)) in list.iter().enumerate() {
            rank.insert(*x, (i, t.clone()));
        }
    }
    let mut w = Vec::new();
    for x in d.placements.keys() {
        let u = partner(x);
        if u < *x {
            continue;
        }
        let (px, pu) = (&d.placements[x], &d.placements[&u]);
        if px.axis != pu.axis {
            w.push(format!("partners {x} and {u} lie on different axes {} and {}", px.axis, pu.axis));
            continue;
        }
        match (rank.get(x), rank.get(&u)) {
            (Some((i, ti)), Some((j, tj))) if i.abs_diff(*j) == 1 && ti != tj => {}
            _ => w.push(format!("partners {x} and {u} are not consecutive on axis {}", px.axis)),
        }
        if profile[x] != profile[&u] {
            let show = |ab: Option<(usize, usize)>| ab.map_or("?".to_string(), |(a, b)| format!("({a}, {b})"));
            w.push(format!("partners {x} {} and {u} {} have different arc counts", show(profile[x]), show(profile[&u])));
        }
    }
    w
}

fn p4(d: &LtqDrawing, classes: &Classes) -> Vec<String> {
    let mut w = Vec::new();
    for e in d.edges.keys() {
        for x in [e.lo(), e.hi()] {
            let y = e.other(&x).expect("endpoint");
            let (u, v) = (partner(&x), partner(&y));
            let Ok(f) = Edge::new(u, v) else { continue };
            if f == *e && u == x {
                continue;
            }
            let (cx, cu) = (classes.get(&(x, *e)).copied().flatten(), classes.get(&(u, f)).copied().flatten());
            if let (Some(a), Some(b)) = (cx, cu) {
                if a != b {
                    w.push(format!("edge {e} at {x} is {a:?} but edge {f} at {u} is {b:?}"));
                }
            }
        }
    }
    w
}

fn p5(d: &LtqDrawing, report: &CrossingReport) -> Vec<String> {
    let ids: BTreeMap<Edge, usize> = d.edges.keys().enumerate().map(|(i, e)| (*e, i)).collect();
    let counts = report.pair_counts();
    let mut seen = BTreeSet::new();
    let mut w = Vec::new();
    for e in d.edges.keys() {
        if e.dimension() >= d.n {
            continue;
        }
        let Ok(f) = Edge::new(partner(&e.lo()), partner(&e.hi())) else { continue };
        let (a, b) = (ids[e].min(ids[&f]), ids[e].max(ids[&f]));
        if a == b || !seen.insert((a, b)) {
            continue;
        }
        let c = counts.get(&(a, b)).copied().unwrap_or(0);
        if c > 0 {
            w.push(format!("paired edges {e} and {f} cross {c} times"));
        }
    }
    w
}
