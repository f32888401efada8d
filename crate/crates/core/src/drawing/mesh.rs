use crate::error::{Error, Result};
use crate::geometry::{count_crossings, CrossingReport, EdgeInput, Point, Polyline};

/// The two semi-lines of one line, cut at the truncation box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiLines {
    pub anchor: Point,
    pub upper: Point,
    /// `None` when the lower semi-line has been removed.
    pub lower: Option<Point>,
}

/// `r_i` through `(0, 0)` and `s_i` through `(1, 0)`, both with direction `(1, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinePair {
    pub index: usize,
    pub r: SemiLines,
    pub s: SemiLines,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshDrawing {
    pub n: usize,
    pub chopped: bool,
    /// Index of the pair whose lower semi-lines were removed.
    pub chopped_pair: Option<usize>,
    pub interval: (Point, Point),
    pub pairs: Vec<LinePair>,
}

/// Realizes `M^n`, or `M_c^n` when `chopped`. Upper semi-lines end at
/// `x = n + 1` and lower ones at `x = -n`, which contains every crossing.
pub fn generate_mesh(n: usize, chopped: bool) -> Result<MeshDrawing> {
    if n < 1 {
        return Err(Error::Parameter("a mesh needs n >= 1".into()));
    }
    let ni = n as i64;
    let pairs = (1..=ni)
        .map(|i| {
            let cut = chopped && i == ni;
            let line = |ax: i64| SemiLines {
                anchor: Point::from_ints(ax, 0),
                upper: Point::from_ints(ni + 1, i * (ni + 1 - ax)),
                lower: (!cut).then(|| Point::from_ints(-ni, i * (-ni - ax))),
            };
            LinePair { index: i as usize, r: line(0), s: line(1) }
        })
        .collect();
    Ok(MeshDrawing { n, chopped, chopped_pair: chopped.then_some(n), interval: (Point::from_ints(0, 0), Point::from_ints(1, 0)), pairs })
}

impl MeshDrawing {
    /// Expected crossings: `n(n-1)`, or `(n-1)^2` when chopped.
    pub fn expected_crossings(&self) -> usize {
        if self.chopped {
            (self.n - 1) * (self.n - 1)
        } else {
            self.n * (self.n - 1)
        }
    }

    /// Every semi-line and the interval as straight segments, labelled.
    pub fn segments(&self) -> Vec<(String, Point, Point)> {
        let mut out = vec![("interval".to_string(), self.interval.0.clone(), self.interval.1.clone())];
        for p in &self.pairs {
            for (name, l) in [("r", &p.r), ("s", &p.s)] {
                out.push((format!("{name}{}+", p.index), l.anchor.clone(), l.upper.clone()));
                if let Some(lo) = &l.lower {
                    out.push((format!("{name}{}-", p.index), l.anchor.clone(), lo.clone()));
                }
            }
        }
        out
    }

    /// The anchors are vertices `0` and `1`; each free end is its own vertex.
    pub fn edge_inputs(&self) -> Vec<EdgeInput> {
        self.segments()
            .into_iter()
            .enumerate()
            .map(|(id, (_, a, b))| {
                let anchor = usize::from(a == self.interval.1);
                let endpoints = if id == 0 { (0, 1) } else { (anchor, id + 1) };
                EdgeInput { id, endpoints, polyline: Polyline::new(vec![a, b]).expect("non-degenerate segment") }
            })
            .collect()
    }

    pub fn crossing_report(&self) -> Result<CrossingReport> {
        count_crossings(&self.edge_inputs())
    }
}
