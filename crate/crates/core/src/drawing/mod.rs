//! Drawings of `LTQ_n` with vertices on declared axes, arc classification,
//! the five structural properties of the recursive construction, meshes,
//! file I/O and SVG export.

mod format;
mod mesh;
mod properties;
mod svg;

use std::collections::BTreeMap;

pub use format::{load_drawing, save_drawing};
pub use mesh::{generate_mesh, LinePair, MeshDrawing, SemiLines};
pub use properties::{validate_properties, PropertyReport, PropertyStatus};
pub use svg::{export_mesh_svg, export_svg, SvgOptions};

use crate::error::{Error, Result};
use crate::geometry::{count_crossings, CrossingReport, EdgeInput, Point, Polyline, Rational};
use crate::graph::{Edge, LtqGraph};
use crate::label::VertexLabel;

/// A line with a positive direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    pub id: String,
    pub origin: Point,
    pub dx: Rational,
    pub dy: Rational,
}

impl Axis {
    pub fn new(id: impl Into<String>, origin: Point, dx: Rational, dy: Rational) -> Result<Self> {
        let id = id.into();
        if dx == Rational::from_integer(0.into()) && dy == Rational::from_integer(0.into()) {
            return Err(Error::Structure(format!("axis {id} has a zero direction")));
        }
        if id.is_empty() || id.chars().any(char::is_whitespace) {
            return Err(Error::Structure(format!("invalid axis id {id:?}")));
        }
        Ok(Self { id, origin, dx, dy })
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.cross(&(&p.x - &self.origin.x), &(&p.y - &self.origin.y)) == Rational::from_integer(0.into())
    }

    /// Position of `p` along the axis, in units of the direction vector's squared length.
    pub fn param(&self, p: &Point) -> Rational {
        (&p.x - &self.origin.x) * &self.dx + (&p.y - &self.origin.y) * &self.dy
    }

    /// Cross product of the axis direction with `(vx, vy)`.
    pub fn cross(&self, vx: &Rational, vy: &Rational) -> Rational {
        &self.dx * vy - &self.dy * vx
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub point: Point,
    pub axis: String,
}

/// Arc class of an edge with respect to one of its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArcClass {
    /// Leaves on the left of the axis direction.
    A,
    B,
}

/// A drawing of `LTQ_n`. Edge polylines run from `edge.lo()` to `edge.hi()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LtqDrawing {
    pub n: usize,
    pub axes: Vec<Axis>,
    pub placements: BTreeMap<VertexLabel, Placement>,
    pub edges: BTreeMap<Edge, Polyline>,
}

impl LtqDrawing {
    pub fn graph(&self) -> Result<LtqGraph> {
        LtqGraph::new(self.n)
    }

    pub fn axis(&self, id: &str) -> Option<&Axis> {
        self.axes.iter().find(|a| a.id == id)
    }

    pub fn axis_of(&self, x: &VertexLabel) -> Result<&Axis> {
        let p = self.placement(x)?;
        self.axis(&p.axis).ok_or_else(|| Error::Structure(format!("vertex {x} refers to unknown axis {}", p.axis)))
    }

    pub fn placement(&self, x: &VertexLabel) -> Result<&Placement> {
        self.placements.get(x).ok_or_else(|| Error::Structure(format!("vertex {x} is not placed")))
    }

    pub fn polyline(&self, e: &Edge) -> Result<&Polyline> {
        self.edges.get(e).ok_or_else(|| Error::Structure(format!("edge {e} is not drawn")))
    }

    /// The points of `e`'s curve starting at `x`.
    pub fn points_from(&self, x: &VertexLabel, e: &Edge) -> Result<Vec<Point>> {
        let pl = self.polyline(e)?;
        if e.lo() == *x {
            Ok(pl.points().to_vec())
        } else if e.hi() == *x {
            Ok(pl.reversed().into_points())
        } else {
            Err(Error::Structure(format!("edge {e} is not incident to {x}")))
        }
    }

    /// Coverage, endpoint agreement and axis references. Whether vertices lie
    /// on their axes is part of the property check, so a perturbed drawing
    /// can still be analysed.
    pub fn check_structure(&self) -> Result<()> {
        let g = self.graph()?;
        let mut seen = std::collections::BTreeSet::new();
        for a in &self.axes {
            if !seen.insert(a.id.as_str()) {
                return Err(Error::Structure(format!("duplicate axis id {}", a.id)));
            }
        }
        for (x, p) in &self.placements {
            if x.dim() != self.n {
                return Err(Error::Structure(format!("vertex {x} has dimension {}, expected {}", x.dim(), self.n)));
            }
            if self.axis(&p.axis).is_none() {
                return Err(Error::Structure(format!("vertex {x} refers to unknown axis {}", p.axis)));
            }
        }
        for x in g.vertices() {
            if !self.placements.contains_key(&x) {
                return Err(Error::Structure(format!("vertex {x} is not placed")));
            }
        }
        for e in self.edges.keys() {
            if e.lo().dim() != self.n {
                return Err(Error::Structure(format!("edge {e} does not belong to LTQ_{}", self.n)));
            }
        }
        for e in g.edges() {
            let pl = self.edges.get(&e).ok_or_else(|| Error::Structure(format!("edge {e} is not drawn")))?;
            if *pl.first() != self.placements[&e.lo()].point || *pl.last() != self.placements[&e.hi()].point {
                return Err(Error::Structure(format!("polyline of edge {e} does not end at its vertices")));
            }
        }
        if self.edges.len() as u64 != g.edge_count() {
            return Err(Error::Structure("unexpected extra edges".into()));
        }
        Ok(())
    }

    /// Vertices placed off their declared axis.
    pub fn off_axis_vertices(&self) -> Vec<VertexLabel> {
        self.placements.iter().filter(|(_, p)| self.axis(&p.axis).is_none_or(|a| !a.contains(&p.point))).map(|(x, _)| *x).collect()
    }

    /// Edge ids follow the sorted edge order; vertex ids are decimal labels.
    pub fn edge_inputs(&self) -> Vec<EdgeInput> {
        self.edges
            .iter()
            .enumerate()
            .map(|(id, (e, pl))| EdgeInput {
                id,
                endpoints: (e.lo().to_decimal() as usize, e.hi().to_decimal() as usize),
                polyline: pl.clone(),
            })
            .collect()
    }

    pub fn edge_by_id(&self) -> Vec<Edge> {
        self.edges.keys().copied().collect()
    }

    pub fn crossing_report(&self) -> Result<CrossingReport> {
        count_crossings(&self.edge_inputs())
    }

    pub fn crossing_count(&self) -> Result<usize> {
        Ok(self.crossing_report()?.total)
    }
}

/// Whether `e` leaves `x` on the left (`A`) or right (`B`) of `x`'s axis.
pub fn classify_arc(d: &LtqDrawing, x: &VertexLabel, e: &Edge) -> Result<ArcClass> {
    let pts = d.points_from(x, e)?;
    let axis = d.axis_of(x)?;
    let c = axis.cross(&(&pts[1].x - &pts[0].x), &(&pts[1].y - &pts[0].y));
    let zero = Rational::from_integer(0.into());
    if c > zero {
        Ok(ArcClass::A)
    } else if c < zero {
        Ok(ArcClass::B)
    } else {
        Err(Error::Structure(format!("edge {e} leaves {x} along its axis")))
    }
}

/// `(α(x), β(x))` for every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcProfile {
    pub counts: BTreeMap<VertexLabel, (usize, usize)>,
}

impl ArcProfile {
    pub fn alpha(&self, x: &VertexLabel) -> usize {
        self.counts[x].0
    }

    pub fn beta(&self, x: &VertexLabel) -> usize {
        self.counts[x].1
    }
}

pub fn arc_profile(d: &LtqDrawing) -> Result<ArcProfile> {
    let mut counts = BTreeMap::new();
    for x in d.placements.keys() {
        let mut ab = (0, 0);
        for y in x.neighbors() {
            match classify_arc(d, x, &Edge::new(*x, y)?)? {
                ArcClass::A => ab.0 += 1,
                ArcClass::B => ab.1 += 1,
            }
        }
        counts.insert(*x, ab);
    }
    Ok(ArcProfile { counts })
}
