use std::fmt;

use crate::error::{Error, Result};
use crate::label::{dim_of, DimValue, VertexLabel, MAX_DIM};

/// An undirected edge, stored with its endpoints in increasing decimal order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    lo: VertexLabel,
    hi: VertexLabel,
}

impl Edge {
    /// Builds an edge of `LTQ_n`, rejecting non-adjacent pairs.
    pub fn new(a: VertexLabel, b: VertexLabel) -> Result<Self> {
        match dim_of(&a, &b)? {
            DimValue::Finite(_) => Ok(Self::from_adjacent(a, b)),
            DimValue::Infinite => Err(Error::NotAdjacent(a.to_string(), b.to_string())),
        }
    }

    pub(crate) fn from_adjacent(a: VertexLabel, b: VertexLabel) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> VertexLabel {
        self.lo
    }

    pub fn hi(&self) -> VertexLabel {
        self.hi
    }

    pub fn endpoints(&self) -> (VertexLabel, VertexLabel) {
        (self.lo, self.hi)
    }

    /// `Dim(e)`.
    pub fn dimension(&self) -> usize {
        crate::label::lambda_index(&self.lo, &self.hi).expect("edge endpoints differ")
    }

    pub fn contains(&self, v: &VertexLabel) -> bool {
        self.lo == *v || self.hi == *v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: &VertexLabel) -> Option<VertexLabel> {
        if self.lo == *v {
            Some(self.hi)
        } else if self.hi == *v {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `LTQ_n`, with adjacency given by [`VertexLabel::neighbor`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LtqGraph {
    n: usize,
}

impl LtqGraph {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&n) {
            return Err(Error::Dimension(n));
        }
        Ok(Self { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> u64 {
        1u64 << self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.n as u64 * (1u64 << (self.n - 1))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexLabel> + '_ {
        (0..self.vertex_count()).map(move |d| VertexLabel::from_decimal(d, self.n).expect("in range"))
    }

    /// Every edge once, in increasing `(lo, hi)` order of discovery by `lo`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices().flat_map(|x| x.neighbors().into_iter().filter(move |y| x < *y).map(move |y| Edge::from_adjacent(x, y)))
    }

    pub fn edges_of_dim(&self, d: usize) -> impl Iterator<Item = Edge> + '_ {
        self.edges().filter(move |e| e.dimension() == d)
    }

    pub fn contains_edge(&self, a: &VertexLabel, b: &VertexLabel) -> bool {
        a.dim() == self.n && b.dim() == self.n && crate::label::are_adjacent(a, b)
    }

    /// Breadth-first connectivity check.
    pub fn is_connected(&self) -> bool {
        let total = self.vertex_count() as usize;
        let mut seen = vec![false; total];
        let start = VertexLabel::from_decimal(0, self.n).expect("zero label");
        let mut stack = vec![start];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in x.neighbors() {
                let idx = y.to_decimal() as usize;
                if !seen[idx] {
                    seen[idx] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == total
    }
}
