//! Vertex labels of `LTQ_n` and the per-label algebra: decimal codec,
//! first-differing index, the closed-form neighbor rule, parity, doubling,
//! the epsilon/zeta bundle pairing and forward directions.
//!
//! Bit positions are 1-based in the public API, with `b_1` the most
//! significant bit, matching the usual way these labels are written.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 32;

/// A vertex `b_1 b_2 ... b_n` of `LTQ_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel {
    // `n` comes first so that labels of different dimensions never interleave
    // when sorted.
    n: u8,
    bits: u64,
}

impl VertexLabel {
    /// Builds a label from its decimal value `D(x)`.
    pub fn from_decimal(value: u64, n: usize) -> Result<Self> {
        check_dim(n)?;
        if n < 64 && value >> n != 0 {
            return Err(Error::DecimalOutOfRange { value, n });
        }
        Ok(Self { n: n as u8, bits: value })
    }

    /// Builds a label from individual bits `b_1..b_n`.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        check_dim(bits.len())?;
        let mut value = 0u64;
        for &b in bits {
            if b > 1 {
                return Err(Error::InvalidLabel(format!("{bits:?}")));
            }
            value = (value << 1) | u64::from(b);
        }
        Ok(Self { n: bits.len() as u8, bits: value })
    }

    /// Parses a bit string such as `"001011"`.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let bits: Option<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect();
        match bits {
            Some(bits) if !bits.is_empty() => Self::from_bits(&bits),
            _ => Err(Error::InvalidLabel(s.to_string())),
        }
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    /// `D(x) = sum 2^{n-i} b_i`.
    pub fn to_decimal(&self) -> u64 {
        self.bits
    }

    /// `theta_i(x) = b_i`, 1-based.
    pub fn bit(&self, i: usize) -> Result<u8> {
        self.check_index(i)?;
        Ok(self.bit_unchecked(i))
    }

    fn bit_unchecked(&self, i: usize) -> u8 {
        ((self.bits >> (self.dim() - i)) & 1) as u8
    }

    /// The last bit `b_n`.
    pub fn last_bit(&self) -> u8 {
        (self.bits & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (1..=self.dim()).map(|i| self.bit_unchecked(i)).collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.dim() {
            return Err(Error::IndexOutOfRange { index: i, n: self.dim() });
        }
        Ok(())
    }

    fn flip(&self, i: usize) -> Self {
        Self { n: self.n, bits: self.bits ^ (1u64 << (self.dim() - i)) }
    }

    /// Number of ones in the label is odd.
    pub fn is_odd(&self) -> bool {
        self.bits.count_ones() % 2 == 1
    }

    /// The unique neighbor `u` with `lambda(x, u) = i`.
    ///
    /// For `i <= n-2` bit `i` flips and `b_n` is added to bit `i+1`;
    /// for `i` in `{n-1, n}` only bit `i` flips.
    pub fn neighbor(&self, i: usize) -> Result<Self> {
        self.check_index(i)?;
        Ok(self.neighbor_unchecked(i))
    }

    pub(crate) fn neighbor_unchecked(&self, i: usize) -> Self {
        let n = self.dim();
        let mut y = self.flip(i);
        if i + 2 <= n && self.last_bit() == 1 {
            y = y.flip(i + 1);
        }
        y
    }

    /// All `n` neighbors, ordered by dimension.
    pub fn neighbors(&self) -> Vec<Self> {
        (1..=self.dim()).map(|i| self.neighbor_unchecked(i)).collect()
    }

    /// `x^delta = x_1 ... x_{n-1} delta x_n`, a vertex of `LTQ_{n+1}`.
    pub fn double(&self, delta: u8) -> Result<Self> {
        if delta > 1 {
            return Err(Error::Parameter(format!("doubling bit must be 0 or 1, got {delta}")));
        }
        check_dim(self.dim() + 1)?;
        let last = self.bits & 1;
        let head = self.bits >> 1;
        Ok(Self { n: self.n + 1, bits: (head << 2) | (u64::from(delta) << 1) | last })
    }

    /// Inverse of [`double`](Self::double): the parent label and the doubling bit.
    pub fn undouble(&self) -> Result<(Self, u8)> {
        check_dim(self.dim() - 1)?;
        let last = self.bits & 1;
        let delta = ((self.bits >> 1) & 1) as u8;
        Ok((Self { n: self.n - 1, bits: ((self.bits >> 2) << 1) | last }, delta))
    }

    /// Decimal-with-dimension form, e.g. `11@6`.
    pub fn decimal_form(&self) -> String {
        format!("{}@{}", self.bits, self.n)
    }
}

fn check_dim(n: usize) -> Result<()> {
    if !(2..=MAX_DIM).contains(&n) {
        return Err(Error::Dimension(n));
    }
    Ok(())
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.dim())
    }
}

impl fmt::Debug for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `"001011"` or `"11@6"`; the `@` decides which.
impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('@') {
            Some((value, n)) => {
                let value: u64 = value.parse().map_err(|_| Error::InvalidLabel(s.to_string()))?;
                let n: usize = n.parse().map_err(|_| Error::InvalidLabel(s.to_string()))?;
                Self::from_decimal(value, n)
            }
            None => Self::from_bit_str(s),
        }
    }
}

/// `Dim(x, y)`: the first differing index for adjacent vertices, infinite otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DimValue {
    Finite(usize),
    Infinite,
}

impl DimValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            DimValue::Finite(d) => Some(d),
            DimValue::Infinite => None,
        }
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Finite(d) => write!(f, "{d}"),
            DimValue::Infinite => write!(f, "inf"),
        }
    }
}

fn same_dim(x: &VertexLabel, y: &VertexLabel) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    Ok(())
}

/// `lambda(x, y)`: smallest 1-based index where the labels differ.
pub fn lambda_index(x: &VertexLabel, y: &VertexLabel) -> Result<usize> {
    same_dim(x, y)?;
    let diff = x.bits ^ y.bits;
    if diff == 0 {
        return Err(Error::SameVertex(x.to_string(), y.to_string()));
    }
    Ok(x.dim() - (63 - diff.leading_zeros() as usize))
}

pub fn dim_of(x: &VertexLabel, y: &VertexLabel) -> Result<DimValue> {
    let i = lambda_index(x, y)?;
    if x.neighbor_unchecked(i) == *y {
        Ok(DimValue::Finite(i))
    } else {
        Ok(DimValue::Infinite)
    }
}

pub fn are_adjacent(x: &VertexLabel, y: &VertexLabel) -> bool {
    matches!(dim_of(x, y), Ok(DimValue::Finite(_)))
}

/// The two `(epsilon_i, zeta_i)` assignments for an edge `xy`.
///
/// `x^{epsilon_i}` is joined to `y^{zeta_i}` when the edge is doubled.
/// Stored with `epsilon_1 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EpsilonZetaPair {
    pub assignments: [(u8, u8); 2],
}

impl EpsilonZetaPair {
    pub const STRAIGHT: Self = Self { assignments: [(0, 0), (1, 1)] };
    pub const TWISTED: Self = Self { assignments: [(0, 1), (1, 0)] };

    pub fn is_twisted(&self) -> bool {
        *self == Self::TWISTED
    }

    /// The `zeta` matched with a given `epsilon`.
    pub fn zeta_for(&self, epsilon: u8) -> u8 {
        if self.is_twisted() {
            1 - epsilon
        } else {
            epsilon
        }
    }

    /// The pairing as an unordered set, for order-free comparisons.
    pub fn as_set(&self) -> std::collections::BTreeSet<(u8, u8)> {
        self.assignments.iter().copied().collect()
    }
}

pub fn epsilon_zeta(x: &VertexLabel, y: &VertexLabel) -> Result<EpsilonZetaPair> {
    let d = dim_of(x, y)?.finite().ok_or_else(|| Error::NotAdjacent(x.to_string(), y.to_string()))?;
    if d == x.dim() - 1 && x.last_bit() == 1 {
        Ok(EpsilonZetaPair::TWISTED)
    } else {
        Ok(EpsilonZetaPair::STRAIGHT)
    }
}

/// Orientation of `x^0 -> x^1` relative to the Dim-(n-1) partner `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ForwardDirection {
    FromYToX,
    FromXToY,
}

pub fn forward_direction(x: &VertexLabel, y: &VertexLabel) -> Result<ForwardDirection> {
    match dim_of(x, y)? {
        DimValue::Finite(d) if d == x.dim() - 1 => {}
        _ => return Err(Error::NotPartnerPair(x.to_string(), y.to_string())),
    }
    if x.last_bit() == 1 && x.is_odd() {
        Ok(ForwardDirection::FromYToX)
    } else {
        Ok(ForwardDirection::FromXToY)
    }
}

/// The Dim-(n-1) partner of `x`.
pub fn partner(x: &VertexLabel) -> VertexLabel {
    x.neighbor_unchecked(x.dim() - 1)
}
