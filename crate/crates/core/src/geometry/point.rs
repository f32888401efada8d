use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Parses `p/q` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Geometry(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() || den.sign() == num_bigint::Sign::Minus || s.contains('+') {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Integers without a denominator, everything else as reduced `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Self::new(Rational::new(x.0.into(), x.1.into()), Rational::new(y.0.into(), y.1.into()))
    }

    pub fn add(&self, dx: &Rational, dy: &Rational) -> Self {
        Self::new(&self.x + dx, &self.y + dy)
    }

    /// Twice the signed area of `(self, b, c)`.
    pub fn orient(&self, b: &Point, c: &Point) -> Rational {
        (&b.x - &self.x) * (&c.y - &self.y) - (&b.y - &self.y) * (&c.x - &self.x)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A chain of at least two points with no zero-length segment.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polyline {
    points: Vec<Point>,
}

impl Polyline {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Geometry(format!("polyline needs at least 2 points, got {}", points.len())));
        }
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Geometry(format!("zero-length segment at {}", w[0])));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn first(&self) -> &Point {
        &self.points[0]
    }

    pub fn last(&self) -> &Point {
        self.points.last().expect("non-empty")
    }

    pub fn segment_count(&self) -> usize {
        self.points.len() - 1
    }

    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self { points }
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

impl fmt::Debug for Polyline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.points).finish()
    }
}
