use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_traits::{One, Signed};

use super::point::{Point, Rational};

/// How two closed segments meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentIntersection {
    None,
    /// Interior-interior crossing.
    Proper(Point),
    /// A single common point that is an endpoint of at least one segment.
    EndpointTouch(Point),
    /// Collinear with a common sub-segment of positive length.
    Overlap,
}

/// Classifies `p1p2` against `q1q2` exactly.
pub fn segment_intersect(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> SegmentIntersection {
    let pts = [p1, p2, q1, q2];
    let scale = common_denominator(pts.iter().flat_map(|p| [&p.x, &p.y]));
    let s: Vec<IPt<BigInt>> = pts.iter().map(|p| IPt::scaled(p, &scale)).collect();
    match classify(&s[0], &s[1], &s[2], &s[3]) {
        RawHit::None => SegmentIntersection::None,
        RawHit::Overlap => SegmentIntersection::Overlap,
        RawHit::Touch(p) => SegmentIntersection::EndpointTouch(p.unscale(&scale)),
        RawHit::Proper => SegmentIntersection::Proper(proper_point(&s[0], &s[1], &s[2], &s[3], &scale)),
    }
}

pub(crate) fn common_denominator<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Integer coordinate types usable by the exact predicates.
pub(crate) trait Coord: Signed + Clone + Ord + ToBigInt {}
impl<T: Signed + Clone + Ord + ToBigInt> Coord for T {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct IPt<T> {
    pub x: T,
    pub y: T,
}

impl IPt<BigInt> {
    pub fn scaled(p: &Point, scale: &BigInt) -> Self {
        let f = |r: &Rational| (r.numer() * scale) / r.denom();
        Self { x: f(&p.x), y: f(&p.y) }
    }
}

impl<T: Coord> IPt<T> {
    pub fn unscale(&self, scale: &BigInt) -> Point {
        let f = |v: &T| Rational::new(v.to_bigint().expect("integer"), scale.clone());
        Point::new(f(&self.x), f(&self.y))
    }

    pub fn sub(&self, o: &Self) -> (T, T) {
        (self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }
}

pub(crate) fn cross<T: Coord>(u: &(T, T), v: &(T, T)) -> T {
    u.0.clone() * v.1.clone() - u.1.clone() * v.0.clone()
}

pub(crate) fn dot<T: Coord>(u: &(T, T), v: &(T, T)) -> T {
    u.0.clone() * v.0.clone() + u.1.clone() * v.1.clone()
}

pub(crate) fn orient<T: Coord>(a: &IPt<T>, b: &IPt<T>, c: &IPt<T>) -> T {
    cross(&b.sub(a), &c.sub(a))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum RawHit<T> {
    None,
    Proper,
    Touch(IPt<T>),
    Overlap,
}

fn within<T: Coord>(a: &T, b: &T, v: &T) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= v && v <= hi
}

/// `c` lies on the closed segment `ab`, given that the three are collinear.
fn on_collinear<T: Coord>(a: &IPt<T>, b: &IPt<T>, c: &IPt<T>) -> bool {
    within(&a.x, &b.x, &c.x) && within(&a.y, &b.y, &c.y)
}

pub(crate) fn classify<T: Coord>(p1: &IPt<T>, p2: &IPt<T>, q1: &IPt<T>, q2: &IPt<T>) -> RawHit<T> {
    let o1 = orient(p1, p2, q1).signum();
    let o2 = orient(p1, p2, q2).signum();
    if o1.is_zero() && o2.is_zero() {
        return classify_collinear(p1, p2, q1, q2);
    }
    let o3 = orient(q1, q2, p1).signum();
    let o4 = orient(q1, q2, p2).signum();
    if (o1.clone() * o2.clone()).is_negative() && (o3.clone() * o4.clone()).is_negative() {
        return RawHit::Proper;
    }
    if o1.is_zero() && on_collinear(p1, p2, q1) {
        return RawHit::Touch(q1.clone());
    }
    if o2.is_zero() && on_collinear(p1, p2, q2) {
        return RawHit::Touch(q2.clone());
    }
    if o3.is_zero() && on_collinear(q1, q2, p1) {
        return RawHit::Touch(p1.clone());
    }
    if o4.is_zero() && on_collinear(q1, q2, p2) {
        return RawHit::Touch(p2.clone());
    }
    RawHit::None
}

fn classify_collinear<T: Coord>(p1: &IPt<T>, p2: &IPt<T>, q1: &IPt<T>, q2: &IPt<T>) -> RawHit<T> {
    // project on the axis along which p1p2 is not constant
    let key = |p: &IPt<T>| if p1.x != p2.x { p.x.clone() } else { p.y.clone() };
    let (a0, a1) = sorted(key(p1), key(p2));
    let (b0, b1) = sorted(key(q1), key(q2));
    let lo = if a0 >= b0 { a0 } else { b0 };
    let hi = if a1 <= b1 { a1 } else { b1 };
    if lo < hi {
        RawHit::Overlap
    } else if lo == hi {
        let pt = [p1, p2, q1, q2].into_iter().find(|p| key(p) == lo).expect("shared endpoint");
        RawHit::Touch(pt.clone())
    } else {
        RawHit::None
    }
}

fn sorted<T: Ord>(a: T, b: T) -> (T, T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Intersection point of two properly crossing segments.
pub(crate) fn proper_point<T: Coord>(p1: &IPt<T>, p2: &IPt<T>, q1: &IPt<T>, q2: &IPt<T>, scale: &BigInt) -> Point {
    let big = |v: T| v.to_bigint().expect("integer");
    let o3 = big(orient(q1, q2, p1));
    let o4 = big(orient(q1, q2, p2));
    let t = Rational::new(o3.clone(), o3 - o4);
    let (dx, dy) = p2.sub(p1);
    let s = Rational::from_integer(scale.clone());
    let x = (Rational::from_integer(big(p1.x.clone())) + t.clone() * Rational::from_integer(big(dx))) / s.clone();
    let y = (Rational::from_integer(big(p1.y.clone())) + t * Rational::from_integer(big(dy))) / s;
    Point::new(x, y)
}
