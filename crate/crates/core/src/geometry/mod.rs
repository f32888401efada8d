//! Exact planar geometry: rational points, polylines, segment intersection
//! and crossing counting with good-drawing checks.
//!
//! Every predicate is decided exactly. Coordinates are scaled to a common
//! denominator and evaluated in `i128` when they fit, otherwise in `BigInt`.

mod crossing;
mod point;
mod segment;

pub use crossing::{
    count_crossings, count_crossings_pairwise, is_good_drawing, Crossing, CrossingReport, EdgeInput, Violation, ViolationKind,
};
pub use point::{format_rational, parse_rational, Point, Polyline, Rational};
pub use segment::{segment_intersect, SegmentIntersection};
