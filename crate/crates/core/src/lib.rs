//! Knot diagrams, knot group presentations, finite and Lie-group
//! representation counts, and the comparison of representation variety
//! dimensions between two knots.

pub mod finite;
pub mod knot;
pub mod obstruction;
pub mod presentation;
pub mod repvar;

use num_bigint::BigInt;
use serde::Serializer;

pub(crate) fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}
