//! Exact numerology for symplectic four-manifolds, Lefschetz pencils and
//! the local model of relative Hilbert schemes.

pub mod applications;
pub mod brill_noether;
pub mod exact;
pub mod fourmanifold;
pub mod hilb_local;
pub mod kahler_gromov;
pub mod pencil;

use num_bigint::BigInt;

/// Integers that fit in `i64` serialise as JSON numbers, larger ones as
/// decimal strings.
pub(crate) fn serde_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(n) => s.serialize_i64(n),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

/// Rationals serialise as `"p/q"` strings (`"p"` when integral).
pub(crate) fn serde_rational<S: serde::Serializer>(v: &num_rational::BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&exact::format_rational(v))
}
