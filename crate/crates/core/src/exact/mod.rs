//! Exact integer and rational arithmetic.
//!
//! Everything downstream (lattices, Gromov invariants, kernel certification)
//! is built on the primitives here. No floating point is used anywhere.

mod binom;
mod matrix;
mod modp;
mod series;

pub use binom::binom;
pub use matrix::{rank_and_kernel, Inertia, RankKernel, RationalMatrix};
pub use modp::{rank_mod_p, DEFAULT_PRIME};
pub use series::{series_geom_pow, TruncatedSeries};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("binomial lower index must be non-negative, got {0}")]
    NegativeLowerIndex(i64),
    #[error("series truncation order must be positive")]
    ZeroCap,
    #[error("series caps differ: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("series with zero constant term is not invertible")]
    NotInvertible,
    #[error("matrix shape mismatch: expected {expected}, found {found}")]
    Shape { expected: String, found: String },
    #[error("matrix dimensions must be positive")]
    EmptyMatrix,
    #[error("denominator {0} is divisible by the modulus")]
    BadReduction(BigInt),
}

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
