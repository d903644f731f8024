//! Gromov invariants of Kähler surfaces from cohomology profiles.
//!
//! The invariant of a class `alpha` with divisor `D` is the Euler class of
//! the obstruction bundle over `P(H^0(D))`, whose total Chern class is
//! `(1 + H)^(h^1 - h^2)`. With `h^1 = 0` this is the binomial
//! `binom(-h^2, h^0 - 1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{binom, series_geom_pow, ExactError};
use crate::fourmanifold::{FourManifoldLattice, HomologyClass, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GromovError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("{which} = {value} is negative")]
    Negative { which: &'static str, value: i64 },
    #[error("h0 - h1 + h2 = {found} but Riemann-Roch gives {expected}")]
    ChiMismatch { expected: i64, found: i64 },
    #[error("requires b1 = 0, found b1 = {0}")]
    NeedsB1Zero(u32),
    #[error("implied h1 = {0} is negative")]
    NegativeH1(i64),
    #[error("not in the spin, c1^2 = 0 setting: {0}")]
    NotSpin(String),
}

/// `(h^0, h^1, h^2)` of `O(D)`, consistent with Riemann-Roch on its lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyProfile {
    h0: i64,
    h1: i64,
    h2: i64,
    divisor_class: HomologyClass,
    chi: i64,
}

impl CohomologyProfile {
    pub fn new(x: &FourManifoldLattice, d: HomologyClass, h0: i64, h1: i64, h2: i64) -> Result<Self, GromovError> {
        for (which, value) in [("h0", h0), ("h1", h1), ("h2", h2)] {
            if value < 0 {
                return Err(GromovError::Negative { which, value });
            }
        }
        let expected = riemann_roch_chi(x, &d)?;
        let found = h0 - h1 + h2;
        if found != expected {
            return Err(GromovError::ChiMismatch { expected, found });
        }
        Ok(Self {
            h0,
            h1,
            h2,
            divisor_class: d,
            chi: expected,
        })
    }

    pub fn h0(&self) -> i64 {
        self.h0
    }

    pub fn h1(&self) -> i64 {
        self.h1
    }

    pub fn h2(&self) -> i64 {
        self.h2
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn divisor_class(&self) -> &HomologyClass {
        &self.divisor_class
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        (self.h0, self.h1, self.h2)
    }
}

/// `chi_h + (D^2 - D.K) / 2`.
pub fn riemann_roch_chi(x: &FourManifoldLattice, d: &HomologyClass) -> Result<i64, GromovError> {
    Ok(x.char_numbers().chi_h + x.virtual_dim(d)?)
}

/// The profile of `K - D`: `(h0, h1, h2) -> (h2, h1, h0)`.
pub fn serre_dual(x: &FourManifoldLattice, p: &CohomologyProfile) -> Result<CohomologyProfile, GromovError> {
    let kd = x.canonical().sub(&p.divisor_class)?;
    CohomologyProfile::new(x, kd, p.h2, p.h1, p.h0)
}

/// Closes a profile from the two section dimensions on a surface with
/// `b_1 = 0`: `h^2(D) = h^0(K - D)`, and `h^1(D) = 0` whenever `D` is
/// effective.
pub fn vanishing_profile(
    x: &FourManifoldLattice,
    d: HomologyClass,
    h0_d: i64,
    h0_k_minus_d: i64,
) -> Result<CohomologyProfile, GromovError> {
    if x.b1() != 0 {
        return Err(GromovError::NeedsB1Zero(x.b1()));
    }
    for (which, value) in [("h0(D)", h0_d), ("h0(K-D)", h0_k_minus_d)] {
        if value < 0 {
            return Err(GromovError::Negative { which, value });
        }
    }
    let chi = riemann_roch_chi(x, &d)?;
    let h2 = h0_k_minus_d;
    let h1 = if h0_d > 0 { 0 } else { h0_d + h2 - chi };
    if h1 < 0 {
        return Err(GromovError::NegativeH1(h1));
    }
    CohomologyProfile::new(x, d, h0_d, h1, h2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GromovValue {
    #[serde(serialize_with = "crate::serde_bigint")]
    pub signed: BigInt,
    #[serde(serialize_with = "crate::serde_bigint")]
    pub magnitude: BigInt,
}

impl GromovValue {
    fn of(signed: BigInt) -> Self {
        Self {
            magnitude: signed.abs(),
            signed,
        }
    }

    pub fn zero() -> Self {
        Self::of(BigInt::zero())
    }
}

/// `binom(-(h^2 - r), (h^0 - 1) - r)`, with `r` the number of point
/// constraints. Zero when `h^0 = 0` or the lower index is negative.
pub fn gromov_invariant(p: &CohomologyProfile, r: i64) -> GromovValue {
    if p.h0 == 0 {
        return GromovValue::zero();
    }
    let k = p.h0 - 1 - r;
    if k < 0 {
        return GromovValue::zero();
    }
    GromovValue::of(binom(-(p.h2 - r), k).expect("lower index is non-negative"))
}

/// Coefficient of `H^(h^0 - 1)` in `(1 + H)^(h^1 - h^2)`, computed by
/// series arithmetic.
pub fn gromov_invariant_series(p: &CohomologyProfile) -> GromovValue {
    if p.h0 == 0 {
        return GromovValue::zero();
    }
    let s = series_geom_pow(p.h1 - p.h2, p.h0 as usize).expect("cap is positive");
    let c = s.coeff(p.h0 as usize - 1).expect("index below cap");
    debug_assert!(c.is_integer());
    GromovValue::of(c.to_integer())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub profile: (i64, i64, i64),
    pub dual_profile: (i64, i64, i64),
    pub r: i64,
    pub gr: GromovValue,
    pub gr_dual: GromovValue,
    pub holds: bool,
}

/// `|Gr(alpha)| = |Gr(kappa - alpha)|`.
pub fn duality_check(x: &FourManifoldLattice, p: &CohomologyProfile, r: i64) -> Result<DualityReport, GromovError> {
    let q = serre_dual(x, p)?;
    let gr = gromov_invariant(p, r);
    let gr_dual = gromov_invariant(&q, r);
    Ok(DualityReport {
        profile: p.triple(),
        dual_profile: q.triple(),
        r,
        holds: gr.magnitude == gr_dual.magnitude,
        gr,
        gr_dual,
    })
}

/// Hopf: a nonzero bilinear `V x V' -> W` has image of dimension at least
/// `rk V + rk V' - 1`, so this must hold for it to exist.
pub fn hopf_bound(rk_v: i64, rk_v_prime: i64, rk_w: i64) -> bool {
    rk_w >= rk_v + rk_v_prime - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parity {
    pub n: u32,
    #[serde(serialize_with = "crate::serde_bigint")]
    pub value: BigInt,
    pub odd: bool,
}

/// Parity of `binom(2n - 2, n - 1)`, the invariant of `K/2` when
/// `b_+ = 4n - 1`.
pub fn gr_parity(n: u32) -> Parity {
    assert!(n >= 1, "n must be positive");
    let n64 = n as i64;
    let value = binom(2 * n64 - 2, n64 - 1).expect("non-negative index");
    let odd = value.is_odd();
    Parity { n, value, odd }
}

/// `K/2` on a spin surface with `c_1^2 = 0` and `b_1 = 0`. Returns the class
/// and `n = (b_+ + 1) / 4`.
pub fn spin_half_canonical(x: &FourManifoldLattice) -> Result<(HomologyClass, u32), GromovError> {
    if x.b1() != 0 {
        return Err(GromovError::NeedsB1Zero(x.b1()));
    }
    if !x.is_even() {
        return Err(GromovError::NotSpin("intersection form is odd".into()));
    }
    if x.k_square() != 0 {
        return Err(GromovError::NotSpin(format!("c1^2 = {}", x.k_square())));
    }
    let half = x
        .canonical()
        .halve()
        .ok_or_else(|| GromovError::NotSpin("K is not divisible by 2".into()))?;
    if !(x.b_plus() + 1).is_multiple_of(4) {
        return Err(GromovError::NotSpin(format!("b_+ = {} is not 3 mod 4", x.b_plus())));
    }
    Ok((half, ((x.b_plus() + 1) / 4) as u32))
}

/// The self-dual profile `(n, 0, n)` of `K/2`, forced by Hopf's bound and
/// Riemann-Roch.
pub fn spin_profile(x: &FourManifoldLattice) -> Result<CohomologyProfile, GromovError> {
    let (half, n) = spin_half_canonical(x)?;
    let n = n as i64;
    debug_assert!(hopf_bound(n, n, (x.b_plus() as i64 - 1) / 2));
    vanishing_profile(x, half, n, n)
}
