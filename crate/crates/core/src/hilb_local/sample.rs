//! Seeded samplers for each stratum. Entries are integers in
//! `[-ENTRY_BOUND, ENTRY_BOUND]` drawn from a ChaCha8 stream selected by
//! `(seed, stream)`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AdhmTriple, HilbError, RelAdhmQuad};
use crate::exact::{rat, RationalMatrix};

pub const ENTRY_BOUND: i64 = 9;

pub(crate) fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut g = ChaCha8Rng::seed_from_u64(seed);
    g.set_stream(stream);
    g
}

fn entry(g: &mut ChaCha8Rng) -> i64 {
    g.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)
}

fn nonzero_entry(g: &mut ChaCha8Rng) -> i64 {
    loop {
        let x = entry(g);
        if x != 0 {
            return x;
        }
    }
}

/// `count` distinct nonzero entries.
fn distinct_nonzero(g: &mut ChaCha8Rng, count: usize) -> Result<Vec<i64>, HilbError> {
    let mut pool: Vec<i64> = (-ENTRY_BOUND..=ENTRY_BOUND).filter(|&x| x != 0).collect();
    if count > pool.len() {
        return Err(HilbError::RangeExhausted);
    }
    pool.shuffle(g);
    pool.truncate(count);
    Ok(pool)
}

fn unit(r: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); r];
    v[i] = BigRational::one();
    v
}

pub(crate) fn smooth_from(g: &mut ChaCha8Rng, r: usize, lambda: &BigRational) -> Result<RelAdhmQuad, HilbError> {
    if r == 0 {
        return Err(HilbError::ZeroRank);
    }
    if lambda.is_zero() {
        return Err(HilbError::ZeroLambda);
    }
    let z: Vec<BigRational> = distinct_nonzero(g, r)?.into_iter().map(rat).collect();
    let w: Vec<BigRational> = z.iter().map(|zi| lambda / zi).collect();
    RelAdhmQuad::new(
        RationalMatrix::diagonal(&z)?,
        RationalMatrix::diagonal(&w)?,
        lambda.clone(),
        vec![BigRational::one(); r],
    )
}

/// `B1 = diag(z)`, `B2 = diag(lambda / z)` with distinct nonzero `z_i`,
/// `v = (1, ..., 1)`.
pub fn sample_smooth_stratum(r: usize, lambda: &BigRational, seed: u64) -> Result<RelAdhmQuad, HilbError> {
    smooth_from(&mut rng(seed, 0), r, lambda)
}

pub(crate) fn singular_from(g: &mut ChaCha8Rng, r: usize, n: usize, m: usize) -> Result<RelAdhmQuad, HilbError> {
    if r == 0 {
        return Err(HilbError::ZeroRank);
    }
    if n + m + 1 != r {
        return Err(HilbError::BadSplit { n, m, r });
    }
    // Basis e_0 = v, e_i = B1^i v (1 <= i <= n), e_{n+j} = B2^j v (1 <= j <= m).
    let mut b1 = RationalMatrix::zeros(r, r)?;
    let mut b2 = RationalMatrix::zeros(r, r)?;
    if n > 0 {
        for i in 0..n {
            b1.set(i + 1, i, BigRational::one());
        }
        for i in 1..=n {
            b1.set(i, n, rat(entry(g)));
        }
    }
    if m > 0 {
        b2.set(n + 1, 0, BigRational::one());
        for j in 1..m {
            b2.set(n + j + 1, n + j, BigRational::one());
        }
        for j in 1..=m {
            b2.set(n + j, n + m, rat(entry(g)));
        }
    }
    RelAdhmQuad::new(b1, b2, BigRational::zero(), unit(r, 0))
}

/// Normal form on the node `lambda = 0` with `r = n + m + 1`: `B1` cycles
/// `v -> B1 v -> ... -> B1^n v` with `B1^(n+1) v = sum_{i>=1} h_i B1^i v`,
/// `B2` likewise on the second chain, each zero on the other's chain.
/// `n = 0` or `m = 0` gives `B1 = 0` or `B2 = 0`.
pub fn sample_singular_stratum(r: usize, n: usize, m: usize, seed: u64) -> Result<RelAdhmQuad, HilbError> {
    singular_from(&mut rng(seed, 0), r, n, m)
}

pub(crate) fn b1_zero_from(g: &mut ChaCha8Rng, r: usize) -> Result<RelAdhmQuad, HilbError> {
    if r == 0 {
        return Err(HilbError::ZeroRank);
    }
    let mut b2 = RationalMatrix::zeros(r, r)?;
    for j in 0..r - 1 {
        b2.set(j + 1, j, BigRational::one());
    }
    b2.set(0, r - 1, rat(nonzero_entry(g)));
    for j in 1..r {
        b2.set(j, r - 1, rat(entry(g)));
    }
    RelAdhmQuad::new(RationalMatrix::zeros(r, r)?, b2, BigRational::zero(), unit(r, 0))
}

/// `B1 = 0`, `B2` an invertible companion matrix, `lambda = 0`, `v = e_0`.
pub fn sample_b1_zero_stratum(r: usize, seed: u64) -> Result<RelAdhmQuad, HilbError> {
    b1_zero_from(&mut rng(seed, 0), r)
}

pub(crate) fn absolute_diagonal_from(g: &mut ChaCha8Rng, r: usize) -> Result<AdhmTriple, HilbError> {
    if r == 0 {
        return Err(HilbError::ZeroRank);
    }
    // Distinct joint eigenvalues: distinct first coordinates suffice.
    let z: Vec<_> = distinct_nonzero(g, r)?.into_iter().map(rat).collect();
    let w: Vec<_> = (0..r).map(|_| rat(entry(g))).collect();
    AdhmTriple::new(
        RationalMatrix::diagonal(&z)?,
        RationalMatrix::diagonal(&w)?,
        vec![BigRational::one(); r],
    )
}

/// Commuting diagonal pair with distinct `B1` eigenvalues, `v = (1, ..., 1)`.
pub fn sample_absolute_diagonal(r: usize, seed: u64) -> Result<AdhmTriple, HilbError> {
    absolute_diagonal_from(&mut rng(seed, 0), r)
}

pub(crate) fn absolute_cyclic_from(g: &mut ChaCha8Rng, r: usize) -> Result<AdhmTriple, HilbError> {
    if r == 0 {
        return Err(HilbError::ZeroRank);
    }
    let mut b1 = RationalMatrix::zeros(r, r)?;
    for j in 0..r - 1 {
        b1.set(j + 1, j, BigRational::one());
    }
    for j in 0..r {
        b1.set(j, r - 1, rat(entry(g)));
    }
    // B2 = p(B1) with deg p < r.
    let mut b2 = RationalMatrix::zeros(r, r)?;
    let mut power = RationalMatrix::identity(r)?;
    for _ in 0..r {
        b2 = b2.add(&power.scale(&rat(entry(g))))?;
        power = power.mul(&b1)?;
    }
    AdhmTriple::new(b1, b2, unit(r, 0))
}

/// `B1` a companion matrix with cyclic vector `e_0`, `B2` a polynomial in
/// `B1`: a point of the punctual or mixed strata in general.
pub fn sample_absolute_cyclic(r: usize, seed: u64) -> Result<AdhmTriple, HilbError> {
    absolute_cyclic_from(&mut rng(seed, 0), r)
}
