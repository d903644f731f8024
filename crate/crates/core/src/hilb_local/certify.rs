//! Batch certification of the constant-rank claims over seeded samples.
//!
//! Sample `i` draws from stream `i` of the seed, so results do not depend
//! on how the work is scheduled. The verdict is the exact rational rank;
//! a rank modulo a large prime is recorded alongside as a cross-check.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sample::{absolute_cyclic_from, absolute_diagonal_from, b1_zero_from, rng, singular_from, smooth_from};
use super::{absolute_differential_matrix, differential_matrix, HilbError};
use crate::exact::{rank_mod_p, rat, RationalMatrix, DEFAULT_PRIME};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stratum {
    /// `lambda != 0`.
    Smooth,
    /// `lambda = 0`, cycling through every split `n + m + 1 = r`.
    Singular,
    /// `lambda = 0` with a fixed split.
    SingularSplit { n: usize, m: usize },
    /// `lambda = 0`, `B1 = 0`, `B2` invertible.
    B1Zero,
    /// Absolute model, commuting diagonal pairs.
    AbsoluteDiagonal,
    /// Absolute model, `B2` a polynomial in a companion `B1`.
    AbsoluteCyclic,
}

impl Stratum {
    pub fn is_absolute(&self) -> bool {
        matches!(self, Stratum::AbsoluteDiagonal | Stratum::AbsoluteCyclic)
    }

    pub fn name(&self) -> String {
        match self {
            Stratum::Smooth => "smooth".into(),
            Stratum::Singular => "singular".into(),
            Stratum::SingularSplit { n, m } => format!("singular:{n},{m}"),
            Stratum::B1Zero => "b1zero".into(),
            Stratum::AbsoluteDiagonal => "absolute-diagonal".into(),
            Stratum::AbsoluteCyclic => "absolute-cyclic".into(),
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Stratum {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "smooth" => Ok(Stratum::Smooth),
            "singular" => Ok(Stratum::Singular),
            "b1zero" => Ok(Stratum::B1Zero),
            "absolute-diagonal" => Ok(Stratum::AbsoluteDiagonal),
            "absolute-cyclic" => Ok(Stratum::AbsoluteCyclic),
            _ => {
                let bad = || format!("unknown stratum {s:?}");
                let split = s.strip_prefix("singular:").ok_or_else(bad)?;
                let (n, m) = split.split_once(',').ok_or_else(bad)?;
                Ok(Stratum::SingularSplit {
                    n: n.trim().parse().map_err(|_| bad())?,
                    m: m.trim().parse().map_err(|_| bad())?,
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleOutcome {
    pub index: u64,
    /// `(n, m)` for the node strata.
    pub split: Option<(usize, usize)>,
    /// Kernel dimension (relative model) or cokernel dimension (absolute).
    pub observed: usize,
    pub expected: usize,
    pub rank: usize,
    pub rank_mod_p: Option<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificationReport {
    pub stratum: String,
    pub r: usize,
    pub seed: u64,
    pub samples: u64,
    pub failures: u64,
    /// Observed dimension -> number of samples.
    pub kernel_dims_observed: BTreeMap<usize, u64>,
    pub expected_dim: usize,
    pub modp_disagreements: u64,
    pub outcomes: Vec<SampleOutcome>,
}

fn measure(m: &RationalMatrix) -> (usize, Option<usize>) {
    (m.rank(), rank_mod_p(m, DEFAULT_PRIME).ok())
}

fn certify_one(stratum: Stratum, r: usize, seed: u64, index: u64) -> Result<SampleOutcome, HilbError> {
    let mut g = rng(seed, index);
    let rr = r * r;
    let (split, m, expected, absolute) = match stratum {
        Stratum::Smooth => {
            let lambda = loop {
                let l: i64 = g.gen_range(-super::ENTRY_BOUND..=super::ENTRY_BOUND);
                if l != 0 {
                    break rat(l);
                }
            };
            (
                None,
                differential_matrix(&smooth_from(&mut g, r, &lambda)?),
                rr + 1,
                false,
            )
        }
        Stratum::Singular => {
            let n = (index % r as u64) as usize;
            let m = r - 1 - n;
            (
                Some((n, m)),
                differential_matrix(&singular_from(&mut g, r, n, m)?),
                rr + 1,
                false,
            )
        }
        Stratum::SingularSplit { n, m } => (
            Some((n, m)),
            differential_matrix(&singular_from(&mut g, r, n, m)?),
            rr + 1,
            false,
        ),
        Stratum::B1Zero => (
            Some((0, r - 1)),
            differential_matrix(&b1_zero_from(&mut g, r)?),
            rr + 1,
            false,
        ),
        Stratum::AbsoluteDiagonal => (
            None,
            absolute_differential_matrix(&absolute_diagonal_from(&mut g, r)?),
            r,
            true,
        ),
        Stratum::AbsoluteCyclic => (
            None,
            absolute_differential_matrix(&absolute_cyclic_from(&mut g, r)?),
            r,
            true,
        ),
    };
    let (rank, rank_mod_p) = measure(&m);
    let observed = if absolute { m.rows() - rank } else { m.cols() - rank };
    Ok(SampleOutcome {
        index,
        split,
        observed,
        expected,
        rank,
        rank_mod_p,
        holds: observed == expected,
    })
}

/// Samples `samples` points of `stratum` at rank `r` and checks the kernel
/// (or, for the absolute model, cokernel) dimension of each.
pub fn certify(stratum: Stratum, r: usize, samples: u64, seed: u64) -> Result<CertificationReport, HilbError> {
    if r == 0 {
        return Err(HilbError::ZeroRank);
    }
    if let Stratum::SingularSplit { n, m } = stratum {
        if n + m + 1 != r {
            return Err(HilbError::BadSplit { n, m, r });
        }
    }
    let outcomes: Vec<SampleOutcome> = (0..samples)
        .into_par_iter()
        .map(|i| certify_one(stratum, r, seed, i))
        .collect::<Result<_, _>>()?;
    let mut kernel_dims_observed = BTreeMap::new();
    for o in &outcomes {
        *kernel_dims_observed.entry(o.observed).or_insert(0) += 1;
    }
    let failures = outcomes.iter().filter(|o| !o.holds).count() as u64;
    let modp_disagreements = outcomes.iter().filter(|o| o.rank_mod_p != Some(o.rank)).count() as u64;
    let expected_dim = if stratum.is_absolute() { r } else { r * r + 1 };
    Ok(CertificationReport {
        stratum: stratum.name(),
        r,
        seed,
        samples,
        failures,
        kernel_dims_observed,
        expected_dim,
        modp_disagreements,
        outcomes,
    })
}
