//! Topological consequences checked on lattice data: the minimality
//! inequality and the `b_+ = 1` classification.

use num_traits::Signed;
use serde::Serialize;

use super::FourManifoldLattice;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalityVerdict {
    pub holds: bool,
    pub two_e_plus_3sigma: i64,
    pub message: String,
}

/// Why a check could not be run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Precondition {
    pub failed: String,
}

impl Precondition {
    fn new(s: impl Into<String>) -> Self {
        Self { failed: s.into() }
    }
}

/// For a minimal symplectic manifold with `b_+ > 1 + b_1`, `2e + 3 sigma >= 0`.
pub fn minimality_inequality(x: &FourManifoldLattice) -> Result<MinimalityVerdict, Precondition> {
    if !x.minimal() {
        return Err(Precondition::new("minimal flag not set"));
    }
    if !x.b_plus_exceeds_one_plus_b1() {
        return Err(Precondition::new(format!(
            "b_+ > 1 + b_1 fails: b_+ = {}, b_1 = {}",
            x.b_plus(),
            x.b1()
        )));
    }
    let v = x.char_numbers().two_e_plus_3sigma;
    let holds = v >= 0;
    let message = if holds {
        format!("2e + 3sigma = {v} >= 0")
    } else {
        format!("2e + 3sigma = {v} < 0: admits no symplectic structure under the paper's hypotheses")
    };
    Ok(MinimalityVerdict {
        holds,
        two_e_plus_3sigma: v,
        message,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "n")]
pub enum DelPezzoType {
    /// `S^2 x S^2`.
    S2xS2,
    /// `CP^2 # n (-CP^2)`, with `n = 0` meaning `CP^2` itself.
    BlownUpPlane(usize),
}

impl DelPezzoType {
    pub fn name(&self) -> String {
        match self {
            DelPezzoType::S2xS2 => "S2xS2".into(),
            DelPezzoType::BlownUpPlane(0) => "CP2".into(),
            DelPezzoType::BlownUpPlane(n) => format!("CP2#{n}CP2bar"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ClassifyError {
    Precondition(Precondition),
    /// `b_- > 8`, i.e. `2e + 3 sigma = 9 - b_- <= 0`, impossible when
    /// `K = -lambda [omega]`.
    TooManyBlowUps {
        b_minus: i64,
        two_e_plus_3sigma: i64,
    },
}

/// Diffeomorphism type for `b_+ = 1`, `b_1 = 0`, `K.omega < 0`.
pub fn classify_b_plus_one(x: &FourManifoldLattice) -> Result<DelPezzoType, ClassifyError> {
    let pre = |s: String| ClassifyError::Precondition(Precondition::new(s));
    if x.b_plus() != 1 {
        return Err(pre(format!("b_+ = 1 fails: b_+ = {}", x.b_plus())));
    }
    if x.b1() != 0 {
        return Err(pre(format!("b_1 = 0 fails: b_1 = {}", x.b1())));
    }
    let kw = x.k_dot_omega();
    if !kw.is_negative() {
        return Err(pre(format!("K.omega < 0 fails: K.omega = {kw}")));
    }
    let c = x.char_numbers().two_e_plus_3sigma;
    let b_minus = 9 - c;
    debug_assert_eq!(b_minus, x.b_minus() as i64);
    if b_minus > 8 {
        return Err(ClassifyError::TooManyBlowUps {
            b_minus,
            two_e_plus_3sigma: c,
        });
    }
    Ok(if x.is_even() {
        DelPezzoType::S2xS2
    } else {
        DelPezzoType::BlownUpPlane(b_minus as usize)
    })
}
