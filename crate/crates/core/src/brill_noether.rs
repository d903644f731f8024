//! Brill-Noether numbers and Abel-Jacobi fibre dimensions.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BnError {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(i64),
    #[error("degree {r} <= g - 1 = {}: outside the fibre-dimension regime", g - 1)]
    DegreeTooSmall { g: i64, r: i64 },
    #[error("{which} must be non-negative, got {value}")]
    Negative { which: &'static str, value: i64 },
}

/// Linear systems `g^s_r` of degree `r` and dimension `s` on a genus-`g`
/// curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BnQuery {
    pub g: i64,
    pub r: i64,
    pub s: i64,
}

impl BnQuery {
    pub fn new(g: i64, r: i64, s: i64) -> Result<Self, BnError> {
        if g < 2 {
            return Err(BnError::GenusTooSmall(g));
        }
        if s < 0 {
            return Err(BnError::Negative { which: "s", value: s });
        }
        Ok(Self { g, r, s })
    }
}

/// `rho = g - (s + 1)(g - r + s)`.
pub fn rho(q: BnQuery) -> i64 {
    q.g - (q.s + 1) * (q.g - q.r + q.s)
}

/// Eisenbud-Harris: for `rho < -1` the curves carrying such a system have
/// codimension greater than one in moduli.
pub fn eh_predicate(q: BnQuery) -> bool {
    rho(q) < -1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelJacobiFibres {
    pub g: i64,
    pub r: i64,
    pub generic_dim: i64,
    pub jump_dim: i64,
    /// `Some(d)` when the jump locus is `Sym^d` of the curve.
    pub jump_locus_sym: Option<i64>,
    pub jump_locus: String,
}

/// Fibres of `Sym^r -> Pic^r` for `r > g - 1`: dimension `r - g` away from
/// the image of `Sym^(2g-2-r)` under `D -> K - D`, one more over it.
pub fn abel_jacobi_fibre_dims(g: i64, r: i64) -> Result<AbelJacobiFibres, BnError> {
    if g < 2 {
        return Err(BnError::GenusTooSmall(g));
    }
    if r < g {
        return Err(BnError::DegreeTooSmall { g, r });
    }
    let d = 2 * g - 2 - r;
    let jump_locus_sym = (d >= 0).then_some(d);
    let jump_locus = match jump_locus_sym {
        Some(0) => "point (Sym^0)".to_string(),
        Some(d) => format!("Sym^{d} of the fibre"),
        None => "empty".to_string(),
    };
    Ok(AbelJacobiFibres {
        g,
        r,
        generic_dim: r - g,
        jump_dim: r - g + 1,
        jump_locus_sym,
        jump_locus,
    })
}

/// `h^0 = d - g + 1` for a generic degree-`d` bundle on a one-nodal curve
/// of arithmetic genus `g`, whose sections are those of the normalisation
/// with `s(p) = lambda s(q)`.
pub fn singular_fibre_h0(d: i64, g: i64) -> Result<i64, BnError> {
    if g < 1 {
        return Err(BnError::Negative {
            which: "g - 1",
            value: g - 1,
        });
    }
    Ok(d - g + 1)
}
