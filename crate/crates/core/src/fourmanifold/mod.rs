//! Intersection lattices of symplectic four-manifolds.

mod blowup;
pub mod catalog;
mod corollaries;
mod io;
mod lattice;

pub use blowup::{blow_up, BlownUpLattice};
pub use corollaries::{
    classify_b_plus_one, minimality_inequality, ClassifyError, DelPezzoType, MinimalityVerdict, Precondition,
};
pub use io::{lattice_from_json, lattice_to_json, ManifoldFile, ManifoldFileError, RationalEntry};
pub use lattice::{CharNumbers, FourManifoldLattice, HomologyClass, LatticeSpec};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("intersection form is empty")]
    EmptyForm,
    #[error("intersection form is not square")]
    NotSquare,
    #[error("intersection form is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("intersection form is degenerate")]
    Degenerate,
    #[error("intersection form is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("declared {what} = {declared} but the form has {computed}")]
    DeclaredSignature {
        what: &'static str,
        declared: usize,
        computed: usize,
    },
    #[error("K is not characteristic: K.x + x.x is odd for basis vector {basis_index}")]
    NotCharacteristic { basis_index: usize },
    #[error("K^2 = {found} but 2e + 3 sigma = {expected}")]
    CanonicalSquare { expected: i64, found: i64 },
    #[error("e + sigma = {e_plus_sigma} is not divisible by 4")]
    NonIntegralChiH { e_plus_sigma: i64 },
    #[error("omega^2 = {0} is not positive")]
    OmegaNotPositive(String),
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("K.C + C^2 = {k_dot_c_plus_c2} < -2: no connected embedded surface")]
    NegativeGenus { k_dot_c_plus_c2: i64 },
    #[error("blow-up count must be at least 1")]
    NoBlowUp,
}
