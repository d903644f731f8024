//! Manifold description files.
//!
//! ```json
//! {"label": "cp2", "b1": 0, "Q": [[1]], "K": [-3], "omega": [1], "minimal": true}
//! ```
//!
//! `omega` entries are integers or `"p/q"` strings. Floats are rejected.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{FourManifoldLattice, LatticeError, LatticeSpec};
use crate::exact::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalEntry {
    Int(i64),
    Str(String),
}

impl RationalEntry {
    fn parse(&self) -> Option<BigRational> {
        match self {
            RationalEntry::Int(n) => Some(BigRational::from_integer(BigInt::from(*n))),
            RationalEntry::Str(s) => parse_rational(s),
        }
    }

    fn render(q: &BigRational) -> Self {
        if q.is_integer() {
            if let Ok(n) = i64::try_from(q.numer()) {
                return RationalEntry::Int(n);
            }
        }
        RationalEntry::Str(format_rational(q))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldFile {
    pub label: String,
    pub b1: u32,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<i64>>,
    #[serde(rename = "K")]
    pub k: Vec<i64>,
    pub omega: Vec<RationalEntry>,
    pub minimal: bool,
    #[serde(default)]
    pub general_type: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_plus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_minus: Option<usize>,
}

#[derive(Debug, Error)]
pub enum ManifoldFileError {
    #[error("malformed manifold file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("omega entry {index} is not an integer or \"p/q\" string: {value}")]
    BadRational { index: usize, value: String },
    #[error("invalid lattice: {0}")]
    Lattice(#[from] LatticeError),
}

impl ManifoldFile {
    pub fn into_lattice(self) -> Result<FourManifoldLattice, ManifoldFileError> {
        let omega = self
            .omega
            .iter()
            .enumerate()
            .map(|(index, e)| {
                e.parse().ok_or_else(|| ManifoldFileError::BadRational {
                    index,
                    value: format!("{e:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FourManifoldLattice::new(LatticeSpec {
            label: self.label,
            b1: self.b1,
            form: self.q,
            canonical: self.k,
            omega,
            minimal: self.minimal,
            general_type: self.general_type,
            declared_b_plus: self.b_plus,
            declared_b_minus: self.b_minus,
        })?)
    }

    pub fn from_lattice(x: &FourManifoldLattice) -> Self {
        Self {
            label: x.label().to_string(),
            b1: x.b1(),
            q: x.form().to_vec(),
            k: x.canonical().coords().to_vec(),
            omega: x.omega().iter().map(RationalEntry::render).collect(),
            minimal: x.minimal(),
            general_type: x.general_type(),
            b_plus: Some(x.b_plus()),
            b_minus: Some(x.b_minus()),
        }
    }
}

pub fn lattice_from_json(text: &str) -> Result<FourManifoldLattice, ManifoldFileError> {
    serde_json::from_str::<ManifoldFile>(text)?.into_lattice()
}

pub fn lattice_to_json(x: &FourManifoldLattice) -> String {
    serde_json::to_string(&ManifoldFile::from_lattice(x)).expect("manifold file serialises")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_omega() {
        let x =
            lattice_from_json(r#"{"label":"cp2","b1":0,"Q":[[1]],"K":[-3],"omega":["1/2"],"minimal":true}"#).unwrap();
        assert_eq!(x.omega_square(), crate::exact::ratio(1, 4));
    }

    #[test]
    fn rejects_float_omega() {
        let r = lattice_from_json(r#"{"label":"cp2","b1":0,"Q":[[1]],"K":[-3],"omega":[0.5],"minimal":true}"#);
        assert!(matches!(r, Err(ManifoldFileError::Json(_))));
    }

    #[test]
    fn rejects_bad_rational_string() {
        let r = lattice_from_json(r#"{"label":"cp2","b1":0,"Q":[[1]],"K":[-3],"omega":["1/0"],"minimal":true}"#);
        assert!(matches!(r, Err(ManifoldFileError::BadRational { index: 0, .. })));
    }

    #[test]
    fn rejects_non_characteristic_k() {
        let r = lattice_from_json(r#"{"label":"x","b1":0,"Q":[[1]],"K":[-2],"omega":[1],"minimal":true}"#);
        assert!(matches!(
            r,
            Err(ManifoldFileError::Lattice(LatticeError::NotCharacteristic { .. }))
        ));
    }

    #[test]
    fn round_trip() {
        let text = r#"{"label":"s2xs2","b1":0,"Q":[[0,1],[1,0]],"K":[-2,-2],"omega":[1,"3/2"],"minimal":true}"#;
        let x = lattice_from_json(text).unwrap();
        let y = lattice_from_json(&lattice_to_json(&x)).unwrap();
        assert_eq!(x, y);
    }
}
