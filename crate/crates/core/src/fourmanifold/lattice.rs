use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LatticeError;
use crate::exact::RationalMatrix;

/// An integral class in the chosen basis of `H_2(X; Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyClass(Vec<i64>);

impl HomologyClass {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self, LatticeError> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LatticeError> {
        self.zip_with(other, i64::checked_sub)
    }

    pub fn scale(&self, k: i64) -> Result<Self, LatticeError> {
        self.0
            .iter()
            .map(|&x| x.checked_mul(k).ok_or(LatticeError::Overflow))
            .collect::<Result<_, _>>()
            .map(Self)
    }

    /// Halves every coordinate, if all are even.
    pub fn halve(&self) -> Option<Self> {
        self.0
            .iter()
            .all(|x| x % 2 == 0)
            .then(|| Self(self.0.iter().map(|x| x / 2).collect()))
    }

    /// Appends coordinates (used when passing to a blow-up).
    pub fn extended(&self, tail: impl IntoIterator<Item = i64>) -> Self {
        let mut v = self.0.clone();
        v.extend(tail);
        Self(v)
    }

    fn zip_with(&self, other: &Self, f: fn(i64, i64) -> Option<i64>) -> Result<Self, LatticeError> {
        if self.len() != other.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| f(a, b).ok_or(LatticeError::Overflow))
            .collect::<Result<_, _>>()
            .map(Self)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<i64>> for HomologyClass {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

/// Declared data for a lattice, before validation.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    pub label: String,
    pub b1: u32,
    pub form: Vec<Vec<i64>>,
    pub canonical: Vec<i64>,
    pub omega: Vec<BigRational>,
    pub minimal: bool,
    pub general_type: bool,
    pub declared_b_plus: Option<usize>,
    pub declared_b_minus: Option<usize>,
}

/// Characteristic numbers of an almost-complex four-manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CharNumbers {
    pub euler: i64,
    pub signature: i64,
    pub two_e_plus_3sigma: i64,
    pub chi_h: i64,
}

/// The intersection lattice of a symplectic four-manifold together with its
/// canonical class, symplectic class and first Betti number.
///
/// Construction validates: symmetric unimodular form, `K` characteristic,
/// `K^2 = 2e + 3 sigma`, `omega^2 > 0`, and integral holomorphic Euler
/// characteristic.
#[derive(Debug, Clone, PartialEq)]
pub struct FourManifoldLattice {
    label: String,
    b1: u32,
    form: Vec<Vec<i64>>,
    canonical: HomologyClass,
    omega: Vec<BigRational>,
    minimal: bool,
    general_type: bool,
    b_plus: usize,
    b_minus: usize,
}

pub(crate) fn pair_raw(form: &[Vec<i64>], a: &[i64], b: &[i64]) -> Result<i64, LatticeError> {
    let mut acc: i128 = 0;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let mut row: i128 = 0;
        for (j, &bj) in b.iter().enumerate() {
            let q = form[i][j];
            if q != 0 && bj != 0 {
                row = row.checked_add(q as i128 * bj as i128).ok_or(LatticeError::Overflow)?;
            }
        }
        acc = acc
            .checked_add((ai as i128).checked_mul(row).ok_or(LatticeError::Overflow)?)
            .ok_or(LatticeError::Overflow)?;
    }
    i64::try_from(acc).map_err(|_| LatticeError::Overflow)
}

impl FourManifoldLattice {
    pub fn new(spec: LatticeSpec) -> Result<Self, LatticeError> {
        let n = spec.form.len();
        if n == 0 {
            return Err(LatticeError::EmptyForm);
        }
        for row in &spec.form {
            if row.len() != n {
                return Err(LatticeError::NotSquare);
            }
        }
        for i in 0..n {
            for j in 0..i {
                if spec.form[i][j] != spec.form[j][i] {
                    return Err(LatticeError::NotSymmetric { row: i, col: j });
                }
            }
        }
        if spec.canonical.len() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                found: spec.canonical.len(),
            });
        }
        if spec.omega.len() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                found: spec.omega.len(),
            });
        }
        let q = RationalMatrix::from_i64_rows(&spec.form).map_err(|_| LatticeError::NotSquare)?;
        let inertia = q.symmetric_inertia().map_err(|_| LatticeError::NotSquare)?;
        if inertia.zero > 0 {
            return Err(LatticeError::Degenerate);
        }
        if inertia.determinant.abs() != BigRational::from_integer(1.into()) {
            return Err(LatticeError::NotUnimodular(inertia.determinant.to_string()));
        }
        let (b_plus, b_minus) = (inertia.positive, inertia.negative);
        if let Some(bp) = spec.declared_b_plus {
            if bp != b_plus {
                return Err(LatticeError::DeclaredSignature {
                    what: "b_plus",
                    declared: bp,
                    computed: b_plus,
                });
            }
        }
        if let Some(bm) = spec.declared_b_minus {
            if bm != b_minus {
                return Err(LatticeError::DeclaredSignature {
                    what: "b_minus",
                    declared: bm,
                    computed: b_minus,
                });
            }
        }

        let k = &spec.canonical;
        for i in 0..n {
            let k_dot_x = pair_raw(&spec.form, k, &basis(n, i))?;
            if (k_dot_x - spec.form[i][i]).rem_euclid(2) != 0 {
                return Err(LatticeError::NotCharacteristic { basis_index: i });
            }
        }
        let lattice = Self {
            label: spec.label,
            b1: spec.b1,
            form: spec.form,
            canonical: HomologyClass(spec.canonical),
            omega: spec.omega,
            minimal: spec.minimal,
            general_type: spec.general_type,
            b_plus,
            b_minus,
        };
        let cn = lattice.char_numbers_unchecked();
        let k2 = lattice.pairing(&lattice.canonical, &lattice.canonical)?;
        if k2 != cn.two_e_plus_3sigma {
            return Err(LatticeError::CanonicalSquare {
                expected: cn.two_e_plus_3sigma,
                found: k2,
            });
        }
        if (cn.euler + cn.signature) % 4 != 0 {
            return Err(LatticeError::NonIntegralChiH {
                e_plus_sigma: cn.euler + cn.signature,
            });
        }
        if !lattice.omega_square().is_positive() {
            return Err(LatticeError::OmegaNotPositive(lattice.omega_square().to_string()));
        }
        Ok(lattice)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn b1(&self) -> u32 {
        self.b1
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    pub fn b2(&self) -> usize {
        self.form.len()
    }

    pub fn b_plus(&self) -> usize {
        self.b_plus
    }

    pub fn b_minus(&self) -> usize {
        self.b_minus
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn canonical(&self) -> &HomologyClass {
        &self.canonical
    }

    pub fn omega(&self) -> &[BigRational] {
        &self.omega
    }

    pub fn minimal(&self) -> bool {
        self.minimal
    }

    pub fn general_type(&self) -> bool {
        self.general_type
    }

    /// Even forms have all diagonal entries even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.form[i][i] % 2 == 0)
    }

    pub fn signature(&self) -> i64 {
        self.b_plus as i64 - self.b_minus as i64
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.b1 as i64 + self.b2() as i64
    }

    /// `b_+ > 1 + b_1`, the standing hypothesis for the duality results.
    pub fn b_plus_exceeds_one_plus_b1(&self) -> bool {
        self.b_plus as i64 > 1 + self.b1 as i64
    }

    fn char_numbers_unchecked(&self) -> CharNumbers {
        let e = self.euler();
        let s = self.signature();
        CharNumbers {
            euler: e,
            signature: s,
            two_e_plus_3sigma: 2 * e + 3 * s,
            chi_h: (e + s).div_euclid(4),
        }
    }

    /// `(e, sigma, 2e + 3 sigma, chi_h)`. Integrality of `chi_h` is checked
    /// at construction.
    pub fn char_numbers(&self) -> CharNumbers {
        self.char_numbers_unchecked()
    }

    pub fn check_class(&self, a: &HomologyClass) -> Result<(), LatticeError> {
        if a.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                found: a.len(),
            });
        }
        Ok(())
    }

    /// The intersection product `a^T Q b`.
    pub fn pairing(&self, a: &HomologyClass, b: &HomologyClass) -> Result<i64, LatticeError> {
        self.check_class(a)?;
        self.check_class(b)?;
        pair_raw(&self.form, &a.0, &b.0)
    }

    pub fn square(&self, a: &HomologyClass) -> Result<i64, LatticeError> {
        self.pairing(a, a)
    }

    pub fn k_dot(&self, a: &HomologyClass) -> Result<i64, LatticeError> {
        self.pairing(&self.canonical, a)
    }

    pub fn k_square(&self) -> i64 {
        self.char_numbers().two_e_plus_3sigma
    }

    /// `a . omega`, exactly.
    pub fn omega_dot(&self, a: &HomologyClass) -> Result<BigRational, LatticeError> {
        self.check_class(a)?;
        let mut acc = BigRational::zero();
        for i in 0..self.rank() {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank() {
                let q = self.form[i][j];
                if q != 0 && !self.omega[j].is_zero() {
                    acc += &self.omega[j] * BigInt::from(a.0[i] as i128 * q as i128);
                }
            }
        }
        Ok(acc)
    }

    pub fn omega_square(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let q = self.form[i][j];
                if q != 0 {
                    acc += &self.omega[i] * &self.omega[j] * BigInt::from(q);
                }
            }
        }
        acc
    }

    pub fn k_dot_omega(&self) -> BigRational {
        self.omega_dot(&self.canonical)
            .expect("canonical class has lattice rank")
    }

    /// Genus of a connected embedded symplectic surface in class `c`, from
    /// adjunction `2g - 2 = K.C + C.C`.
    pub fn adjunction_genus(&self, c: &HomologyClass) -> Result<i64, LatticeError> {
        let twice = self.k_dot(c)? + self.square(c)?;
        let g = twice / 2 + 1;
        if g < 0 {
            return Err(LatticeError::NegativeGenus { k_dot_c_plus_c2: twice });
        }
        Ok(g)
    }

    /// `(a^2 - K.a) / 2`; exact because `K` is characteristic.
    pub fn virtual_dim(&self, a: &HomologyClass) -> Result<i64, LatticeError> {
        let d = self.square(a)? - self.k_dot(a)?;
        debug_assert!(d % 2 == 0);
        Ok(d / 2)
    }

    /// Re-labels and flags, keeping the validated numerical data.
    pub fn with_flags(mut self, label: impl Into<String>, minimal: bool, general_type: bool) -> Self {
        self.label = label.into();
        self.minimal = minimal;
        self.general_type = general_type;
        self
    }

    /// The declaration this lattice was built from.
    pub fn spec(&self) -> LatticeSpec {
        LatticeSpec {
            label: self.label.clone(),
            b1: self.b1,
            form: self.form.clone(),
            canonical: self.canonical.0.clone(),
            omega: self.omega.clone(),
            minimal: self.minimal,
            general_type: self.general_type,
            declared_b_plus: Some(self.b_plus),
            declared_b_minus: Some(self.b_minus),
        }
    }
}

fn basis(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}
