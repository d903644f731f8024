use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactError;

/// A power series in one variable truncated at `H^cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self, ExactError> {
        if coeffs.is_empty() {
            return Err(ExactError::ZeroCap);
        }
        Ok(Self { coeffs })
    }

    pub fn zero(cap: usize) -> Result<Self, ExactError> {
        Self::new(vec![BigRational::zero(); cap])
    }

    pub fn one(cap: usize) -> Result<Self, ExactError> {
        let mut s = Self::zero(cap)?;
        s.coeffs[0] = BigRational::one();
        Ok(s)
    }

    /// `1 + H`, truncated.
    pub fn one_plus_h(cap: usize) -> Result<Self, ExactError> {
        let mut s = Self::one(cap)?;
        if cap > 1 {
            s.coeffs[1] = BigRational::one();
        }
        Ok(s)
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `H^k`, or `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&BigRational> {
        self.coeffs.get(k)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        let cap = self.check_cap(other)?;
        let mut out = vec![BigRational::zero(); cap];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..cap - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_cap(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(ExactError::NotInvertible);
        }
        let inv0 = c0.recip();
        let cap = self.cap();
        let mut out: Vec<BigRational> = Vec::with_capacity(cap);
        out.push(inv0.clone());
        for n in 1..cap {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out[n - k];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, exponent: i64) -> Result<Self, ExactError> {
        let mut result = Self::one(self.cap())?;
        let mut base = self.clone();
        let mut e = exponent.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        if exponent < 0 {
            result = result.inverse()?;
        }
        Ok(result)
    }

    fn check_cap(&self, other: &Self) -> Result<usize, ExactError> {
        if self.cap() != other.cap() {
            return Err(ExactError::CapMismatch(self.cap(), other.cap()));
        }
        Ok(self.cap())
    }
}

/// `(1 + H)^exponent` truncated at `H^cap`, by repeated squaring and exact
/// series inversion. Deliberately does not call [`super::binom`].
pub fn series_geom_pow(exponent: i64, cap: usize) -> Result<TruncatedSeries, ExactError> {
    TruncatedSeries::one_plus_h(cap)?.pow(exponent)
}
