use num_bigint::BigInt;
use num_rational::BigRational;

use super::{FourManifoldLattice, HomologyClass, LatticeError, LatticeSpec};

/// `X' = X # N (-CP^2)`, with extended form `Q + N<-1>` and canonical class
/// `i(K) + sum E_i`.
///
/// Classes on `X'` are `HomologyClass`es of length `rank(X) + N`: the base
/// coordinates followed by the exceptional ones. The form is never
/// materialised, so `N` can be in the tens of thousands.
#[derive(Debug, Clone)]
pub struct BlownUpLattice<'a> {
    base: &'a FourManifoldLattice,
    n: usize,
}

pub fn blow_up(x: &FourManifoldLattice, n: usize) -> Result<BlownUpLattice<'_>, LatticeError> {
    if n == 0 {
        return Err(LatticeError::NoBlowUp);
    }
    Ok(BlownUpLattice { base: x, n })
}

impl<'a> BlownUpLattice<'a> {
    pub fn base(&self) -> &'a FourManifoldLattice {
        self.base
    }

    pub fn exceptional_count(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.base.rank() + self.n
    }

    fn split<'c>(&self, a: &'c HomologyClass) -> Result<(HomologyClass, &'c [i64]), LatticeError> {
        if a.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                found: a.len(),
            });
        }
        let (head, tail) = a.coords().split_at(self.base.rank());
        Ok((HomologyClass::new(head.to_vec()), tail))
    }

    pub fn pairing(&self, a: &HomologyClass, b: &HomologyClass) -> Result<i64, LatticeError> {
        let (a0, ae) = self.split(a)?;
        let (b0, be) = self.split(b)?;
        let mut acc = self.base.pairing(&a0, &b0)? as i128;
        for (x, y) in ae.iter().zip(be) {
            acc -= *x as i128 * *y as i128;
        }
        i64::try_from(acc).map_err(|_| LatticeError::Overflow)
    }

    /// The blow-down pullback `i(a)`.
    pub fn include(&self, a: &HomologyClass) -> Result<HomologyClass, LatticeError> {
        self.base.check_class(a)?;
        Ok(a.extended(std::iter::repeat_n(0, self.n)))
    }

    /// The twisting map `iota(a) = i(a) + sum E_i`.
    pub fn twist(&self, a: &HomologyClass) -> Result<HomologyClass, LatticeError> {
        self.base.check_class(a)?;
        Ok(a.extended(std::iter::repeat_n(1, self.n)))
    }

    /// `E_i`, zero-based.
    pub fn exceptional(&self, i: usize) -> HomologyClass {
        let mut v = vec![0; self.rank()];
        v[self.base.rank() + i] = 1;
        HomologyClass::new(v)
    }

    pub fn canonical(&self) -> HomologyClass {
        self.base.canonical().extended(std::iter::repeat_n(1, self.n))
    }

    pub fn k_dot(&self, a: &HomologyClass) -> Result<i64, LatticeError> {
        self.pairing(&self.canonical(), a)
    }

    /// `a^2 - a.K'` on the blow-up.
    pub fn dimension_numerator(&self, a: &HomologyClass) -> Result<i64, LatticeError> {
        Ok(self.pairing(a, a)? - self.k_dot(a)?)
    }

    pub fn virtual_dim(&self, a: &HomologyClass) -> Result<i64, LatticeError> {
        Ok(self.dimension_numerator(a)? / 2)
    }

    pub fn adjunction_genus(&self, c: &HomologyClass) -> Result<i64, LatticeError> {
        let twice = self.k_dot(c)? + self.pairing(c, c)?;
        let g = twice / 2 + 1;
        if g < 0 {
            return Err(LatticeError::NegativeGenus { k_dot_c_plus_c2: twice });
        }
        Ok(g)
    }

    /// A validated lattice for `X'`. The symplectic class is
    /// `i(omega) - eps * sum E_i` with `eps = 1/m` small enough that its
    /// square stays positive. Allocates a dense `rank^2` form.
    pub fn to_lattice(&self) -> Result<FourManifoldLattice, LatticeError> {
        let r0 = self.base.rank();
        let r = self.rank();
        let mut form = vec![vec![0i64; r]; r];
        for (i, row) in self.base.form().iter().enumerate() {
            form[i][..r0].copy_from_slice(row);
        }
        for (i, row) in form.iter_mut().enumerate().skip(r0) {
            row[i] = -1;
        }
        let w2 = self.base.omega_square();
        let n = BigRational::from_integer(BigInt::from(self.n));
        let mut m = 1i64;
        while BigRational::from_integer(BigInt::from(m * m)) * &w2 <= n {
            m += 1;
        }
        let eps = BigRational::new(BigInt::from(-1), BigInt::from(m));
        let mut omega = self.base.omega().to_vec();
        omega.extend(std::iter::repeat_n(eps, self.n));
        FourManifoldLattice::new(LatticeSpec {
            label: format!("{}#{}CP2bar", self.base.label(), self.n),
            b1: self.base.b1(),
            form,
            canonical: self.canonical().coords().to_vec(),
            omega,
            minimal: false,
            general_type: false,
            declared_b_plus: Some(self.base.b_plus()),
            declared_b_minus: Some(self.base.b_minus() + self.n),
        })
    }
}
