//! Commuting-matrix model of the Hilbert scheme of points on `C^2` and of the
//! relative Hilbert scheme of the node `zw = lambda`.
//!
//! A point of the relative model is `(B1, B2, lambda, v)` with
//! `B1 B2 = B2 B1 = lambda I` and `v` cyclic for the pair. The total space is
//! smooth because the linearised equations have kernel of dimension
//! `r^2 + 1` everywhere; [`verify_kernel_dim`] checks this exactly.

mod certify;
mod sample;
mod support;

pub use certify::{certify, CertificationReport, SampleOutcome, Stratum};
pub use sample::{
    sample_absolute_cyclic, sample_absolute_diagonal, sample_b1_zero_stratum, sample_singular_stratum,
    sample_smooth_stratum, ENTRY_BOUND,
};
pub use support::{support_points, SupportPoint};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{rank_and_kernel, ExactError, RationalMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("rank must be positive")]
    ZeroRank,
    #[error("matrices and vector must have size {r}")]
    Dimension { r: usize },
    #[error("B1 and B2 do not commute")]
    NotCommuting,
    #[error("B1 B2 or B2 B1 differs from lambda I")]
    NotLambdaScalar,
    #[error("v is not cyclic: the invariant span has dimension {span} < {r}")]
    Unstable { span: usize, r: usize },
    #[error("split n = {n}, m = {m} does not satisfy n + m + 1 = {r}")]
    BadSplit { n: usize, m: usize, r: usize },
    #[error("lambda must be nonzero on the smooth stratum")]
    ZeroLambda,
    #[error("too many distinct eigenvalues requested for the sampling range")]
    RangeExhausted,
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

/// `(B1, B2, v)` with `[B1, B2] = 0` and `v` cyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdhmTriple {
    pub b1: RationalMatrix,
    pub b2: RationalMatrix,
    pub v: Vec<BigRational>,
}

/// `(B1, B2, lambda, v)` with `B1 B2 = B2 B1 = lambda I` and `v` cyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelAdhmQuad {
    pub b1: RationalMatrix,
    pub b2: RationalMatrix,
    pub lambda: BigRational,
    pub v: Vec<BigRational>,
}

fn check_dims(b1: &RationalMatrix, b2: &RationalMatrix, v: &[BigRational]) -> Result<usize, HilbError> {
    let r = v.len();
    if r == 0 {
        return Err(HilbError::ZeroRank);
    }
    for m in [b1, b2] {
        if m.rows() != r || m.cols() != r {
            return Err(HilbError::Dimension { r });
        }
    }
    Ok(r)
}

fn check_stable(b1: &RationalMatrix, b2: &RationalMatrix, v: &[BigRational], r: usize) -> Result<(), HilbError> {
    let span = invariant_span_dim(b1, b2, v);
    if span < r {
        return Err(HilbError::Unstable { span, r });
    }
    Ok(())
}

impl AdhmTriple {
    pub fn new(b1: RationalMatrix, b2: RationalMatrix, v: Vec<BigRational>) -> Result<Self, HilbError> {
        let r = check_dims(&b1, &b2, &v)?;
        if b1.mul(&b2)? != b2.mul(&b1)? {
            return Err(HilbError::NotCommuting);
        }
        check_stable(&b1, &b2, &v, r)?;
        Ok(Self { b1, b2, v })
    }

    pub fn r(&self) -> usize {
        self.v.len()
    }
}

impl RelAdhmQuad {
    pub fn new(
        b1: RationalMatrix,
        b2: RationalMatrix,
        lambda: BigRational,
        v: Vec<BigRational>,
    ) -> Result<Self, HilbError> {
        let r = check_dims(&b1, &b2, &v)?;
        let li = RationalMatrix::scalar(r, &lambda)?;
        if b1.mul(&b2)? != li || b2.mul(&b1)? != li {
            return Err(HilbError::NotLambdaScalar);
        }
        check_stable(&b1, &b2, &v, r)?;
        Ok(Self { b1, b2, lambda, v })
    }

    pub fn r(&self) -> usize {
        self.v.len()
    }
}

/// Row-reduced basis of a growing subspace of `Q^r`.
struct Span {
    /// Each vector has a leading 1 at `pivots[i]`, and zeros at the other
    /// pivots.
    basis: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Span {
    fn new() -> Self {
        Self {
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Adds `x` to the span; returns whether the dimension grew.
    fn insert(&mut self, mut x: Vec<BigRational>) -> bool {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !x[p].is_zero() {
                let f = x[p].clone();
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi -= &f * bi;
                }
            }
        }
        let Some(p) = x.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = BigRational::one() / &x[p];
        for c in x.iter_mut() {
            *c *= &inv;
        }
        for b in self.basis.iter_mut() {
            if !b[p].is_zero() {
                let f = b[p].clone();
                for (bi, xi) in b.iter_mut().zip(&x) {
                    *bi -= &f * xi;
                }
            }
        }
        self.basis.push(x);
        self.pivots.push(p);
        true
    }
}

/// Dimension of the smallest subspace containing `v` and invariant under
/// `B1` and `B2`.
pub fn invariant_span_dim(b1: &RationalMatrix, b2: &RationalMatrix, v: &[BigRational]) -> usize {
    let mut span = Span::new();
    let mut frontier = Vec::new();
    if span.insert(v.to_vec()) {
        frontier.push(v.to_vec());
    }
    while let Some(x) = frontier.pop() {
        for b in [b1, b2] {
            let y = b.mul_vec(&x).expect("dimensions checked");
            if span.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    span.basis.len()
}

/// Stability (*): no proper subspace invariant under both `B_i` contains `v`.
pub fn is_stable(b1: &RationalMatrix, b2: &RationalMatrix, v: &[BigRational]) -> Result<bool, HilbError> {
    let r = check_dims(b1, b2, v)?;
    Ok(invariant_span_dim(b1, b2, v) == r)
}

/// Matrix of `(C1, C2, mu) -> (C1 B2 + B1 C2 - mu I, B2 C1 + C2 B1 - mu I)`.
///
/// Domain coordinates: `C1[a][b]` at `a r + b`, `C2[a][b]` at
/// `r^2 + a r + b`, `mu` last. Codomain: the first equation's `(i, j)`
/// entry at `i r + j`, the second's at `r^2 + i r + j`.
pub fn differential_matrix(q: &RelAdhmQuad) -> RationalMatrix {
    let r = q.r();
    let rr = r * r;
    let mut m = RationalMatrix::zeros(2 * rr, 2 * rr + 1).expect("r >= 1");
    let c1 = |a: usize, b: usize| a * r + b;
    let c2 = |a: usize, b: usize| rr + a * r + b;
    let add = |m: &mut RationalMatrix, row: usize, col: usize, x: &BigRational| {
        if !x.is_zero() {
            let v = m.get(row, col) + x;
            m.set(row, col, v);
        }
    };
    for i in 0..r {
        for j in 0..r {
            let row1 = i * r + j;
            let row2 = rr + i * r + j;
            for k in 0..r {
                // (C1 B2)_ij and (B1 C2)_ij
                add(&mut m, row1, c1(i, k), q.b2.get(k, j));
                add(&mut m, row1, c2(k, j), q.b1.get(i, k));
                // (B2 C1)_ij and (C2 B1)_ij
                add(&mut m, row2, c1(k, j), q.b2.get(i, k));
                add(&mut m, row2, c2(i, k), q.b1.get(k, j));
            }
            if i == j {
                m.set(row1, 2 * rr, -BigRational::one());
                m.set(row2, 2 * rr, -BigRational::one());
            }
        }
    }
    m
}

/// Matrix of `(C1, C2) -> [C1, B2] + [B1, C2]`, same coordinate layout as
/// [`differential_matrix`] without `mu`.
pub fn absolute_differential_matrix(t: &AdhmTriple) -> RationalMatrix {
    let r = t.r();
    let rr = r * r;
    let mut m = RationalMatrix::zeros(rr, 2 * rr).expect("r >= 1");
    let mut add = |row: usize, col: usize, x: BigRational| {
        if !x.is_zero() {
            let v = m.get(row, col) + x;
            m.set(row, col, v);
        }
    };
    for i in 0..r {
        for j in 0..r {
            let row = i * r + j;
            for k in 0..r {
                add(row, i * r + k, t.b2.get(k, j).clone());
                add(row, k * r + j, -t.b2.get(i, k));
                add(row, rr + k * r + j, t.b1.get(i, k).clone());
                add(row, rr + i * r + k, -t.b1.get(k, j));
            }
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct KernelCheck {
    pub r: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub expected: usize,
    pub holds: bool,
}

/// Kernel of the linearised relative equations has dimension `r^2 + 1`.
pub fn verify_kernel_dim(q: &RelAdhmQuad) -> KernelCheck {
    let r = q.r();
    let rk = rank_and_kernel(&differential_matrix(q));
    let expected = r * r + 1;
    KernelCheck {
        r,
        rank: rk.rank,
        kernel_dim: rk.nullity(),
        expected,
        holds: rk.nullity() == expected,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CokernelCheck {
    pub r: usize,
    pub rank: usize,
    pub cokernel_dim: usize,
    pub holds: bool,
}

/// The commutator differential has rank `r^2 - r`, i.e. cokernel of
/// dimension `r`.
pub fn verify_absolute_cokernel(t: &AdhmTriple) -> CokernelCheck {
    let r = t.r();
    let rank = absolute_differential_matrix(t).rank();
    let cokernel_dim = r * r - rank;
    CokernelCheck {
        r,
        rank,
        cokernel_dim,
        holds: cokernel_dim == r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn diag(v: &[BigRational]) -> RationalMatrix {
        RationalMatrix::diagonal(v).unwrap()
    }

    #[test]
    fn rank_one_stability() {
        let b = diag(&[rat(2)]);
        assert!(is_stable(&b, &b, &[rat(1)]).unwrap());
        assert!(!is_stable(&b, &b, &[rat(0)]).unwrap());
    }

    #[test]
    fn coordinate_subspace_breaks_stability() {
        let l = rat(6);
        let b1 = diag(&[rat(1), rat(2)]);
        let b2 = diag(&[l.clone(), &l / rat(2)]);
        assert!(is_stable(&b1, &b2, &[rat(1), rat(1)]).unwrap());
        assert!(!is_stable(&b1, &b2, &[rat(1), rat(0)]).unwrap());
    }

    #[test]
    fn rank_one_differential() {
        let q = RelAdhmQuad::new(diag(&[rat(3)]), diag(&[ratio(2, 3)]), rat(2), vec![rat(1)]).unwrap();
        let m = differential_matrix(&q);
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(m.row(0), m.row(1));
        assert!(verify_kernel_dim(&q).holds);
    }

    #[test]
    fn quad_equations_enforced() {
        let r = RelAdhmQuad::new(diag(&[rat(3)]), diag(&[rat(1)]), rat(2), vec![rat(1)]);
        assert_eq!(r, Err(HilbError::NotLambdaScalar));
    }

    #[test]
    fn absolute_rank_one() {
        let t = AdhmTriple::new(diag(&[rat(1)]), diag(&[rat(5)]), vec![rat(1)]).unwrap();
        let c = verify_absolute_cokernel(&t);
        assert_eq!((c.rank, c.cokernel_dim), (0, 1));
    }

    #[test]
    fn absolute_diagonal_rank_two() {
        let t = AdhmTriple::new(diag(&[rat(1), rat(2)]), diag(&[rat(3), rat(-1)]), vec![rat(1), rat(1)]).unwrap();
        assert_eq!(verify_absolute_cokernel(&t).cokernel_dim, 2);
    }

    #[test]
    fn differential_is_linear() {
        let q = sample_smooth_stratum(2, &rat(3), 4).unwrap();
        let m = differential_matrix(&q);
        let x: Vec<_> = (0..9).map(|i| rat(i - 4)).collect();
        let y: Vec<_> = (0..9).map(|i| ratio(i * i, 3)).collect();
        let s: Vec<_> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = m.mul_vec(&s).unwrap();
        let rhs: Vec<_> = m
            .mul_vec(&x)
            .unwrap()
            .into_iter()
            .zip(m.mul_vec(&y).unwrap())
            .map(|(a, b)| a + b)
            .collect();
        assert_eq!(lhs, rhs);
    }
}
