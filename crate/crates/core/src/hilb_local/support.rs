//! Support of the length-`r` subscheme on the smooth fibre `zw = lambda`.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{HilbError, RelAdhmQuad};
use crate::exact::{rank_and_kernel, RationalMatrix};

/// Rational-root search gives up beyond this coefficient size.
const DIVISOR_SEARCH_BOUND: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SupportPoint {
    #[serde(serialize_with = "crate::serde_rational")]
    pub z: BigRational,
    #[serde(serialize_with = "crate::serde_rational")]
    pub w: BigRational,
}

/// Coefficients `c_0..c_n` (ascending, monic) of `det(x I - A)` by
/// Faddeev-LeVerrier.
fn char_poly(a: &RationalMatrix) -> Vec<BigRational> {
    let n = a.rows();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut m = RationalMatrix::zeros(n, n).expect("n >= 1");
    for k in 1..=n {
        m = a
            .mul(&m)
            .expect("square")
            .add(&RationalMatrix::scalar(n, &c[n - k + 1]).expect("n >= 1"))
            .expect("square");
        let am = a.mul(&m).expect("square");
        let tr = (0..n).fold(BigRational::zero(), |acc, i| acc + am.get(i, i));
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    c
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// `p / (x - root)`, assuming exact division.
fn deflate(p: &[BigRational], root: &BigRational) -> Vec<BigRational> {
    let n = p.len() - 1;
    let mut q = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for i in (1..=n).rev() {
        carry = &p[i] + &carry * root;
        q[i - 1] = carry.clone();
    }
    q
}

fn divisors(n: &BigInt) -> Result<Vec<u64>, HilbError> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&v| v <= DIVISOR_SEARCH_BOUND)
        .ok_or_else(|| HilbError::Unsupported(format!("coefficient {n} too large for rational root search")))?;
    let mut out = Vec::new();
    for d in 1..=n.sqrt() {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
    }
    Ok(out)
}

/// Rational roots with multiplicity. Fails if some root is irrational.
fn rational_roots(p: &[BigRational]) -> Result<Vec<(BigRational, usize)>, HilbError> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &lcm).to_integer()).collect();
    let mut out = Vec::new();
    let mut rest = p.to_vec();
    let mut zero_mult = 0;
    let mut low = 0;
    while ints[low].is_zero() {
        low += 1;
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((BigRational::zero(), zero_mult));
        rest = rest[zero_mult..].to_vec();
    }
    let (ps, qs) = (divisors(&ints[low])?, divisors(&ints[ints.len() - 1])?);
    let mut candidates: Vec<BigRational> = Vec::new();
    for &a in &ps {
        for &b in &qs {
            for s in [1i64, -1] {
                let c = BigRational::new(BigInt::from(a) * s, BigInt::from(b));
                if !candidates.contains(&c) {
                    candidates.push(c);
                }
            }
        }
    }
    candidates.sort();
    for c in candidates {
        let mut mult = 0;
        while rest.len() > 1 && eval(&rest, &c).is_zero() {
            rest = deflate(&rest, &c);
            mult += 1;
        }
        if mult > 0 {
            out.push((c, mult));
        }
    }
    if rest.len() > 1 {
        return Err(HilbError::Unsupported("B1 has eigenvalues outside Q".into()));
    }
    Ok(out)
}

/// Points `(z_i, w_i)` of the subscheme, with `z_i w_i = lambda`, from the
/// joint eigenvalues of `(B1, B2)`. Requires `lambda != 0` and `B1`
/// diagonalisable over `Q`.
pub fn support_points(q: &RelAdhmQuad) -> Result<Vec<SupportPoint>, HilbError> {
    if q.lambda.is_zero() {
        return Err(HilbError::ZeroLambda);
    }
    let r = q.r();
    let mut out = Vec::with_capacity(r);
    for (z, mult) in rational_roots(&char_poly(&q.b1))? {
        let shifted = q.b1.sub(&RationalMatrix::scalar(r, &z)?)?;
        let rk = rank_and_kernel(&shifted);
        if rk.nullity() != mult {
            return Err(HilbError::Unsupported(format!(
                "B1 is not diagonalisable at eigenvalue {z}"
            )));
        }
        for u in &rk.kernel {
            let bu = q.b2.mul_vec(u)?;
            let p = u.iter().position(|c| !c.is_zero()).expect("kernel vectors are nonzero");
            let w = &bu[p] / &u[p];
            if bu.iter().zip(u).any(|(a, b)| *a != &w * b) {
                return Err(HilbError::Unsupported("B2 does not preserve the B1 eigenvector".into()));
            }
            out.push(SupportPoint { z: z.clone(), w });
        }
    }
    out.sort();
    Ok(out)
}
