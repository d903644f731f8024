//! Rank over a prime field, used as an independent cross-check of the exact
//! rational elimination. Never the primary verdict.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{ExactError, RationalMatrix};

/// The Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

/// Rank of `m` with entries reduced modulo the prime `p`.
///
/// Fails if some denominator vanishes modulo `p`.
pub fn rank_mod_p(m: &RationalMatrix, p: u64) -> Result<usize, ExactError> {
    let mut a: Vec<Vec<u64>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for q in m.row(i) {
            let den = reduce(q.denom(), p);
            if den.is_zero() {
                return Err(ExactError::BadReduction(q.denom().clone()));
            }
            row.push(mul_mod(reduce(q.numer(), p), pow_mod(den, p - 2, p), p));
        }
        a.push(row);
    }
    let (nr, nc) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..nc {
        let Some(sel) = (rank..nr).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(sel, rank);
        let inv = pow_mod(a[rank][c], p - 2, p);
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv, p);
            for j in c..nc {
                let sub = mul_mod(f, pivot_row[j], p);
                row[j] = (row[j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == nr {
            break;
        }
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn agrees_on_small_matrix() {
        let a = RationalMatrix::from_i64_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        assert_eq!(rank_mod_p(&a, DEFAULT_PRIME).unwrap(), a.rank());
    }

    #[test]
    fn small_prime_can_drop_rank() {
        let a = RationalMatrix::from_i64_rows(&[vec![1, 1], vec![1, 4]]).unwrap();
        assert_eq!(rank_mod_p(&a, 3).unwrap(), 1);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn denominator_divisible_by_prime() {
        let a = RationalMatrix::new(1, 1, vec![ratio(1, 3)]).unwrap();
        assert!(matches!(rank_mod_p(&a, 3), Err(ExactError::BadReduction(_))));
    }
}
