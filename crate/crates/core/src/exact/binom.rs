use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ExactError;

/// Generalised binomial coefficient `n choose k` for any integer `n`.
///
/// For `n < 0` this uses `(-1)^k * binom(-n + k - 1, k)`, which is the
/// coefficient of `x^k` in `(1 + x)^n`.
pub fn binom(n: i64, k: i64) -> Result<BigInt, ExactError> {
    if k < 0 {
        return Err(ExactError::NegativeLowerIndex(k));
    }
    if n < 0 {
        let top = -(n as i128) + k as i128 - 1;
        let mag = pascal(top, k as u64);
        return Ok(if k % 2 == 0 { mag } else { -mag });
    }
    Ok(pascal(n as i128, k as u64))
}

fn pascal(n: i128, k: u64) -> BigInt {
    if (k as i128) > n {
        return BigInt::zero();
    }
    let k = k.min((n - k as i128) as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i as i128);
        acc /= BigInt::from(i + 1);
    }
    acc
}
