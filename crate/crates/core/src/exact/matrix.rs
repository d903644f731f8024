use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Dense row-major matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, ExactError> {
        if rows == 0 || cols == 0 {
            return Err(ExactError::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(ExactError::Shape {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", entries.len()),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self, ExactError> {
        Self::new(rows, cols, vec![BigRational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self, ExactError> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        Ok(m)
    }

    pub fn scalar(n: usize, value: &BigRational) -> Result<Self, ExactError> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, value.clone());
        }
        Ok(m)
    }

    pub fn diagonal(values: &[BigRational]) -> Result<Self, ExactError> {
        let mut m = Self::zeros(values.len(), values.len())?;
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::Shape {
                expected: format!("rows of length {c}"),
                found: "ragged rows".into(),
            });
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        Self::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Self::new(self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Self::new(self.rows, self.cols, entries)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::Shape {
                expected: format!("vector of length {}", self.cols),
                found: v.len().to_string(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        Echelon::reduce(self).pivots.len()
    }

    /// Exact determinant via fraction-free elimination.
    pub fn determinant(&self) -> Result<BigRational, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Shape {
                expected: "square matrix".into(),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        let ech = Echelon::reduce(self);
        if ech.pivots.len() < self.rows {
            return Ok(BigRational::zero());
        }
        // Bareiss leaves det(scaled M) in the last pivot, up to the swap sign.
        let last = ech.rows[self.rows - 1][self.cols - 1].clone();
        let signed = if ech.swaps.is_multiple_of(2) { last } else { -last };
        Ok(BigRational::new(signed, ech.row_scale_product))
    }

    /// Inertia and determinant of a symmetric matrix, by congruence
    /// diagonalisation over the rationals (Sylvester's law). Only rows with a
    /// nonzero entry in the pivot column are touched, so block-diagonal forms
    /// stay cheap.
    pub fn symmetric_inertia(&self) -> Result<Inertia, ExactError> {
        if !self.is_square() || *self != self.transpose() {
            return Err(ExactError::Shape {
                expected: "symmetric matrix".into(),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let (mut pos, mut neg) = (0, 0);
        let mut det = BigRational::one();
        let mut active: Vec<usize> = (0..n).collect();
        while let Some(p) = pick_symmetric_pivot(&mut a, &active) {
            active.retain(|&i| i != p);
            let d = a.get(p, p).clone();
            det *= &d;
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            let col: Vec<(usize, BigRational)> = active
                .iter()
                .filter(|&&i| !a.get(i, p).is_zero())
                .map(|&i| (i, a.get(i, p) / &d))
                .collect();
            let prow: Vec<(usize, BigRational)> = active
                .iter()
                .filter(|&&j| !a.get(p, j).is_zero())
                .map(|&j| (j, a.get(p, j).clone()))
                .collect();
            for (i, f) in &col {
                for (j, apj) in &prow {
                    let v = a.get(*i, *j) - f * apj;
                    a.set(*i, *j, v);
                }
            }
            for (i, _) in &col {
                a.set(*i, p, BigRational::zero());
                a.set(p, *i, BigRational::zero());
            }
        }
        let zero = n - pos - neg;
        if zero > 0 {
            det = BigRational::zero();
        }
        Ok(Inertia {
            positive: pos,
            negative: neg,
            zero,
            determinant: det,
        })
    }

    fn same_shape(&self, other: &Self) -> Result<(), ExactError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ExactError::Shape {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }
}

/// Signature data of a symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub determinant: BigRational,
}

/// Finds a nonzero diagonal pivot among `active`, creating one by the
/// congruence `e_i -> e_i + e_j` when only off-diagonal entries survive.
fn pick_symmetric_pivot(a: &mut RationalMatrix, active: &[usize]) -> Option<usize> {
    if let Some(&p) = active.iter().find(|&&i| !a.get(i, i).is_zero()) {
        return Some(p);
    }
    let (i, j) = active
        .iter()
        .flat_map(|&i| active.iter().map(move |&j| (i, j)))
        .find(|&(i, j)| i != j && !a.get(i, j).is_zero())?;
    // Row and column operation: add row/col j to row/col i.
    let n = a.rows();
    for c in 0..n {
        let v = a.get(i, c) + a.get(j, c);
        a.set(i, c, v);
    }
    for r in 0..n {
        let v = a.get(r, i) + a.get(r, j);
        a.set(r, i, v);
    }
    Some(i)
}

/// Integer row-echelon form produced by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot, in order.
    pivots: Vec<(usize, usize)>,
    swaps: usize,
    /// Product of the per-row denominator-clearing factors.
    row_scale_product: BigInt,
}

impl Echelon {
    fn reduce(m: &RationalMatrix) -> Self {
        let mut row_scale_product = BigInt::one();
        let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
            .map(|i| {
                let row = m.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row_scale_product *= &l;
                row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
            })
            .collect();
        let (nr, nc) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prev = BigInt::one();
        let mut pr = 0;
        for c in 0..nc {
            if pr == nr {
                break;
            }
            let Some(sel) = (pr..nr).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            if sel != pr {
                rows.swap(sel, pr);
                swaps += 1;
            }
            let (head, tail) = rows.split_at_mut(pr + 1);
            let pivot_row = &head[pr];
            let p = &pivot_row[c];
            for row in tail.iter_mut() {
                let f = row[c].clone();
                for j in c + 1..nc {
                    let v = p * &row[j] - &f * &pivot_row[j];
                    let (q, rem) = v.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    row[j] = q;
                }
                row[c] = BigInt::zero();
            }
            prev = p.clone();
            pivots.push((pr, c));
            pr += 1;
        }
        Self {
            rows,
            pivots,
            swaps,
            row_scale_product,
        }
    }
}

/// Rank and a kernel basis of a rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel: Vec<Vec<BigRational>>,
}

impl RankKernel {
    pub fn nullity(&self) -> usize {
        self.kernel.len()
    }
}

/// Exact rank and null-space basis via fraction-free (Bareiss) elimination.
///
/// `rank + kernel.len() == cols` always holds.
pub fn rank_and_kernel(m: &RationalMatrix) -> RankKernel {
    let ech = Echelon::reduce(m);
    let nc = m.cols;
    let mut is_pivot = vec![false; nc];
    for &(_, c) in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..nc).filter(|&c| !is_pivot[c]) {
        let mut x = vec![BigRational::zero(); nc];
        x[free] = BigRational::one();
        for &(r, c) in ech.pivots.iter().rev() {
            let row = &ech.rows[r];
            let mut s = BigRational::zero();
            for j in c + 1..nc {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += BigRational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[c] = -s / BigRational::from_integer(row[c].clone());
        }
        kernel.push(x);
    }
    RankKernel {
        rank: ech.pivots.len(),
        kernel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        for r in 1..6 {
            let rk = rank_and_kernel(&RationalMatrix::identity(r).unwrap());
            assert_eq!(rk.rank, r);
            assert!(rk.kernel.is_empty());
        }
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let rk = rank_and_kernel(&RationalMatrix::zeros(3, 7).unwrap());
        assert_eq!(rk.rank, 0);
        assert_eq!(rk.nullity(), 7);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let a = m(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, -1, 2]]);
        let rk = rank_and_kernel(&a);
        assert_eq!(rk.rank, 2);
        assert_eq!(rk.nullity(), 2);
        for v in &rk.kernel {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rational_entries() {
        let a = RationalMatrix::new(
            2,
            2,
            vec![crate::exact::ratio(1, 2), crate::exact::ratio(1, 3), rat(3), rat(2)],
        )
        .unwrap();
        assert_eq!(a.rank(), 1);
        assert_eq!(a.determinant().unwrap(), rat(0));
    }

    #[test]
    fn determinant_matches_cofactor() {
        let a = m(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(a.determinant().unwrap(), rat(4));
        let swapped = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(swapped.determinant().unwrap(), rat(-1));
        let half = RationalMatrix::new(2, 2, vec![crate::exact::ratio(1, 2), rat(0), rat(0), rat(3)]).unwrap();
        assert_eq!(half.determinant().unwrap(), crate::exact::ratio(3, 2));
    }

    #[test]
    fn inertia_of_hyperbolic_plane() {
        let h = m(&[vec![0, 1], vec![1, 0]]);
        let i = h.symmetric_inertia().unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 0));
        assert_eq!(i.determinant, rat(-1));
        let d = m(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 0]]);
        let i = d.symmetric_inertia().unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 1));
        assert_eq!(i.determinant, rat(0));
    }

    #[test]
    fn inertia_determinant_matches_bareiss() {
        let a = m(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(a.symmetric_inertia().unwrap().determinant, a.determinant().unwrap());
        let b = m(&[vec![0, 3, 1], vec![3, 0, 2], vec![1, 2, 0]]);
        assert_eq!(b.symmetric_inertia().unwrap().determinant, b.determinant().unwrap());
    }

    #[test]
    fn non_square_determinant_rejected() {
        assert!(RationalMatrix::zeros(2, 3).unwrap().determinant().is_err());
    }
}
