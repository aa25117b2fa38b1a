//! Square integer matrices and exact determinants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Row-major square matrix of `i64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    /// `None` if the rows do not form a square matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(Self {
            dim,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.dim.max(1)).take(self.dim).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    /// `A - A^T`.
    pub fn skew_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j) - self.get(j, i))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Product with overflow detection.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: i64 = 0;
                for k in 0..n {
                    acc = acc.checked_add(self.get(i, k).checked_mul(other.get(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Some(out)
    }

    pub fn to_bigint_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| BigInt::from(self.get(i, j))).collect())
            .collect()
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.to_bigint_rows())
    }

    /// Standard symplectic form: `g` diagonal blocks `[[0, 1], [-1, 0]]`.
    pub fn standard_symplectic(genus: usize) -> Self {
        let mut m = Self::zeros(2 * genus);
        for b in 0..genus {
            m.set(2 * b, 2 * b + 1, 1);
            m.set(2 * b + 1, 2 * b, -1);
        }
        m
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Fraction-free (Bareiss) elimination with row pivoting. Consumes the matrix.
///
/// The empty matrix has determinant 1.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // exact by Sylvester's identity
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_det(m: &IntMatrix) -> i128 {
        // Laplace expansion along the first row
        let n = m.dim();
        if n == 0 {
            return 1;
        }
        let mut total = 0i128;
        for c in 0..n {
            let minor = IntMatrix::from_fn(n - 1, |i, j| m.get(i + 1, if j < c { j } else { j + 1 }));
            let term = m.get(0, c) as i128 * brute_det(&minor);
            total += if c % 2 == 0 { term } else { -term };
        }
        total
    }

    #[test]
    fn determinant_matches_laplace_expansion() {
        let cases = [
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            vec![vec![0, 1, 2], vec![3, 0, 5], vec![7, 8, 0]],
            vec![vec![0, 0, 1, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 1, 0, 0]],
            vec![vec![1, 2], vec![2, 4]],
        ];
        for rows in cases {
            let m = IntMatrix::from_rows(&rows).unwrap();
            assert_eq!(m.determinant(), BigInt::from(brute_det(&m)), "{rows:?}");
        }
    }

    #[test]
    fn empty_determinant_is_one() {
        assert_eq!(IntMatrix::zeros(0).determinant(), BigInt::one());
        assert!(IntMatrix::zeros(0).rows().is_empty());
    }

    #[test]
    fn standard_form_is_unimodular() {
        for g in 0..4 {
            assert_eq!(IntMatrix::standard_symplectic(g).determinant(), BigInt::one());
        }
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![3]]).is_none());
    }
}
