//! Seifert matrices: validation, the symplectic normal form of the skew part,
//! torus-knot matrices and a text catalog of knots.

mod catalog;
mod symplectic;

pub use catalog::{entry_text, Catalog, CatalogError, KnotCatalogEntry};
pub use symplectic::{symplectic_normalize, SymplecticNormalForm};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::intmat::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("rows do not form a square matrix")]
    NotSquare,
    #[error("Seifert matrices have even dimension, got {0}")]
    OddDimension(usize),
    #[error("skew part A - A^T has determinant {determinant}, expected 1")]
    NonUnimodularSkewPart { determinant: BigInt },
    #[error("not a valid Seifert matrix: {0}")]
    NotValid(Box<SeifertError>),
    #[error("torus knot parameters ({p}, {q}) are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("integer overflow during exact reduction")]
    Overflow,
}

/// Outcome of a successful [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub dim: usize,
    pub genus: usize,
    pub skew_determinant: BigInt,
}

/// Accepts iff the dimension is even and `det(A - A^T) = 1` exactly.
pub fn validate(a: &IntMatrix) -> Result<ValidationReport, SeifertError> {
    let dim = a.dim();
    if dim % 2 != 0 {
        return Err(SeifertError::OddDimension(dim));
    }
    let determinant = a.skew_part().determinant();
    if !determinant.is_one() {
        return Err(SeifertError::NonUnimodularSkewPart { determinant });
    }
    Ok(ValidationReport {
        dim,
        genus: dim / 2,
        skew_determinant: determinant,
    })
}

/// Integer matrix whose skew part is unimodular. Construct through
/// [`SeifertMatrix::new`] or `TryFrom<IntMatrix>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix(IntMatrix);

impl SeifertMatrix {
    pub fn new(m: IntMatrix) -> Result<Self, SeifertError> {
        validate(&m)?;
        Ok(Self(m))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, SeifertError> {
        Self::new(IntMatrix::from_rows(rows).ok_or(SeifertError::NotSquare)?)
    }

    /// The `0x0` matrix of the unknot.
    pub fn unknot() -> Self {
        Self(IntMatrix::zeros(0))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn genus(&self) -> usize {
        self.0.dim() / 2
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0.get(i, j)
    }

    pub fn transpose(&self) -> Self {
        // det(A^T - A) = det(-(A - A^T)) = det(A - A^T) for even dimension
        Self(self.0.transpose())
    }

    pub fn skew_part(&self) -> IntMatrix {
        self.0.skew_part()
    }

    pub fn symplectic_basis(&self) -> Result<SymplecticNormalForm, SeifertError> {
        symplectic_normalize(&self.0)
    }
}

impl TryFrom<IntMatrix> for SeifertMatrix {
    type Error = SeifertError;

    fn try_from(m: IntMatrix) -> Result<Self, SeifertError> {
        Self::new(m)
    }
}

impl AsRef<IntMatrix> for SeifertMatrix {
    fn as_ref(&self) -> &IntMatrix {
        &self.0
    }
}

/// `k x k` with `1` on the diagonal and `-1` just above it.
fn bidiagonal(k: usize) -> IntMatrix {
    IntMatrix::from_fn(k, |i, j| {
        if i == j {
            1
        } else if j == i + 1 {
            -1
        } else {
            0
        }
    })
}

fn int_kronecker(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = b.dim();
    IntMatrix::from_fn(a.dim() * n, |i, j| a.get(i / n, j / n) * b.get(i % n, j % n))
}

/// Seifert matrix of the `(p, q)` torus knot, of dimension `(p-1)(q-1)`:
/// the negated tensor product of the two bidiagonal variation matrices.
pub fn torus_knot_seifert(p: i64, q: i64) -> Result<SeifertMatrix, SeifertError> {
    if p < 2 || q < 2 {
        return Err(SeifertError::OutOfRange(format!(
            "torus knot needs p, q >= 2, got ({p}, {q})"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(SeifertError::NotCoprime { p, q });
    }
    let (a, b) = (bidiagonal(p as usize - 1), bidiagonal(q as usize - 1));
    let v = int_kronecker(&a, &b);
    let neg = IntMatrix::from_fn(v.dim(), |i, j| -v.get(i, j));
    SeifertMatrix::new(neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn unknot_is_valid_genus_zero() {
        let r = validate(&IntMatrix::zeros(0)).unwrap();
        assert_eq!((r.dim, r.genus), (0, 0));
    }

    #[test]
    fn trefoil_is_valid_genus_one() {
        let r = validate(&m(&[vec![-1, 1], vec![0, -1]])).unwrap();
        assert_eq!(r.genus, 1);
        assert_eq!(r.skew_determinant, BigInt::one());
    }

    #[test]
    fn symmetric_matrix_rejected() {
        match validate(&m(&[vec![1, 0], vec![0, 1]])) {
            Err(SeifertError::NonUnimodularSkewPart { determinant }) => assert_eq!(determinant, BigInt::from(0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn odd_dimension_rejected() {
        assert_eq!(validate(&m(&[vec![1]])), Err(SeifertError::OddDimension(1)));
    }

    #[test]
    fn torus_trefoil_matches_fixed_matrix() {
        let t = torus_knot_seifert(2, 3).unwrap();
        assert_eq!(t.matrix(), &m(&[vec![-1, 1], vec![0, -1]]));
        assert_eq!(torus_knot_seifert(3, 2).unwrap().dim(), 2);
    }

    #[test]
    fn torus_dimensions() {
        for (p, q) in [(2, 5), (3, 4), (2, 7), (3, 5), (4, 5)] {
            let t = torus_knot_seifert(p, q).unwrap();
            assert_eq!(t.dim() as i64, (p - 1) * (q - 1));
        }
    }

    #[test]
    fn torus_argument_errors() {
        assert_eq!(torus_knot_seifert(2, 4), Err(SeifertError::NotCoprime { p: 2, q: 4 }));
        assert!(matches!(torus_knot_seifert(1, 3), Err(SeifertError::OutOfRange(_))));
    }

    #[test]
    fn transpose_stays_valid() {
        let t = torus_knot_seifert(3, 4).unwrap();
        assert!(validate(t.transpose().matrix()).is_ok());
    }
}
