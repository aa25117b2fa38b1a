//! Dense complex matrices, inertia of Hermitian forms and the two elementary
//! congruences (row/column addition and row/column scaling).
//!
//! Every operation here is a pure function of its inputs. The in-place
//! variants (`*_in_place`) exist for the proof replay, which chains thousands
//! of elementary congruences on one working matrix.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::tolerance::Tolerances;

pub type Complex = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix is not Hermitian: entries ({row},{col}) and ({col},{row}) differ by {deviation:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("index {index} out of range for a {dim}x{dim} matrix")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("row/column indices must differ (both are {0})")]
    EqualIndices(usize),
    #[error("scale factor {0} is numerically zero")]
    ZeroScale(Complex),
    #[error("non-finite entry at ({row},{col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// Counts of positive, negative and zero eigenvalues of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Inertia {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn new(n_pos: usize, n_neg: usize, n_zero: usize) -> Self {
        Self {
            n_pos,
            n_neg,
            n_zero,
        }
    }

    pub fn signature(&self) -> i64 {
        self.n_pos as i64 - self.n_neg as i64
    }

    pub fn dim(&self) -> usize {
        self.n_pos + self.n_neg + self.n_zero
    }

    pub fn is_nonsingular(&self) -> bool {
        self.n_zero == 0
    }
}

impl Add for Inertia {
    type Output = Inertia;

    fn add(self, rhs: Inertia) -> Inertia {
        Inertia::new(
            self.n_pos + rhs.n_pos,
            self.n_neg + rhs.n_neg,
            self.n_zero + rhs.n_zero,
        )
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(+{}, -{}, 0x{})", self.n_pos, self.n_neg, self.n_zero)
    }
}

/// Square matrix of complex entries. `0x0` is a legal value.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            inner: DMatrix::from_element(dim, dim, Complex::new(0.0, 0.0)),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex) -> Self {
        Self {
            inner: DMatrix::from_fn(dim, dim, f),
        }
    }

    pub fn from_diagonal(diag: &[Complex]) -> Self {
        Self::from_fn(diag.len(), |i, j| {
            if i == j {
                diag[i]
            } else {
                Complex::new(0.0, 0.0)
            }
        })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let diag: Vec<Complex> = diag.iter().map(|&x| Complex::new(x, 0.0)).collect();
        Self::from_diagonal(&diag)
    }

    /// Builds a matrix from row-major rows. Panics if the rows are ragged or not square.
    pub fn from_rows(rows: &[Vec<Complex>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Self::from_fn(dim, |i, j| rows[i][j])
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Self::from_fn(dim, |i, j| Complex::new(rows[i][j], 0.0))
    }

    /// Checks squareness and finiteness of a raw nalgebra matrix.
    pub fn try_from_dmatrix(m: DMatrix<Complex>) -> Result<Self, MatrixError> {
        if m.nrows() != m.ncols() {
            return Err(MatrixError::DimensionMismatch {
                left: m.nrows(),
                right: m.ncols(),
            });
        }
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let z = m[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(MatrixError::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { inner: m })
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex> {
        &self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            inner: self.inner.transpose(),
        }
    }

    pub fn scaled(&self, z: Complex) -> Self {
        Self {
            inner: self.inner.map(|e| e * z),
        }
    }

    /// `i * self`; turns a skew-Hermitian matrix into a Hermitian one.
    pub fn times_i(&self) -> Self {
        self.scaled(Complex::new(0.0, 1.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Max-abs entrywise difference. Panics on a dimension mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.inner
            .iter()
            .zip(other.inner.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Square sub-matrix starting at `(row0, col0)`.
    pub fn submatrix(&self, row0: usize, col0: usize, size: usize) -> Self {
        Self::from_fn(size, |i, j| self.inner[(row0 + i, col0 + j)])
    }

    /// Block `(bi, bj)` of a matrix partitioned into `block x block` tiles.
    pub fn block(&self, bi: usize, bj: usize, block: usize) -> Self {
        self.submatrix(bi * block, bj * block, block)
    }

    fn symmetry_tolerance(&self, sym: f64) -> f64 {
        sym * (1.0 + self.max_abs())
    }

    /// Returns the worst violation of `h_ij = conj(h_ji)` if it exceeds the tolerance.
    pub fn check_hermitian(&self, sym: f64) -> Result<(), MatrixError> {
        self.check_symmetry(sym, 1.0)
    }

    pub fn check_skew_hermitian(&self, sym: f64) -> Result<(), MatrixError> {
        self.check_symmetry(sym, -1.0)
    }

    fn check_symmetry(&self, sym: f64, sign: f64) -> Result<(), MatrixError> {
        let tol = self.symmetry_tolerance(sym);
        let n = self.dim();
        let mut worst: Option<(usize, usize, f64)> = None;
        for i in 0..n {
            for j in i..n {
                let a = self.inner[(i, j)];
                let b = self.inner[(j, i)].conj() * sign;
                if !(a.re.is_finite() && a.im.is_finite()) {
                    return Err(MatrixError::NonFinite { row: i, col: j });
                }
                let dev = (a - b).norm();
                if dev > tol && worst.is_none_or(|(_, _, w)| dev > w) {
                    worst = Some((i, j, dev));
                }
            }
        }
        match worst {
            Some((row, col, deviation)) => Err(MatrixError::NotHermitian {
                row,
                col,
                deviation,
            }),
            None => Ok(()),
        }
    }

    pub fn is_hermitian(&self, sym: f64) -> bool {
        self.check_hermitian(sym).is_ok()
    }

    pub fn is_skew_hermitian(&self, sym: f64) -> bool {
        self.check_skew_hermitian(sym).is_ok()
    }

    /// `(H + H*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self {
            inner: (&self.inner + self.inner.adjoint()).map(|z| z * 0.5),
        }
    }

    /// Eigenvalues of the Hermitian part, ascending. No symmetry check.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        if self.dim() == 0 {
            return Vec::new();
        }
        let sym = self.hermitian_part();
        let mut values: Vec<f64> = sym.inner.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    /// Inertia relative to `tau_zero * max|λ|`, with the default symmetry tolerance.
    pub fn inertia(&self, tau_zero: f64) -> Result<Inertia, MatrixError> {
        self.inertia_with(&Tolerances {
            zero: tau_zero,
            ..Tolerances::default()
        })
    }

    pub fn inertia_with(&self, tol: &Tolerances) -> Result<Inertia, MatrixError> {
        self.check_hermitian(tol.sym)?;
        Ok(inertia_of_spectrum(&self.hermitian_eigenvalues(), tol.zero))
    }

    pub fn signature(&self, tau_zero: f64) -> Result<i64, MatrixError> {
        Ok(self.inertia(tau_zero)?.signature())
    }

    /// `|det|` of the Hermitian part, as the product of `|λ|`.
    pub fn hermitian_det_abs(&self) -> f64 {
        self.hermitian_eigenvalues().iter().map(|l| l.abs()).product()
    }

    fn check_index(&self, index: usize) -> Result<(), MatrixError> {
        if index >= self.dim() {
            Err(MatrixError::IndexOutOfRange {
                index,
                dim: self.dim(),
            })
        } else {
            Ok(())
        }
    }

    /// Adds `z` times row `src` to row `dst`, then `conj(z)` times column `src` to column `dst`.
    pub fn congruence_add(&self, src: usize, dst: usize, z: Complex) -> Result<Self, MatrixError> {
        self.check_index(src)?;
        self.check_index(dst)?;
        if src == dst {
            return Err(MatrixError::EqualIndices(src));
        }
        self.check_hermitian(Tolerances::default().sym)?;
        let mut out = self.clone();
        out.congruence_add_in_place(src, dst, z);
        Ok(out)
    }

    /// Multiplies row `i` by `z`, then column `i` by `conj(z)`.
    pub fn congruence_scale(&self, i: usize, z: Complex) -> Result<Self, MatrixError> {
        self.check_index(i)?;
        if z.norm() <= Tolerances::default().zero {
            return Err(MatrixError::ZeroScale(z));
        }
        self.check_hermitian(Tolerances::default().sym)?;
        let mut out = self.clone();
        out.congruence_scale_in_place(i, z);
        Ok(out)
    }

    /// Unchecked in-place form of [`congruence_add`](Self::congruence_add).
    pub fn congruence_add_in_place(&mut self, src: usize, dst: usize, z: Complex) {
        debug_assert_ne!(src, dst);
        let n = self.dim();
        for c in 0..n {
            let v = self.inner[(src, c)];
            self.inner[(dst, c)] += z * v;
        }
        let zc = z.conj();
        for r in 0..n {
            let v = self.inner[(r, src)];
            self.inner[(r, dst)] += zc * v;
        }
    }

    /// Unchecked in-place form of [`congruence_scale`](Self::congruence_scale).
    pub fn congruence_scale_in_place(&mut self, i: usize, z: Complex) {
        let n = self.dim();
        for c in 0..n {
            self.inner[(i, c)] *= z;
        }
        let zc = z.conj();
        for r in 0..n {
            self.inner[(r, i)] *= zc;
        }
    }

    /// `P * self * P^*`.
    pub fn congruent_by(&self, p: &ComplexMatrix) -> Self {
        assert_eq!(p.dim(), self.dim(), "dimension mismatch");
        Self {
            inner: &p.inner * &self.inner * p.inner.adjoint(),
        }
    }

    pub fn direct_sum(&self, other: &ComplexMatrix) -> Self {
        let (a, b) = (self.dim(), other.dim());
        Self::from_fn(a + b, |i, j| {
            if i < a && j < a {
                self.inner[(i, j)]
            } else if i >= a && j >= a {
                other.inner[(i - a, j - a)]
            } else {
                Complex::new(0.0, 0.0)
            }
        })
    }

    pub fn kronecker(&self, other: &ComplexMatrix) -> Self {
        let b = other.dim();
        Self::from_fn(self.dim() * b, |i, j| {
            self.inner[(i / b, j / b)] * other.inner[(i % b, j % b)]
        })
    }
}

/// Counts eigenvalues above, below and inside `±tau_zero * max|λ|`.
pub fn inertia_of_spectrum(eigenvalues: &[f64], tau_zero: f64) -> Inertia {
    let scale = eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let threshold = tau_zero * scale;
    let mut inertia = Inertia::default();
    for &l in eigenvalues {
        if scale == 0.0 || l.abs() <= threshold {
            inertia.n_zero += 1;
        } else if l > 0.0 {
            inertia.n_pos += 1;
        } else {
            inertia.n_neg += 1;
        }
    }
    inertia
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, idx: (usize, usize)) -> &Complex {
        &self.inner[idx]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut Complex {
        &mut self.inner[idx]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner * &rhs.inner,
        }
    }
}
