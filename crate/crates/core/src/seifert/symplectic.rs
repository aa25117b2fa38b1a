use num_traits::ToPrimitive;

use super::{validate, SeifertError};
use crate::intmat::IntMatrix;

/// Unimodular `basis` with `basis * (A - A^T) * basis^T` equal to the standard
/// block form with `genus` blocks `[[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticNormalForm {
    pub basis: IntMatrix,
    pub genus: usize,
    pub basis_determinant: i64,
}

impl SymplecticNormalForm {
    /// Exact re-check of the certificate against the Seifert matrix `a`.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let k = a.skew_part();
        let reduced = self
            .basis
            .checked_mul(&k)
            .and_then(|pk| pk.checked_mul(&self.basis.transpose()));
        reduced.is_some_and(|r| r == IntMatrix::standard_symplectic(self.genus))
            && self.basis_determinant.abs() == 1
    }
}

struct Reduction {
    w: Vec<Vec<i64>>,
    p: Vec<Vec<i64>>,
}

impl Reduction {
    fn swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.w.swap(a, b);
        for row in &mut self.w {
            row.swap(a, b);
        }
        self.p.swap(a, b);
    }

    /// Congruence `row_dst += c row_src`, `col_dst += c col_src`.
    fn add(&mut self, src: usize, dst: usize, c: i64) -> Result<(), SeifertError> {
        if c == 0 {
            return Ok(());
        }
        let n = self.w.len();
        for j in 0..n {
            self.w[dst][j] = checked_axpy(self.w[dst][j], c, self.w[src][j])?;
            self.p[dst][j] = checked_axpy(self.p[dst][j], c, self.p[src][j])?;
        }
        for i in 0..n {
            self.w[i][dst] = checked_axpy(self.w[i][dst], c, self.w[i][src])?;
        }
        Ok(())
    }

    /// Smallest nonzero `|w_ij|` with `s <= i < j`.
    fn min_entry(&self, s: usize) -> Option<(usize, usize)> {
        let n = self.w.len();
        let mut best: Option<(usize, usize, u64)> = None;
        for i in s..n {
            for j in i + 1..n {
                let v = self.w[i][j].unsigned_abs();
                if v != 0 && best.is_none_or(|(_, _, b)| v < b) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

fn checked_axpy(y: i64, c: i64, x: i64) -> Result<i64, SeifertError> {
    c.checked_mul(x)
        .and_then(|cx| y.checked_add(cx))
        .ok_or(SeifertError::Overflow)
}

/// Integer symplectic elimination of the skew part of a valid Seifert matrix.
pub fn symplectic_normalize(a: &IntMatrix) -> Result<SymplecticNormalForm, SeifertError> {
    let report = validate(a).map_err(|e| SeifertError::NotValid(Box::new(e)))?;
    let n = a.dim();
    let mut red = Reduction {
        w: a.skew_part().rows(),
        p: IntMatrix::identity(n).rows(),
    };
    for s in (0..n).step_by(2) {
        loop {
            let (i, j) = red
                .min_entry(s)
                .expect("unimodular skew form has a nonzero entry in every trailing block");
            red.swap(s, i);
            // (i, j) with i < j: j cannot have become s
            red.swap(s + 1, j);
            let pivot = red.w[s][s + 1];
            for k in s + 2..n {
                let q = red.w[s][k] / pivot;
                red.add(s + 1, k, -q)?;
                let q = red.w[s + 1][k] / red.w[s + 1][s];
                red.add(s, k, -q)?;
            }
            let clear = (s + 2..n).all(|k| red.w[s][k] == 0 && red.w[s + 1][k] == 0);
            if clear {
                break;
            }
        }
        match red.w[s][s + 1] {
            1 => {}
            -1 => red.swap(s, s + 1),
            other => {
                // det = pivot^2 * det(rest) = 1 rules this out for valid input
                unreachable!("pivot {other} in unimodular skew form")
            }
        }
    }
    let basis = IntMatrix::from_rows(&red.p).expect("square");
    let basis_determinant = basis
        .determinant()
        .to_i64()
        .expect("unimodular basis has determinant of absolute value 1");
    Ok(SymplecticNormalForm {
        basis,
        genus: report.genus,
        basis_determinant,
    })
}
