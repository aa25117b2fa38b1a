use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::poly::{IntPolynomial, PolyError};

/// A root `e^{i angle}` of an integer polynomial, `angle ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleRoot {
    pub angle: f64,
    pub multiplicity: usize,
}

/// Eigenvalues through a bounded Schur iteration. Some companion matrices
/// (`t^4 - t^2 + 1`) stall the shifted QR step, so on failure the matrix is
/// conjugated by a Householder reflection and retried.
fn companion_eigenvalues(companion: DMatrix<f64>) -> Vec<Complex64> {
    let deg = companion.nrows();
    for attempt in 0..8u32 {
        let m = if attempt == 0 {
            companion.clone()
        } else {
            let v = DVector::<f64>::from_fn(deg, |i, _| ((i as u32 + 1) * (attempt + 2)) as f64 % 7.0 + 1.0);
            let h = DMatrix::<f64>::identity(deg, deg) - (&v * v.transpose()) * (2.0 / v.norm_squared());
            &h * &companion * &h
        };
        if let Some(schur) = Schur::try_new(m, f64::EPSILON, 10_000) {
            return schur.complex_eigenvalues().iter().copied().collect();
        }
    }
    panic!("Schur iteration failed to converge on a degree {deg} companion matrix");
}

/// Roots of a square-free polynomial of positive degree, from the eigenvalues
/// of its companion matrix, each polished by one Newton step.
fn simple_roots(p: &IntPolynomial) -> Vec<Complex64> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    let c: Vec<f64> = p
        .coeffs().iter().map(|c| c.to_f64().expect("coefficient fits in f64")).collect();
    let lead: f64 = c[deg];
    let companion = DMatrix::<f64>::from_fn(deg, deg, |i: usize, j: usize| -> f64 {
        if i == 0 {
            -c[deg - 1 - j] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let dp = p.derivative();
    companion_eigenvalues(companion)
        .iter()
        .map(|&z| {
            let d = dp.eval_complex(z);
            if d.norm() == 0.0 {
                z
            } else {
                z - p.eval_complex(z) / d
            }
        })
        .collect()
}

/// Roots on the unit circle (`||r| - 1| <= tau_root`) with multiplicities,
/// sorted by angle.
pub fn unit_circle_roots(p: &IntPolynomial, tau_root: f64) -> Result<Vec<CircleRoot>, PolyError> {
    let mut out = Vec::new();
    for (factor, multiplicity) in p.squarefree_decomposition()? {
        for r in simple_roots(&factor) {
            if (r.norm() - 1.0).abs() <= tau_root {
                out.push(CircleRoot {
                    angle: r.arg().rem_euclid(TAU),
                    multiplicity,
                });
            }
        }
    }
    out.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    Ok(out)
}
