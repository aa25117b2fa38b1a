//! Tristram–Levine signatures, Alexander polynomials, their unit-circle roots
//! and signature profiles.

mod profile;
mod roots;

pub use profile::{fmt_g12, signature_profile, signature_profile_with, Arc, ProfileError, SignatureProfile};
pub use roots::{unit_circle_roots, CircleRoot};

pub use crate::poly::IntPolynomial;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_bigint::BigInt;
use num_traits::One;

use crate::hermitian::{Complex, ComplexMatrix, Inertia};
use crate::intmat::{bareiss_determinant, IntMatrix};
use crate::seifert::SeifertMatrix;
use crate::tolerance::Tolerances;

const SNAP: f64 = 1e-12;

/// `ω = e^{ix}` stored by its angle `x ∈ [0, 2π)`.
///
/// Angles within `1e-12` of a multiple of `π/2` snap onto it, so quarter
/// turns (and in particular `ω = 1`) are represented exactly.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnitCirclePoint {
    angle: f64,
}

impl UnitCirclePoint {
    pub fn new(angle: f64) -> Self {
        assert!(angle.is_finite(), "angle must be finite");
        let mut a = angle.rem_euclid(TAU);
        for k in 0..=4 {
            let q = k as f64 * FRAC_PI_2;
            if (a - q).abs() < SNAP {
                a = if k == 4 { 0.0 } else { q };
            }
        }
        Self { angle: a }
    }

    pub fn one() -> Self {
        Self { angle: 0.0 }
    }

    pub fn minus_one() -> Self {
        Self { angle: PI }
    }

    /// `e^{2πi k/m}`.
    pub fn root_of_unity(k: i64, m: u64) -> Self {
        assert!(m > 0, "order must be positive");
        Self::new(TAU * (k.rem_euclid(m as i64) as f64) / m as f64)
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn is_one(&self) -> bool {
        self.angle == 0.0
    }

    pub fn omega(&self) -> Complex {
        match self.angle {
            a if a == 0.0 => Complex::new(1.0, 0.0),
            a if a == FRAC_PI_2 => Complex::new(0.0, 1.0),
            a if a == PI => Complex::new(-1.0, 0.0),
            a if a == 3.0 * FRAC_PI_2 => Complex::new(0.0, -1.0),
            a => Complex::new(a.cos(), a.sin()),
        }
    }

    /// `ω^n` by angle multiplication.
    pub fn pow(&self, n: i64) -> Self {
        Self::new(self.angle * n as f64)
    }

    pub fn conj(&self) -> Self {
        Self::new(-self.angle)
    }

    /// Distance along the circle to the angle `other`, in `[0, π]`.
    pub fn distance_to_angle(&self, other: f64) -> f64 {
        let d = (self.angle - other).rem_euclid(TAU);
        d.min(TAU - d)
    }
}

/// `(1 - ω) A + (1 - conj ω) A^T` for any square integer matrix.
pub fn hermitian_form(a: &IntMatrix, w: UnitCirclePoint) -> ComplexMatrix {
    let z = Complex::new(1.0, 0.0) - w.omega();
    let zc = z.conj();
    ComplexMatrix::from_fn(a.dim(), |i, j| z * a.get(i, j) as f64 + zc * a.get(j, i) as f64)
}

pub fn tl_form(a: &SeifertMatrix, w: UnitCirclePoint) -> ComplexMatrix {
    hermitian_form(a.matrix(), w)
}

pub fn tl_inertia(a: &SeifertMatrix, w: UnitCirclePoint, tol: &Tolerances) -> Inertia {
    if w.is_one() {
        return Inertia::new(0, 0, a.dim());
    }
    tl_form(a, w)
        .inertia_with(tol)
        .expect("Tristram-Levine form is Hermitian by construction")
}

pub fn tl_signature_with(a: &SeifertMatrix, w: UnitCirclePoint, tol: &Tolerances) -> i64 {
    tl_inertia(a, w, tol).signature()
}

/// Tristram–Levine signature `σ_ω`; zero at `ω = 1`.
pub fn tl_signature(a: &SeifertMatrix, w: UnitCirclePoint) -> i64 {
    tl_signature_with(a, w, &Tolerances::default())
}

/// `det(tA - A^T)` exactly, without normalization.
///
/// The determinant has degree at most `dim`, so it is interpolated from its
/// values at `t = 0..=dim` through Newton forward differences.
pub fn alexander_determinant(a: &IntMatrix) -> IntPolynomial {
    let d = a.dim();
    let values: Vec<BigInt> = (0..=d as i64)
        .map(|t| {
            let rows = (0..d)
                .map(|i| (0..d).map(|j| BigInt::from(t * a.get(i, j) - a.get(j, i))).collect())
                .collect();
            bareiss_determinant(rows)
        })
        .collect();
    // Newton coefficients c_k = Δ^k f(0) / k!
    let mut diffs = values;
    let mut newton = Vec::with_capacity(d + 1);
    let mut factorial = BigInt::one();
    for k in 0..=d {
        if k > 0 {
            factorial *= k;
        }
        newton.push(&diffs[0] / &factorial);
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let mut p = IntPolynomial::zero();
    for k in (0..=d).rev() {
        let shift = IntPolynomial::new(vec![BigInt::from(-(k as i64)), BigInt::one()]);
        p = &(&p * &shift) + &IntPolynomial::constant(newton[k].clone());
    }
    p
}

/// Alexander polynomial `det(tA - A^T)` in canonical unit form.
pub fn alexander_poly(a: &SeifertMatrix) -> IntPolynomial {
    alexander_determinant(a.matrix())
        .normalize_unit()
        .expect("det(tA - A^T) is nonzero for a valid Seifert matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(rows: &[Vec<i64>]) -> SeifertMatrix {
        SeifertMatrix::from_rows(rows).unwrap()
    }

    fn trefoil() -> SeifertMatrix {
        sm(&[vec![-1, 1], vec![0, -1]])
    }

    #[test]
    fn angle_reduction_and_snapping() {
        assert_eq!(UnitCirclePoint::new(TAU).angle(), 0.0);
        assert_eq!(UnitCirclePoint::new(-PI).angle(), PI);
        assert_eq!(UnitCirclePoint::new(PI / 3.0).pow(3).angle(), PI);
        assert!(UnitCirclePoint::new(TAU / 3.0).pow(3).is_one());
        assert_eq!(UnitCirclePoint::minus_one().omega(), Complex::new(-1.0, 0.0));
        assert_eq!(UnitCirclePoint::new(1.0).conj().angle(), TAU - 1.0);
    }

    #[test]
    fn form_at_one_vanishes() {
        let f = tl_form(&trefoil(), UnitCirclePoint::one());
        assert_eq!(f.max_abs(), 0.0);
        assert_eq!(tl_signature(&trefoil(), UnitCirclePoint::one()), 0);
    }

    #[test]
    fn trefoil_at_minus_one() {
        let f = tl_form(&trefoil(), UnitCirclePoint::minus_one());
        let expected = ComplexMatrix::from_real_rows(&[vec![-4.0, 2.0], vec![2.0, -4.0]]);
        assert_eq!(f.max_abs_diff(&expected), 0.0);
        assert_eq!(tl_signature(&trefoil(), UnitCirclePoint::minus_one()), -2);
    }

    #[test]
    fn form_is_exactly_hermitian() {
        let a = sm(&[vec![-1, 1, 0, 1, -1, 0], vec![0, -1, 1, 0, 1, -1], vec![0, 0, -1, 0, 0, 1], vec![0, 0, 0, -1, 1, 0], vec![0, 0, 0, 0, -1, 1], vec![0, 0, 0, 0, 0, -1]]);
        let f = tl_form(&a, UnitCirclePoint::new(0.7361));
        assert_eq!(f.max_abs_diff(&f.adjoint()), 0.0);
    }

    #[test]
    fn unknot_signature_zero() {
        assert_eq!(tl_signature(&SeifertMatrix::unknot(), UnitCirclePoint::new(2.0)), 0);
    }

    #[test]
    fn conjugate_angle_same_signature() {
        for x in [0.3, 1.1, 2.0, 3.0] {
            let w = UnitCirclePoint::new(x);
            assert_eq!(tl_signature(&trefoil(), w), tl_signature(&trefoil(), w.conj()));
        }
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander_poly(&SeifertMatrix::unknot()), IntPolynomial::one());
        assert_eq!(alexander_poly(&trefoil()), IntPolynomial::from_i64(&[1, -1, 1]));
        let fig8 = sm(&[vec![1, 1], vec![0, -1]]);
        assert_eq!(alexander_determinant(fig8.matrix()), IntPolynomial::from_i64(&[-1, 3, -1]));
        assert_eq!(alexander_poly(&fig8), IntPolynomial::from_i64(&[1, -3, 1]));
    }

    #[test]
    fn interpolation_matches_direct_2x2_expansion() {
        // det [[t a - a, t b - c], [t c - b, t d - d]] expanded by hand
        for (a, b, c, d) in [(2, 3, 1, -1), (0, 1, 0, 0), (-3, 2, 1, 5)] {
            let m = IntMatrix::from_rows(&[vec![a, b], vec![c, d]]).unwrap();
            let expected = IntPolynomial::from_i64(&[a * d - c * b, -2 * a * d + b * b + c * c, a * d - b * c]);
            assert_eq!(alexander_determinant(&m), expected);
        }
    }
}
