use std::f64::consts::TAU;

use knotsig::intmat::{bareiss_determinant, IntMatrix};
use knotsig::invariants::{alexander_determinant, alexander_poly, signature_profile, tl_signature, UnitCirclePoint};
use knotsig::seifert::symplectic_normalize;
use knotsig::{satellite_seifert, torus_knot_seifert, IntPolynomial, SatelliteSpec, SeifertMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Unimodular `Q` as a product of elementary row additions and swaps.
fn unimodular(dim: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut q = IntMatrix::identity(dim).rows();
    for &(a, b, c) in ops {
        let (a, b) = (a % dim, b % dim);
        if a == b {
            q.swap(a, (a + 1) % dim);
            continue;
        }
        for j in 0..dim {
            q[b][j] += c * q[a][j];
        }
    }
    IntMatrix::from_rows(&q).unwrap()
}

/// Seifert matrix with skew part `Q J Q^T` and symmetric part from `sym`.
fn seifert_from(genus: usize, ops: &[(usize, usize, i64)], sym: &[i64]) -> SeifertMatrix {
    let dim = 2 * genus;
    let q = unimodular(dim, ops);
    let k = q.checked_mul(&IntMatrix::standard_symplectic(genus)).unwrap().checked_mul(&q.transpose()).unwrap();
    let mut idx = 0;
    let mut next = || {
        idx += 1;
        sym[idx % sym.len()]
    };
    let mut a = IntMatrix::zeros(dim);
    for i in 0..dim {
        a.set(i, i, next());
        for j in i + 1..dim {
            let s = next();
            a.set(i, j, k.get(i, j) + s);
            a.set(j, i, s);
        }
    }
    SeifertMatrix::new(a).unwrap()
}

fn seifert_strategy() -> impl Strategy<Value = SeifertMatrix> {
    (
        1usize..=3,
        prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..8),
        prop::collection::vec(-2i64..=2, 1..12),
    )
        .prop_map(|(g, ops, sym)| seifert_from(g, &ops, &sym))
}

fn angle_strategy() -> impl Strategy<Value = f64> {
    0.01f64..(TAU - 0.01)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symplectic_basis_certifies(a in seifert_strategy()) {
        let nf = symplectic_normalize(a.matrix()).unwrap();
        prop_assert!(nf.verify(a.matrix()));
        prop_assert_eq!(nf.genus, a.genus());
    }

    #[test]
    fn conjugate_angle_same_signature(a in seifert_strategy(), x in angle_strategy()) {
        let w = UnitCirclePoint::new(x);
        let near_root = alexander_poly(&a).eval_complex(w.omega()).norm() < 1e-6;
        prop_assume!(!near_root);
        prop_assert_eq!(tl_signature(&a, w), tl_signature(&a, w.conj()));
        prop_assert_eq!(tl_signature(&a.transpose(), w), tl_signature(&a, w));
    }

    #[test]
    fn profile_values_even(a in seifert_strategy()) {
        if let Ok(p) = signature_profile(&a, 90) {
            prop_assert!(p.samples.iter().all(|&(_, s)| s % 2 == 0));
            prop_assert!(p.arcs.iter().all(|arc| arc.signature.abs() as usize <= a.dim()));
        }
    }

    #[test]
    fn alexander_interpolation_matches_pointwise(a in seifert_strategy(), t in -6i64..=6) {
        let m = a.matrix();
        let d = m.dim();
        let rows = (0..d).map(|i| (0..d).map(|j| BigInt::from(t * m.get(i, j) - m.get(j, i))).collect()).collect();
        prop_assert_eq!(alexander_determinant(m).eval(&BigInt::from(t)), bareiss_determinant(rows));
    }

    #[test]
    fn alexander_is_symmetric_with_unit_value(a in seifert_strategy()) {
        let p = alexander_poly(&a);
        let mut rev = p.coeffs().to_vec();
        rev.reverse();
        prop_assert_eq!(IntPolynomial::new(rev).normalize_unit().unwrap(), p.clone());
        prop_assert_eq!(alexander_determinant(a.matrix()).eval(&BigInt::from(1)), BigInt::from(1));
    }

    #[test]
    fn satellites_are_valid(p in seifert_strategy(), c in seifert_strategy(), n in 0usize..=3) {
        let spec = SatelliteSpec::new(p.clone(), c.clone(), n);
        let sat = satellite_seifert(&spec).unwrap();
        prop_assert_eq!(sat.dim(), p.dim() + n * c.dim());
    }
}

#[test]
fn torus_alexander_matches_closed_quotient() {
    let t_pow = |k: usize| -> IntPolynomial {
        let mut c = vec![0; k + 1];
        c[0] = -1;
        c[k] = 1;
        IntPolynomial::from_i64(&c)
    };
    for (p, q) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5), (2, 9), (3, 7)] {
        let num = &t_pow(p * q) * &t_pow(1);
        let den = &t_pow(p) * &t_pow(q);
        let want = num.exact_div(&den).unwrap().normalize_unit().unwrap();
        let got = alexander_poly(&torus_knot_seifert(p as i64, q as i64).unwrap());
        assert_eq!(got, want, "T({p}, {q})");
    }
}
