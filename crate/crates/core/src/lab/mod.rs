//! Numerical verification of the satellite signature formula, and a replay of
//! its congruence proof in which every block operation is a sequence of
//! elementary Hermitian congruences.

mod chako;
mod replay;

pub use chako::{chako_form, ChakoReport};
pub use replay::{
    replay, replay_general, replay_step1, replay_step2, replay_step3, sgn_s_closed, BlockSummary, Check,
    Deviation, ProofTrace, Stage, TraceParams,
};

use std::f64::consts::TAU;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::hermitian::{Complex, ComplexMatrix};
use crate::invariants::{alexander_poly, fmt_g12, tl_signature_with, unit_circle_roots, UnitCirclePoint};
use crate::intmat::IntMatrix;
use crate::satellite::{satellite_seifert, SatelliteError, SatelliteSpec};
use crate::seifert::SeifertMatrix;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("omega = e^(i {angle}) makes the prescale factor vanish (root of unity of order {order})")]
    RootOfUnityExcluded { angle: f64, order: usize },
    #[error("the averaging step needs n >= 3, got {0}")]
    RequiresNAtLeast3(usize),
    #[error("{stage}: {check} off by {deviation:e}")]
    StageMismatch {
        stage: String,
        check: String,
        deviation: f64,
    },
    #[error("{0}")]
    OutOfRange(String),
    #[error("prescale factor is an empty sum for n = {n}, u = {u} (needs 2u - n >= 1)")]
    DegeneratePrescale { n: usize, u: usize },
    #[error(transparent)]
    InvalidSpec(#[from] SatelliteError),
}

/// Sign `ε` replacing `N^T` by `ε N^T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn value(self) -> f64 {
        match self {
            Epsilon::Plus => 1.0,
            Epsilon::Minus => -1.0,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }
}

pub(crate) fn real_matrix(m: &IntMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.dim(), |i, j| Complex::new(m.get(i, j) as f64, 0.0))
}

/// Assembles an `n x n` block matrix from `f(block_row, block_col)`.
pub(crate) fn block_matrix(n: usize, d: usize, f: impl Fn(usize, usize) -> ComplexMatrix) -> ComplexMatrix {
    let blocks: Vec<Vec<ComplexMatrix>> = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
    ComplexMatrix::from_fn(n * d, |r, c| blocks[r / d][c / d][(r % d, c % d)])
}

/// `a N + b N^T`.
pub(crate) fn combo(n: &ComplexMatrix, nt: &ComplexMatrix, a: Complex, b: Complex) -> ComplexMatrix {
    &n.scaled(a) + &nt.scaled(b)
}

/// The companion part of the satellite form.
pub fn build_b(companion: &SeifertMatrix, n: usize, w: UnitCirclePoint) -> Result<ComplexMatrix, LabError> {
    build_b_general(companion, n, w, Epsilon::Plus, n)
}

/// `B` with `N^T` replaced by `ε N^T` and the last `n - u` diagonal blocks
/// replaced by `(1 - ω) ε N^T + (1 - conj ω) N`.
pub fn build_b_general(
    companion: &SeifertMatrix,
    n: usize,
    w: UnitCirclePoint,
    eps: Epsilon,
    u: usize,
) -> Result<ComplexMatrix, LabError> {
    if n == 0 {
        return Err(LabError::OutOfRange("B needs n >= 1".into()));
    }
    if u > n {
        return Err(LabError::OutOfRange(format!("u = {u} exceeds n = {n}")));
    }
    let nm = real_matrix(companion.matrix());
    let nt = nm.transpose();
    let one = Complex::new(1.0, 0.0);
    let z = one - w.omega();
    let e = Complex::new(eps.value(), 0.0);
    let off = Complex::new(z.norm_sqr(), 0.0);
    Ok(block_matrix(n, nm.dim(), |i, j| {
        if i == j && i < u {
            combo(&nm, &nt, z, z.conj() * e)
        } else if i == j {
            combo(&nm, &nt, z.conj(), z * e)
        } else if i < j {
            nm.scaled(off)
        } else {
            nt.scaled(off * e)
        }
    }))
}

/// Deterministic angles avoiding roots of unity of order `<= max_order` and
/// the given `avoid` angles, each by more than `tol.jump`.
///
/// Angles follow the golden-ratio rotation `x_k = 2π frac(1/2 + k/φ)`.
pub fn generic_angles(count: usize, max_order: usize, avoid: &[f64], tol: &Tolerances) -> Vec<UnitCirclePoint> {
    let step = (5f64.sqrt() - 1.0) / 2.0;
    let mut out = Vec::with_capacity(count);
    let mut k = 0u64;
    while out.len() < count {
        let x = TAU * (0.5 + k as f64 * step).fract();
        k += 1;
        let w = UnitCirclePoint::new(x);
        let near_root_of_unity = (1..=max_order.max(1)).any(|m| {
            (0..m).any(|j| w.distance_to_angle(TAU * j as f64 / m as f64) <= tol.jump)
        });
        if near_root_of_unity || avoid.iter().any(|&a| w.distance_to_angle(a) <= tol.jump) {
            continue;
        }
        out.push(w);
    }
    out
}

/// Angles of the unit-circle roots of `p(t^m)`, from those of `p`.
pub fn power_root_angles(base: &[f64], m: usize) -> Vec<f64> {
    if m == 0 {
        return Vec::new();
    }
    let mut out: Vec<f64> = base
        .iter()
        .flat_map(|&a| (0..m).map(move |j| (a + TAU * j as f64) / m as f64))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Unit-circle Alexander root angles of a Seifert matrix.
pub fn alexander_root_angles(a: &SeifertMatrix, tol: &Tolerances) -> Vec<f64> {
    unit_circle_roots(&alexander_poly(a), tol.root)
        .expect("Alexander polynomial is nonzero")
        .into_iter()
        .map(|r| r.angle)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Compared { lhs: i64, rhs: i64, equal: bool },
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleRecord {
    pub angle: f64,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub records: Vec<AngleRecord>,
}

impl VerificationReport {
    pub fn compared(&self) -> usize {
        self.records.iter().filter(|r| matches!(r.outcome, Outcome::Compared { .. })).count()
    }

    pub fn skipped(&self) -> usize {
        self.records.len() - self.compared()
    }

    pub fn failures(&self) -> Vec<&AngleRecord> {
        self.records
            .iter()
            .filter(|r| matches!(r.outcome, Outcome::Compared { equal: false, .. }))
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("angle,lhs,rhs,equal,skip_reason\n");
        for r in &self.records {
            let a = fmt_g12(r.angle);
            let _ = match &r.outcome {
                Outcome::Compared { lhs, rhs, equal } => writeln!(out, "{a},{lhs},{rhs},{equal},"),
                Outcome::Skipped(reason) => writeln!(out, "{a},,,,{reason}"),
            };
        }
        out
    }
}

/// `n` uniformly spaced angles `2πk/n`, `k = 0..n`.
pub fn uniform_angles(count: usize) -> Vec<UnitCirclePoint> {
    (0..count).map(|k| UnitCirclePoint::new(TAU * k as f64 / count as f64)).collect()
}

/// Compares `σ_ω(K')` with `σ_ω(K) + σ_{ω^n}(J)` at each angle. Angles within
/// `tol.jump` of a unit-circle root of `Δ_K`, `Δ_J(t^n)` or `Δ_{K'}` are
/// skipped, since a signature is not locally constant there.
pub fn verify_theorem(
    spec: &SatelliteSpec,
    angles: &[UnitCirclePoint],
    tol: &Tolerances,
) -> Result<VerificationReport, LabError> {
    let sat = satellite_seifert(spec)?;
    let n = spec.winding;
    let jumps: [(&str, Vec<f64>); 3] = [
        ("pattern", alexander_root_angles(&spec.pattern, tol)),
        ("companion", power_root_angles(&alexander_root_angles(&spec.companion, tol), n)),
        ("satellite", alexander_root_angles(&sat, tol)),
    ];
    let records = angles
        .par_iter()
        .map(|&w| {
            let near = jumps
                .iter()
                .find(|(_, roots)| roots.iter().any(|&a| w.distance_to_angle(a) <= tol.jump));
            let outcome = match near {
                Some((which, _)) => Outcome::Skipped(format!("near {which} Alexander root")),
                None => {
                    let lhs = tl_signature_with(&sat, w, tol);
                    let rhs = tl_signature_with(&spec.pattern, w, tol)
                        + tl_signature_with(&spec.companion, w.pow(n as i64), tol);
                    Outcome::Compared {
                        lhs,
                        rhs,
                        equal: lhs == rhs,
                    }
                }
            };
            AngleRecord {
                angle: w.angle(),
                outcome,
            }
        })
        .collect();
    Ok(VerificationReport { records })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShinoharaRecord {
    pub n: usize,
    pub lhs: i64,
    /// Parity case formula at `ω = -1`.
    pub parity: i64,
    /// `σ_{-1}(K) + σ_{(-1)^n}(J)`.
    pub theorem: i64,
}

impl ShinoharaRecord {
    pub fn holds(&self) -> bool {
        self.lhs == self.parity && self.parity == self.theorem
    }
}

/// Signatures at `ω = -1` for each winding number in `windings`.
pub fn shinohara_check(
    pattern: &SeifertMatrix,
    companion: &SeifertMatrix,
    windings: impl IntoIterator<Item = usize>,
    tol: &Tolerances,
) -> Result<Vec<ShinoharaRecord>, LabError> {
    let m1 = UnitCirclePoint::minus_one();
    let sk = tl_signature_with(pattern, m1, tol);
    let sj = tl_signature_with(companion, m1, tol);
    windings
        .into_iter()
        .map(|n| {
            let sat = satellite_seifert(&SatelliteSpec::new(pattern.clone(), companion.clone(), n))?;
            Ok(ShinoharaRecord {
                n,
                lhs: tl_signature_with(&sat, m1, tol),
                parity: if n % 2 == 0 { sk } else { sk + sj },
                theorem: sk + tl_signature_with(companion, m1.pow(n as i64), tol),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::tl_form;
    use std::f64::consts::PI;

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::from_rows(&[vec![-1, 1], vec![0, -1]]).unwrap()
    }

    #[test]
    fn b_matches_satellite_form() {
        let m = trefoil();
        let n_mat = SeifertMatrix::from_rows(&[vec![1, 1], vec![0, -1]]).unwrap();
        for n in 1..4 {
            let w = UnitCirclePoint::new(0.9);
            let spec = SatelliteSpec::new(m.clone(), n_mat.clone(), n);
            let full = tl_form(&satellite_seifert(&spec).unwrap(), w);
            let split = tl_form(&m, w).direct_sum(&build_b(&n_mat, n, w).unwrap());
            assert!(full.max_abs_diff(&split) < 1e-14);
        }
    }

    #[test]
    fn general_b_degenerates() {
        let w = UnitCirclePoint::new(2.2);
        assert_eq!(
            build_b_general(&trefoil(), 3, w, Epsilon::Plus, 3).unwrap(),
            build_b(&trefoil(), 3, w).unwrap()
        );
        let minus = build_b_general(&trefoil(), 3, w, Epsilon::Minus, 2).unwrap();
        assert!(minus.times_i().is_hermitian(1e-12));
        assert!(build_b_general(&trefoil(), 3, w, Epsilon::Plus, 1).unwrap().is_hermitian(1e-12));
        assert!(build_b(&trefoil(), 0, w).is_err());
    }

    #[test]
    fn verify_examples() {
        let tol = Tolerances::default();
        let spec = SatelliteSpec::new(SeifertMatrix::unknot(), trefoil(), 1);
        let r = verify_theorem(&spec, &[UnitCirclePoint::minus_one(), UnitCirclePoint::one()], &tol).unwrap();
        assert_eq!(r.records[0].outcome, Outcome::Compared { lhs: -2, rhs: -2, equal: true });
        assert_eq!(r.records[1].outcome, Outcome::Compared { lhs: 0, rhs: 0, equal: true });
        let jump = verify_theorem(&spec, &[UnitCirclePoint::new(PI / 3.0)], &tol).unwrap();
        assert!(matches!(jump.records[0].outcome, Outcome::Skipped(_)));
        assert!(jump.to_csv().starts_with("angle,lhs,rhs,equal,skip_reason\n"));
    }

    #[test]
    fn shinohara_trefoil_odd() {
        let recs = shinohara_check(&trefoil(), &trefoil(), 0..4, &Tolerances::default()).unwrap();
        assert_eq!(recs[1].lhs, -4);
        assert_eq!(recs[2].lhs, -2);
        assert!(recs.iter().all(ShinoharaRecord::holds));
    }

    #[test]
    fn generic_angles_avoid_exclusions() {
        let tol = Tolerances::default();
        let xs = generic_angles(50, 6, &[1.0], &tol);
        assert_eq!(xs.len(), 50);
        assert!(xs.iter().all(|w| w.distance_to_angle(1.0) > tol.jump && !w.is_one()));
        assert_eq!(xs, generic_angles(50, 6, &[1.0], &tol));
    }

    #[test]
    fn power_roots() {
        let r = power_root_angles(&[PI], 2);
        assert!((r[0] - PI / 2.0).abs() < 1e-15 && (r[1] - 3.0 * PI / 2.0).abs() < 1e-15);
    }
}
