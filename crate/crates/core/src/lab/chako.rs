use super::{build_b, combo, real_matrix, LabError};
use crate::hermitian::{Complex, ComplexMatrix};
use crate::invariants::UnitCirclePoint;
use crate::seifert::SeifertMatrix;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct ChakoReport {
    pub total_signature: i64,
    pub b_signature: i64,
    /// Signatures of the `(N - N^T)` multiples, `k = 1..n-1`.
    pub summand_signatures: Vec<i64>,
    /// `max |(ω^n N - N^T)/(ω^n - 1) - E / (2 - ω^n - conj ω^n)|`.
    pub first_term_deviation: f64,
    /// As printed, with `1/(2 - ω - conj ω)` and `(1 - ω^n) N^T`.
    pub first_term_literal_deviation: f64,
    pub literal_upper_index: usize,
    pub used_upper_index: usize,
    pub literal_dim: usize,
    pub b_dim: usize,
}

impl ChakoReport {
    pub fn passed(&self) -> bool {
        self.total_signature == self.b_signature
            && self.summand_signatures.iter().all(|&s| s == 0)
            && self.first_term_deviation <= 1e-10
    }
}

/// Direct-sum form `(ω^n N - N^T)/(ω^n - 1) ⊕ ⨁_k Δ_k (N - N^T)` with
/// `Δ_k = (ω^{k+1} - 1) / ((ω - 1)(ω^k - 1))`, compared with `B`.
///
/// The sum runs over `k = 1..n-1`, which is what makes the dimension match `B`.
pub fn chako_form(
    companion: &SeifertMatrix,
    n: usize,
    w: UnitCirclePoint,
    tol: &Tolerances,
) -> Result<(ComplexMatrix, ChakoReport), LabError> {
    if n == 0 {
        return Err(LabError::OutOfRange("Cha-Ko form needs n >= 1".into()));
    }
    if let Some(k) = (1..=n).find(|&k| w.pow(k as i64).is_one()) {
        return Err(LabError::RootOfUnityExcluded { angle: w.angle(), order: k });
    }
    let nm = real_matrix(companion.matrix());
    let nt = nm.transpose();
    let d = nm.dim();
    let one = Complex::new(1.0, 0.0);
    let om = w.omega();
    let wn = w.pow(n as i64).omega();
    let first = combo(&nm, &nt, wn, -one).scaled(one / (wn - one));
    let e = combo(&nm, &nt, one - wn, one - wn.conj());
    let first_term_deviation = first.max_abs_diff(&e.scaled(one / (2.0 - 2.0 * wn.re)));
    let literal = combo(&nm, &nt, one - wn, one - wn).scaled(one / (2.0 - 2.0 * om.re));
    let first_term_literal_deviation = first.max_abs_diff(&literal);

    let skew = combo(&nm, &nt, one, -one);
    let mut total = first.clone();
    let mut summand_signatures = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let wk = w.pow(k as i64).omega();
        let wk1 = w.pow(k as i64 + 1).omega();
        let delta = (wk1 - one) / ((om - one) * (wk - one));
        let term = skew.scaled(delta).hermitian_part();
        summand_signatures.push(term.inertia_with(tol).expect("Hermitian part").signature());
        total = total.direct_sum(&term);
    }
    let total = total.hermitian_part();
    let b = build_b(companion, n, w)?;
    let report = ChakoReport {
        total_signature: total.inertia_with(tol).expect("Hermitian part").signature(),
        b_signature: b.inertia_with(tol).expect("B is Hermitian").signature(),
        summand_signatures,
        first_term_deviation,
        first_term_literal_deviation,
        literal_upper_index: n,
        used_upper_index: n - 1,
        literal_dim: (n + 1) * d,
        b_dim: b.dim(),
    };
    debug_assert_eq!(total.dim(), report.b_dim);
    Ok((total, report))
}
