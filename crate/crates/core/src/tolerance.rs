//! Numerical thresholds shared by the floating-point parts of the crate.

/// Tolerances used by inertia counting, root filtering and angle exclusion.
///
/// `sym` and `zero` are relative: the Hermitian check allows
/// `sym * (1 + max|h_ij|)` of asymmetry, and an eigenvalue counts as zero when
/// its magnitude is at most `zero * max|λ|`. `det`, `root` and `jump` are
/// absolute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub sym: f64,
    pub zero: f64,
    pub det: f64,
    /// Allowed `||r| - 1|` for a polynomial root to count as lying on the unit circle.
    pub root: f64,
    /// Exclusion radius (radians) around jump angles and roots of unity.
    pub jump: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            sym: 1e-9,
            zero: 1e-9,
            det: 1e-12,
            root: 1e-8,
            jump: 1e-6,
        }
    }
}
