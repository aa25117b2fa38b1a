//! Seifert matrices of satellite knots from a pattern, a companion and a
//! winding number.

use thiserror::Error;

use crate::intmat::IntMatrix;
use crate::seifert::{torus_knot_seifert, SeifertError, SeifertMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatelliteError {
    #[error("invalid satellite: {0}")]
    InvalidSpec(#[from] SeifertError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatelliteSpec {
    pub pattern: SeifertMatrix,
    pub companion: SeifertMatrix,
    pub winding: usize,
}

impl SatelliteSpec {
    pub fn new(pattern: SeifertMatrix, companion: SeifertMatrix, winding: usize) -> Self {
        Self {
            pattern,
            companion,
            winding,
        }
    }

    pub fn dim(&self) -> usize {
        self.pattern.dim() + self.winding * self.companion.dim()
    }
}

/// Block matrix `M ⊕ G` where `G` is an `n x n` grid of copies of `N`
/// (on and above the block diagonal) and `N^T` (below it).
pub fn satellite_seifert(spec: &SatelliteSpec) -> Result<SeifertMatrix, SatelliteError> {
    let m = spec.pattern.matrix();
    let nm = spec.companion.matrix();
    let (a, b) = (m.dim(), nm.dim());
    let out = IntMatrix::from_fn(spec.dim(), |i, j| {
        if i < a || j < a {
            return if i < a && j < a { m.get(i, j) } else { 0 };
        }
        let (i, j) = (i - a, j - a);
        let (bi, bj) = (i / b, j / b);
        let (r, c) = (i % b, j % b);
        if bi <= bj {
            nm.get(r, c)
        } else {
            nm.get(c, r)
        }
    });
    Ok(SeifertMatrix::new(out)?)
}

/// `(p, q)` cable of `companion`: torus pattern with winding `p`.
pub fn cable_spec(p: i64, q: i64, companion: SeifertMatrix) -> Result<SatelliteSpec, SatelliteError> {
    let pattern = torus_knot_seifert(p, q)?;
    Ok(SatelliteSpec::new(pattern, companion, p as usize))
}
