use std::f64::consts::TAU;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use super::{alexander_poly, tl_signature_with, unit_circle_roots, CircleRoot, UnitCirclePoint};
use crate::seifert::SeifertMatrix;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProfileError {
    #[error("resolution must be positive")]
    ZeroResolution,
    #[error("signature {got} at angle {angle} disagrees with {expected} elsewhere on arc {arc}")]
    ProfileInconsistent {
        arc: usize,
        angle: f64,
        expected: i64,
        got: i64,
    },
    #[error("odd signature {signature} at angle {angle}")]
    OddSignature { angle: f64, signature: i64 },
}

/// Open arc between consecutive jump candidates, with its constant signature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: f64,
    pub end: f64,
    pub signature: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignatureProfile {
    /// `(angle, σ)` sorted by angle.
    pub samples: Vec<(f64, i64)>,
    pub jumps: Vec<CircleRoot>,
    pub arcs: Vec<Arc>,
}

impl SignatureProfile {
    pub fn jump_angles(&self) -> Vec<f64> {
        self.jumps.iter().map(|j| j.angle).collect()
    }

    /// Value on the arc containing `angle`, or `None` at a jump candidate.
    pub fn value_at(&self, angle: f64) -> Option<i64> {
        let a = UnitCirclePoint::new(angle).angle();
        self.arcs
            .iter()
            .find(|arc| arc.start < a && a < arc.end)
            .map(|arc| arc.signature)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("angle,omega_re,omega_im,signature\n");
        for &(angle, sig) in &self.samples {
            let w = UnitCirclePoint::new(angle).omega();
            let _ = writeln!(out, "{},{},{},{sig}", fmt_g12(angle), fmt_g12(w.re), fmt_g12(w.im));
        }
        for j in &self.jumps {
            let _ = writeln!(out, "# jump {} multiplicity {}", fmt_g12(j.angle), j.multiplicity);
        }
        out
    }
}

/// Shortest round-trip-free rendering with 12 significant digits, `%.12g` style.
pub fn fmt_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn signature_profile(a: &SeifertMatrix, resolution: usize) -> Result<SignatureProfile, ProfileError> {
    signature_profile_with(a, resolution, &Tolerances::default())
}

/// Samples `σ_ω` at arc midpoints and on a uniform grid of `resolution`
/// angles, and checks that it is constant on each arc between unit-circle
/// Alexander roots. Grid angles within `tol.jump` of a root are left out.
pub fn signature_profile_with(
    a: &SeifertMatrix,
    resolution: usize,
    tol: &Tolerances,
) -> Result<SignatureProfile, ProfileError> {
    if resolution == 0 {
        return Err(ProfileError::ZeroResolution);
    }
    let jumps = unit_circle_roots(&alexander_poly(a), tol.root).expect("Alexander polynomial is nonzero");
    let mut bounds = vec![0.0];
    bounds.extend(jumps.iter().map(|j| j.angle));
    bounds.push(TAU);

    let mut angles: Vec<f64> = bounds.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    angles.extend(
        (0..resolution)
            .map(|k| TAU * k as f64 / resolution as f64)
            .filter(|&x| jumps.iter().all(|j| UnitCirclePoint::new(x).distance_to_angle(j.angle) > tol.jump)),
    );
    angles.sort_by(f64::total_cmp);
    angles.dedup();

    let samples: Vec<(f64, i64)> = angles
        .par_iter()
        .map(|&x| (x, tl_signature_with(a, UnitCirclePoint::new(x), tol)))
        .collect();

    for &(angle, signature) in &samples {
        if signature % 2 != 0 {
            return Err(ProfileError::OddSignature { angle, signature });
        }
    }

    let mut arcs: Vec<Arc> = Vec::with_capacity(bounds.len() - 1);
    for (idx, w) in bounds.windows(2).enumerate() {
        let mid = 0.5 * (w[0] + w[1]);
        let expected = samples.iter().find(|s| s.0 == mid).map(|s| s.1).expect("midpoint sampled");
        for &(angle, got) in samples.iter().filter(|s| w[0] < s.0 && s.0 < w[1]) {
            if got != expected {
                return Err(ProfileError::ProfileInconsistent {
                    arc: idx,
                    angle,
                    expected,
                    got,
                });
            }
        }
        arcs.push(Arc {
            start: w[0],
            end: w[1],
            signature: expected,
        });
    }
    Ok(SignatureProfile { samples, jumps, arcs })
}
