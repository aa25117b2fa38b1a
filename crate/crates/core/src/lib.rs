//! Seifert-matrix knot invariants: Tristram–Levine signatures, Alexander
//! polynomials, satellite constructions, and a congruence-by-congruence replay
//! of the satellite signature formula.

pub mod hermitian;
pub mod intmat;
pub mod invariants;
pub mod lab;
pub mod poly;
pub mod satellite;
pub mod seifert;
pub mod tolerance;

pub use hermitian::{Complex, ComplexMatrix, Inertia, MatrixError};
pub use intmat::IntMatrix;
pub use poly::{IntPolynomial, PolyError};
pub use satellite::{cable_spec, satellite_seifert, SatelliteError, SatelliteSpec};
pub use seifert::{torus_knot_seifert, validate, Catalog, SeifertError, SeifertMatrix};
pub use tolerance::Tolerances;
