//! Brute-force checks that do not go through the certificate engine: ideal
//! closures in the finite-dimensional algebra `W(s) = Der(Λ_s)` and regularity
//! tests in `Λ_s`.

pub mod grassmann;
pub mod linalg;
mod regular;
mod witt;

pub use linalg::{Matrix, Subspace};
pub use regular::{is_odd_regular, is_regular_sequence};
pub use witt::{ideal_closure, simplicity_scan, FiniteBasis, ProperIdeal, ScanReport, ScanRow, MAX_S};
