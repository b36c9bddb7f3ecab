//! Numeric tolerances shared across the crate.
//!
//! All values are calibrated for double precision on problems of desk scale
//! (dimensions and vector counts in the tens to low hundreds).

/// Relative tolerance for equality of totals (trace / sum comparisons).
pub const SUM_REL: f64 = 1e-10;

/// Absolute slack for partial-sum dominance checks in majorization.
pub const DOMINANCE_ABS: f64 = 1e-12;

/// Maximum entrywise deviation from the conjugate transpose for a matrix to
/// count as Hermitian.
pub const HERMITIAN: f64 = 1e-12;

/// Eigenvalues of nominally positive-semidefinite operators are clamped to 0
/// when they fall in `[-EIG_CLAMP, 0)`; anything below is rejected.
pub const EIG_CLAMP: f64 = 1e-10;

/// Maximum entrywise deviation of `U*U` from the identity for `U` to count
/// as unitary.
pub const UNITARY: f64 = 1e-10;

/// Relative threshold on the spectrum for rank deficiency and tightness of
/// frame bounds.
pub const SPECTRUM_REL: f64 = 1e-10;

/// Absolute tolerance on squared norms in membership checks.
pub const NORM_ABS: f64 = 1e-9;

/// Two totals are equal up to [`SUM_REL`], with an absolute floor of 1 so the
/// check stays meaningful near zero.
pub fn sums_equal(x: f64, y: f64) -> bool {
    (x - y).abs() <= SUM_REL * x.abs().max(y.abs()).max(1.0)
}
