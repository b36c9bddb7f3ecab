//! Design and analysis of finite frames in `ℂ^d`.
//!
//! A frame here is an ordered list of `m` complex vectors spanning `ℂ^d`.
//! The crate provides the standard objects attached to such a list — the
//! synthesis operator `T`, the frame operator `S = TT*`, and the Gram matrix
//! `G = T*T` — together with the machinery needed to design frames and to
//! reason about convex functionals of their frame operators:
//!
//! - [`majorization`]: the majorization preorder on real vectors, the
//!   feasibility polytopes attached to a norm profile, their majorization-minimal
//!   elements, and the strict-descent pinch step.
//! - [`frame`]: frame/Gram operators, frame bounds, spectra, the vector-vector
//!   distance, and orthogonal-partition (irreducibility) analysis.
//! - [`potential`]: convex potentials `P_f(S) = tr f(S)`, sharp lower/upper
//!   bounds for prescribed trace or prescribed norms, the Welch ratio, cyclic
//!   inner-product sums, and a randomized local-minimality probe.
//! - [`synthesis`]: construction of frames with prescribed frame-operator
//!   spectrum and prescribed squared norms (a Schur–Horn style Givens chain),
//!   tight frames, and the global-minimizer structure.
//! - [`cgu`]: cyclic-group geometrically uniform frames — orbit frames,
//!   repeated-profile irregularity, and orbit minimizers.
//! - [`perturb`]: realizing a perturbed frame operator by a nearby frame,
//!   either freely (polar transport) or with all vector norms held fixed
//!   (a Gauss–Newton solve for a unitary matching a Gram diagonal).
//!
//! Squared-norm convention: every interface that takes a norm profile `a`
//! expects squared norms, `aᵢ = ‖φᵢ‖²`.

pub mod cgu;
pub mod error;
pub mod frame;
mod linalg;
pub mod majorization;
pub mod perturb;
pub mod potential;
pub mod synthesis;
#[cfg(test)]
pub(crate) mod testutil;
pub mod tol;

pub use error::{Error, Result};
pub use frame::{Frame, FrameBounds, HermitianOperator, SynthesisMatrix};
pub use majorization::{NormProfile, Spectrum};
pub use potential::Potential;

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;
