//! Crate-wide error type.

use thiserror::Error;

use crate::perturb::SectionSolveReport;

/// Errors produced by frame construction, analysis, and perturbation routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed input: non-finite entries, bad shapes, violated preconditions.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The vector is already the majorization-minimal element of its
    /// constraint set; no strictly smaller element exists.
    #[error("no majorization descent: the vector is already minimal in its constraint set")]
    NoDescent,

    /// No transfer index admits a pinch of the requested size.
    #[error("pinch step of size {epsilon} too large for every admissible index; shrink epsilon")]
    StepTooLarge { epsilon: f64 },

    /// The prescribed (spectrum, squared-norm) pair violates the partial-sum
    /// dominance conditions, so no frame realizes it.
    #[error("infeasible spectrum/norm pair: {0}")]
    Infeasible(String),

    /// A tight frame with this profile does not exist: the profile has
    /// nonzero irregularity, so the constant spectrum is out of reach.
    #[error("tight frame infeasible: profile has irregularity {irregularity} > 0")]
    InfeasibleTight { irregularity: usize },

    /// An exhaustive enumeration would exceed the allowed budget.
    #[error("enumeration budget exceeded: {requested:.3e} tuples > {budget:.3e}")]
    BudgetExceeded { requested: f64, budget: f64 },

    /// The generator does not have the claimed order.
    #[error("invalid group order: U^{order} deviates from the identity by {deviation:.3e}")]
    InvalidGroupOrder { order: usize, deviation: f64 },

    /// A proper power of the generator is already the identity.
    #[error("generator not primitive: U^{power} is within {deviation:.3e} of the identity")]
    NonPrimitiveGroup { power: usize, deviation: f64 },

    /// No orthonormal seed family compatible with the group action was found.
    #[error("no compatible orthonormal seed basis for this group")]
    InfeasibleBasis,

    /// The frame operator is rank deficient, so the polar co-isometry is not
    /// unique; the transport refuses to guess.
    #[error("frame operator is rank deficient; polar transport undefined")]
    DegeneratePolar,

    /// The diagonal section solve stalled before reaching the tolerance.
    /// Carries the solver telemetry at the point of failure.
    #[error(
        "section solve did not converge: residual {} after {} iterations",
        report.residual,
        report.iterations
    )]
    NoConvergence { report: SectionSolveReport },
}

pub type Result<T> = std::result::Result<T, Error>;
