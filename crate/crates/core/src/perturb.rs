//! Realizing a perturbed frame operator by a frame close to the original.
//!
//! Two transports are provided. Polar transport writes `T = S^{1/2} W` for a
//! co-isometry `W` and replaces the square root: `ψ_i = S_target^{1/2} W e_i`.
//! It hits the target operator exactly and moves each vector by at most
//! `‖S^{1/2} − S_target^{1/2}‖ ≤ ‖S − S_target‖^{1/2}`, but gives up control
//! of the individual norms.
//!
//! Norm-preserving transport additionally restores every squared norm by
//! composing with a unitary `U` close to the identity: with
//! `G_i = W* S_target W`, the Gram matrix of `ψ_j = (S_target^{1/2} W U) e_j`
//! is `U* G_i U`, so it suffices to solve `diag(U* G_i U) = diag(G)` for `U`.
//! That diagonal equation is solved by a damped Gauss–Newton iteration on the
//! unitary group with Cayley retractions; its differential at `U` in an
//! anti-Hermitian direction `X` is `diag([U*GU, X])`, whose image is the
//! zero-sum hyperplane exactly when the support graph of `G` is connected —
//! the irreducibility gate exposed by [`section_rank_check`].

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{Frame, HermitianOperator};
use crate::linalg;
use crate::tol;
use crate::{C64, CMatrix};

/// Default residual tolerance for the section solve.
pub const DEFAULT_SOLVE_TOL: f64 = 1e-10;
/// Default iteration cap for the section solve.
pub const DEFAULT_MAX_ITER: usize = 100;
/// Most halvings tried per Gauss–Newton step before declaring a stall.
const MAX_HALVINGS: usize = 20;
/// Relative singular-value cutoff for the pseudoinverse subproblem.
const SV_CUTOFF_REL: f64 = 1e-12;

/// Telemetry for one diagonal section solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionSolveReport {
    /// Accepted Gauss–Newton iterations.
    pub iterations: usize,
    /// Final ∞-norm of `diag(U*GU) − target`.
    pub residual: f64,
    /// Operator-norm distance of the returned `U` from the identity.
    pub unitary_distance: f64,
    pub converged: bool,
    /// Set when the Gram support graph was not connected; the solve is still
    /// attempted but the differential cannot reach every direction.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reducible_warning: bool,
}

/// Frame operator, its square root and inverse square root, and the polar
/// co-isometry `W = S^{-1/2} T`. Rejects rank-deficient frames.
fn polar_parts(frame: &Frame) -> Result<(HermitianOperator, CMatrix)> {
    let s = frame.frame_operator();
    let (values, vectors) = linalg::hermitian_eigen_desc(s.matrix());
    let top = values[0].max(0.0);
    let bottom = values[values.len() - 1];
    if bottom <= tol::SPECTRUM_REL * top {
        return Err(Error::DegeneratePolar);
    }
    let inv_sqrt = {
        let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            values.len(),
            values.iter().map(|&l| C64::new(1.0 / l.sqrt(), 0.0)),
        ));
        &vectors * diag * vectors.adjoint()
    };
    let t = frame.synthesis_matrix().into_matrix();
    let w = inv_sqrt * t;
    Ok((s, w))
}

/// Moves `frame` onto the target frame operator along the polar factor:
/// `ψ_i = S_target^{1/2} W e_i`. The result satisfies
/// `S^Ψ = S_target` exactly and
/// `d(F, Ψ) ≤ ‖S^F − S_target‖^{1/2}`; vector norms are not controlled.
pub fn polar_transport(frame: &Frame, s_target: &HermitianOperator) -> Result<Frame> {
    if s_target.dim() != frame.dim() {
        return Err(Error::InvalidInput(format!(
            "target operator is {}x{} but the frame lives in dimension {}",
            s_target.dim(),
            s_target.dim(),
            frame.dim()
        )));
    }
    s_target.spectrum()?; // PSD gate
    let (s, w) = polar_parts(frame)?;
    if !tol::sums_equal(s_target.trace(), s.trace()) {
        return Err(Error::InvalidInput(format!(
            "trace mismatch: target {} vs frame operator {}",
            s_target.trace(),
            s.trace()
        )));
    }
    let t_new = linalg::hermitian_sqrt(s_target.matrix()) * w;
    Frame::from_synthesis(&t_new)
}

/// The differential of `U ↦ diag(U*GU)` along the curve `t ↦ U·cayley(tX)`
/// at `t = 0`: the real vector `diag([U*GU, X])`. Its entries always sum to
/// zero (commutators are traceless).
pub fn section_differential(
    g: &HermitianOperator,
    u: &CMatrix,
    x: &CMatrix,
) -> Result<Vec<f64>> {
    let m = g.dim();
    if u.nrows() != m || u.ncols() != m || x.nrows() != m || x.ncols() != m {
        return Err(Error::InvalidInput(format!(
            "expected {m}x{m} matrices, got U {}x{} and X {}x{}",
            u.nrows(),
            u.ncols(),
            x.nrows(),
            x.ncols()
        )));
    }
    let deviation = linalg::max_abs_entry(&(x + x.adjoint()));
    if deviation > tol::UNITARY {
        return Err(Error::InvalidInput(format!(
            "direction is not anti-Hermitian: max |X + X*| entry is {deviation:.3e}"
        )));
    }
    let conj = u.adjoint() * g.matrix() * u;
    let comm = &conj * x - x * &conj;
    Ok((0..m).map(|i| comm[(i, i)].re).collect())
}

/// Connected components of the support graph `|G_{ij}| > tol`.
fn support_components(g: &CMatrix, threshold: f64) -> usize {
    let m = g.nrows();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..m {
        for j in i + 1..m {
            if g[(i, j)].norm() > threshold {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    (0..m)
        .map(|i| find(&mut parent, i))
        .collect::<std::collections::BTreeSet<_>>()
        .len()
}

/// Columns of the differential `X ↦ diag([M, X])` over the off-diagonal
/// anti-Hermitian basis: for each pair `i < j` a real part column
/// `2·Re(M_{ij})·(e_j − e_i)` and an imaginary part column
/// `2·Im(M_{ij})·(e_j − e_i)`.
fn differential_matrix(conj: &CMatrix) -> DMatrix<f64> {
    let m = conj.nrows();
    let pairs = m * (m - 1) / 2;
    let mut a = DMatrix::<f64>::zeros(m, 2 * pairs);
    let mut col = 0;
    for i in 0..m {
        for j in i + 1..m {
            let entry = conj[(i, j)];
            a[(i, col)] = -2.0 * entry.re;
            a[(j, col)] = 2.0 * entry.re;
            a[(i, col + 1)] = -2.0 * entry.im;
            a[(j, col + 1)] = 2.0 * entry.im;
            col += 2;
        }
    }
    a
}

/// Assemble the anti-Hermitian step from the pair coefficients produced by
/// the least-squares solve.
fn assemble_direction(m: usize, coeffs: &DVector<f64>) -> CMatrix {
    let mut x = CMatrix::zeros(m, m);
    let mut col = 0;
    for i in 0..m {
        for j in i + 1..m {
            let z = C64::new(coeffs[col], coeffs[col + 1]);
            x[(i, j)] = z;
            x[(j, i)] = -z.conj();
            col += 2;
        }
    }
    x
}

/// Does the differential of `U ↦ diag(U*GU)` at the identity reach the whole
/// zero-sum hyperplane? True iff the support graph of `G` is connected;
/// cross-validated against the numerical rank of the differential, which
/// must be `m − 1` exactly in the connected case.
pub fn section_rank_check(g: &HermitianOperator) -> bool {
    let m = g.dim();
    let threshold = tol::SPECTRUM_REL
        * g.diagonal()
            .iter()
            .cloned()
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
    let connected = support_components(g.matrix(), threshold) == 1;

    let rank = if m == 1 {
        0
    } else {
        let a = differential_matrix(g.matrix());
        let svd = a.svd(false, false);
        let top = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        if top == 0.0 {
            0
        } else {
            svd.singular_values
                .iter()
                .filter(|&&s| s > 1e-10 * top)
                .count()
        }
    };
    connected && rank == m - 1
}

fn diag_re(m: &CMatrix) -> Vec<f64> {
    (0..m.nrows()).map(|i| m[(i, i)].re).collect()
}

fn residual_inf(conj: &CMatrix, target: &[f64]) -> f64 {
    diag_re(conj)
        .iter()
        .zip(target)
        .map(|(d, t)| (t - d).abs())
        .fold(0.0, f64::max)
}

/// Solves `diag(U*GU) = target` for a unitary `U` near the identity by damped
/// Gauss–Newton with Cayley retractions.
///
/// Each step solves the minimum-norm anti-Hermitian `X` with
/// `diag([U*GU, X]) ≈ target − diag(U*GU)` through a pseudoinverse (singular
/// values below `1e-12·σ_max` truncated), retracts `U ← U·cayley(X)`, and
/// halves `X` while the residual fails to decrease. The solver is local:
/// targets far from `diag(G)` are the caller's risk.
pub fn diagonal_section_solve(
    g: &HermitianOperator,
    target: &[f64],
    tolerance: f64,
    max_iter: usize,
) -> Result<(CMatrix, SectionSolveReport)> {
    let m = g.dim();
    if target.len() != m {
        return Err(Error::InvalidInput(format!(
            "target has length {} but G is {m}x{m}",
            target.len()
        )));
    }
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(Error::InvalidInput("solver tolerance must be positive".into()));
    }
    let target_sum: f64 = target.iter().sum();
    if !tol::sums_equal(target_sum, g.trace()) {
        return Err(Error::InvalidInput(format!(
            "target diagonal sums to {} but tr(G) = {}",
            target_sum,
            g.trace()
        )));
    }
    let reducible_warning = !section_rank_check(g);

    let mut u = CMatrix::identity(m, m);
    let mut conj = g.matrix().clone();
    let mut residual = residual_inf(&conj, target);
    let mut iterations = 0;

    while residual > tolerance && iterations < max_iter {
        let a = differential_matrix(&conj);
        let rhs = DVector::from_iterator(
            m,
            diag_re(&conj).iter().zip(target).map(|(d, t)| t - d),
        );
        let svd = a.svd(true, true);
        let top = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let cutoff = (SV_CUTOFF_REL * top).max(f64::MIN_POSITIVE);
        let coeffs = svd
            .solve(&rhs, cutoff)
            .map_err(|e| Error::InvalidInput(format!("least-squares subproblem failed: {e}")))?;
        let step = assemble_direction(m, &coeffs);

        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let candidate = &u * linalg::cayley(&step.scale(scale));
            let candidate_conj = candidate.adjoint() * g.matrix() * &candidate;
            let candidate_residual = residual_inf(&candidate_conj, target);
            if candidate_residual < residual {
                u = candidate;
                conj = candidate_conj;
                residual = candidate_residual;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        iterations += 1;
        if !accepted {
            break; // stalled: no damping level made progress
        }
    }

    let report = SectionSolveReport {
        iterations,
        residual,
        unitary_distance: linalg::operator_norm(&(&u - CMatrix::identity(m, m))),
        converged: residual <= tolerance,
        reducible_warning,
    };
    if report.converged {
        Ok((u, report))
    } else {
        Err(Error::NoConvergence { report })
    }
}

/// Moves `frame` onto the target frame operator while keeping every vector
/// norm: `ψ_j = (S_target^{1/2} W U) e_j` with `U` from
/// [`diagonal_section_solve`] applied to `G_i = W* S_target W` and the
/// original Gram diagonal as target.
///
/// On success `‖ψ_j‖² = ‖φ_j‖²` within the solver tolerance,
/// `S^Ψ = S_target`, and
/// `d(F, Ψ) ≤ ‖S^{1/2} − S_target^{1/2}‖ + ‖S_target^{1/2}‖·‖I − U‖`.
pub fn norm_preserving_transport(
    frame: &Frame,
    s_target: &HermitianOperator,
    tolerance: f64,
) -> Result<(Frame, SectionSolveReport)> {
    if s_target.dim() != frame.dim() {
        return Err(Error::InvalidInput(format!(
            "target operator is {}x{} but the frame lives in dimension {}",
            s_target.dim(),
            s_target.dim(),
            frame.dim()
        )));
    }
    s_target.spectrum()?; // PSD gate
    let (s, w) = polar_parts(frame)?;
    if !tol::sums_equal(s_target.trace(), s.trace()) {
        return Err(Error::InvalidInput(format!(
            "trace mismatch: target {} vs frame operator {}",
            s_target.trace(),
            s.trace()
        )));
    }
    let frame_reducible = !frame.is_irreducible(None);

    let g_target = HermitianOperator::from_product(w.adjoint() * s_target.matrix() * &w);
    let wanted_diag = frame.squared_norms();
    match diagonal_section_solve(&g_target, &wanted_diag, tolerance, DEFAULT_MAX_ITER) {
        Ok((u, mut report)) => {
            report.reducible_warning |= frame_reducible;
            let t_new = linalg::hermitian_sqrt(s_target.matrix()) * w * u;
            Ok((Frame::from_synthesis(&t_new)?, report))
        }
        Err(Error::NoConvergence { mut report }) => {
            report.reducible_warning |= frame_reducible;
            Err(Error::NoConvergence { report })
        }
        Err(other) => Err(other),
    }
}
