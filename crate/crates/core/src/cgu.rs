//! Compound geometrically uniform frames under a cyclic unitary group: orbit
//! frames `{U^s φ_j}`, the repeated-profile irregularity identity, and the
//! orbit minimizer construction.
//!
//! A cyclic group `{U^0, …, U^{n−1}}` with `Uⁿ = I` acting on seed vectors
//! `Φ = {φ_j}` produces the orbit frame `G·Φ`, ordered seed-major so that its
//! squared-norm profile is the seed profile with every entry repeated `n`
//! consecutive times. When `n` divides `d` and an orthonormal seed family
//! `{e_j}` with orthonormal full orbit exists, the orbit of the minimizer
//! structure on the seeds minimizes every convex potential among orbit frames
//! with the same norms.

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::linalg;
use crate::majorization::{self, NormProfile};
use crate::potential::Potential;
use crate::synthesis;
use crate::{C64, CMatrix, CVector};

/// `Uⁿ` must match the identity entrywise within this tolerance.
pub const GROUP_ORDER_TOL: f64 = 1e-9;
/// Proper powers must stay at least this far from the identity.
pub const GROUP_PRIMITIVE_TOL: f64 = 1e-6;
/// Orbit orthonormality tolerance for compatible seed bases.
pub const COMPATIBLE_BASIS_TOL: f64 = 1e-9;

/// A cyclic group of unitaries `{U^0, …, U^{n−1}}` with all elements
/// materialized.
#[derive(Debug, Clone)]
pub struct CyclicUnitaryGroup {
    generator: CMatrix,
    order: usize,
    elements: Vec<CMatrix>,
}

impl CyclicUnitaryGroup {
    /// Validates that `generator` is unitary, that `Uⁿ = I` within
    /// [`GROUP_ORDER_TOL`], and that no proper power is the identity within
    /// [`GROUP_PRIMITIVE_TOL`].
    pub fn new(generator: CMatrix, order: usize) -> Result<Self> {
        let d = generator.nrows();
        if d == 0 || generator.ncols() != d {
            return Err(Error::InvalidInput(format!(
                "generator must be square and non-empty, got {}x{}",
                generator.nrows(),
                generator.ncols()
            )));
        }
        if order == 0 {
            return Err(Error::InvalidInput("group order must be at least 1".into()));
        }
        let deviation = linalg::unitary_deviation(&generator);
        if deviation > crate::tol::UNITARY {
            return Err(Error::InvalidInput(format!(
                "generator is not unitary: max |U*U - I| entry is {deviation:.3e}"
            )));
        }

        let id = CMatrix::identity(d, d);
        let mut elements = Vec::with_capacity(order);
        let mut power = id.clone();
        for k in 0..order {
            if k > 0 {
                let deviation = linalg::max_abs_entry(&(&power - &id));
                if deviation <= GROUP_PRIMITIVE_TOL {
                    return Err(Error::NonPrimitiveGroup {
                        power: k,
                        deviation,
                    });
                }
            }
            elements.push(power.clone());
            power *= &generator;
        }
        let deviation = linalg::max_abs_entry(&(&power - &id));
        if deviation > GROUP_ORDER_TOL {
            return Err(Error::InvalidGroupOrder { order, deviation });
        }
        Ok(Self {
            generator,
            order,
            elements,
        })
    }

    pub fn dim(&self) -> usize {
        self.generator.nrows()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generator(&self) -> &CMatrix {
        &self.generator
    }

    /// `U^k` for `0 ≤ k < n`.
    pub fn element(&self, k: usize) -> &CMatrix {
        &self.elements[k]
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }
}

/// The canonical block cyclic shift on `ℂ^{n·blocks}`: coordinates are
/// grouped into `blocks` groups of size `n` and `U` shifts cyclically within
/// each group. Its orbit of the first coordinate of each group is an
/// orthonormal basis, so a compatible seed basis always exists.
pub fn block_shift_generator(n: usize, blocks: usize) -> CMatrix {
    let d = n * blocks;
    CMatrix::from_fn(d, d, |row, col| {
        let (b, k) = (col / n, col % n);
        if row == b * n + (k + 1) % n {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// The orbit frame `G·Φ`, ordered seed-major: vector `(j−1)·n + s + 1` is
/// `U^s φ_j`. With seeds sorted by norm this makes the orbit's squared-norm
/// profile exactly [`repeated_profile`] of the seed profile.
pub fn cgu_frame(group: &CyclicUnitaryGroup, seeds: &Frame) -> Result<Frame> {
    if seeds.dim() != group.dim() {
        return Err(Error::InvalidInput(format!(
            "seed dimension {} does not match group dimension {}",
            seeds.dim(),
            group.dim()
        )));
    }
    let mut vectors = Vec::with_capacity(seeds.len() * group.order());
    for v in seeds.vectors() {
        for u in group.elements() {
            vectors.push(u * v);
        }
    }
    Frame::new(group.dim(), vectors)
}

/// Each profile entry repeated `n` consecutive times.
pub fn repeated_profile(a: &NormProfile, n: usize) -> Result<NormProfile> {
    if n == 0 {
        return Err(Error::InvalidInput("repetition count must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(a.len() * n);
    for &ai in a.as_slice() {
        out.extend(std::iter::repeat_n(ai, n));
    }
    NormProfile::new(out)
}

/// Irregularity of an orbit profile: returns `(r, r₀)` where
/// `r = max{j : (d/n − j)·a_j > ∑_{k>j} a_k}` (the `d/n`-irregularity of the
/// seed profile) and `r₀ = n·r` is the `d`-irregularity of the repeated
/// profile.
pub fn cgu_irregularity(a: &NormProfile, d: usize, n: usize) -> Result<(usize, usize)> {
    if n == 0 || !d.is_multiple_of(n) {
        return Err(Error::InvalidInput(format!(
            "group order n={n} must divide the dimension d={d}"
        )));
    }
    let r = majorization::d_irregularity(a, d / n)?;
    Ok((r, n * r))
}

/// Searches the canonical basis for `N = d/n` seeds whose orbits are jointly
/// orthonormal (hence an orthonormal basis of `ℂ^d`). Returns None when
/// `n ∤ d` or no such canonical family exists; generators similar to a block
/// cyclic shift in a non-canonical basis are out of scope for the search.
pub fn compatible_basis(group: &CyclicUnitaryGroup) -> Option<Vec<CVector>> {
    let d = group.dim();
    let n = group.order();
    if !d.is_multiple_of(n) {
        return None;
    }
    let needed = d / n;

    let mut seeds: Vec<CVector> = Vec::new();
    let mut accepted: Vec<CVector> = Vec::new(); // all orbit vectors so far
    for idx in 0..d {
        let e = CVector::from_fn(d, |row, _| {
            if row == idx {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let orbit: Vec<CVector> = group.elements().iter().map(|u| u * &e).collect();
        let mut ok = true;
        'check: for (k, x) in orbit.iter().enumerate() {
            for (l, y) in orbit.iter().enumerate() {
                let ip = x.dotc(y);
                let expected = if k == l { 1.0 } else { 0.0 };
                if (ip - C64::new(expected, 0.0)).norm() > COMPATIBLE_BASIS_TOL {
                    ok = false;
                    break 'check;
                }
            }
            for y in &accepted {
                if x.dotc(y).norm() > COMPATIBLE_BASIS_TOL {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            seeds.push(e);
            accepted.extend(orbit);
            if seeds.len() == needed {
                return Some(seeds);
            }
        }
    }
    None
}

/// The orbit minimizer: seeds `{√a_i b_i}` for the first `r` indices (with
/// `{b_i}` a compatible basis and `r` the `d/n`-irregularity of `a`) together
/// with a tight frame holding the remaining norms on the span of the unused
/// basis vectors, all orbited by the group.
///
/// The orbit's frame-operator spectrum is the majorization-minimal vector
/// for the repeated profile, so the orbit minimizes every convex potential
/// among orbit frames with seed norms `a`.
pub fn cgu_minimizer(group: &CyclicUnitaryGroup, a: &NormProfile) -> Result<Frame> {
    let d = group.dim();
    let n = group.order();
    let (r, _) = cgu_irregularity(a, d, n)?;
    let seeds_dim = d / n;
    if seeds_dim > a.len() {
        return Err(Error::InvalidInput(format!(
            "profile has {} entries but d/n = {seeds_dim} seeds are needed to span",
            a.len()
        )));
    }
    let basis = compatible_basis(group).ok_or(Error::InfeasibleBasis)?;

    let mut seed_vectors: Vec<CVector> = Vec::with_capacity(a.len());
    for (i, &ai) in a.as_slice()[..r].iter().enumerate() {
        seed_vectors.push(basis[i].scale(ai.sqrt()));
    }
    let tail = a.tail(r)?;
    let sub = synthesis::tight_frame(&tail, seeds_dim - r)?;
    for v in sub.vectors() {
        let mut combined = CVector::zeros(d);
        for (k, coeff) in v.iter().enumerate() {
            combined += &basis[r + k] * *coeff;
        }
        seed_vectors.push(combined);
    }
    let seeds = Frame::new(d, seed_vectors)?;
    cgu_frame(group, &seeds)
}

/// Sharp potential bounds over orbit frames with seed profile `a`:
/// lower `n·(∑_{i≤r} f(a_i) + (N−r)·f(h))` with `N = d/n`, `r` the
/// `N`-irregularity and `h = (N−r)⁻¹ ∑_{i>r} a_i`; upper
/// `(d−1)·f(0) + f(n·∑ a_i)`. The lower bound equals the profile lower bound
/// of the repeated profile in dimension `d`.
pub fn cgu_potential_bounds(
    f: &Potential,
    a: &NormProfile,
    d: usize,
    n: usize,
) -> Result<(f64, f64)> {
    let (r, _) = cgu_irregularity(a, d, n)?;
    let seeds_dim = d / n;
    let entries = a.as_slice();
    let tail: f64 = entries[r..].iter().sum();
    let h = tail / (seeds_dim - r) as f64;
    let head: f64 = entries[..r].iter().map(|&x| f.eval(x)).sum();
    let lower = n as f64 * (head + (seeds_dim - r) as f64 * f.eval(h));
    let upper = (d as f64 - 1.0) * f.at_zero() + f.eval(n as f64 * a.total());
    Ok((lower, upper))
}
