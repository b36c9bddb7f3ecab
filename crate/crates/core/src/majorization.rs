//! Majorization preorder on real vectors and the minimal elements of the
//! feasibility sets attached to a norm profile.
//!
//! A vector `b` is majorized by `c` (written `b ≺ c`) when every partial sum
//! of the non-increasing rearrangement `b↓` is bounded by the corresponding
//! partial sum of `c↓` and the totals agree. Two constraint sets show up
//! throughout frame design:
//!
//! - the simplex `K(c)` of non-negative vectors with total `c`, whose
//!   majorization-minimal element is the constant vector `(c/d, …, c/d)`;
//! - the polytope `P(a)` of non-negative `d`-vectors whose sorted partial
//!   sums dominate those of a norm profile `a` and whose total equals the
//!   profile total. Its minimal element keeps the first `r` profile entries
//!   (where `r` is the `d`-irregularity of `a`) and levels the rest.
//!
//! Both minimality statements come with a constructive strict-descent step:
//! transfer mass `ε/√2` from a strictly larger entry to its successor. That
//! "pinch" is exposed as [`pinch_step`] and is the basic tool for showing a
//! spectrum is not locally minimal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Non-increasing profile of strictly positive squared norms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct NormProfile(Vec<f64>);

impl NormProfile {
    /// Validates positivity and non-increasing order.
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidInput("norm profile must be non-empty".into()));
        }
        if a.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(Error::InvalidInput(
                "norm profile entries must be finite and strictly positive".into(),
            ));
        }
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "norm profile must be non-increasing".into(),
            ));
        }
        Ok(Self(a))
    }

    /// Sorts the entries non-increasingly before validation.
    pub fn from_unsorted(mut a: Vec<f64>) -> Result<Self> {
        a.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
        Self::new(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Sub-profile of the entries from index `start` on.
    pub fn tail(&self, start: usize) -> Result<Self> {
        Self::new(self.0[start..].to_vec())
    }
}

impl TryFrom<Vec<f64>> for NormProfile {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<NormProfile> for Vec<f64> {
    fn from(p: NormProfile) -> Self {
        p.0
    }
}

/// Non-increasing vector of non-negative reals — the eigenvalues of a frame
/// operator, counted with multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Validates non-negativity and non-increasing order.
    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::InvalidInput("spectrum must be non-empty".into()));
        }
        if lambda.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidInput(
                "spectrum entries must be finite and non-negative".into(),
            ));
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput("spectrum must be non-increasing".into()));
        }
        Ok(Self(lambda))
    }

    /// Sorts the entries non-increasingly before validation.
    pub fn from_unsorted(mut lambda: Vec<f64>) -> Result<Self> {
        lambda.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
        Self::new(lambda)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Entries padded with zeros up to length `n`.
    pub fn padded(&self, n: usize) -> Vec<f64> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0.0);
        v
    }
}

impl TryFrom<Vec<f64>> for Spectrum {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.0
    }
}

fn check_finite(v: &[f64]) -> Result<()> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("entries must be finite".into()));
    }
    Ok(())
}

/// Non-increasing rearrangement `v↓`. Stable among ties.
pub fn sort_desc(v: &[f64]) -> Result<Vec<f64>> {
    check_finite(v)?;
    let mut out = v.to_vec();
    out.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(out)
}

fn partial_sums(v: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    v.iter()
        .map(|x| {
            acc += x;
            acc
        })
        .collect()
}

/// Does `c` majorize `b` (`b ≺ c`)?
///
/// Both vectors are compared as multisets: partial sums of the sorted copies
/// must satisfy `∑ b↓ᵢ ≤ ∑ c↓ᵢ` for every prefix (absolute slack
/// [`tol::DOMINANCE_ABS`]) with equal totals (relative tolerance
/// [`tol::SUM_REL`]).
pub fn majorizes(c: &[f64], b: &[f64]) -> Result<bool> {
    if c.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "majorization needs equal lengths, got {} and {}",
            c.len(),
            b.len()
        )));
    }
    let cs = partial_sums(&sort_desc(c)?);
    let bs = partial_sums(&sort_desc(b)?);
    let d = cs.len();
    if d == 0 {
        return Ok(true);
    }
    if !tol::sums_equal(cs[d - 1], bs[d - 1]) {
        return Ok(false);
    }
    Ok(bs[..d - 1]
        .iter()
        .zip(&cs[..d - 1])
        .all(|(b_k, c_k)| *b_k <= *c_k + tol::DOMINANCE_ABS))
}

/// The `d`-irregularity of a profile: the largest `j ∈ {1, …, d−1}` with
/// `(d−j)·aⱼ > ∑_{i>j} aᵢ`, or 0 when no such index exists.
///
/// It counts how many profile entries are too heavy to be levelled, i.e. how
/// many stand-alone orthogonal vectors any potential-minimizing frame with
/// this profile must contain.
pub fn d_irregularity(a: &NormProfile, d: usize) -> Result<usize> {
    let m = a.len();
    if d == 0 || d > m {
        return Err(Error::InvalidInput(format!(
            "dimension d={d} must satisfy 1 <= d <= m={m}"
        )));
    }
    let entries = a.as_slice();
    let mut r = 0;
    for j in 1..d {
        let tail: f64 = entries[j..].iter().sum();
        if (d - j) as f64 * entries[j - 1] > tail {
            r = j;
        }
    }
    Ok(r)
}

/// The constant vector `(c/d, …, c/d)`: the majorization-minimal element of
/// the simplex `K(c)`.
pub fn uniform_minimal_vector(c: f64, d: usize) -> Result<Spectrum> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::InvalidInput("total must be positive and finite".into()));
    }
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    Spectrum::new(vec![c / d as f64; d])
}

/// The majorization-minimal element of `P(a)` in dimension `d`:
/// `(a₁, …, a_r, h, …, h)` with `r` the `d`-irregularity and
/// `h = (d−r)⁻¹ ∑_{i>r} aᵢ`.
pub fn constrained_minimal_vector(a: &NormProfile, d: usize) -> Result<Spectrum> {
    let r = d_irregularity(a, d)?;
    let entries = a.as_slice();
    let tail: f64 = entries[r..].iter().sum();
    let h = tail / (d - r) as f64;
    let mut v = entries[..r].to_vec();
    v.extend(std::iter::repeat_n(h, d - r));
    Spectrum::new(v)
}

/// Membership of `b` in the polytope `P(a)`: non-negative entries, sorted
/// partial sums dominating those of `a` up to index `d`, and total equal to
/// the profile total.
pub fn in_feasible_set(b: &[f64], a: &NormProfile, d: usize) -> Result<bool> {
    if b.len() != d {
        return Err(Error::InvalidInput(format!(
            "vector length {} does not match dimension {d}",
            b.len()
        )));
    }
    if d > a.len() {
        return Err(Error::InvalidInput(format!(
            "dimension d={d} exceeds profile length m={}",
            a.len()
        )));
    }
    check_finite(b)?;
    if b.iter().any(|x| *x < -tol::DOMINANCE_ABS) {
        return Ok(false);
    }
    let sorted = sort_desc(b)?;
    let bs = partial_sums(&sorted);
    let as_ = partial_sums(a.as_slice());
    if !tol::sums_equal(bs[d - 1], a.total()) {
        return Ok(false);
    }
    Ok((0..d).all(|k| bs[k] >= as_[k] - tol::DOMINANCE_ABS))
}

/// Constraint set for [`pinch_step`].
#[derive(Debug, Clone)]
pub enum PinchConstraint<'a> {
    /// `K(c)`: non-negative entries with total `c`.
    Simplex { total: f64 },
    /// `P(a)` in dimension `d`.
    Polytope { profile: &'a NormProfile, dim: usize },
}

/// One strict majorization-descent step: transfer `ε/√2` from entry `j` of
/// `b↓` to entry `j+1`.
///
/// The index is the smallest `j` with a strict gap `b↓ⱼ > b↓ⱼ₊₁` (and, in the
/// polytope case, strict partial-sum slack `∑_{i≤j} b↓ᵢ > ∑_{i≤j} aᵢ`) that
/// admits the transfer without breaking the ordering or the constraints. The
/// result `bₑ` satisfies `bₑ ≺ b`, `bₑ↓ ≠ b↓`, `‖b↓ − bₑ↓‖₂ = ε`, and stays in
/// the constraint set.
///
/// Errors with [`Error::NoDescent`] when `b↓` is already the minimal vector
/// and with [`Error::StepTooLarge`] when `ε` does not fit any admissible index.
pub fn pinch_step(b: &[f64], epsilon: f64, constraint: &PinchConstraint) -> Result<Vec<f64>> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidInput("epsilon must be positive and finite".into()));
    }
    check_finite(b)?;
    let d = b.len();
    if d < 2 {
        return Err(Error::NoDescent);
    }

    // Membership of the input is part of the contract.
    let a_prefix: Option<Vec<f64>> = match constraint {
        PinchConstraint::Simplex { total } => {
            let sum: f64 = b.iter().sum();
            if b.iter().any(|x| *x < -tol::DOMINANCE_ABS) || !tol::sums_equal(sum, *total) {
                return Err(Error::InvalidInput(
                    "vector is not a member of the simplex K(c)".into(),
                ));
            }
            None
        }
        PinchConstraint::Polytope { profile, dim } => {
            if *dim != d {
                return Err(Error::InvalidInput(format!(
                    "constraint dimension {dim} does not match vector length {d}"
                )));
            }
            if !in_feasible_set(b, profile, d)? {
                return Err(Error::InvalidInput(
                    "vector is not a member of the polytope P(a)".into(),
                ));
            }
            Some(partial_sums(profile.as_slice()))
        }
    };

    let sorted = sort_desc(b)?;
    let sums = partial_sums(&sorted);
    let delta = epsilon / std::f64::consts::SQRT_2;

    let mut saw_candidate = false;
    for j in 0..d - 1 {
        let gap_ok = sorted[j] > sorted[j + 1];
        let slack_ok = match &a_prefix {
            None => true,
            Some(ap) => sums[j] > ap[j],
        };
        if !(gap_ok && slack_ok) {
            continue;
        }
        saw_candidate = true;
        let fits_gap = sorted[j] - delta >= sorted[j + 1] + delta;
        let fits_slack = match &a_prefix {
            None => true,
            Some(ap) => sums[j] - delta >= ap[j],
        };
        if fits_gap && fits_slack {
            let mut out = sorted;
            out[j] -= delta;
            out[j + 1] += delta;
            return Ok(out);
        }
    }

    if saw_candidate {
        Err(Error::StepTooLarge { epsilon })
    } else {
        Err(Error::NoDescent)
    }
}
