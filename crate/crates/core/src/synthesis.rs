//! Constructive synthesis of frames with prescribed frame-operator spectrum
//! and prescribed squared norms, tight frames, and the structure-preserving
//! potential minimizer.
//!
//! The workhorse is a Schur–Horn style construction: starting from the
//! diagonal matrix `D = diag(λ₁, …, λ_d, 0, …, 0)` it applies at most `m−1`
//! real plane rotations, each landing one diagonal entry exactly on its
//! target, to produce an orthogonal `V` with `G = V D Vᵀ` and `diag(G) = a`.
//! Factoring `T = Λ^{1/2} V₁*` (with `V₁` the first `d` columns of `V`)
//! yields frame vectors whose frame operator is exactly `diag(λ)` and whose
//! Gram matrix is `G`. The pairing rule is the classical one: process targets
//! in non-increasing order and mix the adjacent pair of remaining diagonal
//! values that straddles the current target, which stays valid precisely
//! under the partial-sum dominance feasibility condition.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::linalg;
use crate::majorization::{self, NormProfile, Spectrum};
use crate::tol;
use crate::{C64, CMatrix, CVector};

/// Can a frame with frame-operator spectrum `lambda` and squared norms `a`
/// exist? True iff `∑_{i≤k} a_i ≤ ∑_{i≤k} λ_i` for `k < d` and the totals
/// agree — equivalently, `a` padded with zeros is majorized by `(λ, 0…0)`.
pub fn feasible(lambda: &Spectrum, a: &NormProfile) -> Result<bool> {
    let d = lambda.len();
    let m = a.len();
    if d > m {
        return Err(Error::InvalidInput(format!(
            "spectrum length d={d} exceeds profile length m={m}"
        )));
    }
    if !tol::sums_equal(lambda.total(), a.total()) {
        return Ok(false);
    }
    let mut lam_sum = 0.0;
    let mut a_sum = 0.0;
    for k in 0..d.saturating_sub(1) {
        lam_sum += lambda.as_slice()[k];
        a_sum += a.as_slice()[k];
        if a_sum > lam_sum + tol::DOMINANCE_ABS {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds a frame of `m` vectors in `ℂ^d` with squared norms `a` and frame
/// operator exactly `diag(λ)` in the canonical basis.
///
/// Fails with [`Error::Infeasible`] when [`feasible`] rejects the pair.
pub fn schur_horn_frame(lambda: &Spectrum, a: &NormProfile) -> Result<Frame> {
    if !feasible(lambda, a)? {
        return Err(Error::Infeasible(format!(
            "profile {:?} is not majorized by the padded spectrum {:?}",
            a.as_slice(),
            lambda.as_slice()
        )));
    }
    let d = lambda.len();
    let m = a.len();
    let targets = a.as_slice();

    // Current diagonal value at each matrix position.
    let mut value: Vec<f64> = lambda.padded(m);
    // Accumulated product of the plane rotations.
    let mut w = DMatrix::<f64>::identity(m, m);
    // Positions not yet landed on a target.
    let mut unfinished: Vec<usize> = (0..m).collect();
    // assignment[t] = position holding target t.
    let mut assignment: Vec<usize> = vec![usize::MAX; m];

    for t in 0..m {
        unfinished.sort_by(|&p, &q| {
            value[q]
                .partial_cmp(&value[p])
                .unwrap()
                .then(p.cmp(&q))
        });
        if unfinished.len() == 1 {
            assignment[t] = unfinished[0];
            break;
        }
        let target = targets[t];

        // Largest k with value >= target, capped so (k, k+1) is a valid pair.
        let mut k = 0;
        for (i, &p) in unfinished.iter().enumerate() {
            if value[p] >= target {
                k = i;
            } else {
                break;
            }
        }
        k = k.min(unfinished.len() - 2);

        let p = unfinished[k];
        let q = unfinished[k + 1];
        let (wp, wq) = (value[p], value[q]);
        let span = wp - wq;
        let c2 = if span <= f64::EPSILON * wp.abs().max(wq.abs()).max(1.0) {
            1.0
        } else {
            ((target - wq) / span).clamp(0.0, 1.0)
        };
        let c = c2.sqrt();
        let s = (1.0 - c2).sqrt();
        for col in 0..m {
            let xp = w[(p, col)];
            let xq = w[(q, col)];
            w[(p, col)] = c * xp - s * xq;
            w[(q, col)] = s * xp + c * xq;
        }
        value[p] = target;
        value[q] = wp + wq - target;
        assignment[t] = p;
        unfinished.remove(k);
    }

    // phi_j[i] = sqrt(lambda_i) * V[j, i], with V's row j the row of W at the
    // position assigned to target j.
    let roots: Vec<f64> = lambda.as_slice().iter().map(|&l| l.max(0.0).sqrt()).collect();
    let vectors: Vec<CVector> = (0..m)
        .map(|j| {
            let row = assignment[j];
            CVector::from_iterator(d, (0..d).map(|i| C64::new(roots[i] * w[(row, i)], 0.0)))
        })
        .collect();
    Frame::new(d, vectors)
}

/// Tight frame in `ℂ^d` with squared norms `a`: frame operator
/// `(∑ a_i / d)·I`. Exists iff the `d`-irregularity of `a` vanishes.
///
/// In dimension 1 the vectors are `±√a_i` with alternating signs.
pub fn tight_frame(a: &NormProfile, d: usize) -> Result<Frame> {
    let r = majorization::d_irregularity(a, d)?;
    if r > 0 {
        return Err(Error::InfeasibleTight { irregularity: r });
    }
    if d == 1 {
        let vectors = a
            .as_slice()
            .iter()
            .enumerate()
            .map(|(j, &ai)| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                CVector::from_vec(vec![C64::new(sign * ai.sqrt(), 0.0)])
            })
            .collect();
        return Frame::new(1, vectors);
    }
    let c = a.total() / d as f64;
    let lambda = Spectrum::new(vec![c; d])?;
    schur_horn_frame(&lambda, a)
}

/// The potential-minimizing structure for squared norms `a` in `ℂ^d`:
/// `{√a_i e_i}` for the first `r` indices (`r` the `d`-irregularity) together
/// with a tight frame for `span{e_{r+1}, …, e_d}` holding the remaining
/// norms. Its frame-operator spectrum is the majorization-minimal vector of
/// the feasible polytope, so it minimizes every convex potential over `B(a)`.
pub fn minimizer_frame(a: &NormProfile, d: usize) -> Result<Frame> {
    let r = majorization::d_irregularity(a, d)?;
    if r == 0 {
        return tight_frame(a, d);
    }
    let mut vectors: Vec<CVector> = Vec::with_capacity(a.len());
    for (i, &ai) in a.as_slice()[..r].iter().enumerate() {
        vectors.push(CVector::from_fn(d, |row, _| {
            if row == i {
                C64::new(ai.sqrt(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }));
    }
    let tail = a.tail(r)?;
    let sub = tight_frame(&tail, d - r)?;
    for v in sub.vectors() {
        vectors.push(CVector::from_fn(d, |row, _| {
            if row >= r {
                v[row - r]
            } else {
                C64::new(0.0, 0.0)
            }
        }));
    }
    Frame::new(d, vectors)
}

/// Applies a unitary to every vector: the Gram matrix is unchanged and the
/// frame operator is conjugated, `S ↦ U S U*`.
pub fn rotate_frame(frame: &Frame, u: &CMatrix) -> Result<Frame> {
    let d = frame.dim();
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::InvalidInput(format!(
            "rotation must be {d}x{d}, got {}x{}",
            u.nrows(),
            u.ncols()
        )));
    }
    let deviation = linalg::unitary_deviation(u);
    if deviation > tol::UNITARY {
        return Err(Error::InvalidInput(format!(
            "matrix is not unitary: max |U*U - I| entry is {deviation:.3e}"
        )));
    }
    let vectors = frame.vectors().iter().map(|v| u * v).collect();
    Frame::new(d, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_entry;
    use crate::potential::{self, Potential};
    use crate::testutil;
    use approx::assert_relative_eq;

    fn profile(a: &[f64]) -> NormProfile {
        NormProfile::new(a.to_vec()).unwrap()
    }

    fn spectrum(l: &[f64]) -> Spectrum {
        Spectrum::new(l.to_vec()).unwrap()
    }

    fn assert_realizes(frame: &Frame, lambda: &Spectrum, a: &NormProfile) {
        for (norm, ai) in frame.squared_norms().iter().zip(a.as_slice()) {
            assert!((norm - ai).abs() <= 1e-9, "norm {norm} vs target {ai}");
        }
        let spec = frame.frame_operator().spectrum().unwrap();
        for (got, want) in spec.as_slice().iter().zip(lambda.as_slice()) {
            assert!((got - want).abs() <= 1e-8, "eigenvalue {got} vs target {want}");
        }
        // The construction promises an exactly diagonal frame operator.
        let s = frame.frame_operator();
        let mut off = s.matrix().clone();
        off.fill_diagonal(C64::new(0.0, 0.0));
        assert!(max_abs_entry(&off) < 1e-12);
    }

    #[test]
    fn feasible_examples() {
        assert!(feasible(&spectrum(&[2.0, 1.0]), &profile(&[1.0, 1.0, 1.0])).unwrap());
        assert!(!feasible(&spectrum(&[1.0, 1.0]), &profile(&[1.5, 0.5])).unwrap());
        assert!(feasible(&spectrum(&[1.0, 1.0]), &profile(&[1.0, 1.0])).unwrap());
        assert!(feasible(&spectrum(&[1.0, 1.0, 1.0]), &profile(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn schur_horn_identity_case() {
        let f = schur_horn_frame(&spectrum(&[1.0, 1.0]), &profile(&[1.0, 1.0])).unwrap();
        assert_realizes(&f, &spectrum(&[1.0, 1.0]), &profile(&[1.0, 1.0]));
    }

    #[test]
    fn schur_horn_unit_norm_case() {
        let lambda = spectrum(&[2.0, 1.0]);
        let a = profile(&[1.0, 1.0, 1.0]);
        let f = schur_horn_frame(&lambda, &a).unwrap();
        assert_eq!(f.dim(), 2);
        assert_eq!(f.len(), 3);
        assert_realizes(&f, &lambda, &a);
    }

    #[test]
    fn schur_horn_tight_case() {
        let lambda = spectrum(&[1.5, 1.5]);
        let a = profile(&[1.0, 1.0, 1.0]);
        let f = schur_horn_frame(&lambda, &a).unwrap();
        assert_realizes(&f, &lambda, &a);
        assert!(f.frame_bounds().is_tight());
    }

    #[test]
    fn schur_horn_equal_values_with_low_late_target() {
        // Adversarial case for naive pivot rules: two equal large eigenvalues
        // and a profile whose last target exceeds every leftover.
        let lambda = spectrum(&[5.0, 5.0]);
        let a = profile(&[3.0, 3.0, 3.0, 1.0]);
        let f = schur_horn_frame(&lambda, &a).unwrap();
        assert_realizes(&f, &lambda, &a);
    }

    #[test]
    fn schur_horn_handles_zero_eigenvalues() {
        // A rank-one list of two unit vectors in dimension 2.
        let lambda = spectrum(&[2.0, 0.0]);
        let a = profile(&[1.0, 1.0]);
        let f = schur_horn_frame(&lambda, &a).unwrap();
        assert_realizes(&f, &lambda, &a);
        assert!(!f.frame_bounds().is_frame());
    }

    #[test]
    fn schur_horn_square_case_is_an_orthogonal_design() {
        let lambda = spectrum(&[3.0, 2.0, 1.0]);
        let a = profile(&[3.0, 2.0, 1.0]);
        let f = schur_horn_frame(&lambda, &a).unwrap();
        assert_realizes(&f, &lambda, &a);
    }

    #[test]
    fn schur_horn_rejects_infeasible() {
        assert!(matches!(
            schur_horn_frame(&spectrum(&[1.0, 1.0]), &profile(&[1.5, 0.5])),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn tight_frame_examples() {
        let f = tight_frame(&profile(&[1.0, 1.0]), 2).unwrap();
        assert!(f.frame_bounds().is_tight());
        assert_realizes(&f, &spectrum(&[1.0, 1.0]), &profile(&[1.0, 1.0]));

        let f = tight_frame(&profile(&[1.0, 1.0, 1.0]), 2).unwrap();
        assert!(f.frame_bounds().is_tight());
        assert_relative_eq!(f.frame_bounds().upper, 1.5, max_relative = 1e-12);
        assert_relative_eq!(
            potential::welch_ratio(&f).unwrap(),
            0.5,
            epsilon = 1e-8
        );

        assert!(matches!(
            tight_frame(&profile(&[4.0, 1.0, 1.0, 1.0]), 2),
            Err(Error::InfeasibleTight { irregularity: 1 })
        ));
    }

    #[test]
    fn minimizer_frame_examples() {
        let a = profile(&[4.0, 1.0, 1.0, 1.0]);
        let f = minimizer_frame(&a, 2).unwrap();
        let expected = majorization::constrained_minimal_vector(&a, 2).unwrap();
        assert_eq!(expected.as_slice(), &[4.0, 3.0]);
        assert_realizes(&f, &expected, &a);
        // First vector is 2·e1; the rest live on the e2 axis.
        assert_relative_eq!(f.vectors()[0][0].re, 2.0, max_relative = 1e-12);
        for v in &f.vectors()[1..] {
            assert!(v[0].norm() < 1e-12);
            assert_relative_eq!(v[1].norm(), 1.0, max_relative = 1e-12);
        }

        let a = profile(&[1.0, 1.0, 1.0]);
        let f = minimizer_frame(&a, 2).unwrap();
        assert!(f.frame_bounds().is_tight());

        let a = profile(&[1.0, 1.0]);
        let f = minimizer_frame(&a, 2).unwrap();
        assert_realizes(&f, &spectrum(&[1.0, 1.0]), &a);
    }

    #[test]
    fn minimizer_head_is_orthogonal_to_tail() {
        let a = profile(&[6.0, 5.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let f = minimizer_frame(&a, 3).unwrap();
        let r = majorization::d_irregularity(&a, 3).unwrap();
        assert_eq!(r, 1);
        for i in 0..r {
            for (j, v) in f.vectors().iter().enumerate() {
                if i != j {
                    let ip = f.vectors()[i].dotc(v);
                    assert!(ip.norm() < 1e-9, "head vector {i} vs vector {j}");
                }
            }
        }
    }

    #[test]
    fn minimizer_attains_profile_lower_bound() {
        for (entries, d) in [
            (vec![4.0, 1.0, 1.0, 1.0], 2usize),
            (vec![1.0, 1.0, 1.0], 2),
            (vec![6.0, 5.0, 1.0, 1.0, 1.0, 1.0, 1.0], 3),
        ] {
            let a = profile(&entries);
            let f = minimizer_frame(&a, d).unwrap();
            for pot in Potential::catalog() {
                let value = potential::eval_potential(&pot, &f.frame_operator()).unwrap();
                let (lower, upper) = potential::potential_bounds_profile(&pot, &a, d).unwrap();
                assert!(
                    (value - lower).abs() <= 1e-9 * lower.abs().max(1.0),
                    "{}: value {value} vs lower bound {lower}",
                    pot.name()
                );
                assert!(value <= upper + 1e-9);
            }
        }
    }

    #[test]
    fn rotate_frame_examples() {
        let f = testutil::mercedes_benz();
        let id = CMatrix::identity(2, 2);
        let same = rotate_frame(&f, &id).unwrap();
        assert_eq!(f.vv_distance(&same).unwrap(), 0.0);

        let mut rng = testutil::rng(3);
        let u = testutil::random_unitary(&mut rng, 2);
        let rotated = rotate_frame(&f, &u).unwrap();
        assert!(
            max_abs_entry(&(rotated.gram().matrix() - f.gram().matrix())) < 1e-10
        );
        let s1 = f.frame_operator().spectrum().unwrap();
        let s2 = rotated.frame_operator().spectrum().unwrap();
        for (x, y) in s1.as_slice().iter().zip(s2.as_slice()) {
            assert!((x - y).abs() < 1e-9);
        }

        let not_unitary = CMatrix::identity(2, 2).scale(2.0);
        assert!(rotate_frame(&f, &not_unitary).is_err());
    }

    #[test]
    fn random_feasible_round_trips() {
        let mut rng = testutil::rng(20);
        for _ in 0..40 {
            use rand::Rng;
            let d = rng.gen_range(1..=6);
            let m = rng.gen_range(d..=12);
            // Random positive profile, then a random feasible spectrum built
            // by ascending from the minimal vector.
            let mut a: Vec<f64> = (0..m).map(|_| rng.gen_range(0.2..3.0)).collect();
            a.sort_by(|x, y| y.partial_cmp(x).unwrap());
            let a = NormProfile::new(a).unwrap();
            let v = majorization::constrained_minimal_vector(&a, d).unwrap();
            let mut lam = v.as_slice().to_vec();
            for _ in 0..8 {
                let i = rng.gen_range(0..d);
                let j = rng.gen_range(0..d);
                let (i, j) = (i.min(j), i.max(j));
                if i == j {
                    continue;
                }
                // Anti-pinch keeps feasibility: move mass upward.
                let headroom_i = if i == 0 { f64::INFINITY } else { lam[i - 1] - lam[i] };
                let headroom_j = (lam[j] - lam.get(j + 1).copied().unwrap_or(0.0)).max(0.0);
                let t = 0.5 * rng.gen::<f64>() * headroom_i.min(headroom_j);
                if t.is_finite() && t > 0.0 {
                    lam[i] += t;
                    lam[j] -= t;
                }
            }
            let lambda = Spectrum::new(lam).unwrap();
            assert!(feasible(&lambda, &a).unwrap());
            let f = schur_horn_frame(&lambda, &a).unwrap();
            assert_realizes(&f, &lambda, &a);
        }
    }
}
