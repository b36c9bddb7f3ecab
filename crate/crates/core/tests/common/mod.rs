//! Shared random generators for the integration suites.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use framecraft::majorization::{self, NormProfile, Spectrum};
use framecraft::synthesis;
use framecraft::{C64, CMatrix, CVector, Frame, HermitianOperator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_vector(rng: &mut ChaCha8Rng, d: usize) -> CVector {
    CVector::from_fn(d, |_, _| complex_gaussian(rng))
}

pub fn random_frame(rng: &mut ChaCha8Rng, d: usize, m: usize) -> Frame {
    Frame::new(d, (0..m).map(|_| random_vector(rng, d)).collect()).unwrap()
}

pub fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| complex_gaussian(rng)).qr().q()
}

/// Random Hermitian with zero trace and unit operator norm.
pub fn random_traceless_direction(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    let raw = CMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let mut h = (&raw + raw.adjoint()).scale(0.5);
    let shift = h.trace().re / d as f64;
    for i in 0..d {
        h[(i, i)] -= C64::new(shift, 0.0);
    }
    let norm = operator_norm(&h);
    h.scale(1.0 / norm.max(1e-12))
}

/// Spectral norm via the Gram route (avoids complex SVD).
pub fn operator_norm(a: &CMatrix) -> f64 {
    let gram = a.adjoint() * a;
    let top = gram
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::MIN, f64::max);
    top.max(0.0).sqrt()
}

pub fn op_distance(a: &HermitianOperator, b: &HermitianOperator) -> f64 {
    operator_norm(&(a.matrix() - b.matrix()))
}

/// Random non-increasing profile with entries in `[0.2, 3)`.
pub fn random_profile(rng: &mut ChaCha8Rng, m: usize) -> NormProfile {
    let mut a: Vec<f64> = (0..m).map(|_| rng.gen_range(0.2..3.0)).collect();
    a.sort_by(|x, y| y.partial_cmp(x).unwrap());
    NormProfile::new(a).unwrap()
}

/// Random member of the feasible polytope for `(a, d)`, built by ascending
/// from the majorization-minimal vector with random mass transfers toward
/// earlier (larger) entries. `steps = 0` returns the minimal vector itself.
pub fn ascent_spectrum(
    rng: &mut ChaCha8Rng,
    a: &NormProfile,
    d: usize,
    steps: usize,
) -> Spectrum {
    let v = majorization::constrained_minimal_vector(a, d).unwrap();
    let mut lam = v.as_slice().to_vec();
    for _ in 0..steps {
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        let (i, j) = (i.min(j), i.max(j));
        if i == j {
            continue;
        }
        let headroom_i = if i == 0 {
            f64::INFINITY
        } else {
            lam[i - 1] - lam[i]
        };
        let headroom_j = (lam[j] - lam.get(j + 1).copied().unwrap_or(0.0)).max(0.0);
        let t = 0.5 * rng.gen::<f64>() * headroom_i.min(headroom_j);
        if t.is_finite() && t > 0.0 {
            lam[i] += t;
            lam[j] -= t;
        }
    }
    Spectrum::new(lam).unwrap()
}

/// Random full-rank frame realized from an ascent spectrum, with the minimal
/// eigenvalue bounded below by construction of the profile.
pub fn random_realized_frame(
    rng: &mut ChaCha8Rng,
    d: usize,
    m: usize,
    steps: usize,
) -> (Frame, NormProfile, Spectrum) {
    let a = random_profile(rng, m);
    let lambda = ascent_spectrum(rng, &a, d, steps);
    let frame = synthesis::schur_horn_frame(&lambda, &a).unwrap();
    (frame, a, lambda)
}

/// Random irreducible full-rank frame (rejection sampled); also applies a
/// random rotation so the frame operator is not diagonal.
pub fn random_irreducible_frame(rng: &mut ChaCha8Rng, d: usize, m: usize) -> Frame {
    loop {
        let (frame, _, lambda) = random_realized_frame(rng, d, m, 6);
        let spec = lambda.as_slice();
        if spec[spec.len() - 1] <= 0.2 {
            continue;
        }
        if !frame.is_irreducible(None) {
            continue;
        }
        let u = random_unitary(rng, d);
        return synthesis::rotate_frame(&frame, &u).unwrap();
    }
}

/// Least-squares slope of `y` against `x`.
pub fn regression_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    cov / var
}
