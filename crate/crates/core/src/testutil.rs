//! Shared fixtures and random generators for unit tests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::frame::Frame;
use crate::{C64, CMatrix, CVector};

/// Three unit vectors in the real plane at mutual angles of 120 degrees;
/// the classic tight frame with `S = (3/2)·I`.
pub(crate) fn mercedes_benz() -> Frame {
    let s3 = 3f64.sqrt() / 2.0;
    Frame::from_real(2, &[&[1.0, 0.0], &[-0.5, s3], &[-0.5, -s3]]).unwrap()
}

/// Canonical orthonormal basis of `ℂ^d` as a frame.
pub(crate) fn onb(d: usize) -> Frame {
    let vectors = (0..d)
        .map(|i| CVector::from_fn(d, |k, _| if k == i { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }))
        .collect();
    Frame::new(d, vectors).unwrap()
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn random_complex_vector(rng: &mut ChaCha8Rng, d: usize) -> CVector {
    CVector::from_fn(d, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub(crate) fn random_frame(rng: &mut ChaCha8Rng, d: usize, m: usize) -> Frame {
    let vectors = (0..m).map(|_| random_complex_vector(rng, d)).collect();
    Frame::new(d, vectors).unwrap()
}

/// Haar-ish random unitary from the QR factor of a complex Gaussian matrix.
pub(crate) fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    let a = CMatrix::from_fn(d, d, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    a.qr().q()
}

/// Random anti-Hermitian matrix with entries of order `scale`.
pub(crate) fn random_anti_hermitian(rng: &mut ChaCha8Rng, m: usize, scale: f64) -> CMatrix {
    let mut x = CMatrix::zeros(m, m);
    for i in 0..m {
        x[(i, i)] = C64::new(0.0, scale * rng.sample::<f64, _>(StandardNormal));
        for j in i + 1..m {
            let z = C64::new(
                scale * rng.sample::<f64, _>(StandardNormal),
                scale * rng.sample::<f64, _>(StandardNormal),
            );
            x[(i, j)] = z;
            x[(j, i)] = -z.conj();
        }
    }
    x
}
