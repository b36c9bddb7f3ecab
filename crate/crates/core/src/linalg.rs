//! Internal dense linear algebra helpers on top of nalgebra.

use crate::{C64, CMatrix};

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted
/// non-increasingly with eigenvector columns reordered to match.
///
/// The input is symmetrized as `(A + A*)/2` first so that tiny asymmetries
/// from accumulated products cannot leak into the decomposition.
pub(crate) fn hermitian_eigen_desc(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = (a + a.adjoint()).scale(0.5);
    let se = h.symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[j].partial_cmp(&se.eigenvalues[i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &se.eigenvectors.column(i));
    }
    (values, vectors)
}

/// Eigenvalues only, sorted non-increasingly.
pub(crate) fn hermitian_eigenvalues_desc(a: &CMatrix) -> Vec<f64> {
    let h = (a + a.adjoint()).scale(0.5);
    let mut values: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().cloned().collect();
    values.sort_by(|x, y| y.partial_cmp(x).unwrap());
    values
}

/// Spectral (operator) norm computed as the square root of the largest
/// eigenvalue of `A*A`; avoids relying on complex SVD.
pub(crate) fn operator_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let gram = a.adjoint() * a;
    let top = hermitian_eigenvalues_desc(&gram)[0];
    top.max(0.0).sqrt()
}

/// Apply a spectral function to a Hermitian PSD matrix, clamping eigenvalues
/// below zero to zero.
pub(crate) fn hermitian_function(a: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (values, vectors) = hermitian_eigen_desc(a);
    let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|&l| C64::new(f(l.max(0.0)), 0.0)),
    ));
    &vectors * diag * vectors.adjoint()
}

/// Principal square root of a Hermitian PSD matrix.
pub(crate) fn hermitian_sqrt(a: &CMatrix) -> CMatrix {
    hermitian_function(a, f64::sqrt)
}

/// Cayley transform `(I - X/2)^{-1} (I + X/2)`; unitary whenever `X` is
/// anti-Hermitian.
pub(crate) fn cayley(x: &CMatrix) -> CMatrix {
    let n = x.nrows();
    let id = CMatrix::identity(n, n);
    let minus = &id - x.scale(0.5);
    let plus = &id + x.scale(0.5);
    let inv = minus
        .try_inverse()
        .expect("I - X/2 is invertible for anti-Hermitian X");
    inv * plus
}

/// Largest entrywise modulus.
pub(crate) fn max_abs_entry(a: &CMatrix) -> f64 {
    a.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Largest entrywise modulus of `A - A*`.
pub(crate) fn hermitian_deviation(a: &CMatrix) -> f64 {
    max_abs_entry(&(a - a.adjoint()))
}

/// Largest entrywise modulus of `U*U - I`.
pub(crate) fn unitary_deviation(u: &CMatrix) -> f64 {
    let n = u.ncols();
    max_abs_entry(&(u.adjoint() * u - CMatrix::identity(n, n)))
}
