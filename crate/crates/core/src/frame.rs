//! Frames as ordered vector lists, their synthesis/frame/Gram operators,
//! frame bounds, spectra, and orthogonal-partition analysis.
//!
//! Conventions: the synthesis operator `T` is the `d×m` matrix whose `j`-th
//! column is the `j`-th frame vector; `S = TT*` is the `d×d` frame operator
//! and `G = T*T` the `m×m` Gram matrix, so `G_{ij} = ⟨φ_j, φ_i⟩` and the Gram
//! diagonal carries the squared norms. Only the diagonal and the moduli
//! `|G_{ij}|` enter any formula downstream, so the inner-product slot
//! convention is observable only in tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::majorization::{NormProfile, Spectrum};
use crate::tol;
use crate::{C64, CMatrix, CVector};

/// Ordered list of `m` complex vectors in dimension `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FrameJson", into = "FrameJson")]
pub struct Frame {
    dim: usize,
    vectors: Vec<CVector>,
}

impl Frame {
    /// Validates that all vectors share dimension `dim` and are finite.
    pub fn new(dim: usize, vectors: Vec<CVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("frame dimension must be positive".into()));
        }
        if vectors.is_empty() {
            return Err(Error::InvalidInput("frame must contain at least one vector".into()));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "vector {i} has dimension {} but the frame dimension is {dim}",
                    v.len()
                )));
            }
            if v.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(Error::InvalidInput(format!("vector {i} has non-finite entries")));
            }
        }
        Ok(Self { dim, vectors })
    }

    /// Real vectors, for hand-written fixtures.
    pub fn from_real(dim: usize, rows: &[&[f64]]) -> Result<Self> {
        let vectors = rows
            .iter()
            .map(|r| CVector::from_iterator(r.len(), r.iter().map(|&x| C64::new(x, 0.0))))
            .collect();
        Self::new(dim, vectors)
    }

    /// Frame whose vectors are the columns of a `d×m` synthesis matrix.
    pub fn from_synthesis(t: &CMatrix) -> Result<Self> {
        let vectors = (0..t.ncols()).map(|j| t.column(j).into_owned()).collect();
        Self::new(t.nrows(), vectors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vectors `m`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    /// Squared norms `‖φ_i‖²` in frame order.
    pub fn squared_norms(&self) -> Vec<f64> {
        self.vectors.iter().map(|v| v.norm_squared()).collect()
    }

    pub fn total_squared_norm(&self) -> f64 {
        self.squared_norms().iter().sum()
    }

    /// Membership in `A(c)`: total squared norm equal to `c`.
    pub fn in_trace_class(&self, c: f64) -> bool {
        tol::sums_equal(self.total_squared_norm(), c)
    }

    /// Membership in `B(a)`: `‖φ_i‖² = a_i` for every index.
    pub fn in_norm_class(&self, a: &NormProfile) -> bool {
        self.len() == a.len()
            && self
                .squared_norms()
                .iter()
                .zip(a.as_slice())
                .all(|(n, ai)| (n - ai).abs() <= tol::NORM_ABS * ai.max(1.0))
    }

    /// The `d×m` matrix with `φ_j` as its `j`-th column.
    pub fn synthesis_matrix(&self) -> SynthesisMatrix {
        let mut t = CMatrix::zeros(self.dim, self.len());
        for (j, v) in self.vectors.iter().enumerate() {
            t.set_column(j, v);
        }
        SynthesisMatrix(t)
    }

    /// Frame operator `S = TT*` (`d×d`, Hermitian PSD).
    pub fn frame_operator(&self) -> HermitianOperator {
        let t = self.synthesis_matrix().0;
        HermitianOperator::from_product(&t * t.adjoint())
    }

    /// Gram matrix `G = T*T` (`m×m`, Hermitian PSD, diagonal = squared norms).
    pub fn gram(&self) -> HermitianOperator {
        let t = self.synthesis_matrix().0;
        HermitianOperator::from_product(t.adjoint() * t)
    }

    /// Smallest and largest eigenvalues of the frame operator, with rank and
    /// tightness predicates attached.
    pub fn frame_bounds(&self) -> FrameBounds {
        let values = linalg::hermitian_eigenvalues_desc(self.frame_operator().matrix());
        FrameBounds {
            lower: values[values.len() - 1].max(0.0),
            upper: values[0].max(0.0),
        }
    }

    /// Vector-vector distance `max_i ‖φ_i − ψ_i‖`.
    pub fn vv_distance(&self, other: &Frame) -> Result<f64> {
        if self.dim != other.dim || self.len() != other.len() {
            return Err(Error::InvalidInput(format!(
                "frames have shapes {}x{} and {}x{}",
                self.dim,
                self.len(),
                other.dim,
                other.len()
            )));
        }
        Ok(self
            .vectors
            .iter()
            .zip(&other.vectors)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Connected components of the Gram support graph: indices `i`, `j` are
    /// linked when `|G_{ij}| > tol`. Components are sorted by least element.
    ///
    /// A single component means the frame cannot be split into two mutually
    /// orthogonal sub-lists, equivalently no nontrivial diagonal projection
    /// commutes with `G`. Default `tol` is `1e-10 · max_i ‖φ_i‖²`.
    pub fn orthogonal_partition(&self, tolerance: Option<f64>) -> Vec<Vec<usize>> {
        let m = self.len();
        let g = self.gram();
        let gm = g.matrix();
        let default = tol::SPECTRUM_REL
            * self
                .squared_norms()
                .iter()
                .cloned()
                .fold(0.0, f64::max);
        let thresh = tolerance.unwrap_or(default);

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
                if gm[(i, j)].norm() > thresh {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut root_of: Vec<Option<usize>> = vec![None; m];
        for i in 0..m {
            let r = find(&mut parent, i);
            match root_of[r] {
                Some(k) => components[k].push(i),
                None => {
                    root_of[r] = Some(components.len());
                    components.push(vec![i]);
                }
            }
        }
        components
    }

    /// True when the Gram support graph is connected.
    pub fn is_irreducible(&self, tolerance: Option<f64>) -> bool {
        self.orthogonal_partition(tolerance).len() == 1
    }
}

/// Smallest and largest eigenvalues of a frame operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    /// The vectors span the space: the lower bound is not negligible against
    /// the upper one.
    pub fn is_frame(&self) -> bool {
        self.lower > tol::SPECTRUM_REL * self.upper
    }

    /// Both bounds coincide (constant spectrum).
    pub fn is_tight(&self) -> bool {
        self.is_frame() && self.upper - self.lower <= tol::SPECTRUM_REL * self.upper
    }
}

/// `d×m` complex matrix whose columns are frame vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisMatrix(pub(crate) CMatrix);

impl SynthesisMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }
}

/// Square complex matrix validated to be Hermitian (entrywise, within
/// [`tol::HERMITIAN`]) and stored symmetrized.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    mat: CMatrix,
}

impl HermitianOperator {
    pub fn new(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.is_empty() {
            return Err(Error::InvalidInput(format!(
                "operator must be square and non-empty, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if mat.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("operator has non-finite entries".into()));
        }
        let deviation = linalg::hermitian_deviation(&mat);
        if deviation > tol::HERMITIAN {
            return Err(Error::InvalidInput(format!(
                "operator is not Hermitian: max |A - A*| entry is {deviation:.3e}"
            )));
        }
        Ok(Self::from_product(mat))
    }

    /// For matrices Hermitian by construction (operator products); symmetrizes
    /// without the tolerance gate.
    pub(crate) fn from_product(mat: CMatrix) -> Self {
        let sym = (&mat + mat.adjoint()).scale(0.5);
        Self { mat: sym }
    }

    /// Real diagonal operator.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidInput("diagonal must be non-empty".into()));
        }
        let mat = CMatrix::from_diagonal(&CVector::from_iterator(
            diag.len(),
            diag.iter().map(|&x| C64::new(x, 0.0)),
        ));
        Self::new(mat)
    }

    /// `scale · I_d`.
    pub fn scaled_identity(dim: usize, scale: f64) -> Result<Self> {
        Self::from_diagonal(&vec![scale; dim])
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Trace (real: the matrix is Hermitian).
    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// Real diagonal.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.mat[(i, i)].re).collect()
    }

    /// Eigenvalues sorted non-increasingly, with values in
    /// `[-EIG_CLAMP, 0)` clamped to 0.
    ///
    /// Rejects operators with eigenvalues below `-EIG_CLAMP`: spectra are
    /// reserved for positive-semidefinite operators.
    pub fn spectrum(&self) -> Result<Spectrum> {
        let values = linalg::hermitian_eigenvalues_desc(&self.mat);
        if let Some(&min) = values.last() {
            if min < -tol::EIG_CLAMP {
                return Err(Error::InvalidInput(format!(
                    "operator has negative eigenvalue {min:.3e} beyond the clamp window"
                )));
            }
        }
        Spectrum::new(values.into_iter().map(|l| l.max(0.0)).collect())
    }
}

// --- JSON forms -------------------------------------------------------------
//
// Frames serialize as {"d": .., "m": .., "vectors": [[[re, im], ..], ..]};
// matrices as row-major nested arrays of [re, im] pairs.

#[derive(Serialize, Deserialize)]
struct FrameJson {
    d: usize,
    m: usize,
    vectors: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<FrameJson> for Frame {
    type Error = Error;
    fn try_from(j: FrameJson) -> Result<Self> {
        if j.vectors.len() != j.m {
            return Err(Error::InvalidInput(format!(
                "frame JSON declares m={} but carries {} vectors",
                j.m,
                j.vectors.len()
            )));
        }
        let vectors = j
            .vectors
            .iter()
            .map(|v| CVector::from_iterator(v.len(), v.iter().map(|p| C64::new(p[0], p[1]))))
            .collect();
        Frame::new(j.d, vectors)
    }
}

impl From<Frame> for FrameJson {
    fn from(f: Frame) -> Self {
        FrameJson {
            d: f.dim,
            m: f.vectors.len(),
            vectors: f
                .vectors
                .iter()
                .map(|v| v.iter().map(|c| [c.re, c.im]).collect())
                .collect(),
        }
    }
}

/// Row-major `[re, im]` pair encoding of a complex matrix.
pub fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Parse a row-major `[re, im]` pair encoding; rows must have equal length.
pub fn matrix_from_rows(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    if rows.is_empty() {
        return Err(Error::InvalidInput("matrix must be non-empty".into()));
    }
    let ncols = rows[0].len();
    if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::InvalidInput("matrix rows must be non-empty and of equal length".into()));
    }
    Ok(CMatrix::from_fn(rows.len(), ncols, |i, j| {
        C64::new(rows[i][j][0], rows[i][j][1])
    }))
}
