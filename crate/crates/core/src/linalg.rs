//! Small dense complex linear algebra on top of `nalgebra`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::series::ComplexSeries;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn to_vector(f: &ComplexSeries) -> CVector {
    CVector::from_column_slice(f.coeffs())
}

/// Column `j` of `m` as a series of truncation degree `m.nrows() - 1`.
pub fn column_series(m: &CMatrix, j: usize) -> ComplexSeries {
    ComplexSeries::from_vec_unchecked(m.column(j).iter().copied().collect())
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Orthonormal (Euclidean) basis of `{c : ‖a c‖ ≈ 0}` as the columns of an
/// `a.ncols() × (a.ncols() - rank)` matrix.
///
/// Householder QR with column pivoting of `a^H`: a step is taken while the
/// largest remaining column norm exceeds `tol`, and the trailing columns of
/// the accumulated unitary factor span the null space.
pub fn null_space(a: &CMatrix, tol: f64) -> CMatrix {
    let r = a.ncols();
    let mut h = a.adjoint();
    let k = h.ncols();
    let mut q = CMatrix::identity(r, r);
    let mut rank = 0;
    while rank < r.min(k) {
        let (pivot, best) = (rank..k)
            .map(|j| (j, h.view((rank, j), (r - rank, 1)).norm()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= tol {
            break;
        }
        h.swap_columns(rank, pivot);
        let mut v: CVector = h.view((rank, rank), (r - rank, 1)).column(0).into_owned();
        let x0 = v[0];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        v[0] += phase * best;
        let vnorm2 = v.norm_squared();
        let two = Complex64::new(2.0 / vnorm2, 0.0);
        {
            let mut sub = h.view_mut((rank, rank), (r - rank, k - rank));
            let w = v.adjoint() * &sub;
            sub -= &v * (w * two);
        }
        {
            let mut sub = q.view_mut((0, rank), (r, r - rank));
            let w = &sub * &v;
            sub -= (w * two) * v.adjoint();
        }
        rank += 1;
    }
    q.columns(rank, r - rank).into_owned()
}

/// Hermitian positive (semi)definite form on coefficient vectors,
/// `⟨u, v⟩ = v^H G u`. Vectors shorter than the form use its leading block.
#[derive(Clone, Debug, PartialEq)]
pub enum Gram {
    Diagonal(Vec<f64>),
    Dense(CMatrix),
}

impl Gram {
    pub fn dim(&self) -> usize {
        match self {
            Gram::Diagonal(w) => w.len(),
            Gram::Dense(m) => m.nrows(),
        }
    }

    /// `G u` for a vector of length `≤ dim`.
    pub fn apply(&self, u: &CVector) -> CVector {
        let n = u.len();
        assert!(n <= self.dim(), "vector longer than the Gram matrix");
        match self {
            Gram::Diagonal(w) => CVector::from_fn(n, |i, _| u[i] * w[i]),
            Gram::Dense(m) => m.view((0, 0), (n, n)) * u,
        }
    }

    /// `G A` for a matrix with `≤ dim` rows.
    pub fn apply_matrix(&self, a: &CMatrix) -> CMatrix {
        let n = a.nrows();
        assert!(n <= self.dim(), "matrix taller than the Gram matrix");
        match self {
            Gram::Diagonal(w) => CMatrix::from_fn(n, a.ncols(), |i, j| a[(i, j)] * w[i]),
            Gram::Dense(m) => m.view((0, 0), (n, n)) * a,
        }
    }

    pub fn inner(&self, u: &CVector, v: &CVector) -> Complex64 {
        self.apply(u).dotc(v).conj()
    }

    pub fn norm(&self, u: &CVector) -> f64 {
        libm::sqrt(self.inner(u, u).re.max(0.0))
    }

    /// `B^H G A`.
    pub fn cross(&self, a: &CMatrix, b: &CMatrix) -> CMatrix {
        b.adjoint() * self.apply_matrix(a)
    }

    /// Leading `(n+1) × (n+1)` block as a dense matrix.
    pub fn to_dense(&self, n: usize) -> CMatrix {
        match self {
            Gram::Diagonal(w) => CMatrix::from_fn(n + 1, n + 1, |i, j| {
                if i == j {
                    Complex64::new(w[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
            Gram::Dense(m) => m.view((0, 0), (n + 1, n + 1)).into_owned(),
        }
    }
}

/// Modified Gram–Schmidt with one reorthogonalization pass under `gram`.
///
/// A candidate is dropped when its residual norm is at most
/// `rank_tol · max_j ‖candidate_j‖`. Returns the orthonormal columns.
pub fn gram_schmidt(candidates: &[CVector], gram: &Gram, rank_tol: f64) -> CMatrix {
    let rows = candidates.first().map_or(0, |c| c.len());
    let largest = candidates.iter().map(|c| gram.norm(c)).fold(0.0, f64::max);
    let mut basis: Vec<CVector> = Vec::new();
    let mut images: Vec<CVector> = Vec::new();
    for c in candidates {
        let mut v = c.clone();
        for _ in 0..2 {
            for (q, gq) in basis.iter().zip(&images) {
                let coef = gq.dotc(&v);
                v.axpy(-coef, q, Complex64::new(1.0, 0.0));
            }
        }
        let nv = gram.norm(&v);
        if nv > rank_tol * largest && nv > 0.0 {
            v.unscale_mut(nv);
            images.push(gram.apply(&v));
            basis.push(v);
        }
    }
    let mut out = CMatrix::zeros(rows, basis.len());
    for (j, q) in basis.iter().enumerate() {
        out.set_column(j, q);
    }
    out
}
