//! Truncated invariant subspaces of `M_B`, their wandering parts
//! `M ⊖ B·M`, and the defect of regenerating `M` from the wandering part.
//!
//! Everything lives in the coefficient space of polynomials of degree `≤ N`.
//! An invariant subspace generated by `g_1, …, g_r` is truncated to
//! `[g]_B ∩ P_N`: the orbit `B^j g_i` is formed at a padded degree and only
//! combinations whose coefficients above `N` vanish (relative to
//! `tail_tol`) are kept. For monomial `B` and polynomial generators this is
//! exact.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::badic::{b_adic_gram, default_depth};
use crate::blaschke::BlaschkeProduct;
use crate::linalg::{gram_schmidt, hermitian_eigenvalues, null_space, CMatrix, CVector, Gram};
use crate::model_space::guard_degree;
use crate::series::ComplexSeries;
use crate::tolerances::Tolerances;
use crate::weights::WeightSequence;

/// Degrees kept free between the comparison range and the truncation.
pub const COMPARE_GUARD: usize = 8;
/// Cosine below which a direction of `M` counts as orthogonal to `B·M`.
const WANDERING_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub enum InnerProductSpec {
    /// `Σ ω(n) a_n conj(b_n)`.
    TaylorDiagonal(WeightSequence),
    /// `Σ_k ω(k) ⟨h_k(f), h_k(g)⟩_{H²}` over B-adic layers.
    BAdic {
        blaschke: BlaschkeProduct,
        weights: WeightSequence,
        depth: usize,
    },
    /// `‖f‖ = ‖z^k f‖_α`, i.e. weights `(n+k+1)^α`.
    Shifted { k: usize, alpha: f64 },
}

impl InnerProductSpec {
    pub fn taylor_power(alpha: f64) -> Self {
        InnerProductSpec::TaylorDiagonal(WeightSequence::power_law(alpha))
    }

    /// B-adic form with weights `(k+1)^α` and a depth large enough for
    /// degree-`n` truncations.
    pub fn b_adic_power(blaschke: BlaschkeProduct, alpha: f64, n: usize) -> Self {
        let depth = 4 * default_depth(n, blaschke.degree()) + 32;
        InnerProductSpec::BAdic {
            blaschke,
            weights: WeightSequence::power_law(alpha),
            depth,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SubspaceError {
    EmptySpan,
    InvalidArgument(&'static str),
    GeneratorDegree { degree: usize, limit: usize },
    CompareTooLarge { n_compare: usize, limit: usize },
    NotPositiveDefinite { min_eig: f64 },
    DegreeMismatch { expected: usize, found: usize },
}

impl fmt::Display for SubspaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubspaceError::EmptySpan => write!(f, "generators span the zero subspace"),
            SubspaceError::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            SubspaceError::GeneratorDegree { degree, limit } => {
                write!(f, "generator degree {degree} exceeds the truncation degree {limit}")
            }
            SubspaceError::CompareTooLarge { n_compare, limit } => {
                write!(f, "comparison degree {n_compare} exceeds the guarded limit {limit}")
            }
            SubspaceError::NotPositiveDefinite { min_eig } => {
                write!(f, "inner product is not positive definite (min eigenvalue {min_eig:e})")
            }
            SubspaceError::DegreeMismatch { expected, found } => {
                write!(f, "subspace has degree {found}, expected {expected}")
            }
        }
    }
}

impl core::error::Error for SubspaceError {}

/// An [`InnerProductSpec`] realized as a Gram matrix on `1, z, …, z^N`.
/// B-adic forms are materialized once here and shared afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct {
    spec: InnerProductSpec,
    degree: usize,
    gram: Gram,
    /// Largest B-adic remainder left while building a dense form.
    max_residual: f64,
}

impl InnerProduct {
    pub fn realize(spec: &InnerProductSpec, n: usize) -> Result<Self, SubspaceError> {
        let (gram, max_residual) = match spec {
            InnerProductSpec::TaylorDiagonal(w) => (Gram::Diagonal(w.values(n)), 0.0),
            InnerProductSpec::Shifted { k, alpha } => (
                Gram::Diagonal(WeightSequence::shifted(WeightSequence::power_law(*alpha), *k).values(n)),
                0.0,
            ),
            InnerProductSpec::BAdic { blaschke, weights, depth } => {
                if *depth == 0 {
                    return Err(SubspaceError::InvalidArgument("B-adic depth must be at least 1"));
                }
                let g = b_adic_gram(blaschke, weights, n, *depth);
                let min_eig = hermitian_eigenvalues(&g.matrix).first().copied().unwrap_or(0.0);
                if min_eig <= 0.0 {
                    return Err(SubspaceError::NotPositiveDefinite { min_eig });
                }
                (Gram::Dense(g.matrix), g.max_residual)
            }
        };
        Ok(Self { spec: spec.clone(), degree: n, gram, max_residual })
    }

    pub fn spec(&self) -> &InnerProductSpec {
        &self.spec
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gram(&self) -> &Gram {
        &self.gram
    }

    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    pub fn inner(&self, f: &ComplexSeries, g: &ComplexSeries) -> Complex64 {
        self.gram.inner(&vector_at(f, self.degree), &vector_at(g, self.degree))
    }

    pub fn norm(&self, f: &ComplexSeries) -> f64 {
        self.gram.norm(&vector_at(f, self.degree))
    }
}

fn vector_at(f: &ComplexSeries, n: usize) -> CVector {
    CVector::from_fn(n + 1, |i, _| f.coeff(i))
}

/// Orthonormal basis (columns) of a subspace of `P_N` under a shared inner product.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    columns: CMatrix,
    ip: Arc<InnerProduct>,
}

impl SubspaceBasis {
    /// Orthonormalizes `vectors` (length `N+1`) under `ip`.
    pub fn from_vectors(vectors: &[CVector], ip: Arc<InnerProduct>) -> Self {
        let columns = if vectors.is_empty() {
            CMatrix::zeros(ip.degree() + 1, 0)
        } else {
            gram_schmidt(vectors, ip.gram(), Tolerances::global().rank_tol)
        };
        Self { columns, ip }
    }

    fn from_matrix(m: &CMatrix, ip: Arc<InnerProduct>) -> Self {
        let vectors: Vec<CVector> = m.column_iter().map(|c| c.into_owned()).collect();
        Self::from_vectors(&vectors, ip)
    }

    pub fn columns(&self) -> &CMatrix {
        &self.columns
    }

    pub fn column(&self, j: usize) -> ComplexSeries {
        crate::linalg::column_series(&self.columns, j)
    }

    pub fn dim(&self) -> usize {
        self.columns.ncols()
    }

    pub fn ambient_degree(&self) -> usize {
        self.ip.degree()
    }

    pub fn ip(&self) -> &Arc<InnerProduct> {
        &self.ip
    }

    /// `max |⟨q_i, q_j⟩ - δ_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let g = self.ip.gram().cross(&self.columns, &self.columns);
        (g - CMatrix::identity(self.dim(), self.dim()))
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    /// The subspace of elements of degree `≤ n`.
    pub fn restrict(&self, n: usize) -> SubspaceBasis {
        let r = restrict_columns(&self.columns, n, Tolerances::global().tail_tol);
        SubspaceBasis::from_matrix(&r, self.ip.clone())
    }
}

/// Euclidean-orthonormal basis of `span(columns)`.
fn euclidean_basis(columns: &CMatrix) -> CMatrix {
    if columns.ncols() == 0 {
        return columns.clone();
    }
    let vectors: Vec<CVector> = columns.column_iter().map(|c| c.into_owned()).collect();
    gram_schmidt(&vectors, &Gram::Diagonal(alloc::vec![1.0; columns.nrows()]), Tolerances::global().rank_tol)
}

/// Basis of `span(columns) ∩ P_n`, keeping combinations whose coefficients
/// above `n` have relative norm `≤ tol`, truncated to degree `n` but padded
/// back to the input row count.
fn restrict_columns(columns: &CMatrix, n: usize, tol: f64) -> CMatrix {
    let rows = columns.nrows();
    let u = euclidean_basis(columns);
    if n + 1 >= rows || u.ncols() == 0 {
        return u;
    }
    let top = u.rows(n + 1, rows - n - 1).into_owned();
    let kernel = null_space(&top, tol);
    let mut out = &u * kernel;
    out.rows_mut(n + 1, rows - n - 1).fill(Complex64::new(0.0, 0.0));
    out
}

pub fn span_invariant(
    generators: &[ComplexSeries],
    b: &BlaschkeProduct,
    ip: &InnerProductSpec,
    n: usize,
) -> Result<SubspaceBasis, SubspaceError> {
    span_invariant_with(generators, b, Arc::new(InnerProduct::realize(ip, n)?))
}

/// Orthonormal basis of `[g_1, …, g_r]_B ∩ P_N` with `N = ip.degree()`.
pub fn span_invariant_with(
    generators: &[ComplexSeries],
    b: &BlaschkeProduct,
    ip: Arc<InnerProduct>,
) -> Result<SubspaceBasis, SubspaceError> {
    let n = ip.degree();
    let tol = Tolerances::global();
    let scale = generators.iter().map(|g| g.h2_norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(SubspaceError::EmptySpan);
    }
    for g in generators {
        let deg = g.degree(tol.tail_tol * scale).unwrap_or(0);
        if deg > n {
            return Err(SubspaceError::GeneratorDegree { degree: deg, limit: n });
        }
    }
    let d = b.degree();
    let padded = 2 * n + guard_degree(d);
    let mut candidates = Vec::new();
    for g in generators {
        let mut orbit = g.resized(padded);
        for j in 0..=n / d {
            if j > 0 {
                orbit = b.mul_series(&orbit, padded);
            }
            candidates.push(CVector::from_column_slice(orbit.coeffs()));
        }
    }
    let mut m = CMatrix::zeros(padded + 1, candidates.len());
    for (j, c) in candidates.iter().enumerate() {
        m.set_column(j, c);
    }
    let restricted = restrict_columns(&m, n, tol.tail_tol);
    let basis = SubspaceBasis::from_matrix(&restricted.rows(0, n + 1).into_owned(), ip);
    if basis.dim() == 0 {
        return Err(SubspaceError::EmptySpan);
    }
    Ok(basis)
}

/// `M ⊖ B·(M ∩ P_{N-d})`: the elements of `M` orthogonal under `M.ip` to
/// `B` times the part of `M` that stays inside `P_N` after multiplication.
pub fn wandering_part(m: &SubspaceBasis, b: &BlaschkeProduct) -> SubspaceBasis {
    let n = m.ambient_degree();
    let d = b.degree();
    let ip = m.ip().clone();
    if n < d || m.dim() == 0 {
        return m.clone();
    }
    let q = restrict_columns(m.columns(), n - d, Tolerances::global().tail_tol);
    let shifted: Vec<CVector> = q
        .column_iter()
        .map(|c| {
            let s = ComplexSeries::from_vec_unchecked(c.iter().copied().collect());
            CVector::from_column_slice(b.mul_series(&s, n).coeffs())
        })
        .collect();
    let v = SubspaceBasis::from_vectors(&shifted, ip.clone());
    if v.dim() == 0 {
        return m.clone();
    }
    let cross = ip.gram().cross(m.columns(), v.columns());
    let kernel = null_space(&cross, WANDERING_TOL);
    SubspaceBasis::from_matrix(&(m.columns() * kernel), ip)
}

/// Largest distance from a unit vector of `a` to `b`, both under `a.ip`.
/// In `[0, 1]`; zero when `a` is trivial.
pub fn subspace_gap(a: &SubspaceBasis, b: &SubspaceBasis) -> f64 {
    if a.dim() == 0 {
        return 0.0;
    }
    let gram = a.ip().gram();
    let r = if b.dim() == 0 {
        a.columns().clone()
    } else {
        let coef = gram.cross(a.columns(), b.columns());
        a.columns() - b.columns() * coef
    };
    let ev = hermitian_eigenvalues(&gram.cross(&r, &r));
    libm::sqrt(ev.last().copied().unwrap_or(0.0).max(0.0)).min(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WspDefect {
    /// Worst distance from a unit vector of `M ∩ P_{N_compare}` to `[W]_B`.
    pub defect: f64,
    pub dim_m: usize,
    pub dim_w: usize,
    pub dim_g: usize,
    pub dim_compare: usize,
}

fn check_compare(n: usize, n_compare: usize, d: usize) -> Result<(), SubspaceError> {
    let limit = n.checked_sub(2 * d + COMPARE_GUARD);
    match limit {
        Some(limit) if n_compare <= limit => Ok(()),
        _ => Err(SubspaceError::CompareTooLarge {
            n_compare,
            limit: limit.unwrap_or(0),
        }),
    }
}

fn regeneration_defect(
    m: &SubspaceBasis,
    w: &SubspaceBasis,
    regenerate: &BlaschkeProduct,
    n_compare: usize,
) -> Result<WspDefect, SubspaceError> {
    let g = if w.dim() == 0 {
        SubspaceBasis::from_vectors(&[], m.ip().clone())
    } else {
        let gens: Vec<ComplexSeries> = (0..w.dim()).map(|j| w.column(j)).collect();
        span_invariant_with(&gens, regenerate, m.ip().clone())?
    };
    let mc = m.restrict(n_compare);
    Ok(WspDefect {
        defect: subspace_gap(&mc, &g),
        dim_m: m.dim(),
        dim_w: w.dim(),
        dim_g: g.dim(),
        dim_compare: mc.dim(),
    })
}

/// Builds `M = [generators]_B`, `W = M ⊖ B·M` and `G = [W]_B` in `P_N`, and
/// measures how far `M ∩ P_{N_compare}` is from `G`. A small defect is
/// consistent with `M = [M ⊖ BM]_B`; a large one only means no convergence
/// was observed at this truncation.
pub fn wsp_defect(
    generators: &[ComplexSeries],
    b: &BlaschkeProduct,
    ip: &InnerProductSpec,
    n: usize,
    n_compare: usize,
) -> Result<WspDefect, SubspaceError> {
    check_compare(n, n_compare, b.degree())?;
    let m = span_invariant(generators, b, ip, n)?;
    let w = wandering_part(&m, b);
    regeneration_defect(&m, &w, b, n_compare)
}

/// Defect of `M = [M ⊖ z^{2k} M]_{z^k}` for `M = [generators]_{z^k}` under
/// the diagonal `(n+1)^α` norm, `α ∈ [-1, 0]`.
pub fn corollary_check(
    generators: &[ComplexSeries],
    k: usize,
    alpha: f64,
    n: usize,
    n_compare: usize,
) -> Result<WspDefect, SubspaceError> {
    if !(-1.0..=0.0).contains(&alpha) {
        return Err(SubspaceError::InvalidArgument("alpha must lie in [-1, 0]"));
    }
    if k == 0 {
        return Err(SubspaceError::InvalidArgument("k must be at least 1"));
    }
    let b = BlaschkeProduct::monomial(k);
    let b2 = BlaschkeProduct::monomial(2 * k);
    check_compare(n, n_compare, 2 * k)?;
    let m = span_invariant(generators, &b, &InnerProductSpec::taylor_power(alpha), n)?;
    let w = wandering_part(&m, &b2);
    regeneration_defect(&m, &w, &b, n_compare)
}

/// Components `f_j` with `f(z) = Σ_{j<k} z^j f_j(z^k)`.
pub fn even_odd_split(f: &ComplexSeries, k: usize) -> Vec<ComplexSeries> {
    let k = k.max(1);
    let n = f.truncation_degree();
    (0..k)
        .map(|j| {
            let coeffs: Vec<Complex64> = (j..=n.max(j)).step_by(k).map(|i| f.coeff(i)).collect();
            ComplexSeries::from_vec_unchecked(coeffs)
        })
        .collect()
}

/// Inverse of [`even_odd_split`]: `Σ_j z^j f_j(z^k)`.
pub fn interleave(parts: &[ComplexSeries]) -> ComplexSeries {
    let k = parts.len().max(1);
    let degree = parts
        .iter()
        .enumerate()
        .map(|(j, p)| p.truncation_degree() * k + j)
        .max()
        .unwrap_or(0);
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); degree + 1];
    for (j, p) in parts.iter().enumerate() {
        for (i, c) in p.coeffs().iter().enumerate() {
            out[i * k + j] = *c;
        }
    }
    ComplexSeries::from_vec_unchecked(out)
}
