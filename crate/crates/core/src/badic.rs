//! B-adic expansion `f = Σ_k h_k B^k` with `h_k ∈ K_B`, and the equivalent
//! norm `‖f‖_B² = Σ_k ω_k ‖h_k‖²_{H²}` built from it.
//!
//! The layers are produced by the Wold-type iteration
//! `r_0 = f`, `h_j = P_{K_B} r_j`, `r_{j+1} = (r_j - h_j)/B`. Since
//! `r_j - h_j ∈ B·H²`, the division is carried out with
//! [`BlaschkeProduct::divide_out`], which stays stable for zeros away from
//! the origin. Layers are stored through their coordinates in the
//! orthonormal basis of [`tm_basis`], so `‖h_k‖_{H²}` is exact.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::blaschke::BlaschkeProduct;
use crate::linalg::CMatrix;
use crate::model_space::{tm_basis, ModelSpaceBasis};
use crate::random::{gaussian_polynomial, trial_rng};
use crate::series::{series_add, series_sub, ComplexSeries};
use crate::tolerances::Tolerances;
use crate::weights::WeightSequence;

/// `ceil((n+1)/d) + 2` layers for a degree-`n` source.
pub fn default_depth(n: usize, degree: usize) -> usize {
    (n + 1).div_ceil(degree.max(1)) + 2
}

#[derive(Clone, Debug, PartialEq)]
pub struct BAdicCoefficients {
    basis: ModelSpaceBasis,
    coords: Vec<Vec<Complex64>>,
    layers: Vec<ComplexSeries>,
    source_degree: usize,
    residual: f64,
    division_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BAdicError {
    ZeroDepth,
    /// The residual after the last layer still exceeds `residual_tol`.
    DepthExhausted {
        partial: Box<BAdicCoefficients>,
        residual: f64,
    },
}

impl fmt::Display for BAdicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BAdicError::ZeroDepth => write!(f, "decomposition depth must be at least 1"),
            BAdicError::DepthExhausted { partial, residual } => write!(
                f,
                "residual {residual:e} after {} layers exceeds the tolerance",
                partial.depth()
            ),
        }
    }
}

impl core::error::Error for BAdicError {}

impl BAdicError {
    /// The partial decomposition carried by `DepthExhausted`.
    pub fn into_partial(self) -> Option<BAdicCoefficients> {
        match self {
            BAdicError::DepthExhausted { partial, .. } => Some(*partial),
            BAdicError::ZeroDepth => None,
        }
    }
}

impl BAdicCoefficients {
    /// Layers given by their coordinates in `tm_basis(b, degree)`.
    pub fn from_coordinates(b: &BlaschkeProduct, coords: Vec<Vec<Complex64>>, degree: usize) -> Self {
        let basis = tm_basis(b, degree);
        let layers = coords.iter().map(|c| basis.synthesize(c)).collect();
        Self {
            basis,
            coords,
            layers,
            source_degree: degree,
            residual: 0.0,
            division_residual: 0.0,
        }
    }

    pub fn blaschke(&self) -> &BlaschkeProduct {
        self.basis.blaschke()
    }

    pub fn basis(&self) -> &ModelSpaceBasis {
        &self.basis
    }

    /// Layers `h_0, h_1, …` expanded to the working truncation.
    pub fn layers(&self) -> &[ComplexSeries] {
        &self.layers
    }

    pub fn coordinates(&self) -> &[Vec<Complex64>] {
        &self.coords
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    /// `‖r_depth‖_{H²}`, the `H²` mass not yet assigned to a layer.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Largest amount by which a remainder failed to vanish on the zeros of
    /// `B` before division (rounding level for healthy runs).
    pub fn division_residual(&self) -> f64 {
        self.division_residual
    }

    pub fn layer_norm(&self, k: usize) -> f64 {
        self.coords
            .get(k)
            .map_or(0.0, |c| libm::sqrt(c.iter().map(|x| x.norm_sqr()).sum()))
    }

    /// `Σ_k weights(k) ‖h_k‖²_{H²}`.
    pub fn weighted_norm_sq(&self, weights: &WeightSequence) -> f64 {
        (0..self.depth())
            .map(|k| weights.weight(k) * { let l = self.layer_norm(k); l * l })
            .sum()
    }
}

pub fn b_adic_decompose(
    f: &ComplexSeries,
    b: &BlaschkeProduct,
    depth: usize,
) -> Result<BAdicCoefficients, BAdicError> {
    b_adic_decompose_with(f, b, depth, &Tolerances::global())
}

/// Layers `h_0, …, h_{depth-1}` of `f`, stopping early once
/// `‖r_j‖_{H²} ≤ residual_tol`.
///
/// Internally the remainders are carried to degree
/// `N + depth·d + 4d + 32` so that the reconstruction is accurate on all
/// degrees `≤ N`.
pub fn b_adic_decompose_with(
    f: &ComplexSeries,
    b: &BlaschkeProduct,
    depth: usize,
    tol: &Tolerances,
) -> Result<BAdicCoefficients, BAdicError> {
    if depth == 0 {
        return Err(BAdicError::ZeroDepth);
    }
    let n = f.truncation_degree();
    let basis = tm_basis(b, n + depth * b.degree());
    let mut r = f.resized(basis.truncation_degree());
    let mut coords = Vec::new();
    let mut layers = Vec::new();
    let mut division_residual: f64 = 0.0;
    let mut residual = r.h2_norm();
    for _ in 0..depth {
        if residual <= tol.residual_tol {
            break;
        }
        let c = basis.coordinates(&r);
        let h = basis.synthesize(&c);
        let (q, res) = b.divide_out(&series_sub(&r, &h));
        division_residual = division_residual.max(res / residual.max(1.0));
        coords.push(c);
        layers.push(h);
        r = q;
        residual = r.h2_norm();
    }
    let out = BAdicCoefficients {
        basis,
        coords,
        layers,
        source_degree: n,
        residual,
        division_residual,
    };
    if residual > tol.residual_tol {
        return Err(BAdicError::DepthExhausted {
            partial: Box::new(out),
            residual,
        });
    }
    Ok(out)
}

/// `Σ_k h_k B^k` truncated at degree `n`.
pub fn b_adic_reconstruct(c: &BAdicCoefficients, n: usize) -> ComplexSeries {
    let b = c.blaschke();
    let mut acc = ComplexSeries::zero(n);
    let mut power = ComplexSeries::one(n);
    for (k, h) in c.layers().iter().enumerate() {
        if k > 0 {
            power = b.mul_series(&power, n);
        }
        acc = series_add(&acc, &crate::series::series_mul(h, &power, n));
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BNorm {
    pub value: f64,
    /// `false` when `α` lies outside `[-1, 1]`; the value is still computed.
    pub supported: bool,
    pub layers: usize,
    pub residual: f64,
}

/// `sqrt(Σ_k (k+1)^α ‖h_k‖²_{H²})`.
pub fn b_norm(f: &ComplexSeries, b: &BlaschkeProduct, alpha: f64, depth: usize) -> Result<BNorm, BAdicError> {
    let c = b_adic_decompose(f, b, depth)?;
    Ok(b_norm_of(&c, alpha))
}

pub fn b_norm_of(c: &BAdicCoefficients, alpha: f64) -> BNorm {
    BNorm {
        value: libm::sqrt(c.weighted_norm_sq(&WeightSequence::power_law(alpha))),
        supported: (-1.0..=1.0).contains(&alpha),
        layers: c.depth(),
        residual: c.residual(),
    }
}

/// `Σ_k weights(k) ⟨h_k(f), h_k(g)⟩_{H²}`.
pub fn b_adic_inner_product(
    f: &ComplexSeries,
    g: &ComplexSeries,
    b: &BlaschkeProduct,
    weights: &WeightSequence,
    depth: usize,
) -> Result<Complex64, BAdicError> {
    let cf = b_adic_decompose(f, b, depth)?;
    let cg = b_adic_decompose(g, b, depth)?;
    Ok(layer_inner_product(&cf, &cg, weights))
}

pub fn layer_inner_product(cf: &BAdicCoefficients, cg: &BAdicCoefficients, weights: &WeightSequence) -> Complex64 {
    cf.coordinates()
        .iter()
        .zip(cg.coordinates())
        .enumerate()
        .map(|(k, (a, b))| {
            let s: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
            s * weights.weight(k)
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BAdicGram {
    /// `G_{ij} = ⟨z^j, z^i⟩_B`, so `⟨u, v⟩_B = v^H G u`.
    pub matrix: CMatrix,
    /// Largest remainder left by a truncated monomial decomposition.
    pub max_residual: f64,
}

/// Dense Gram matrix of the B-adic inner product on `1, z, …, z^n`.
/// Decompositions that exhaust `depth` contribute their partial layers.
pub fn b_adic_gram(b: &BlaschkeProduct, weights: &WeightSequence, n: usize, depth: usize) -> BAdicGram {
    let d = b.degree();
    let mut max_residual: f64 = 0.0;
    // coords[j][k] = coordinates of layer k of z^j
    let mut per_monomial = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let c = match b_adic_decompose(&ComplexSeries::monomial(j, n), b, depth.max(1)) {
            Ok(c) => c,
            Err(e) => e.into_partial().expect("depth is positive"),
        };
        max_residual = max_residual.max(c.residual());
        per_monomial.push(c);
    }
    let layers = per_monomial.iter().map(|c| c.depth()).max().unwrap_or(0);
    let mut matrix = CMatrix::zeros(n + 1, n + 1);
    for k in 0..layers {
        let ck = CMatrix::from_fn(d, n + 1, |i, j| {
            per_monomial[j]
                .coordinates()
                .get(k)
                .map_or(Complex64::new(0.0, 0.0), |c| c[i])
        });
        matrix += (ck.adjoint() * &ck).scale(weights.weight(k));
    }
    BAdicGram { matrix, max_residual }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEquivalence {
    /// Smallest observed `‖f‖_B / ‖f‖_α`.
    pub c_min: f64,
    /// Largest observed `‖f‖_B / ‖f‖_α`.
    pub c_max: f64,
    pub max_residual: f64,
    pub supported: bool,
}

/// Empirical range of `‖f‖_B / ‖f‖_α` over `trials` random polynomials of
/// degree `n`. Trial `t` draws from stream `t` of the seeded generator.
pub fn norm_equivalence_estimate(b: &BlaschkeProduct, alpha: f64, n: usize, trials: usize, seed: u64) -> NormEquivalence {
    let weights = WeightSequence::power_law(alpha);
    let depth = 4 * default_depth(n, b.degree()) + 32;
    let mut c_min = f64::INFINITY;
    let mut c_max: f64 = 0.0;
    let mut max_residual: f64 = 0.0;
    for t in 0..trials.max(1) {
        let f = gaussian_polynomial(&mut trial_rng(seed, t as u64), n);
        let f = f.scale(Complex64::new(1.0 / f.weighted_norm(&weights), 0.0));
        let c = match b_adic_decompose(&f, b, depth) {
            Ok(c) => c,
            Err(e) => e.into_partial().expect("depth is positive"),
        };
        max_residual = max_residual.max(c.residual());
        let ratio = b_norm_of(&c, alpha).value;
        c_min = c_min.min(ratio);
        c_max = c_max.max(ratio);
    }
    NormEquivalence {
        c_min,
        c_max,
        max_residual,
        supported: (-1.0..=1.0).contains(&alpha),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(x: &[f64]) -> ComplexSeries {
        ComplexSeries::from_real(x).unwrap()
    }

    #[test]
    fn shift_layers_are_taylor_coefficients() {
        let f = ComplexSeries::new(vec![c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 0.3), c(0.7, 0.0)]).unwrap();
        let dec = b_adic_decompose(&f, &BlaschkeProduct::monomial(1), default_depth(3, 1)).unwrap();
        assert_eq!(dec.depth(), 4);
        for (k, h) in dec.layers().iter().enumerate() {
            assert!((h.coeff(0) - f.coeff(k)).norm() < 1e-15);
            assert!(h.coeffs()[1..].iter().all(|x| x.norm() < 1e-15));
        }
    }

    #[test]
    fn z_squared_groups_coefficients() {
        let f = real(&[1.0, 1.0, 1.0, 1.0]);
        let dec = b_adic_decompose(&f, &BlaschkeProduct::monomial(2), 4).unwrap();
        assert_eq!(dec.depth(), 2);
        for h in dec.layers() {
            assert!(h.max_abs_diff(&real(&[1.0, 1.0])) < 1e-15);
        }
    }

    #[test]
    fn monomial_layers_collect_blocks_of_k() {
        let f = real(&[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]);
        let k = 3;
        let dec = b_adic_decompose(&f, &BlaschkeProduct::monomial(k), 5).unwrap();
        for (j, h) in dec.layers().iter().enumerate() {
            for i in 0..k {
                assert!((h.coeff(i) - f.coeff(j * k + i)).norm() < 1e-15);
            }
            assert!(h.degree(1e-15).unwrap_or(0) < k);
        }
    }

    #[test]
    fn reconstruct_examples() {
        let b = BlaschkeProduct::new(vec![c(0.5, 0.0), c(0.0, 0.3)], 0.0).unwrap();
        let h = vec![c(0.3, -0.1), c(1.0, 0.0)];
        let single = BAdicCoefficients::from_coordinates(&b, vec![h.clone()], 20);
        let h_series = single.layers()[0].clone();
        assert!(b_adic_reconstruct(&single, 20).max_abs_diff(&h_series.resized(20)) < 1e-15);

        let zero = vec![c(0.0, 0.0); 2];
        let shifted = BAdicCoefficients::from_coordinates(&b, vec![zero.clone(), zero, h], 20);
        let expected = b.pow(2).mul_series(&h_series, 20);
        assert!(b_adic_reconstruct(&shifted, 20).max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn round_trip_for_non_monomial_b() {
        let b = BlaschkeProduct::new(vec![c(0.5, 0.0)], 0.0).unwrap();
        let f = real(&[1.0, 1.0]);
        let dec = b_adic_decompose(&f, &b, 80).unwrap();
        assert!(dec.residual() <= 1e-9);
        assert!(b_adic_reconstruct(&dec, 1).max_abs_diff(&f) < 1e-9);
        assert!(dec.division_residual() < 1e-12);
    }

    #[test]
    fn depth_exhausted_carries_partial() {
        let b = BlaschkeProduct::new(vec![c(0.5, 0.0)], 0.0).unwrap();
        let err = b_adic_decompose(&real(&[1.0, 1.0]), &b, 8).unwrap_err();
        match err {
            BAdicError::DepthExhausted { partial, residual } => {
                assert_eq!(partial.depth(), 8);
                assert!(residual > 1e-9 && residual < 0.1);
                assert_eq!(partial.residual(), residual);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(b_adic_decompose(&real(&[1.0]), &b, 0), Err(BAdicError::ZeroDepth));
    }

    #[test]
    fn b_norm_collapses_to_alpha_norm_for_shift() {
        let f = ComplexSeries::new(vec![c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 0.3), c(0.7, 0.0)]).unwrap();
        for alpha in [-1.0, -0.3, 0.0, 0.6, 1.0] {
            let bn = b_norm(&f, &BlaschkeProduct::monomial(1), alpha, 6).unwrap();
            let expected = f.weighted_norm(&WeightSequence::power_law(alpha));
            assert!((bn.value - expected).abs() < 1e-12);
            assert!(bn.supported);
        }
        assert!(!b_norm(&f, &BlaschkeProduct::monomial(1), 1.5, 6).unwrap().supported);
    }

    #[test]
    fn b_norm_single_layer_cases() {
        let b = BlaschkeProduct::new(vec![c(0.5, 0.0), c(0.0, 0.3)], 0.0).unwrap();
        let coords = vec![c(0.6, 0.0), c(0.0, -0.8)];
        let h = BAdicCoefficients::from_coordinates(&b, vec![coords.clone()], 60).layers()[0].clone();
        let alpha = -0.7;
        let bn = b_norm(&h.resized(60), &b, alpha, 10).unwrap();
        assert!((bn.value - 1.0).abs() < 1e-9);
        // f = B^2 h
        let f = b.pow(2).mul_series(&h, 60);
        let bn = b_norm(&f, &b, alpha, 10).unwrap();
        assert!((bn.value - libm::pow(3.0, alpha / 2.0)).abs() < 1e-9, "{}", bn.value);
    }

    #[test]
    fn inner_product_examples() {
        let b = BlaschkeProduct::new(vec![c(0.5, 0.0), c(0.0, 0.3)], 0.0).unwrap();
        let basis = tm_basis(&b, 40);
        let h1 = basis.synthesize(&[c(1.0, 0.0), c(0.5, 0.5)]).resized(40);
        let h2 = basis.synthesize(&[c(-0.2, 0.0), c(0.0, 1.0)]).resized(40);
        let w = WeightSequence::power_law(-0.5);
        let ip = b_adic_inner_product(&h1, &h2, &b, &w, 10).unwrap();
        let direct: Complex64 = h1.coeffs().iter().zip(h2.coeffs()).map(|(x, y)| x * y.conj()).sum();
        assert!((ip - direct).norm() < 1e-9);

        let bh = b.mul_series(&h1, 40);
        assert!(b_adic_inner_product(&bh, &h2, &b, &w, 10).unwrap().norm() < 1e-9);

        let f = real(&[1.0, -0.5, 0.25]);
        let w = WeightSequence::power_law(0.4);
        let ip = b_adic_inner_product(&f, &f, &b, &w, 200).unwrap();
        let bn = b_norm(&f, &b, 0.4, 200).unwrap().value;
        assert!((ip.re - bn * bn).abs() < 1e-12 && ip.im.abs() < 1e-15);
    }

    #[test]
    fn layers_are_mutually_orthogonal_in_h2() {
        let b = BlaschkeProduct::new(vec![c(0.5, 0.0), c(0.0, 0.3)], 0.0).unwrap();
        let f = real(&[1.0, -1.0, 0.5, 2.0, 0.0, 1.0]);
        let dec = b_adic_decompose(&f, &b, 60).unwrap();
        let n = 200;
        let pieces: Vec<ComplexSeries> = dec
            .layers()
            .iter()
            .take(6)
            .enumerate()
            .map(|(k, h)| {
                let p = if k == 0 { ComplexSeries::one(n) } else { b.pow(k).taylor(n) };
                crate::series::series_mul(h, &p, n)
            })
            .collect();
        for i in 0..pieces.len() {
            for j in 0..i {
                let ip: Complex64 = pieces[i].coeffs().iter().zip(pieces[j].coeffs()).map(|(x, y)| x * y.conj()).sum();
                assert!(ip.norm() < 1e-7, "({i},{j}) {ip}");
            }
        }
    }

    #[test]
    fn b_adic_gram_is_hermitian_and_matches_inner_product() {
        let b = BlaschkeProduct::new(vec![c(0.0, 0.0), c(0.4, 0.0)], 0.0).unwrap();
        let w = WeightSequence::power_law(-1.0);
        let gram = b_adic_gram(&b, &w, 6, 80);
        assert!((&gram.matrix - gram.matrix.adjoint()).norm() < 1e-14);
        let f = real(&[0.2, 1.0, 0.0, -0.4]);
        let g = real(&[1.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.3]);
        let direct = b_adic_inner_product(&f.resized(6), &g, &b, &w, 80).unwrap();
        let u = crate::linalg::to_vector(&f.resized(6));
        let v = crate::linalg::to_vector(&g);
        let via_gram = (v.adjoint() * &gram.matrix * u)[(0, 0)];
        assert!((direct - via_gram).norm() < 1e-9);
    }

    #[test]
    fn norm_equivalence_examples() {
        let est = norm_equivalence_estimate(&BlaschkeProduct::monomial(1), -0.4, 12, 5, 3);
        assert!((est.c_min - 1.0).abs() < 1e-10 && (est.c_max - 1.0).abs() < 1e-10);

        let est = norm_equivalence_estimate(&BlaschkeProduct::monomial(2), 0.0, 12, 5, 3);
        assert!((est.c_min - 1.0).abs() < 1e-8 && (est.c_max - 1.0).abs() < 1e-8);

        let half = BlaschkeProduct::new(vec![c(0.5, 0.0)], 0.0).unwrap();
        let a = norm_equivalence_estimate(&half, -1.0, 10, 8, 11);
        let b2 = norm_equivalence_estimate(&half, -1.0, 20, 8, 11);
        for e in [a, b2] {
            assert!(e.c_min.is_finite() && e.c_min > 0.0 && e.c_min <= e.c_max && e.c_max.is_finite());
        }
        assert!(b2.c_max / a.c_max < 2.0 && b2.c_max / a.c_max > 0.5);
        assert!(b2.c_min / a.c_min < 2.0 && b2.c_min / a.c_min > 0.5);
    }
}
