//! Truncated Taylor series with complex coefficients.
//!
//! A [`ComplexSeries`] of truncation degree `N` stores `a_0, …, a_N`
//! densely. Every operation states its output truncation explicitly;
//! [`series_mul`] is the only one that silently drops terms (those of degree
//! above the requested `N`).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::tolerances::Tolerances;
use crate::weights::WeightSequence;

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesError {
    Empty,
    NonFinite { index: usize },
    /// The dividend does not vanish to the divisor's order at the origin.
    DivisionOrderMismatch { order: usize, index: usize, modulus: f64 },
    /// Every coefficient of the divisor is below `order_tol`.
    DegenerateDivisor,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::Empty => write!(f, "a series needs at least one coefficient"),
            SeriesError::NonFinite { index } => write!(f, "coefficient {index} is not finite"),
            SeriesError::DivisionOrderMismatch {
                order,
                index,
                modulus,
            } => write!(
                f,
                "dividend must vanish to order {order} at 0, but coefficient {index} has modulus {modulus:e}"
            ),
            SeriesError::DegenerateDivisor => write!(f, "divisor is numerically zero"),
        }
    }
}

impl core::error::Error for SeriesError {}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSeries {
    coeffs: Vec<Complex64>,
}

impl ComplexSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        if let Some(index) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(SeriesError::NonFinite { index });
        }
        Ok(Self { coeffs })
    }

    /// Real coefficients, degree order.
    pub fn from_real(coeffs: &[f64]) -> Result<Self, SeriesError> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(0, degree)
    }

    /// `z^k` truncated at `degree` (the zero series if `k > degree`).
    pub fn monomial(k: usize, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        if k <= degree {
            s.coeffs[k] = Complex64::new(1.0, 0.0);
        }
        s
    }

    /// Monic polynomial `Π (z - a_i)`, exact degree `zeros.len()`.
    pub fn from_zeros(zeros: &[Complex64]) -> Self {
        let mut p = vec![Complex64::new(1.0, 0.0)];
        for a in zeros {
            let mut q = vec![Complex64::new(0.0, 0.0); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                q[i + 1] += c;
                q[i] -= a * c;
            }
            p = q;
        }
        Self { coeffs: p }
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^n`; zero past the truncation.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Pads with zeros or drops terms so the truncation degree becomes `degree`.
    pub fn resized(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    /// Largest index whose coefficient exceeds `tol` in modulus, if any.
    pub fn degree(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.norm() > tol)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `f(0)`-based evaluation by Horner's rule on the truncation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Plain ℓ² norm of the coefficients, i.e. the `H²` norm.
    pub fn h2_norm(&self) -> f64 {
        libm::sqrt(self.coeffs.iter().map(|c| c.norm_sqr()).sum())
    }

    pub fn weighted_norm(&self, weights: &WeightSequence) -> f64 {
        libm::sqrt(weighted_inner_product(self, self, weights).re.max(0.0))
    }

    /// `max_n |a_n - b_n|` over the longer of the two truncations.
    pub fn max_abs_diff(&self, other: &ComplexSeries) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| (self.coeff(i) - other.coeff(i)).norm())
            .fold(0.0, f64::max)
    }
}

/// Coefficientwise sum; the shorter operand is zero-padded.
pub fn series_add(f: &ComplexSeries, g: &ComplexSeries) -> ComplexSeries {
    let n = f.coeffs.len().max(g.coeffs.len());
    ComplexSeries {
        coeffs: (0..n).map(|i| f.coeff(i) + g.coeff(i)).collect(),
    }
}

pub fn series_sub(f: &ComplexSeries, g: &ComplexSeries) -> ComplexSeries {
    let n = f.coeffs.len().max(g.coeffs.len());
    ComplexSeries {
        coeffs: (0..n).map(|i| f.coeff(i) - g.coeff(i)).collect(),
    }
}

/// Cauchy product truncated at degree `n`.
pub fn series_mul(f: &ComplexSeries, g: &ComplexSeries, n: usize) -> ComplexSeries {
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for (i, a) in f.coeffs.iter().enumerate().take(n + 1) {
        if *a == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, b) in g.coeffs.iter().enumerate().take(n + 1 - i) {
            out[i + j] += a * b;
        }
    }
    ComplexSeries { coeffs: out }
}

/// `f / g` to degree `n`, using the global tolerances.
pub fn series_div(f: &ComplexSeries, g: &ComplexSeries, n: usize) -> Result<ComplexSeries, SeriesError> {
    series_div_with(f, g, n, &Tolerances::global())
}

/// `f / g` to degree `n`.
///
/// Let `m` be the order of `g` at the origin. Both operands are shifted down
/// by `m` and the quotient is obtained by forward deconvolution against a
/// divisor with nonzero constant term. Forward deconvolution amplifies
/// rounding by `|ζ|^{-n}` when `g` has a zero `ζ` inside the disc; for exact
/// division by a Blaschke product use [`crate::BlaschkeProduct::divide_out`].
pub fn series_div_with(
    f: &ComplexSeries,
    g: &ComplexSeries,
    n: usize,
    tol: &Tolerances,
) -> Result<ComplexSeries, SeriesError> {
    let m = g
        .coeffs
        .iter()
        .position(|c| c.norm() > tol.order_tol)
        .ok_or(SeriesError::DegenerateDivisor)?;
    for i in 0..m {
        let modulus = f.coeff(i).norm();
        if modulus > tol.residual_tol {
            return Err(SeriesError::DivisionOrderMismatch {
                order: m,
                index: i,
                modulus,
            });
        }
    }
    let divisor = &g.coeffs[m..];
    let lead = divisor[0];
    let mut q = vec![Complex64::new(0.0, 0.0); n + 1];
    for k in 0..=n {
        let mut acc = f.coeff(k + m);
        for j in 1..divisor.len().min(k + 1) {
            acc -= divisor[j] * q[k - j];
        }
        q[k] = acc / lead;
    }
    Ok(ComplexSeries { coeffs: q })
}

/// `Σ_n a_n · conj(b_n) · ω(n)` over the indices both series share.
pub fn weighted_inner_product(f: &ComplexSeries, g: &ComplexSeries, weights: &WeightSequence) -> Complex64 {
    f.coeffs
        .iter()
        .zip(&g.coeffs)
        .enumerate()
        .map(|(n, (a, b))| a * b.conj() * weights.weight(n))
        .sum()
}

impl Add for &ComplexSeries {
    type Output = ComplexSeries;
    fn add(self, rhs: &ComplexSeries) -> ComplexSeries {
        series_add(self, rhs)
    }
}

impl Sub for &ComplexSeries {
    type Output = ComplexSeries;
    fn sub(self, rhs: &ComplexSeries) -> ComplexSeries {
        series_sub(self, rhs)
    }
}

impl Neg for &ComplexSeries {
    type Output = ComplexSeries;
    fn neg(self) -> ComplexSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
