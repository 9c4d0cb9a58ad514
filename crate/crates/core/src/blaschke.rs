//! Finite Blaschke products `B(z) = e^{iθ} Π (z - a_i)/(1 - conj(a_i) z)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::linalg::CMatrix;
use crate::series::ComplexSeries;

#[derive(Clone, Debug, PartialEq)]
pub enum BlaschkeError {
    /// A Blaschke product needs at least one zero.
    NoZeros,
    /// Zero `index` has modulus above `1 - 1e-12` (or is not finite).
    ZeroOutsideDisc { index: usize, modulus: f64 },
    PoleProximity { index: usize },
}

impl fmt::Display for BlaschkeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlaschkeError::NoZeros => write!(f, "a Blaschke product needs at least one zero"),
            BlaschkeError::ZeroOutsideDisc { index, modulus } => {
                write!(f, "zero {index} has modulus {modulus}, must be below 1 - 1e-12")
            }
            BlaschkeError::PoleProximity { index } => {
                write!(f, "evaluation point is within 1e-14 of the pole of factor {index}")
            }
        }
    }
}

impl core::error::Error for BlaschkeError {}

/// Zeros are kept as a flat list, repeated according to multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
    phase: f64,
}

impl BlaschkeProduct {
    pub const MAX_ZERO_MODULUS: f64 = 1.0 - 1e-12;

    pub fn new(zeros: Vec<Complex64>, phase: f64) -> Result<Self, BlaschkeError> {
        if zeros.is_empty() {
            return Err(BlaschkeError::NoZeros);
        }
        for (index, a) in zeros.iter().enumerate() {
            let modulus = a.norm();
            if !(modulus <= Self::MAX_ZERO_MODULUS) {
                return Err(BlaschkeError::ZeroOutsideDisc { index, modulus });
            }
        }
        Ok(Self { zeros, phase })
    }

    /// `z^k`, `k ≥ 1`.
    pub fn monomial(k: usize) -> Self {
        assert!(k >= 1, "z^0 is not a Blaschke product of positive degree");
        Self {
            zeros: vec![Complex64::new(0.0, 0.0); k],
            phase: 0.0,
        }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// Multiplicity of the zero at the origin.
    pub fn order_at_origin(&self) -> usize {
        self.zeros.iter().filter(|a| a.norm() == 0.0).count()
    }

    /// True when `B = e^{iθ} z^d`.
    pub fn is_monomial(&self) -> bool {
        self.order_at_origin() == self.degree()
    }

    fn unimodular(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phase)
    }

    /// `B^k` (zeros repeated `k` times, phase `kθ`).
    pub fn pow(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut zeros = Vec::with_capacity(self.zeros.len() * k);
        for _ in 0..k {
            zeros.extend_from_slice(&self.zeros);
        }
        Self {
            zeros,
            phase: self.phase * k as f64,
        }
    }

    /// Product formula, factor by factor.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, BlaschkeError> {
        let mut acc = self.unimodular();
        for (index, a) in self.zeros.iter().enumerate() {
            let denom = Complex64::new(1.0, 0.0) - a.conj() * z;
            if denom.norm() < 1e-14 {
                return Err(BlaschkeError::PoleProximity { index });
            }
            acc *= (z - a) / denom;
        }
        Ok(acc)
    }

    /// Taylor coefficients of `B` at the origin up to degree `n`.
    pub fn taylor(&self, n: usize) -> ComplexSeries {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = self.unimodular();
        for a in &self.zeros {
            apply_factor(&mut coeffs, *a);
        }
        ComplexSeries::from_vec_unchecked(coeffs)
    }

    /// `B · f` to degree `n`, via the factor recurrences (no dense product).
    pub fn mul_series(&self, f: &ComplexSeries, n: usize) -> ComplexSeries {
        let mut coeffs = f.resized(n).into_coeffs();
        for a in &self.zeros {
            apply_factor(&mut coeffs, *a);
        }
        let u = self.unimodular();
        for c in &mut coeffs {
            *c *= u;
        }
        ComplexSeries::from_vec_unchecked(coeffs)
    }

    /// Lower-triangular Toeplitz matrix of `f ↦ B f` from degree `≤ n_in`
    /// coefficients to degree `≤ n_out` coefficients.
    pub fn multiplication_matrix(&self, n_in: usize, n_out: usize) -> CMatrix {
        let b = self.taylor(n_out);
        CMatrix::from_fn(n_out + 1, n_in + 1, |i, j| {
            if i >= j {
                b.coeff(i - j)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Computes `q = g / B` for `g ∈ B·H²`, keeping the truncation degree.
    ///
    /// Each factor is removed by multiplying with `1 - conj(a) z` and then
    /// dividing by `z - a` with the backward recurrence
    /// `q_{n-1} = v_n + a q_n`, which is contractive for `|a| < 1`. Only the
    /// top coefficients feel the truncation. The returned residual is the
    /// largest `|v_0 + a q_0|` over the factors, i.e. how far `g` is from
    /// vanishing on the zero set.
    pub fn divide_out(&self, g: &ComplexSeries) -> (ComplexSeries, f64) {
        let len = g.truncation_degree() + 1;
        let mut cur: Vec<Complex64> = g.coeffs().to_vec();
        let mut residual: f64 = 0.0;
        let mut v = vec![Complex64::new(0.0, 0.0); len + 1];
        for a in &self.zeros {
            let ac = a.conj();
            v[0] = cur[0];
            for n in 1..len {
                v[n] = cur[n] - ac * cur[n - 1];
            }
            v[len] = -ac * cur[len - 1];
            let mut q = v[len];
            for n in (1..len).rev() {
                cur[n] = q;
                q = v[n] + a * q;
            }
            cur[0] = q;
            residual = residual.max((v[0] + a * q).norm());
        }
        let u = self.unimodular().conj();
        for c in &mut cur {
            *c *= u;
        }
        (ComplexSeries::from_vec_unchecked(cur), residual)
    }
}

/// In place: `c ← c · (z - a)/(1 - conj(a) z)`, truncated to `c.len()`.
fn apply_factor(c: &mut [Complex64], a: Complex64) {
    let ac = a.conj();
    // c / (1 - conj(a) z)
    for n in 1..c.len() {
        let prev = c[n - 1];
        c[n] += ac * prev;
    }
    // (z - a) · c
    for n in (1..c.len()).rev() {
        c[n] = c[n - 1] - a * c[n];
    }
    c[0] = -a * c[0];
}
