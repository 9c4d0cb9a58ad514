//! Sufficient conditions for the wandering subspace property of weighted
//! shifts, as weight inequalities and as a truncated operator inequality.
//!
//! For `T = M_{z^k}` on a diagonal norm `‖f‖² = Σ ω(n)|f_n|²`, the form
//! `2‖Tx‖² + 2‖y‖² - ‖x + Ty‖²` splits into scalar terms
//! `(2ω(s+k) - ω(s))|x_s|²` for `s < k` and `2×2` blocks coupling
//! `x_{s+k}` with `y_s`. The scalar terms give condition (a), the block
//! determinants give condition (b). Only the part of the scan starting at
//! `s0` is checked, which models the subspace `z^{s0}·H`.
//!
//! The purity condition `∩ T^n H = {0}` holds for every operator in scope
//! and is not checked.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::linalg::{hermitian_eigenvalues, CMatrix};
use crate::weights::{WeightError, WeightSequence};

/// Relative slack for weight inequalities.
pub const WEIGHT_REL_TOL: f64 = 1e-12;
/// The operator inequality holds when the smallest eigenvalue is `≥ -OPERATOR_TOL`.
pub const OPERATOR_TOL: f64 = 1e-9;
pub const DEFAULT_N_MAX: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `ω(s) ≤ 2ω(s+k)`.
    A,
    /// `1/ω(s) + 1/ω(s+2k) ≤ 2/ω(s+k)`.
    B,
    /// `ω(n) + ω(n+2k) ≤ 2ω(n+k)`.
    Concavity,
}

impl Condition {
    pub fn tag(self) -> &'static str {
        match self {
            Condition::A => "a",
            Condition::B => "b",
            Condition::Concavity => "concavity",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub condition: Condition,
    pub index: usize,
    pub lhs: f64,
    pub rhs: f64,
}

/// Numerical evidence that the inequality persists past the scanned range:
/// the weights follow a power law from `start` on, with an exponent in the
/// range where the stride-`k` difference is monotone, and that difference
/// was observed to be monotone on `start..=end`. Heuristic, not a proof.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailCertificate {
    pub start: usize,
    pub end: usize,
    pub exponent: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub holds: bool,
    pub violations: Vec<Violation>,
    /// Inclusive range of scanned indices.
    pub scanned_range: (usize, usize),
    pub tail_certificate: Option<TailCertificate>,
}

impl CriterionReport {
    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ShimorinError {
    InvalidArgument(&'static str),
    EmptyWindow { alpha: f64, lo: f64, hi: f64 },
    AlphaOutOfRange { alpha: f64 },
    DegenerateDenominator { alpha: f64, value: f64 },
    DimensionMismatch { expected: usize, found: usize, what: &'static str },
    Weight(WeightError),
}

impl fmt::Display for ShimorinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShimorinError::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            ShimorinError::EmptyWindow { alpha, lo, hi } => {
                write!(f, "omega0 window is empty at alpha={alpha}: lo={lo} > hi={hi}")
            }
            ShimorinError::AlphaOutOfRange { alpha } => write!(f, "alpha={alpha} is outside the supported range"),
            ShimorinError::DegenerateDenominator { alpha, value } => {
                write!(f, "omega0 window denominator {value:e} is not positive at alpha={alpha}")
            }
            ShimorinError::DimensionMismatch { expected, found, what } => {
                write!(f, "{what}: expected {expected}, found {found}")
            }
            ShimorinError::Weight(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ShimorinError {}

impl From<WeightError> for ShimorinError {
    fn from(e: WeightError) -> Self {
        ShimorinError::Weight(e)
    }
}

fn violates(lhs: f64, rhs: f64) -> bool {
    lhs > rhs + WEIGHT_REL_TOL * lhs.abs().max(rhs.abs())
}

/// `d(s) = v(s+k) - v(s)` is monotone on `from..=to` (nondecreasing when
/// `increasing`), up to the relative slack.
fn stride_difference_monotone(v: &[f64], k: usize, from: usize, to: usize, increasing: bool) -> bool {
    (from..to).all(|s| {
        let d0 = v[s + k] - v[s];
        let d1 = v[s + k + 1] - v[s + 1];
        let slack = WEIGHT_REL_TOL * v[s + k + 1].abs().max(v[s].abs());
        if increasing {
            d1 >= d0 - slack
        } else {
            d1 <= d0 + slack
        }
    })
}

/// Conditions (a) on `s0..s0+k` and (b) on `s0..=n_max`.
pub fn shimorin_weight_criterion(
    weights: &WeightSequence,
    k: usize,
    s0: usize,
    n_max: usize,
) -> Result<CriterionReport, ShimorinError> {
    if k == 0 {
        return Err(ShimorinError::InvalidArgument("k must be at least 1"));
    }
    if n_max < s0 + 2 * k {
        return Err(ShimorinError::InvalidArgument("n_max must be at least s0 + 2k"));
    }
    let w = weights.values(n_max + 2 * k + 1);
    let mut violations = Vec::new();
    for s in s0..s0 + k {
        let (lhs, rhs) = (w[s], 2.0 * w[s + k]);
        if violates(lhs, rhs) {
            violations.push(Violation { condition: Condition::A, index: s, lhs, rhs });
        }
    }
    let inv: Vec<f64> = w.iter().map(|x| 1.0 / x).collect();
    for s in s0..=n_max {
        let (lhs, rhs) = (inv[s] + inv[s + 2 * k], 2.0 * inv[s + k]);
        if violates(lhs, rhs) {
            violations.push(Violation { condition: Condition::B, index: s, lhs, rhs });
        }
    }
    // (b) at s is g(s) ≤ g(s+k) with g(s) = 1/ω(s) - 1/ω(s+k)
    let exponent = weights.tail_exponent();
    let start = s0.max(weights.tail_start());
    let tail_certificate = ((-1.0..=0.0).contains(&exponent)
        && start < n_max
        && stride_difference_monotone(&inv, k, start, n_max, false))
    .then_some(TailCertificate { start, end: n_max, exponent });
    Ok(CriterionReport {
        holds: violations.is_empty() && tail_certificate.is_some(),
        violations,
        scanned_range: (s0, n_max),
        tail_certificate,
    })
}

/// `ω(n+2k) - 2ω(n+k) + ω(n) ≤ 0` on `0..=n_max`.
pub fn concavity_criterion(weights: &WeightSequence, k: usize, n_max: usize) -> Result<CriterionReport, ShimorinError> {
    if k == 0 {
        return Err(ShimorinError::InvalidArgument("k must be at least 1"));
    }
    let w = weights.values(n_max + 2 * k + 1);
    let mut violations = Vec::new();
    for n in 0..=n_max {
        let (lhs, rhs) = (w[n] + w[n + 2 * k], 2.0 * w[n + k]);
        if violates(lhs, rhs) {
            violations.push(Violation { condition: Condition::Concavity, index: n, lhs, rhs });
        }
    }
    let exponent = weights.tail_exponent();
    let start = weights.tail_start();
    let tail_certificate = ((0.0..=1.0).contains(&exponent)
        && start < n_max
        && stride_difference_monotone(&w, k, start, n_max, false))
    .then_some(TailCertificate { start, end: n_max, exponent });
    Ok(CriterionReport {
        holds: violations.is_empty() && tail_certificate.is_some(),
        violations,
        scanned_range: (0, n_max),
        tail_certificate,
    })
}

/// `log 2 / log(k+1)`: `power_law(α)` passes condition (a) at `s0 = 0` iff
/// `α ≥ -alpha_threshold_monomial(k)`.
pub fn alpha_threshold_monomial(k: usize) -> f64 {
    core::f64::consts::LN_2 / libm::log((k + 1) as f64)
}

/// `log(2/3) / log(5/3)`, the left end of the `ω₀` window.
pub fn z2_improved_threshold() -> f64 {
    libm::log(2.0 / 3.0) / libm::log(5.0 / 3.0)
}

/// Admissible `ω₀ = ‖1‖²` for `power_law(α)` with `M_{z²}`:
/// `1/(2·3^{-α} - 5^{-α}) ≤ ω₀ ≤ 2·3^α`.
pub fn omega0_window(alpha: f64) -> Result<(f64, f64), ShimorinError> {
    let den = 2.0 * libm::pow(3.0, -alpha) - libm::pow(5.0, -alpha);
    if den <= 1e-14 {
        return Err(ShimorinError::DegenerateDenominator { alpha, value: den });
    }
    Ok((1.0 / den, 2.0 * libm::pow(3.0, alpha)))
}

/// `power_law(α)` with `ω₀` moved to the midpoint of [`omega0_window`].
pub fn improved_z2_weights(alpha: f64) -> Result<WeightSequence, ShimorinError> {
    if alpha > 0.0 {
        return Err(ShimorinError::AlphaOutOfRange { alpha });
    }
    let (lo, hi) = omega0_window(alpha)?;
    if lo > hi {
        return Err(ShimorinError::EmptyWindow { alpha, lo, hi });
    }
    Ok(WeightSequence::explicit(alloc::vec![0.5 * (lo + hi)], WeightSequence::power_law(alpha))?)
}

/// Head `(t+1)^{-16}` for `t = 0..=21` followed by the Bergman tail `1/(n+1)`.
pub fn secozk_weights() -> WeightSequence {
    let head = (0..22).map(|t| libm::pow((t + 1) as f64, -16.0)).collect();
    WeightSequence::explicit(head, WeightSequence::power_law(-1.0)).expect("head weights are positive")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorCheck {
    pub min_eig: f64,
    pub holds: bool,
}

/// Smallest eigenvalue of `Q(x, y) = 2‖Tx‖² + 2‖y‖² - ‖x + Ty‖²` over
/// inputs of degree `≤ n_in`, with the diagonal norm `gram` on the output
/// space. `t` has `n_in + 1` columns and strictly more rows.
pub fn shimorin_operator_check(t: &CMatrix, gram: &[f64], n_in: usize) -> Result<OperatorCheck, ShimorinError> {
    check_dims(t, gram.len(), n_in)?;
    let dense = CMatrix::from_fn(gram.len(), gram.len(), |i, j| {
        if i == j {
            Complex64::new(gram[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(operator_form_min_eig(t, &dense, n_in))
}

/// [`shimorin_operator_check`] for a dense Hermitian Gram matrix.
pub fn shimorin_operator_check_dense(t: &CMatrix, gram: &CMatrix, n_in: usize) -> Result<OperatorCheck, ShimorinError> {
    if gram.ncols() != gram.nrows() {
        return Err(ShimorinError::DimensionMismatch {
            expected: gram.nrows(),
            found: gram.ncols(),
            what: "gram columns",
        });
    }
    check_dims(t, gram.nrows(), n_in)?;
    Ok(operator_form_min_eig(t, gram, n_in))
}

fn check_dims(t: &CMatrix, gram_len: usize, n_in: usize) -> Result<(), ShimorinError> {
    if t.ncols() != n_in + 1 {
        return Err(ShimorinError::DimensionMismatch {
            expected: n_in + 1,
            found: t.ncols(),
            what: "operator columns",
        });
    }
    if gram_len != t.nrows() {
        return Err(ShimorinError::DimensionMismatch {
            expected: t.nrows(),
            found: gram_len,
            what: "gram size",
        });
    }
    if t.nrows() <= n_in + 1 {
        return Err(ShimorinError::DimensionMismatch {
            expected: n_in + 2,
            found: t.nrows(),
            what: "operator rows (output space must be strictly larger)",
        });
    }
    Ok(())
}

fn operator_form_min_eig(t: &CMatrix, gram: &CMatrix, n_in: usize) -> OperatorCheck {
    let m = n_in + 1;
    let dt = gram * t;
    let tdt = t.adjoint() * &dt;
    // E^H D T and E^H D E, with E the embedding of the input space
    let edt = dt.rows(0, m).into_owned();
    let d_in = gram.view((0, 0), (m, m)).into_owned();
    let mut q = CMatrix::zeros(2 * m, 2 * m);
    q.view_mut((0, 0), (m, m)).copy_from(&(tdt.scale(2.0) - &d_in));
    q.view_mut((0, m), (m, m)).copy_from(&(-&edt));
    q.view_mut((m, 0), (m, m)).copy_from(&(-edt.adjoint()));
    q.view_mut((m, m), (m, m)).copy_from(&(d_in.scale(2.0) - &tdt));
    let min_eig = hermitian_eigenvalues(&q).first().copied().unwrap_or(0.0);
    OperatorCheck {
        min_eig,
        holds: min_eig >= -OPERATOR_TOL,
    }
}
