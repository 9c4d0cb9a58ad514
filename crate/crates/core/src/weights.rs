//! Norm weights `ω_n` for diagonal (Taylor-coefficient) inner products.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum WeightError {
    /// A weight or scale factor was not a finite positive number.
    NonPositive { index: usize, value: f64 },
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::NonPositive { index, value } => {
                write!(f, "weight at index {index} is not finite and positive: {value}")
            }
        }
    }
}

impl core::error::Error for WeightError {}

/// A positive weight sequence `n ↦ ω(n)`.
///
/// `Explicit` overrides the first `head.len()` weights; the tail is queried
/// at the absolute index, so `explicit([1.0], power_law(-1)).weight(3)` is
/// `4^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightSequence {
    PowerLaw { alpha: f64 },
    Shifted { inner: Box<WeightSequence>, offset: usize },
    Explicit { head: Vec<f64>, tail: Box<WeightSequence> },
    Scaled { inner: Box<WeightSequence>, factor: f64 },
}

impl WeightSequence {
    /// `ω(n) = (n+1)^α`.
    pub fn power_law(alpha: f64) -> Self {
        WeightSequence::PowerLaw { alpha }
    }

    /// `ω(n) = inner(n + offset)`.
    pub fn shifted(inner: WeightSequence, offset: usize) -> Self {
        WeightSequence::Shifted {
            inner: Box::new(inner),
            offset,
        }
    }

    pub fn explicit(head: Vec<f64>, tail: WeightSequence) -> Result<Self, WeightError> {
        if let Some((index, &value)) = head
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(WeightError::NonPositive { index, value });
        }
        Ok(WeightSequence::Explicit {
            head,
            tail: Box::new(tail),
        })
    }

    /// `ω(n) = factor · inner(n)`.
    pub fn scaled(inner: WeightSequence, factor: f64) -> Result<Self, WeightError> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(WeightError::NonPositive {
                index: 0,
                value: factor,
            });
        }
        Ok(WeightSequence::Scaled {
            inner: Box::new(inner),
            factor,
        })
    }

    pub fn weight(&self, n: usize) -> f64 {
        match self {
            WeightSequence::PowerLaw { alpha } => libm::pow((n + 1) as f64, *alpha),
            WeightSequence::Shifted { inner, offset } => inner.weight(n + offset),
            WeightSequence::Explicit { head, tail } => match head.get(n) {
                Some(w) => *w,
                None => tail.weight(n),
            },
            WeightSequence::Scaled { inner, factor } => factor * inner.weight(n),
        }
    }

    /// `ω(0), …, ω(n_max)`.
    pub fn values(&self, n_max: usize) -> Vec<f64> {
        (0..=n_max).map(|n| self.weight(n)).collect()
    }

    /// Exponent `β` such that `ω(n)` is proportional to `(n + c + 1)^β` for
    /// all `n ≥ self.tail_start()`.
    pub fn tail_exponent(&self) -> f64 {
        match self {
            WeightSequence::PowerLaw { alpha } => *alpha,
            WeightSequence::Shifted { inner, .. } => inner.tail_exponent(),
            WeightSequence::Explicit { tail, .. } => tail.tail_exponent(),
            WeightSequence::Scaled { inner, .. } => inner.tail_exponent(),
        }
    }

    /// First index from which the sequence is a (shifted, scaled) pure power law.
    pub fn tail_start(&self) -> usize {
        match self {
            WeightSequence::PowerLaw { .. } => 0,
            WeightSequence::Shifted { inner, offset } => inner.tail_start().saturating_sub(*offset),
            WeightSequence::Explicit { head, tail } => head.len().max(tail.tail_start()),
            WeightSequence::Scaled { inner, .. } => inner.tail_start(),
        }
    }
}
