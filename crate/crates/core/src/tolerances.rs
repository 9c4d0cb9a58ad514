//! Process-wide numerical tolerances.
//!
//! Defaults: `order_tol = 1e-12`, `residual_tol = 1e-9`, `rank_tol = 1e-10`,
//! `tail_tol = 1e-10`. They can be overridden once at start-up with
//! [`Tolerances::set_global`]; every operation reads them through
//! [`Tolerances::global`].

use core::sync::atomic::{AtomicU64, Ordering};

static ORDER_TOL: AtomicU64 = AtomicU64::new(1e-12f64.to_bits());
static RESIDUAL_TOL: AtomicU64 = AtomicU64::new(1e-9f64.to_bits());
static RANK_TOL: AtomicU64 = AtomicU64::new(1e-10f64.to_bits());
static TAIL_TOL: AtomicU64 = AtomicU64::new(1e-10f64.to_bits());

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// A coefficient with modulus at most this counts as zero when locating
    /// the order of vanishing of a divisor.
    pub order_tol: f64,
    /// Allowed modulus of the leading coefficients of a dividend, and the
    /// stopping residual of the B-adic iteration.
    pub residual_tol: f64,
    /// Relative threshold for dropping columns in Gram–Schmidt and for
    /// numerical rank decisions.
    pub rank_tol: f64,
    /// Relative ℓ² mass a product may carry above the ambient degree and
    /// still count as lying inside the truncation.
    pub tail_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            order_tol: 1e-12,
            residual_tol: 1e-9,
            rank_tol: 1e-10,
            tail_tol: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn global() -> Self {
        Self {
            order_tol: f64::from_bits(ORDER_TOL.load(Ordering::Relaxed)),
            residual_tol: f64::from_bits(RESIDUAL_TOL.load(Ordering::Relaxed)),
            rank_tol: f64::from_bits(RANK_TOL.load(Ordering::Relaxed)),
            tail_tol: f64::from_bits(TAIL_TOL.load(Ordering::Relaxed)),
        }
    }

    pub fn set_global(self) {
        ORDER_TOL.store(self.order_tol.to_bits(), Ordering::Relaxed);
        RESIDUAL_TOL.store(self.residual_tol.to_bits(), Ordering::Relaxed);
        RANK_TOL.store(self.rank_tol.to_bits(), Ordering::Relaxed);
        TAIL_TOL.store(self.tail_tol.to_bits(), Ordering::Relaxed);
    }
}
