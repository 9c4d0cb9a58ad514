//! Seeded generator families for the structural wandering-subspace checks.
//!
//! Zeros are drawn in the disc of radius [`ZERO_RADIUS`] (in the `z` plane),
//! which keeps the wandering vectors' Taylor tails below `1e-12` well
//! before degree 64.

use wsp_core::random::{point_in_disc, trial_rng};
use wsp_core::{interleave, series_mul, Complex64, ComplexSeries};

pub const ZERO_RADIUS: f64 = 0.5;

/// `1 + a z`.
pub fn example_generator(a: Complex64) -> ComplexSeries {
    ComplexSeries::new(vec![Complex64::new(1.0, 0.0), a]).expect("finite coefficients")
}

fn seeded_zeros(seed: u64, count: usize) -> Vec<Complex64> {
    let mut rng = trial_rng(seed, 0);
    (0..count).map(|_| point_in_disc(&mut rng, ZERO_RADIUS)).collect()
}

/// `{h, z h}` with `h` a cubic with seeded zeros: the orbit under `z²` is the
/// shift-invariant subspace `[h]_z`.
pub fn shift_invariant_generators(seed: u64) -> Vec<ComplexSeries> {
    let h = ComplexSeries::from_zeros(&seeded_zeros(seed, 3));
    let zh = series_mul(&ComplexSeries::monomial(1, 1), &h, h.truncation_degree() + 1);
    vec![h, zh]
}

/// `{h₁(z²), z h₂(z²)}`: one shift-invariant piece in each of the even and
/// odd coordinates. The `u = z²` zeros are squares of `z`-plane points.
pub fn direct_sum_generators(seed: u64) -> Vec<ComplexSeries> {
    let u: Vec<Complex64> = seeded_zeros(seed, 3).iter().map(|z| z * z).collect();
    let h1 = ComplexSeries::from_zeros(&u[..2]);
    let h2 = ComplexSeries::from_zeros(&u[2..]);
    let even = interleave(&[h1, ComplexSeries::zero(0)]);
    let odd = interleave(&[ComplexSeries::zero(h2.truncation_degree()), h2]);
    vec![even, odd]
}

#[cfg(test)]
mod tests {
    use super::*;
    use wsp_core::even_odd_split;

    #[test]
    fn direct_sum_pieces_live_in_separate_coordinates() {
        let g = direct_sum_generators(3);
        let even = even_odd_split(&g[0], 2);
        let odd = even_odd_split(&g[1], 2);
        assert!(even[1].h2_norm() == 0.0 && even[0].h2_norm() > 0.0);
        assert!(odd[0].h2_norm() == 0.0 && odd[1].h2_norm() > 0.0);
    }

    #[test]
    fn shift_generators_share_zeros() {
        let g = shift_invariant_generators(1);
        for z in seeded_zeros(1, 3) {
            assert!(g[0].eval(z).norm() < 1e-12 && g[1].eval(z).norm() < 1e-12);
        }
        assert_eq!(g, shift_invariant_generators(1));
    }
}
