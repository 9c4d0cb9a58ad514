//! Seeded sampling. Each trial draws from its own ChaCha stream, so results
//! do not depend on evaluation order.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::series::ComplexSeries;

pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian, `E|c|² = 1`.
pub fn complex_gaussian<R: RngCore>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

/// Polynomial of the given degree with i.i.d. complex Gaussian coefficients.
pub fn gaussian_polynomial<R: RngCore>(rng: &mut R, degree: usize) -> ComplexSeries {
    let coeffs: Vec<Complex64> = (0..=degree).map(|_| complex_gaussian(rng)).collect();
    ComplexSeries::from_vec_unchecked(coeffs)
}

/// Uniform point in the disc of the given radius.
pub fn point_in_disc<R: RngCore>(rng: &mut R, radius: f64) -> Complex64 {
    let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let t = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    Complex64::from_polar(radius * libm::sqrt(u), core::f64::consts::TAU * t)
}
