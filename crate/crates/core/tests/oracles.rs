//! Cross-checks against independent computations that share no code path
//! with the routines under test.

use num_complex::Complex64;
use wsp_core::random::{gaussian_polynomial, trial_rng};
use wsp_core::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Taylor coefficients of `f` from samples on the circle `|z| = r` by a
/// plain discrete Fourier sum.
fn cauchy_coefficients(f: impl Fn(Complex64) -> Complex64, n: usize, r: f64, samples: usize) -> Vec<Complex64> {
    let values: Vec<Complex64> = (0..samples)
        .map(|j| f(Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / samples as f64)))
        .collect();
    (0..=n)
        .map(|k| {
            let s: Complex64 = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * Complex64::from_polar(1.0, -std::f64::consts::TAU * (j * k) as f64 / samples as f64))
                .sum();
            s / (samples as f64 * r.powi(k as i32))
        })
        .collect()
}

#[test]
fn blaschke_taylor_matches_cauchy_integral() {
    let b = BlaschkeProduct::new(vec![c(0.5, 0.0), c(0.0, 0.3), c(-0.4, -0.4)], 0.9).unwrap();
    let taylor = b.taylor(30);
    let oracle = cauchy_coefficients(|z| b.eval(z).unwrap(), 30, 0.9, 512);
    for (k, o) in oracle.iter().enumerate() {
        assert!((taylor.coeff(k) - o).norm() < 1e-10, "k={k}");
    }
}

/// `c_{k,i} = ⟨f, e_i B^k⟩_{H²}`: the layers of an orthogonal expansion are
/// inner products against the products `e_i B^k`, computed here by plain
/// convolution with no division.
#[test]
fn layers_are_inner_products_against_basis_times_powers() {
    let b = BlaschkeProduct::new(vec![c(0.5, 0.0), c(0.0, 0.3)], 0.4).unwrap();
    let big = 400;
    let basis = tm_basis(&b, big);
    for seed in 0..4 {
        let f = gaussian_polynomial(&mut trial_rng(seed, 0), 20);
        let dec = b_adic_decompose(&f, &b, 200).unwrap();
        let mut power = ComplexSeries::one(big);
        for k in 0..12 {
            if k > 0 {
                power = series_mul(&power, &b.taylor(big), big);
            }
            for (i, e) in basis.elements().iter().enumerate() {
                let col = series_mul(e, &power, big);
                let oracle: Complex64 = (0..=20).map(|n| f.coeff(n) * col.coeff(n).conj()).sum();
                let got = dec.coordinates()[k][i];
                assert!((got - oracle).norm() < 1e-10 * f.h2_norm(), "seed={seed} k={k} i={i}");
            }
        }
    }
}

#[test]
fn model_space_contains_reproducing_kernels() {
    // 1/(1 - conj(a) z) lies in K_B for every zero a of B
    let zeros = vec![c(0.5, 0.0), c(0.0, 0.3), c(-0.2, 0.6)];
    let b = BlaschkeProduct::new(zeros.clone(), 0.0).unwrap();
    let n = 120;
    let basis = tm_basis(&b, n);
    for a in zeros {
        let kernel: Vec<Complex64> = (0..=basis.truncation_degree()).map(|k| a.conj().powu(k as u32)).collect();
        let kernel = ComplexSeries::new(kernel).unwrap();
        let p = project_kb(&kernel, &basis);
        assert!(p.max_abs_diff(&kernel) < 1e-12);
    }
}

/// Minimum eigenvalue of the operator form for `M_{z^k}` with diagonal
/// weights, assembled from its scalar and `2×2` blocks.
fn block_min_eig(w: &[f64], k: usize, n_in: usize) -> f64 {
    let mut best = f64::INFINITY;
    for m in 0..=n_in {
        if m < k {
            best = best.min(2.0 * w[m + k] - w[m]);
        } else {
            let (p, q, r) = (2.0 * w[m + k] - w[m], 2.0 * w[m - k] - w[m], -w[m]);
            let mean = 0.5 * (p + q);
            let rad = (0.25 * (p - q) * (p - q) + r * r).sqrt();
            best = best.min(mean - rad);
        }
    }
    for j in n_in + 1 - k..=n_in {
        best = best.min(2.0 * w[j] - w[j + k]);
    }
    best
}

#[test]
fn operator_check_matches_block_decomposition() {
    let n_in = 30;
    for alpha in [-1.0, -0.8, -0.5, 0.0, 0.5, 1.0] {
        for k in 1..=4 {
            let w = WeightSequence::power_law(alpha).values(n_in + k);
            let t = BlaschkeProduct::monomial(k).multiplication_matrix(n_in, n_in + k);
            let chk = shimorin_operator_check(&t, &w, n_in).unwrap();
            let oracle = block_min_eig(&w, k, n_in);
            assert!((chk.min_eig - oracle).abs() < 1e-10, "alpha={alpha} k={k}: {} vs {oracle}", chk.min_eig);
        }
    }
}

#[test]
fn b_adic_gram_of_shift_is_diagonal_power_law() {
    let alpha = -0.6;
    let g = b_adic_gram(&BlaschkeProduct::monomial(1), &WeightSequence::power_law(alpha), 10, 20);
    for i in 0..=10 {
        for j in 0..=10 {
            let expected = if i == j { ((i + 1) as f64).powf(alpha) } else { 0.0 };
            assert!((g.matrix[(i, j)] - c(expected, 0.0)).norm() < 1e-14);
        }
    }
}

#[test]
fn wandering_vector_of_example_is_the_generator() {
    // h = 1 + a z, the Bergman-orthogonal complement of z²M inside M is span{h}
    for a in [c(0.3, 0.0), c(0.7, 0.0), c(0.0, 0.9)] {
        let h = ComplexSeries::new(vec![c(1.0, 0.0), a]).unwrap();
        let m = span_invariant(&[h.clone()], &BlaschkeProduct::monomial(2), &InnerProductSpec::taylor_power(-1.0), 30).unwrap();
        let w = wandering_part(&m, &BlaschkeProduct::monomial(2));
        assert_eq!(w.dim(), 1);
        let col = w.column(0);
        let scale = col.coeff(0);
        assert!(col.scale(scale.inv()).max_abs_diff(&h.resized(30)) < 1e-12);
    }
}
