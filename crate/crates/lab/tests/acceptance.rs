//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Tolerances and grids are fixed here and nowhere else.

use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use wsp_core::random::{gaussian_polynomial, point_in_disc, trial_rng};
use wsp_core::*;
use wsp_lab::commands::{self, Format};
use wsp_lab::instances::{direct_sum_generators, example_generator, shift_invariant_generators};

type Check = (bool, String);

struct Suite {
    failed: Vec<usize>,
}

impl Suite {
    fn run(&mut self, id: usize, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let (mut ok, mut detail) = f();
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            if elapsed > b {
                ok = false;
                detail = format!("{detail}; over the {:.0} s budget", b.as_secs_f64());
            }
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id:>2} {name}: {detail} ({:.2} s)", elapsed.as_secs_f64());
        if !ok {
            self.failed.push(id);
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

fn thresholds() -> Check {
    let text = commands::thresholds(6, Format::Csv).text;
    let value = |q: &str, k: &str| -> f64 {
        text.lines()
            .map(|l| l.split(',').collect::<Vec<_>>())
            .find(|f| f[0] == q && f[1] == k)
            .map(|f| f[2].parse().unwrap())
            .unwrap_or(f64::NAN)
    };
    let mono = value("monomial", "2");
    let z2 = value("z2_improved", "2");
    (round4(mono) == 0.6309 && round4(z2) == -0.7937, format!("log2/log3 = {mono}, log(2/3)/log(5/3) = {z2}"))
}

fn boundary_sharpness() -> Check {
    let mut bad = Vec::new();
    for k in 2..=6 {
        let thr = -alpha_threshold_monomial(k);
        let above = shimorin_weight_criterion(&WeightSequence::power_law(thr + 1e-6), k, 0, 100_000).unwrap();
        let below = shimorin_weight_criterion(&WeightSequence::power_law(thr - 1e-6), k, 0, 100_000).unwrap();
        if !above.holds || below.holds {
            bad.push(k);
        }
    }
    (bad.is_empty(), format!("k = 2..6 at threshold +/- 1e-6, mismatches at k = {bad:?}"))
}

fn shifted_subspace_regime() -> Check {
    let mut total = 0;
    let mut bad = Vec::new();
    for alpha in [-1.0, -0.75, -0.5, -0.25, 0.0] {
        for k in 1..=6 {
            let r = shimorin_weight_criterion(&WeightSequence::power_law(alpha), k, k, 100_000).unwrap();
            total += r.violations.len();
            if !r.holds {
                bad.push((alpha, k));
            }
        }
    }
    (bad.is_empty() && total == 0, format!("30 cases with s0 = k, {total} violations, failing {bad:?}"))
}

fn omega0_window_checks() -> Check {
    let (lo, hi) = omega0_window(z2_improved_threshold()).unwrap();
    let degenerate = (hi - lo).abs() <= 1e-10;
    let mut bad = Vec::new();
    for alpha in [-0.79, -0.7, -0.5, 0.0] {
        let ok = improved_z2_weights(alpha)
            .ok()
            .and_then(|w| shimorin_weight_criterion(&w, 2, 0, 100_000).ok())
            .is_some_and(|r| r.holds);
        if !ok {
            bad.push(alpha);
        }
    }
    (
        degenerate && bad.is_empty(),
        format!("|hi - lo| = {:e} at the bound; improved weights failing at {bad:?}", (hi - lo).abs()),
    )
}

fn secozk_regime() -> Check {
    let r = shimorin_weight_criterion(&secozk_weights(), 6, 0, 100_000).unwrap();
    let ab = r.violations.iter().filter(|v| matches!(v.condition, Condition::A | Condition::B)).count();
    (!r.holds && ab > 0, format!("holds = {}, {ab} violations of (a)/(b)", r.holds))
}

fn round_trip() -> Check {
    let products = [
        ("z", BlaschkeProduct::monomial(1)),
        ("z^2", BlaschkeProduct::monomial(2)),
        ("z^3", BlaschkeProduct::monomial(3)),
        ("{1/2}", BlaschkeProduct::new(vec![c(0.5, 0.0)], 0.0).unwrap()),
        ("{0.5, 0.3i}", BlaschkeProduct::new(vec![c(0.5, 0.0), c(0.0, 0.3)], 0.0).unwrap()),
    ];
    let mut worst: f64 = 0.0;
    let mut incomplete = 0;
    for (bi, (_, b)) in products.iter().enumerate() {
        for t in 0..100u64 {
            let mut rng = trial_rng(600 + bi as u64, t);
            let degree = (t % 49) as usize;
            let f = gaussian_polynomial(&mut rng, degree);
            let depth = 4 * default_depth(48, b.degree()) + 32;
            let dec = match b_adic_decompose(&f, b, depth) {
                Ok(d) => d,
                Err(e) => {
                    incomplete += 1;
                    e.into_partial().unwrap()
                }
            };
            worst = worst.max(b_adic_reconstruct(&dec, degree).max_abs_diff(&f));
        }
    }
    let mut norm_gap: f64 = 0.0;
    for t in 0..100u64 {
        let f = gaussian_polynomial(&mut trial_rng(700, t), (t % 49) as usize);
        let alpha = [-1.0, -0.5, 0.0, 0.5, 1.0][(t % 5) as usize];
        let bn = b_norm(&f, &BlaschkeProduct::monomial(1), alpha, 60).unwrap().value;
        let direct = f.weighted_norm(&WeightSequence::power_law(alpha));
        norm_gap = norm_gap.max((bn - direct).abs() / direct);
    }
    (
        worst <= 1e-7 && norm_gap <= 1e-10 && incomplete == 0,
        format!("max reconstruction error {worst:e}, B = z norm gap {norm_gap:e}, {incomplete} incomplete"),
    )
}

/// Taylor coefficients of `(z - a)/(1 - conj(a) z)` up to degree `l`.
fn factor(a: Complex64, l: usize) -> Vec<Complex64> {
    let mut v = vec![-a];
    let mut p = c(1.0 - a.norm_sqr(), 0.0);
    for _ in 1..=l {
        v.push(p);
        p *= a.conj();
    }
    v
}

fn convolve(x: &[Complex64], y: &[Complex64], l: usize) -> Vec<Complex64> {
    let mut out = vec![c(0.0, 0.0); l + 1];
    for (i, a) in x.iter().enumerate().take(l + 1) {
        if *a == c(0.0, 0.0) {
            continue;
        }
        for (j, b) in y.iter().enumerate().take(l + 1 - i) {
            out[i + j] += a * b;
        }
    }
    out
}

/// Least-squares fit of `f` by the columns `e_i B^k` (`k < layers`),
/// all series built here from their closed forms.
fn least_squares_layers(zeros: &[Complex64], f: &ComplexSeries, layers: usize, l: usize) -> Vec<Vec<Complex64>> {
    let d = zeros.len();
    let mut elements = Vec::new();
    let mut prefix = vec![c(1.0, 0.0)];
    for a in zeros {
        let s = (1.0 - a.norm_sqr()).sqrt();
        let kernel: Vec<Complex64> = (0..=l).map(|n| a.conj().powu(n as u32) * s).collect();
        elements.push(convolve(&prefix, &kernel, l));
        prefix = convolve(&prefix, &factor(*a, l), l);
    }
    let b = prefix;
    let mut power = vec![c(1.0, 0.0)];
    let mut cols = Vec::new();
    for _ in 0..layers {
        for e in &elements {
            cols.push(convolve(e, &power, l));
        }
        power = convolve(&power, &b, l);
    }
    let a = DMatrix::from_fn(l + 1, cols.len(), |i, j| cols[j][i]);
    let rhs = DMatrix::from_fn(l + 1, 1, |i, _| f.coeff(i));
    let x = a.svd(true, true).solve(&rhs, 1e-14).unwrap();
    (0..layers).map(|k| (0..d).map(|i| x[(k * d + i, 0)]).collect()).collect()
}

fn oracle_equivalence() -> Check {
    let mut worst: f64 = 0.0;
    for inst in 0..20u64 {
        let mut rng = trial_rng(7000, inst);
        let d = 1 + (inst % 3) as usize;
        let zeros: Vec<Complex64> = (0..d).map(|_| point_in_disc(&mut rng, 0.6)).collect();
        let b = BlaschkeProduct::new(zeros.clone(), 0.0).unwrap();
        let f = gaussian_polynomial(&mut rng, 4 + (inst % 17) as usize);
        let dec = match b_adic_decompose(&f, &b, 400) {
            Ok(x) => x,
            Err(e) => e.into_partial().unwrap(),
        };
        let layers = 12;
        let oracle = least_squares_layers(&zeros, &f, layers, 500);
        for (k, ok) in oracle.iter().enumerate() {
            for (i, o) in ok.iter().enumerate() {
                let got = dec.coordinates().get(k).map_or(c(0.0, 0.0), |v| v[i]);
                worst = worst.max((got - o).norm() / f.h2_norm());
            }
        }
    }
    (worst <= 1e-6, format!("20 instances, 12 layers each, max relative coordinate gap {worst:e}"))
}

fn operator_weight_agreement() -> Check {
    let n_in = 64;
    let mut mismatches = Vec::new();
    for alpha in [-1.0, -0.8, -0.63, -0.5, 0.0, 0.5, 1.0] {
        for k in 1..=6 {
            let w = WeightSequence::power_law(alpha);
            let t = BlaschkeProduct::monomial(k).multiplication_matrix(n_in, n_in + k);
            let op = shimorin_operator_check(&t, &w.values(n_in + k), n_in).unwrap();
            let crit = shimorin_weight_criterion(&w, k, 0, 100_000).unwrap();
            if op.holds != crit.holds {
                mismatches.push((alpha, k));
            }
        }
    }
    (mismatches.is_empty(), format!("42 (alpha, k) pairs at N_in = 64, mismatches {mismatches:?}"))
}

fn structural_defects() -> Check {
    let z2 = BlaschkeProduct::monomial(2);
    let bergman = InnerProductSpec::taylor_power(-1.0);
    let mut worst: f64 = 0.0;
    let mut monotone_gap: f64 = f64::NEG_INFINITY;
    let mut record = |d64: f64, d80: f64| {
        worst = worst.max(d64);
        monotone_gap = monotone_gap.max(d80 - d64);
    };
    let mut cases = 0;
    for a in [c(0.3, 0.0), c(0.7, 0.0), c(0.0, 0.9)] {
        let g = [example_generator(a)];
        record(
            wsp_defect(&g, &z2, &bergman, 64, 40).unwrap().defect,
            wsp_defect(&g, &z2, &bergman, 80, 40).unwrap().defect,
        );
        cases += 1;
    }
    for seed in 0..5 {
        for g in [shift_invariant_generators(seed), direct_sum_generators(seed)] {
            record(
                wsp_defect(&g, &z2, &bergman, 64, 40).unwrap().defect,
                wsp_defect(&g, &z2, &bergman, 80, 40).unwrap().defect,
            );
            cases += 1;
        }
    }
    for k in 1..=3 {
        for alpha in [-1.0, -0.5] {
            let g = [example_generator(c(0.5, 0.0))];
            record(
                corollary_check(&g, k, alpha, 64, 40).unwrap().defect,
                corollary_check(&g, k, alpha, 80, 40).unwrap().defect,
            );
            cases += 1;
        }
    }
    (
        worst <= 1e-6 && monotone_gap <= 1e-6,
        format!("{cases} instances, max defect {worst:e} at N = 64, max increase N = 64 -> 80 {monotone_gap:e}"),
    )
}

fn cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_wsp-lab")).args(args).output().expect("binary runs");
    let mut bytes = out.stdout;
    bytes.extend(out.status.code().unwrap_or(-1).to_le_bytes());
    bytes
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prop.wsp");
    std::fs::write(
        &path,
        "generators = shift-invariant\nblaschke = z^2\nip = taylor\nalpha = -1\nN = 64\nN_compare = 40\nseed = 3\n",
    )
    .unwrap();
    let path = path.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["wsp-test", path],
        vec!["bnorm", "--blaschke", "zeros=0.5,0", "--alpha", "-0.5", "--trials", "20", "--N", "24", "--seed", "9"],
        vec!["scan", "--alpha", "-1:1:0.25", "--k", "1..6", "--s0", "0,k", "--nmax", "2000"],
        vec!["decompose", "--blaschke", "zeros=0.5,0;0,0.3", "--f", "1;2;0,1;-0.5", "--format", "json"],
    ];
    let mut differing = Vec::new();
    for r in &runs {
        if cli(r) != cli(r) {
            differing.push(r[0]);
        }
    }
    let a = norm_equivalence_estimate(&BlaschkeProduct::new(vec![c(0.4, 0.2)], 0.0).unwrap(), -1.0, 30, 25, 5);
    let b = norm_equivalence_estimate(&BlaschkeProduct::new(vec![c(0.4, 0.2)], 0.0).unwrap(), -1.0, 30, 25, 5);
    let in_process = a.c_min.to_bits() == b.c_min.to_bits() && a.c_max.to_bits() == b.c_max.to_bits();
    (
        differing.is_empty() && in_process,
        format!("{} CLI runs repeated, differing {differing:?}; library rerun identical: {in_process}", runs.len()),
    )
}

fn main() {
    let mut suite = Suite { failed: Vec::new() };
    let secs = Duration::from_secs;
    suite.run(1, "thresholds", Some(secs(1)), thresholds);
    suite.run(2, "boundary sharpness", Some(secs(10)), boundary_sharpness);
    suite.run(3, "shifted-subspace regime", None, shifted_subspace_regime);
    suite.run(4, "omega0 window", None, omega0_window_checks);
    suite.run(5, "secozk weights", None, secozk_regime);
    suite.run(6, "B-adic round trip", Some(secs(60)), round_trip);
    suite.run(7, "least-squares oracle", None, oracle_equivalence);
    suite.run(8, "operator/weight agreement", Some(secs(120)), operator_weight_agreement);
    suite.run(9, "structural defects", None, structural_defects);
    suite.run(10, "determinism", None, determinism);
    if suite.failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: failing criteria {:?}", suite.failed);
        std::process::exit(1);
    }
}
