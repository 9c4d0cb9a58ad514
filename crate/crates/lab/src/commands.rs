//! The subcommands as plain functions from parsed arguments to rendered
//! output. The binary only handles argument parsing, files and exit codes.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use wsp_core::model_space::guard_degree;
use wsp_core::{
    alpha_threshold_monomial, b_adic_decompose, b_adic_gram, b_norm_of, concavity_criterion, norm_equivalence_estimate,
    shimorin_operator_check, shimorin_operator_check_dense, shimorin_weight_criterion, z2_improved_threshold,
    BAdicError, BlaschkeProduct, ComplexSeries, CriterionReport, ShimorinError, WeightSequence,
};

use crate::descriptor::Descriptor;
use crate::output::{csv_table, json_line, num, Num};
use crate::parse::{IpKind, Offset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A checked condition failed or a computation stopped short; the
    /// output is still complete and written.
    Violated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub status: Status,
    /// Human-readable summary for stderr.
    pub note: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, status: Status::Ok, note: None }
    }
}

pub const PURITY_NOTE: &str = "purity condition (intersection of T^n H is trivial) is known analytically and not checked";

pub fn thresholds(k_max: usize, format: Format) -> Outcome {
    let ks = 1..=k_max.max(1);
    let z2 = z2_improved_threshold();
    let text = match format {
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = ks
                .map(|k| vec!["monomial".into(), k.to_string(), num(alpha_threshold_monomial(k))])
                .collect();
            rows.push(vec!["z2_improved".into(), "2".into(), num(z2)]);
            csv_table(&["quantity", "k", "value"], &rows)
        }
        Format::Json => {
            let mono: Vec<_> = ks.map(|k| json!({"k": k, "threshold": Num(alpha_threshold_monomial(k))})).collect();
            json_line(&json!({"monomial": mono, "z2_improved": Num(z2)}))
        }
    };
    Outcome::ok(text)
}

#[derive(Serialize)]
struct ViolationRow {
    condition: &'static str,
    index: usize,
    lhs: Num,
    rhs: Num,
}

#[derive(Serialize)]
struct CertificateRow {
    start: usize,
    end: usize,
    exponent: Num,
}

#[derive(Serialize)]
struct ReportJson {
    holds: bool,
    violations: Vec<ViolationRow>,
    scanned_range: [usize; 2],
    tail_certificate: Option<CertificateRow>,
    note: &'static str,
}

fn report_summary(r: &CriterionReport) -> String {
    let cert = match &r.tail_certificate {
        Some(c) => format!("tail certificate on {}..={} (exponent {})", c.start, c.end, num(c.exponent)),
        None => "no tail certificate".into(),
    };
    format!(
        "holds={} violations={} scanned={}..={} {cert}; {PURITY_NOTE}",
        r.holds,
        r.violations.len(),
        r.scanned_range.0,
        r.scanned_range.1
    )
}

/// Shimorin weight conditions, or the stride-`k` concavity condition.
pub fn criterion(
    weights: &WeightSequence,
    k: usize,
    s0: usize,
    n_max: usize,
    concavity: bool,
    format: Format,
) -> Result<Outcome, ShimorinError> {
    let r = if concavity {
        concavity_criterion(weights, k, n_max)?
    } else {
        shimorin_weight_criterion(weights, k, s0, n_max)?
    };
    let text = match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = r
                .violations
                .iter()
                .map(|v| vec![v.condition.tag().into(), v.index.to_string(), num(v.lhs), num(v.rhs)])
                .collect();
            csv_table(&["condition", "index", "lhs", "rhs"], &rows)
        }
        Format::Json => json_line(&ReportJson {
            holds: r.holds,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationRow { condition: v.condition.tag(), index: v.index, lhs: Num(v.lhs), rhs: Num(v.rhs) })
                .collect(),
            scanned_range: [r.scanned_range.0, r.scanned_range.1],
            tail_certificate: r
                .tail_certificate
                .map(|c| CertificateRow { start: c.start, end: c.end, exponent: Num(c.exponent) }),
            note: PURITY_NOTE,
        }),
    };
    Ok(Outcome {
        text,
        status: if r.holds { Status::Ok } else { Status::Violated },
        note: Some(report_summary(&r)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub alpha: Num,
    pub k: usize,
    pub s0: usize,
    pub holds: bool,
    pub first_violation_index: Option<usize>,
}

/// Shimorin criterion for `power_law(α)` over a grid. Rows come out in grid
/// order (α outer, then k, then s0) regardless of thread scheduling.
pub fn scan_rows(alphas: &[f64], ks: &[usize], offsets: &[Offset], n_max: usize) -> Result<Vec<ScanRow>, ShimorinError> {
    let jobs: Vec<(f64, usize, usize)> = alphas
        .iter()
        .flat_map(|&a| {
            ks.iter().flat_map(move |&k| {
                offsets.iter().map(move |o| {
                    let s0 = match o {
                        Offset::Fixed(s) => *s,
                        Offset::EqualsK => k,
                    };
                    (a, k, s0)
                })
            })
        })
        .collect();
    jobs.par_iter()
        .map(|&(alpha, k, s0)| {
            let r = shimorin_weight_criterion(&WeightSequence::power_law(alpha), k, s0, n_max)?;
            Ok(ScanRow {
                alpha: Num(alpha),
                k,
                s0,
                holds: r.holds,
                first_violation_index: r.first_violation().map(|v| v.index),
            })
        })
        .collect()
}

pub fn scan(alphas: &[f64], ks: &[usize], offsets: &[Offset], n_max: usize, format: Format) -> Result<Outcome, ShimorinError> {
    let rows = scan_rows(alphas, ks, offsets, n_max)?;
    let text = match format {
        Format::Csv => csv_table(
            &["alpha", "k", "s0", "holds", "first_violation_index"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        num(r.alpha.0),
                        r.k.to_string(),
                        r.s0.to_string(),
                        r.holds.to_string(),
                        r.first_violation_index.map(|i| i.to_string()).unwrap_or_default(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => json_line(&rows),
    };
    let failing = rows.iter().filter(|r| !r.holds).count();
    Ok(Outcome {
        text,
        status: Status::Ok,
        note: Some(format!("{} grid points, {failing} without a certificate of the sufficient condition", rows.len())),
    })
}

/// B-adic coordinates of `f`. A decomposition that exhausts `depth` is
/// still written, with status `Violated`.
pub fn decompose(b: &BlaschkeProduct, f: &ComplexSeries, depth: usize, format: Format) -> Result<Outcome, BAdicError> {
    let (dec, complete) = match b_adic_decompose(f, b, depth) {
        Ok(d) => (d, true),
        Err(e @ BAdicError::DepthExhausted { .. }) => (e.into_partial().expect("partial result"), false),
        Err(e) => return Err(e),
    };
    let text = match format {
        Format::Csv => {
            let mut rows = Vec::new();
            for (k, coords) in dec.coordinates().iter().enumerate() {
                for (i, c) in coords.iter().enumerate() {
                    rows.push(vec![k.to_string(), i.to_string(), num(c.re), num(c.im)]);
                }
            }
            csv_table(&["layer", "basis_index", "re", "im"], &rows)
        }
        Format::Json => {
            let layers: Vec<_> = dec
                .coordinates()
                .iter()
                .enumerate()
                .map(|(k, cs)| {
                    let coords: Vec<[Num; 2]> = cs.iter().map(|c| [Num(c.re), Num(c.im)]).collect();
                    json!({"coordinates": coords, "norm": Num(dec.layer_norm(k))})
                })
                .collect();
            json_line(&json!({"layers": layers, "residual": Num(dec.residual()), "complete": complete}))
        }
    };
    Ok(Outcome {
        text,
        status: if complete { Status::Ok } else { Status::Violated },
        note: Some(format!(
            "layers={} residual={} complete={complete} (coordinates in the orthonormal rational basis of the model space)",
            dec.depth(),
            num(dec.residual())
        )),
    })
}

pub fn bnorm(b: &BlaschkeProduct, f: &ComplexSeries, alpha: f64, depth: usize, format: Format) -> Result<Outcome, BAdicError> {
    let (dec, complete) = match b_adic_decompose(f, b, depth) {
        Ok(d) => (d, true),
        Err(e @ BAdicError::DepthExhausted { .. }) => (e.into_partial().expect("partial result"), false),
        Err(e) => return Err(e),
    };
    let n = b_norm_of(&dec, alpha);
    let text = match format {
        Format::Csv => csv_table(
            &["value", "supported", "layers", "residual"],
            &[vec![num(n.value), n.supported.to_string(), n.layers.to_string(), num(n.residual)]],
        ),
        Format::Json => json_line(&json!({
            "value": Num(n.value), "supported": n.supported, "layers": n.layers, "residual": Num(n.residual)
        })),
    };
    let mut note = format!("complete={complete}");
    if !n.supported {
        note.push_str("; alpha outside [-1, 1] is not a supported regime");
    }
    Ok(Outcome {
        text,
        status: if complete { Status::Ok } else { Status::Violated },
        note: Some(note),
    })
}

pub fn norm_equivalence(b: &BlaschkeProduct, alpha: f64, n: usize, trials: usize, seed: u64, format: Format) -> Outcome {
    let e = norm_equivalence_estimate(b, alpha, n, trials, seed);
    let text = match format {
        Format::Csv => csv_table(
            &["c_min", "c_max", "max_residual", "supported"],
            &[vec![num(e.c_min), num(e.c_max), num(e.max_residual), e.supported.to_string()]],
        ),
        Format::Json => json_line(&json!({
            "c_min": Num(e.c_min), "c_max": Num(e.c_max), "max_residual": Num(e.max_residual), "supported": e.supported
        })),
    };
    Outcome {
        text,
        status: Status::Ok,
        note: Some(format!("{trials} seeded trials of degree {n}; empirical ratios, not proven constants")),
    }
}

pub fn wsp_test(descriptor: &Descriptor, format: Format) -> Result<Outcome, wsp_core::SubspaceError> {
    let r = descriptor.run()?;
    let text = match format {
        Format::Json => json_line(&r),
        Format::Csv => csv_table(
            &["defect", "M", "W", "G", "N", "N_compare"],
            &[vec![
                num(r.defect.0),
                r.dims.m.to_string(),
                r.dims.w.to_string(),
                r.dims.g.to_string(),
                r.n.to_string(),
                r.n_compare.to_string(),
            ]],
        ),
    };
    let note = if r.defect.0 > 1e-6 {
        "no convergence observed at this truncation (not evidence against the wandering subspace property)"
    } else {
        "defect within 1e-6"
    };
    Ok(Outcome { text, status: Status::Ok, note: Some(note.into()) })
}

/// Operator form of Shimorin's inequality for `M_B` on inputs of degree
/// `≤ n_in`. Monomial `B` is represented exactly; other products are
/// truncated `4d + 32` degrees past `n_in + d`.
pub fn operator_check(
    b: &BlaschkeProduct,
    ip: IpKind,
    weights: &WeightSequence,
    shift: usize,
    alpha: f64,
    n_in: usize,
    depth: usize,
    format: Format,
) -> Result<Outcome, ShimorinError> {
    let d = b.degree();
    let n_out = if b.is_monomial() { n_in + d } else { n_in + d + guard_degree(d) };
    let t = b.multiplication_matrix(n_in, n_out);
    let chk = match ip {
        IpKind::Taylor => shimorin_operator_check(&t, &weights.values(n_out), n_in)?,
        IpKind::Shifted => {
            let w = WeightSequence::shifted(WeightSequence::power_law(alpha), shift);
            shimorin_operator_check(&t, &w.values(n_out), n_in)?
        }
        IpKind::BAdic => {
            let g = b_adic_gram(b, weights, n_out, depth);
            shimorin_operator_check_dense(&t, &g.matrix, n_in)?
        }
    };
    let text = match format {
        Format::Csv => csv_table(&["min_eig", "holds"], &[vec![num(chk.min_eig), chk.holds.to_string()]]),
        Format::Json => json_line(&json!({"min_eig": Num(chk.min_eig), "holds": chk.holds})),
    };
    Ok(Outcome {
        text,
        status: if chk.holds { Status::Ok } else { Status::Violated },
        note: Some(format!("input degree {n_in}, output degree {n_out}; {PURITY_NOTE}")),
    })
}
