//! Experiment descriptors for `wsp-test`: one `key = value` per line, `#`
//! starts a comment.
//!
//! ```text
//! mode       = wsp              # or corollary
//! generators = 1;0.7 | 0;0;1    # series literals separated by '|'
//! blaschke   = z^2
//! ip         = taylor           # taylor | badic | shifted
//! alpha      = -1
//! N          = 64
//! N_compare  = 40
//! ```
//!
//! `generators` also accepts `random(count, degree)`, `shift-invariant` and
//! `direct-sum`, all drawn from `seed`. Optional keys: `weights`, `k`,
//! `depth`, `seed`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use wsp_core::random::{gaussian_polynomial, trial_rng};
use wsp_core::{corollary_check, wsp_defect, BlaschkeProduct, ComplexSeries, SubspaceError, WeightSequence, WspDefect};

use crate::instances::{direct_sum_generators, shift_invariant_generators};
use crate::output::Num;
use crate::parse::{self, IpKind, ParseError};

#[derive(Debug, Clone, PartialEq)]
pub enum DescriptorError {
    Line { line: usize, message: String },
    Missing(&'static str),
    Duplicate(String),
    UnknownKey(String),
    Value { key: String, source: ParseError },
}

impl fmt::Display for DescriptorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescriptorError::Line { line, message } => write!(f, "line {line}: {message}"),
            DescriptorError::Missing(key) => write!(f, "missing key {key:?}"),
            DescriptorError::Duplicate(key) => write!(f, "key {key:?} given twice"),
            DescriptorError::UnknownKey(key) => write!(f, "unknown key {key:?}"),
            DescriptorError::Value { key, source } => write!(f, "{key}: {source}"),
        }
    }
}

impl std::error::Error for DescriptorError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Wsp,
    Corollary,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generators {
    Literal(Vec<ComplexSeries>),
    Random { count: usize, degree: usize },
    ShiftInvariant,
    DirectSum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Descriptor {
    pub mode: Mode,
    pub generators: Generators,
    pub blaschke: Option<BlaschkeProduct>,
    pub ip: IpKind,
    pub weights: Option<WeightSequence>,
    pub alpha: f64,
    pub k: usize,
    pub depth: Option<usize>,
    pub n: usize,
    pub n_compare: usize,
    pub seed: u64,
}

const KEYS: [&str; 11] = ["mode", "generators", "blaschke", "ip", "weights", "alpha", "k", "depth", "N", "N_compare", "seed"];

fn value<T>(key: &str, r: Result<T, ParseError>) -> Result<T, DescriptorError> {
    r.map_err(|source| DescriptorError::Value { key: key.to_string(), source })
}

fn int<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, DescriptorError> {
    value(key, v.trim().parse().map_err(|_| ParseError::Number(v.trim().to_string())))
}

fn generators(v: &str) -> Result<Generators, ParseError> {
    let t = v.trim();
    match t {
        "shift-invariant" => return Ok(Generators::ShiftInvariant),
        "direct-sum" => return Ok(Generators::DirectSum),
        _ => {}
    }
    if let Some(args) = t.strip_prefix("random(").and_then(|r| r.strip_suffix(')')) {
        let (count, degree) = args
            .split_once(',')
            .ok_or(ParseError::Malformed { what: "random generators", input: t.to_string() })?;
        let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| ParseError::Number(s.trim().to_string()));
        return Ok(Generators::Random { count: parse(count)?, degree: parse(degree)? });
    }
    Ok(Generators::Literal(t.split('|').map(parse::series).collect::<Result<_, _>>()?))
}

impl Descriptor {
    pub fn parse(text: &str) -> Result<Self, DescriptorError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| DescriptorError::Line {
                line: i + 1,
                message: "expected key = value".into(),
            })?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(DescriptorError::UnknownKey(k.to_string()));
            }
            if map.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(DescriptorError::Duplicate(k.to_string()));
            }
        }
        let get = |k: &'static str| map.get(k).map(String::as_str);
        let need = |k: &'static str| get(k).ok_or(DescriptorError::Missing(k));
        let mode = match get("mode").unwrap_or("wsp") {
            "wsp" => Mode::Wsp,
            "corollary" => Mode::Corollary,
            other => {
                return Err(DescriptorError::Value {
                    key: "mode".into(),
                    source: ParseError::Malformed { what: "mode", input: other.to_string() },
                })
            }
        };
        let blaschke = get("blaschke").map(|v| value("blaschke", parse::blaschke(v))).transpose()?;
        if mode == Mode::Wsp && blaschke.is_none() {
            return Err(DescriptorError::Missing("blaschke"));
        }
        Ok(Self {
            mode,
            generators: value("generators", generators(need("generators")?))?,
            blaschke,
            ip: value("ip", get("ip").unwrap_or("taylor").parse())?,
            weights: get("weights").map(|v| value("weights", parse::weights(v))).transpose()?,
            alpha: get("alpha").map(|v| value("alpha", parse::number(v))).transpose()?.unwrap_or(0.0),
            k: get("k").map(|v| int("k", v)).transpose()?.unwrap_or(1),
            depth: get("depth").map(|v| int("depth", v)).transpose()?,
            n: int("N", need("N")?)?,
            n_compare: int("N_compare", need("N_compare")?)?,
            seed: get("seed").map(|v| int("seed", v)).transpose()?.unwrap_or(0),
        })
    }

    pub fn generator_list(&self) -> Vec<ComplexSeries> {
        match &self.generators {
            Generators::Literal(g) => g.clone(),
            Generators::Random { count, degree } => (0..*count)
                .map(|i| gaussian_polynomial(&mut trial_rng(self.seed, i as u64), *degree))
                .collect(),
            Generators::ShiftInvariant => shift_invariant_generators(self.seed),
            Generators::DirectSum => direct_sum_generators(self.seed),
        }
    }

    pub fn run(&self) -> Result<WspReport, SubspaceError> {
        let gens = self.generator_list();
        let d = match self.mode {
            Mode::Corollary => corollary_check(&gens, self.k, self.alpha, self.n, self.n_compare)?,
            Mode::Wsp => {
                let b = self.blaschke.as_ref().expect("checked while parsing");
                let ip = parse::inner_product(self.ip, self.alpha, self.weights.clone(), b, self.k, self.depth, self.n);
                wsp_defect(&gens, b, &ip, self.n, self.n_compare)?
            }
        };
        Ok(WspReport::new(d, self.n, self.n_compare))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Dims {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "W")]
    pub w: usize,
    #[serde(rename = "G")]
    pub g: usize,
}

/// The one-line JSON result of `wsp-test`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WspReport {
    pub defect: Num,
    pub dims: Dims,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "N_compare")]
    pub n_compare: usize,
}

impl WspReport {
    pub fn new(d: WspDefect, n: usize, n_compare: usize) -> Self {
        Self {
            defect: Num(d.defect),
            dims: Dims { m: d.dim_m, w: d.dim_w, g: d.dim_g },
            n,
            n_compare,
        }
    }
}
