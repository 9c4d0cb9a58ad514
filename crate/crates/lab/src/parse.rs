//! Text literals for series, Blaschke products, weight sequences and grids.
//!
//! - series: `re[,im];re[,im];…`, lowest degree first (`1;0,0.7` is `1 + 0.7i z`)
//! - Blaschke: `z^k`, or `zeros=re,im;re,im phase=θ` (phase optional)
//! - weights: `power:α`, `shifted:k:α`, `secozk`, `improved-z2:α`,
//!   `explicit:w0,w1,…+<tail>`
//! - grids: `a,b,c` or `start:stop:step` (inclusive)

use std::fmt;

use wsp_core::{
    improved_z2_weights, secozk_weights, BlaschkeError, BlaschkeProduct, Complex64, ComplexSeries,
    InnerProductSpec, WeightSequence,
};

#[derive(Debug, Clone, PartialEq)]
pub enum ParseError {
    Empty(&'static str),
    Number(String),
    Malformed { what: &'static str, input: String },
    Blaschke(BlaschkeError),
    Invalid(String),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty(what) => write!(f, "empty {what}"),
            ParseError::Number(s) => write!(f, "not a number: {s:?}"),
            ParseError::Malformed { what, input } => write!(f, "malformed {what}: {input:?}"),
            ParseError::Blaschke(e) => write!(f, "{e}"),
            ParseError::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for ParseError {}

pub fn number(s: &str) -> Result<f64, ParseError> {
    let t = s.trim();
    let v: f64 = t.parse().map_err(|_| ParseError::Number(t.to_string()))?;
    if !v.is_finite() {
        return Err(ParseError::Number(t.to_string()));
    }
    Ok(v)
}

fn integer(s: &str) -> Result<usize, ParseError> {
    s.trim().parse().map_err(|_| ParseError::Number(s.trim().to_string()))
}

fn complex(term: &str) -> Result<Complex64, ParseError> {
    let mut parts = term.split(',');
    let re = number(parts.next().unwrap_or(""))?;
    let im = match parts.next() {
        Some(p) => number(p)?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(ParseError::Malformed { what: "complex number", input: term.to_string() });
    }
    Ok(Complex64::new(re, im))
}

fn complex_list(s: &str) -> Result<Vec<Complex64>, ParseError> {
    s.split(';').filter(|t| !t.trim().is_empty()).map(complex).collect()
}

pub fn series(s: &str) -> Result<ComplexSeries, ParseError> {
    let coeffs = complex_list(s)?;
    if coeffs.is_empty() {
        return Err(ParseError::Empty("series"));
    }
    ComplexSeries::new(coeffs).map_err(|e| ParseError::Invalid(e.to_string()))
}

pub fn blaschke(s: &str) -> Result<BlaschkeProduct, ParseError> {
    let t = s.trim();
    if let Some(k) = t.strip_prefix("z^") {
        let k = integer(k)?;
        if k == 0 {
            return Err(ParseError::Invalid("z^0 has no zeros".into()));
        }
        return Ok(BlaschkeProduct::monomial(k));
    }
    if t == "z" {
        return Ok(BlaschkeProduct::monomial(1));
    }
    let mut zeros = None;
    let mut phase = 0.0;
    for field in t.split_whitespace() {
        match field.split_once('=') {
            Some(("zeros", v)) => zeros = Some(complex_list(v)?),
            Some(("phase", v)) => phase = number(v)?,
            _ => return Err(ParseError::Malformed { what: "Blaschke product", input: t.to_string() }),
        }
    }
    let zeros = zeros.ok_or(ParseError::Malformed { what: "Blaschke product", input: t.to_string() })?;
    BlaschkeProduct::new(zeros, phase).map_err(ParseError::Blaschke)
}

pub fn weights(s: &str) -> Result<WeightSequence, ParseError> {
    let t = s.trim();
    let bad = || ParseError::Malformed { what: "weight sequence", input: t.to_string() };
    if t == "secozk" {
        return Ok(secozk_weights());
    }
    let (kind, rest) = t.split_once(':').ok_or_else(bad)?;
    match kind {
        "power" => Ok(WeightSequence::power_law(number(rest)?)),
        "shifted" => {
            let (k, a) = rest.split_once(':').ok_or_else(bad)?;
            Ok(WeightSequence::shifted(WeightSequence::power_law(number(a)?), integer(k)?))
        }
        "improved-z2" => improved_z2_weights(number(rest)?).map_err(|e| ParseError::Invalid(e.to_string())),
        "explicit" => {
            let (head, tail) = rest.split_once('+').ok_or_else(bad)?;
            let head = head.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
            WeightSequence::explicit(head, weights(tail)?).map_err(|e| ParseError::Invalid(e.to_string()))
        }
        _ => Err(bad()),
    }
}

/// Inner product kind as accepted by `--ip`: `taylor`, `badic`, `shifted`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpKind {
    Taylor,
    BAdic,
    Shifted,
}

impl std::str::FromStr for IpKind {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "taylor" => Ok(IpKind::Taylor),
            "badic" => Ok(IpKind::BAdic),
            "shifted" => Ok(IpKind::Shifted),
            other => Err(ParseError::Malformed { what: "inner product kind", input: other.to_string() }),
        }
    }
}

/// Assembles an inner product. `weights` overrides `power:α` for the
/// taylor and badic kinds; `shifted` uses `k` and `α`.
pub fn inner_product(
    kind: IpKind,
    alpha: f64,
    weights: Option<WeightSequence>,
    blaschke: &BlaschkeProduct,
    k: usize,
    depth: Option<usize>,
    n: usize,
) -> InnerProductSpec {
    let w = weights.unwrap_or_else(|| WeightSequence::power_law(alpha));
    match kind {
        IpKind::Taylor => InnerProductSpec::TaylorDiagonal(w),
        IpKind::Shifted => InnerProductSpec::Shifted { k, alpha },
        IpKind::BAdic => {
            let depth = depth.unwrap_or(4 * wsp_core::default_depth(n, blaschke.degree()) + 32);
            InnerProductSpec::BAdic { blaschke: blaschke.clone(), weights: w, depth }
        }
    }
}

/// `a,b,c` or inclusive `start:stop:step`.
pub fn real_grid(s: &str) -> Result<Vec<f64>, ParseError> {
    let t = s.trim();
    if let [start, stop, step] = t.split(':').collect::<Vec<_>>()[..] {
        let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
        if step <= 0.0 || stop < start {
            return Err(ParseError::Malformed { what: "range", input: t.to_string() });
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize;
        return Ok((0..=count).map(|i| start + i as f64 * step).collect());
    }
    let v = t.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err(ParseError::Empty("grid"));
    }
    Ok(v)
}

/// `a,b,c` or inclusive `start..stop`.
pub fn integer_grid(s: &str) -> Result<Vec<usize>, ParseError> {
    let t = s.trim();
    if let Some((a, b)) = t.split_once("..") {
        let (a, b) = (integer(a)?, integer(b.trim_start_matches('='))?);
        if b < a {
            return Err(ParseError::Malformed { what: "range", input: t.to_string() });
        }
        return Ok((a..=b).collect());
    }
    t.split(',').map(integer).collect()
}

/// Scan offsets: integers, or the literal `k` meaning `s0 = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Offset {
    Fixed(usize),
    EqualsK,
}

pub fn offsets(s: &str) -> Result<Vec<Offset>, ParseError> {
    s.split(',')
        .map(|t| match t.trim() {
            "k" => Ok(Offset::EqualsK),
            other => integer(other).map(Offset::Fixed),
        })
        .collect()
}
