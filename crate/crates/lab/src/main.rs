use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wsp_core::{BlaschkeProduct, WeightSequence};
use wsp_lab::commands::{self, Format, Outcome, Status};
use wsp_lab::descriptor::Descriptor;
use wsp_lab::parse::{self, IpKind};

const EXIT_VIOLATED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "wsp-lab", version, about = "Wandering-subspace numerics for Blaschke multiplication operators")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Monomial thresholds log2/log(k+1) and the z² bound log(2/3)/log(5/3).
    /// CSV columns: quantity,k,value.
    Thresholds {
        #[arg(long, default_value_t = 6)]
        k: usize,
    },
    /// Shimorin weight conditions (a)/(b) for a k-step shift, one CSV row
    /// per violation: condition,index,lhs,rhs. Exit 2 when the criterion fails.
    Criterion {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        s0: usize,
        #[arg(long, default_value_t = 100_000)]
        nmax: usize,
        /// Check ω(n) + ω(n+2k) ≤ 2ω(n+k) instead.
        #[arg(long)]
        concavity: bool,
    },
    /// Criterion over a grid of power-law exponents.
    /// CSV columns: alpha,k,s0,holds,first_violation_index. Always exits 0.
    Scan {
        /// Exponents: a,b,c or start:stop:step.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Step sizes: a,b or start..stop.
        #[arg(long, default_value = "1..6")]
        k: String,
        /// Offsets: integers, or `k` for s0 = k.
        #[arg(long, default_value = "0")]
        s0: String,
        #[arg(long, default_value_t = 100_000)]
        nmax: usize,
    },
    /// B-adic coordinates of f. CSV columns: layer,basis_index,re,im.
    /// Exit 2 when the depth is exhausted (the partial result is written).
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        blaschke: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// B-adic norm of f with layer weights (k+1)^α. CSV columns:
    /// value,supported,layers,residual. With --trials, estimates the ratio
    /// range against the α-norm instead: c_min,c_max,max_residual,supported.
    Bnorm {
        #[arg(long, allow_hyphen_values = true)]
        blaschke: String,
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        /// Degree of the random polynomials used with --trials.
        #[arg(long = "N", default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Wandering defect for an experiment descriptor file; prints one JSON
    /// line {defect, dims: {M, W, G}, N, N_compare}.
    WspTest {
        descriptor: PathBuf,
    },
    /// Smallest eigenvalue of 2‖Tx‖² + 2‖y‖² - ‖x+Ty‖² for T = M_B on a
    /// truncation. CSV columns: min_eig,holds. Exit 2 when it is negative.
    OperatorCheck {
        /// Defaults to z^k.
        #[arg(long, allow_hyphen_values = true)]
        blaschke: Option<String>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = IpArg::Taylor)]
        ip: IpArg,
        #[command(flatten)]
        weights: WeightArgs,
        /// Shift for --ip shifted (defaults to k).
        #[arg(long)]
        shift: Option<usize>,
        #[arg(long = "N", default_value_t = 64)]
        n: usize,
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Args)]
struct WeightArgs {
    /// Power-law exponent, weights (n+1)^α.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Weight literal: power:α, shifted:k:α, secozk, improved-z2:α, explicit:w0,w1,…+<tail>.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "alpha")]
    weights: Option<String>,
}

impl WeightArgs {
    fn sequence(&self) -> Result<WeightSequence> {
        match (&self.weights, self.alpha) {
            (Some(w), _) => Ok(parse::weights(w)?),
            (None, Some(a)) => Ok(WeightSequence::power_law(a)),
            (None, None) => anyhow::bail!("one of --alpha or --weights is required"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum IpArg {
    Taylor,
    Badic,
    Shifted,
}

fn default_depth_for(b: &BlaschkeProduct, n: usize) -> usize {
    4 * wsp_core::default_depth(n, b.degree()) + 32
}

fn run(cli: Cli) -> Result<Outcome> {
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let outcome = match cli.command {
        Command::Thresholds { k } => commands::thresholds(k, format),
        Command::Criterion { weights, k, s0, nmax, concavity } => {
            commands::criterion(&weights.sequence()?, k, s0, nmax, concavity, format)?
        }
        Command::Scan { alpha, k, s0, nmax } => {
            let alphas = parse::real_grid(&alpha).context("--alpha")?;
            let ks = parse::integer_grid(&k).context("--k")?;
            let offsets = parse::offsets(&s0).context("--s0")?;
            commands::scan(&alphas, &ks, &offsets, nmax, format)?
        }
        Command::Decompose { blaschke, f, depth } => {
            let b = parse::blaschke(&blaschke).context("--blaschke")?;
            let f = parse::series(&f).context("--f")?;
            let depth = depth.unwrap_or_else(|| default_depth_for(&b, f.truncation_degree()));
            commands::decompose(&b, &f, depth, format)?
        }
        Command::Bnorm { blaschke, f, alpha, depth, trials, n, seed } => {
            let b = parse::blaschke(&blaschke).context("--blaschke")?;
            match (trials, f) {
                (Some(t), _) => commands::norm_equivalence(&b, alpha, n, t, seed, format),
                (None, Some(f)) => {
                    let f = parse::series(&f).context("--f")?;
                    let depth = depth.unwrap_or_else(|| default_depth_for(&b, f.truncation_degree()));
                    commands::bnorm(&b, &f, alpha, depth, format)?
                }
                (None, None) => anyhow::bail!("bnorm needs --f or --trials"),
            }
        }
        Command::WspTest { descriptor } => {
            let text = std::fs::read_to_string(&descriptor)
                .with_context(|| format!("reading {}", descriptor.display()))?;
            let d = Descriptor::parse(&text).with_context(|| format!("parsing {}", descriptor.display()))?;
            commands::wsp_test(&d, if cli.out.is_none() { Format::Json } else { format })?
        }
        Command::OperatorCheck { blaschke, k, ip, weights, shift, n, depth } => {
            let b = match blaschke {
                Some(s) => parse::blaschke(&s).context("--blaschke")?,
                None => BlaschkeProduct::monomial(k.max(1)),
            };
            let ip = match ip {
                IpArg::Taylor => IpKind::Taylor,
                IpArg::Badic => IpKind::BAdic,
                IpArg::Shifted => IpKind::Shifted,
            };
            let alpha = weights.alpha.unwrap_or(0.0);
            let w = if weights.alpha.is_none() && weights.weights.is_none() {
                WeightSequence::power_law(0.0)
            } else {
                weights.sequence()?
            };
            let depth = depth.unwrap_or_else(|| default_depth_for(&b, n));
            commands::operator_check(&b, ip, &w, shift.unwrap_or(k), alpha, n, depth, format)?
        }
    };
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let out = cli.out.clone();
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    let written = match &out {
        Some(path) => std::fs::write(path, &outcome.text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::FAILURE;
    }
    if let Some(note) = &outcome.note {
        eprintln!("{note}");
    }
    match outcome.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Violated => ExitCode::from(EXIT_VIOLATED),
    }
}
