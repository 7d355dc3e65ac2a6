use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hechain::rmatrep::SuperSpace;
use hechain::scalar::{Rational, Scalar};
use hechain::BoundaryMode;

use crate::CliError;

/// Largest rank or site bound accepted from the command line.
pub const MAX_SITES: usize = 7;
/// Largest fusion level accepted from the command line.
pub const MAX_LEVEL: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "hechain", version, about = "Exact verification and operator export for open Hecke chains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and emit a report.
    Verify(Options),
    /// Compute and serialize operators.
    Compute {
        kind: ComputeKind,
        #[command(flatten)]
        options: Options,
    },
    /// Eigenvalues of the free Hamiltonian in an R-matrix representation.
    Spectrum(Options),
    /// The T-Q functional system on a Temperley-Lieb chain.
    Tq(Options),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComputeKind {
    Tau,
    Charges,
    Hamiltonian,
    Qop,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Raw flags; every field may also come from a `key=value` config file.
#[derive(Clone, Debug, Default, Args)]
pub struct Options {
    #[arg(long)]
    pub suite: Option<String>,
    /// Rank, site or chain-length bound.
    #[arg(long = "n", visible_aliases = ["sites", "N"])]
    pub n: Option<usize>,
    /// Fusion level bound.
    #[arg(long)]
    pub k: Option<usize>,
    /// Rational deformation parameter `p/r`; symbolic when omitted.
    #[arg(long)]
    pub q: Option<String>,
    /// Rational boundary parameter; symbolic when omitted.
    #[arg(long)]
    pub xi: Option<String>,
    /// `free`, `blob` or `poly:FILE`.
    #[arg(long)]
    pub boundary: Option<String>,
    /// R-matrix space such as `gl2` or `gl(2|1)`.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// `key=value` file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Boundary {
    Free,
    Blob,
    /// Coefficients `c_k(x)` of `Σ_k c_k(x) y_1^k`.
    Poly(Vec<Scalar>),
}

impl Boundary {
    pub fn parse(text: &str) -> Result<Boundary, CliError> {
        match text.trim() {
            "free" => Ok(Boundary::Free),
            "blob" => Ok(Boundary::Blob),
            other => {
                let path = other
                    .strip_prefix("poly:")
                    .ok_or_else(|| CliError::Config(format!("unknown boundary {other:?}")))?;
                let raw = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{path}: {e}")))?;
                let coeffs: Vec<Scalar> =
                    serde_json::from_str(&raw).map_err(|e| CliError::Config(format!("{path}: {e}")))?;
                if coeffs.is_empty() {
                    return Err(CliError::Config(format!("{path}: empty coefficient list")));
                }
                Ok(Boundary::Poly(coeffs))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Boundary::Free => "free".into(),
            Boundary::Blob => "blob".into(),
            Boundary::Poly(c) => format!("poly[{}]", c.len()),
        }
    }

    pub fn mode(&self, xi: &Scalar) -> BoundaryMode {
        match self {
            Boundary::Free => BoundaryMode::Free,
            Boundary::Blob => BoundaryMode::QuadraticBlob { xi: xi.clone() },
            Boundary::Poly(c) => BoundaryMode::Polynomial(c.clone()),
        }
    }
}

/// Resolved settings shared by every subcommand.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub suite: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub q: Option<Scalar>,
    pub xi: Option<Scalar>,
    pub boundary: Option<Boundary>,
    pub model: Option<SuperSpace>,
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn q_label(&self) -> String {
        self.q.as_ref().map_or_else(|| "q".to_string(), ToString::to_string)
    }

    pub fn xi_value(&self) -> Scalar {
        self.xi.clone().unwrap_or_else(|| Scalar::var(hechain::scalar::Var::XI))
    }
}

fn rational(key: &str, text: &str) -> Result<Scalar, CliError> {
    let r: Rational = text.parse().map_err(|_| CliError::Config(format!("{key}: expected a rational p/r, got {text:?}")))?;
    Ok(Scalar::from_rational(&r))
}

fn number<T: std::str::FromStr>(key: &str, text: &str) -> Result<T, CliError> {
    text.trim().parse().map_err(|_| CliError::Config(format!("{key}: cannot parse {text:?}")))
}

/// Reads `key=value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected key=value", lineno + 1)))?;
        let key = match key.trim() {
            "sites" | "N" => "n",
            k => k,
        };
        out.insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}

impl Options {
    /// Fills unset flags from the config file, then validates.
    pub fn resolve(&self) -> Result<SuiteConfig, CliError> {
        let mut merged = self.clone();
        if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            for (key, value) in parse_config_file(&text)? {
                match key.as_str() {
                    "suite" => merged.suite = merged.suite.or(Some(value)),
                    "n" => merged.n = merged.n.or(Some(number(&key, &value)?)),
                    "k" => merged.k = merged.k.or(Some(number(&key, &value)?)),
                    "q" => merged.q = merged.q.or(Some(value)),
                    "xi" => merged.xi = merged.xi.or(Some(value)),
                    "boundary" => merged.boundary = merged.boundary.or(Some(value)),
                    "model" => merged.model = merged.model.or(Some(value)),
                    "seed" => merged.seed = merged.seed.or(Some(number(&key, &value)?)),
                    "format" => {
                        let f = Format::from_str(&value, true).map_err(|_| CliError::Config(format!("format: {value:?}")))?;
                        merged.format = merged.format.or(Some(f));
                    }
                    "output" => merged.output = merged.output.or(Some(PathBuf::from(value))),
                    other => return Err(CliError::Config(format!("unknown config key {other:?}"))),
                }
            }
        }
        if let Some(n) = merged.n {
            if n == 0 || n > MAX_SITES {
                return Err(CliError::Config(format!("n = {n} outside 1..={MAX_SITES}")));
            }
        }
        if let Some(k) = merged.k {
            if k == 0 || k > MAX_LEVEL {
                return Err(CliError::Config(format!("k = {k} outside 1..={MAX_LEVEL}")));
            }
        }
        let q = merged.q.as_deref().map(|t| rational("q", t)).transpose()?;
        if q.as_ref().is_some_and(|q| q.is_zero() || (q * q).is_one()) {
            return Err(CliError::Config("q must avoid 0 and ±1".into()));
        }
        Ok(SuiteConfig {
            suite: merged.suite,
            n: merged.n,
            k: merged.k,
            q,
            xi: merged.xi.as_deref().map(|t| rational("xi", t)).transpose()?,
            boundary: merged.boundary.as_deref().map(Boundary::parse).transpose()?,
            model: merged
                .model
                .as_deref()
                .map(|m| m.parse::<SuperSpace>().map_err(|e| CliError::Config(e.to_string())))
                .transpose()?,
            seed: merged.seed.unwrap_or(0),
            format: merged.format.unwrap_or_default(),
            output: merged.output,
        })
    }
}
