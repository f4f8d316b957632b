//! Run configuration: command-line flags layered over an optional
//! `key = value` file.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use backreaction::model::{make_params, Method, PairParams, TimeGrid};
use backreaction::survival::QuadratureSpec;
use clap::Args;

use crate::CliError;

/// Flags shared by every subcommand. Every key can also be set in the file
/// given by `--config`, using the flag name without dashes (`t-start = 0.1`).
#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    /// Relative diffusion constant
    #[arg(long = "D", value_name = "D")]
    pub d: Option<f64>,
    /// Encounter distance
    #[arg(long)]
    pub a: Option<f64>,
    /// Intrinsic association constant
    #[arg(long)]
    pub ka: Option<f64>,
    /// Dissociation rate scale
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Memory exponent in (0, 1]
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub t_start: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Grid points per decade
    #[arg(long)]
    pub ppd: Option<usize>,
    /// integral, talbot, stehfest, asymptotic or markovian
    #[arg(long)]
    pub method: Option<String>,
    /// Output file (standard output if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of residence times to draw
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Add the reduced time Dt/a² as a column
    #[arg(long)]
    pub reduced: bool,
    /// Absolute quadrature tolerance on S
    #[arg(long)]
    pub abs_tol: Option<f64>,
    /// Quadrature tolerance relative to |S - 1|
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

const KEYS: [&str; 15] = [
    "D", "a", "ka", "kappa", "sigma", "t-start", "t-end", "ppd", "method", "out", "samples", "seed", "reduced",
    "abs-tol", "rel-tol",
];

/// Fully resolved settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: PairParams,
    pub grid: TimeGrid,
    pub method: Method,
    pub out: Option<PathBuf>,
    pub reduced: bool,
    pub quadrature: QuadratureSpec,
    pub samples: usize,
    pub seed: u64,
}

fn parse_file(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key = value", path.display(), n + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("{}:{}: unknown key '{key}'", path.display(), n + 1)));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

struct Layered {
    file: HashMap<String, String>,
}

impl Layered {
    fn get<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: fmt::Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.file.get(key) {
            Some(text) => text.parse().map_err(|e| CliError::Usage(format!("config key '{key}': {e}"))),
            None => Ok(default),
        }
    }
}

impl Options {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => parse_file(path)?,
            None => HashMap::new(),
        };
        let l = Layered { file };
        let params = make_params(
            l.get(self.d, "D", 1.0)?,
            l.get(self.a, "a", 1.0)?,
            l.get(self.ka, "ka", 1.0)?,
            l.get(self.kappa, "kappa", 1.0)?,
            l.get(self.sigma, "sigma", 0.5)?,
        )?;
        let t_start = l.get(self.t_start, "t-start", 1e-2)?;
        let t_end = l.get(self.t_end, "t-end", 1e6)?;
        let ppd = l.get(self.ppd, "ppd", 8)?;
        if !(t_start > 0.0 && t_start < t_end) || ppd < 1 {
            return Err(CliError::Usage(format!(
                "grid needs 0 < t-start < t-end and ppd >= 1 (got {t_start}, {t_end}, {ppd})"
            )));
        }
        let grid = TimeGrid::log(t_start, t_end, ppd)?;
        let method: Method = l.get(self.method.clone(), "method", "integral".to_string())?.parse()?;
        let out = l.get(self.out.clone().map(|p| p.display().to_string()), "out", String::new())?;
        let reduced = self.reduced || l.get(None, "reduced", false)?;
        let quadrature = QuadratureSpec {
            abs_tol: l.get(self.abs_tol, "abs-tol", QuadratureSpec::default().abs_tol)?,
            rel_tol: l.get(self.rel_tol, "rel-tol", QuadratureSpec::default().rel_tol)?,
            ..QuadratureSpec::default()
        };
        quadrature.validate()?;
        Ok(RunConfig {
            params,
            grid,
            method,
            out: if out.is_empty() { None } else { Some(PathBuf::from(out)) },
            reduced,
            quadrature,
            samples: l.get(self.samples, "samples", 100_000)?,
            seed: l.get(self.seed, "seed", 1)?,
        })
    }
}
