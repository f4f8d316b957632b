use std::fs::File;
use std::io::{self, BufWriter, Write};

use backreaction::asymptotics::survival_curve_longtime;
use backreaction::inversion::{survival_curve_by_inversion, InversionSpec};
use backreaction::model::{Method, SurvivalCurve, SurvivalPoint};
use backreaction::residence::{ks_distance, residence_survival, sample_residence, ResidenceLaw};
use backreaction::special::mittag_leffler;
use backreaction::survival::{survival_curve, survival_nonmarkov_quadrature};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::CliError;

const MIN_SAMPLES: usize = 1000;

fn sink(config: &RunConfig) -> Result<Box<dyn Write>, CliError> {
    Ok(match &config.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn num(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn curve(config: &RunConfig, method: Method) -> Result<SurvivalCurve, CliError> {
    let (p, grid) = (&config.params, &config.grid);
    Ok(match method {
        Method::Integral | Method::Markovian => survival_curve(p, grid, method, &config.quadrature)?,
        Method::Talbot => survival_curve_by_inversion(p, grid, &InversionSpec::default())?,
        Method::Stehfest => survival_curve_by_inversion(p, grid, &InversionSpec::stehfest())?,
        Method::Asymptotic => survival_curve_longtime(p, grid)?,
    })
}

pub fn survival(config: &RunConfig) -> Result<(), CliError> {
    let curve = curve(config, config.method)?;
    let mut w = sink(config)?;
    if config.reduced {
        writeln!(w, "t,tau,S,abs_err_est,method")?;
    } else {
        writeln!(w, "t,S,abs_err_est,method")?;
    }
    for SurvivalPoint { t, s, abs_err, method } in &curve.entries {
        if config.reduced {
            let tau = config.params.reduced_time(*t);
            writeln!(w, "{},{},{},{},{method}", num(*t), num(tau), num(*s), num(*abs_err))?;
        } else {
            writeln!(w, "{},{},{},{method}", num(*t), num(*s), num(*abs_err))?;
        }
    }
    w.flush()?;
    Ok(())
}

struct Pair {
    name: &'static str,
    diff: f64,
    tol: f64,
}

impl Pair {
    // NaN discrepancies fail
    fn ok(&self) -> bool {
        self.diff <= self.tol
    }
}

pub fn compare(config: &RunConfig) -> Result<(), CliError> {
    let p = &config.params;
    let fractional = p.sigma() < 1.0;
    // the quadrature path itself, even where a closed form short-circuits it
    let integral: Vec<f64> = if fractional {
        config
            .grid
            .times()
            .iter()
            .map(|&t| survival_nonmarkov_quadrature(t, p, &config.quadrature).map(|v| v.s))
            .collect::<Result<_, _>>()?
    } else {
        curve(config, Method::Integral)?.values().collect()
    };
    let max_diff = |other: &[f64]| integral.iter().zip(other).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    let mut pairs = Vec::new();
    let talbot: Vec<f64> = curve(config, Method::Talbot)?.values().collect();
    pairs.push(Pair { name: "integral-talbot", diff: max_diff(&talbot), tol: 1e-6 });
    let stehfest: Vec<f64> = curve(config, Method::Stehfest)?.values().collect();
    pairs.push(Pair { name: "integral-stehfest", diff: max_diff(&stehfest), tol: 1e-4 });
    if !fractional {
        let markov: Vec<f64> = curve(config, Method::Markovian)?.values().collect();
        pairs.push(Pair { name: "integral-markovian", diff: max_diff(&markov), tol: 1e-8 });
    }
    if fractional && p.kappa_a() == 0.0 {
        let exact: Vec<f64> = config
            .grid
            .times()
            .iter()
            .map(|&t| mittag_leffler(p.sigma(), -(p.kappa() * t).powf(p.sigma())).map(|e| 1.0 - e))
            .collect::<Result<_, _>>()?;
        pairs.push(Pair { name: "integral-analytic", diff: max_diff(&exact), tol: 1e-6 });
    }

    let mut w = sink(config)?;
    writeln!(w, "pair,max_abs_diff,tolerance,status")?;
    for pair in &pairs {
        let status = if pair.ok() { "ok" } else { "FAIL" };
        writeln!(w, "{},{},{},{status}", pair.name, num(pair.diff), num(pair.tol))?;
    }
    w.flush()?;
    let failed: Vec<&str> = pairs.iter().filter(|p| !p.ok()).map(|p| p.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(format!("tolerance exceeded for {}", failed.join(", "))))
    }
}

pub fn sample_psi(config: &RunConfig) -> Result<(), CliError> {
    let n = config.samples;
    if n < MIN_SAMPLES {
        return Err(CliError::Usage(format!("--samples must be at least {MIN_SAMPLES} (got {n})")));
    }
    let law = ResidenceLaw::from_params(&config.params);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut xs: Vec<f64> = (0..n).map(|_| sample_residence(&law, &mut rng)).collect();
    let ks = ks_distance(&mut xs, &law)?;
    let bound = 1.95 * 1.5 / (n as f64).sqrt();

    let mut w = sink(config)?;
    writeln!(w, "t,empirical,analytic")?;
    for &t in config.grid.times() {
        let above = n - xs.partition_point(|&x| x <= t);
        let empirical = above as f64 / n as f64;
        writeln!(w, "{},{},{}", num(t), num(empirical), num(residence_survival(t, &law)?))?;
    }
    w.flush()?;
    drop(w);
    println!("# samples = {n}, seed = {}", config.seed);
    println!("# ks = {}, bound = {}", num(ks), num(bound));
    if ks <= bound {
        Ok(())
    } else {
        Err(CliError::Check(format!("KS distance {ks:.3e} exceeds {bound:.3e}")))
    }
}
