//! Seeded Monte Carlo runs on Erdős–Rényi graphs.
//!
//! Every trial draws from its own ChaCha stream keyed by `(seed, trial)`, so a
//! run's result depends only on its [`ExperimentConfig`] and never on the
//! worker count or scheduling.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families;
use crate::jacobian::ReducedJacobian;
use crate::multigraph::{Multigraph, Probability};
use crate::theorems;

pub const DEFAULT_RESAMPLE_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Does `[δ_01]` generate a cyclic `Jac(G)`?
    FixedDelta,
    /// Does some `[δ_xy]` generate a cyclic `Jac(G)`?
    ExistsDelta,
    /// On biconnected `G`, is there `y` with `|[δ_0y]| ≥ n`?
    OrderConjecture,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::FixedDelta => "fixed-delta",
            Mode::ExistsDelta => "exists-delta",
            Mode::OrderConjecture => "order-conjecture",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed-delta" => Ok(Mode::FixedDelta),
            "exists-delta" => Ok(Mode::ExistsDelta),
            "order-conjecture" => Ok(Mode::OrderConjecture),
            other => Err(Error::InvalidArgument(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    #[serde(serialize_with = "ser_display")]
    pub p: Probability,
    pub trials: u64,
    pub seed: u64,
    pub mode: Mode,
    /// Worker threads; results do not depend on it.
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub resample_cap: u64,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl ExperimentConfig {
    pub fn new(mode: Mode, n: usize, trials: u64, seed: u64) -> Self {
        ExperimentConfig {
            n,
            p: Probability::half(),
            trials,
            seed,
            mode,
            jobs: 1,
            resample_cap: DEFAULT_RESAMPLE_CAP,
        }
    }

    pub fn with_p(mut self, p: Probability) -> Self {
        self.p = p;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        let min_n = if self.mode == Mode::OrderConjecture { 3 } else { 2 };
        if self.n < min_n {
            return Err(Error::InvalidArgument(format!(
                "{} needs n >= {min_n}",
                self.mode
            )));
        }
        if self.resample_cap == 0 {
            return Err(Error::InvalidArgument("resample cap must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentResult {
    #[serde(flatten)]
    pub config: ExperimentConfig,
    pub successes: u64,
    pub trials_used: u64,
    /// Samples rejected as disconnected, non-cyclic or not biconnected.
    pub resamples: u64,
    /// `successes/trials_used`, reduced.
    pub estimate_exact: String,
    /// Five decimal places, rounded half up.
    pub estimate: String,
    /// Order-conjecture failures, as edge lists.
    pub counterexamples: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ExperimentResult {
    pub fn estimate_f64(&self) -> f64 {
        self.successes as f64 / self.trials_used as f64
    }

    /// Binomial standard error of the estimate.
    pub fn standard_error(&self) -> f64 {
        let p = self.estimate_f64();
        (p * (1.0 - p) / self.trials_used as f64).sqrt()
    }
}

/// `num/den` rounded half up to five decimals.
fn five_places(num: u64, den: u64) -> String {
    let scaled = (num as u128 * 200_000 + den as u128) / (2 * den as u128);
    format!("{}.{:05}", scaled / 100_000, scaled % 100_000)
}

fn reduced_fraction(num: u64, den: u64) -> String {
    let r = num_rational::Ratio::new(num, den);
    format!("{}/{}", r.numer(), r.denom())
}

struct TrialOutcome {
    success: bool,
    resamples: u64,
    counterexample: Option<String>,
}

/// The random stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws `G(n, p)` until `accept` returns a value.
fn sample_until<T>(
    cfg: &ExperimentConfig,
    trial: u64,
    mut accept: impl FnMut(&Multigraph) -> Result<Option<T>>,
) -> Result<(Multigraph, T, u64)> {
    let mut rng = trial_rng(cfg.seed, trial);
    for rejected in 0..cfg.resample_cap {
        let g = Multigraph::erdos_renyi(cfg.n, cfg.p, &mut rng);
        if let Some(v) = accept(&g)? {
            return Ok((g, v, rejected));
        }
    }
    Err(Error::ResampleCap { trial, cap: cfg.resample_cap })
}

fn cyclic_jacobian(g: &Multigraph, base: usize) -> Result<Option<ReducedJacobian<'_>>> {
    if !g.is_connected() {
        return Ok(None);
    }
    let jac = ReducedJacobian::new(g, base)?;
    Ok(jac.is_cyclic().then_some(jac))
}

fn fixed_delta_trial(cfg: &ExperimentConfig, trial: u64) -> Result<TrialOutcome> {
    let (g, (), resamples) = sample_until(cfg, trial, |g| {
        Ok(cyclic_jacobian(g, 0)?.map(|_| ()))
    })?;
    let success = theorems::is_generator_delta(&g, 0, 1)?;
    Ok(TrialOutcome { success, resamples, counterexample: None })
}

fn exists_delta_trial(cfg: &ExperimentConfig, trial: u64) -> Result<TrialOutcome> {
    let (g, (), resamples) = sample_until(cfg, trial, |g| {
        Ok(cyclic_jacobian(g, g.n() - 1)?.map(|_| ()))
    })?;
    let jac = ReducedJacobian::at_last(&g)?;
    jac.adjugate();
    let m = jac.order();
    let mut success = false;
    'pairs: for x in 0..cfg.n {
        for y in x + 1..cfg.n {
            if &jac.delta_order(x, y)? == m {
                success = true;
                break 'pairs;
            }
        }
    }
    Ok(TrialOutcome { success, resamples, counterexample: None })
}

/// Some `y` with `|[δ_xy]| ≥ n`, if any.
pub fn order_conjecture_witness(jac: &ReducedJacobian<'_>, x: usize) -> Result<Option<(usize, BigInt)>> {
    let n = jac.graph().n();
    let target = BigInt::from(n);
    jac.adjugate();
    for y in (0..n).filter(|&y| y != x) {
        let ord = jac.delta_order(x, y)?;
        if ord >= target {
            return Ok(Some((y, ord)));
        }
    }
    Ok(None)
}

fn order_conjecture_trial(cfg: &ExperimentConfig, trial: u64) -> Result<TrialOutcome> {
    let (g, (), resamples) = sample_until(cfg, trial, |g| Ok(g.is_biconnected().then_some(())))?;
    let jac = ReducedJacobian::at_last(&g)?;
    let success = order_conjecture_witness(&jac, 0)?.is_some();
    Ok(TrialOutcome {
        success,
        resamples,
        counterexample: (!success).then(|| format!("# x=0\n{}", g.to_edge_list())),
    })
}

/// Runs one experiment. Trials execute on `cfg.jobs` worker threads.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let start = Instant::now();
    let trial = |t: u64| match cfg.mode {
        Mode::FixedDelta => fixed_delta_trial(cfg, t),
        Mode::ExistsDelta => exists_delta_trial(cfg, t),
        Mode::OrderConjecture => order_conjecture_trial(cfg, t),
    };
    let outcomes: Vec<TrialOutcome> = if cfg.jobs <= 1 {
        (0..cfg.trials).map(trial).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        pool.install(|| (0..cfg.trials).into_par_iter().map(trial).collect::<Result<_>>())?
    };
    let successes = outcomes.iter().filter(|o| o.success).count() as u64;
    let resamples = outcomes.iter().map(|o| o.resamples).sum();
    let counterexamples = outcomes.into_iter().filter_map(|o| o.counterexample).collect();
    let elapsed = start.elapsed();
    log::info!(
        "{} n={} trials={} finished in {:.2?}",
        cfg.mode,
        cfg.n,
        cfg.trials,
        elapsed
    );
    Ok(ExperimentResult {
        config: cfg.clone(),
        successes,
        trials_used: cfg.trials,
        resamples,
        estimate_exact: reduced_fraction(successes, cfg.trials),
        estimate: five_places(successes, cfg.trials),
        counterexamples,
        elapsed,
    })
}

pub fn run_fixed_delta(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    run(&ExperimentConfig { mode: Mode::FixedDelta, ..cfg.clone() })
}

pub fn run_exists_delta(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    run(&ExperimentConfig { mode: Mode::ExistsDelta, ..cfg.clone() })
}

pub fn run_order_conjecture(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    run(&ExperimentConfig { mode: Mode::OrderConjecture, ..cfg.clone() })
}

/// Exhaustive order-conjecture scan over labeled biconnected simple graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub n: usize,
    pub graphs: u64,
    /// `(graph, x)` pairs checked.
    pub checks: u64,
    pub counterexamples: Vec<String>,
}

/// Checks every labeled biconnected simple graph on `n` vertices and every
/// choice of `x`.
pub fn scan_order_conjecture(n: usize, jobs: usize) -> Result<ScanResult> {
    if n < 3 {
        return Err(Error::InvalidArgument("scan needs n >= 3".into()));
    }
    let graphs: Vec<Multigraph> = families::labeled_biconnected_graphs(n).collect();
    let check = |g: &Multigraph| -> Result<Vec<String>> {
        let jac = ReducedJacobian::at_last(g)?;
        let mut bad = Vec::new();
        for x in 0..n {
            if order_conjecture_witness(&jac, x)?.is_none() {
                bad.push(format!("# x={x}\n{}", g.to_edge_list()));
            }
        }
        Ok(bad)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let found: Vec<Vec<String>> = pool.install(|| graphs.par_iter().map(check).collect::<Result<_>>())?;
    Ok(ScanResult {
        n,
        graphs: graphs.len() as u64,
        checks: (graphs.len() * n) as u64,
        counterexamples: found.into_iter().flatten().collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Renders results with the stable column order
/// `n, p, trials, seed, mode, successes, estimate`.
pub fn emit_results(results: &[ExperimentResult], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(results).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("n,p,trials,seed,mode,successes,estimate\n");
            for r in results {
                let c = &r.config;
                writeln!(s, "{},{},{},{},{},{},{}", c.n, c.p, r.trials_used, c.seed, c.mode, r.successes, r.estimate)
                    .unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{:>4}  {:>6}  {:>8}  {:>20}  {:<16}  {:>9}  {:>8}\n",
                "n", "p", "trials", "seed", "mode", "successes", "estimate"
            );
            for r in results {
                let c = &r.config;
                writeln!(
                    s,
                    "{:>4}  {:>6}  {:>8}  {:>20}  {:<16}  {:>9}  {:>8}",
                    c.n,
                    c.p.to_string(),
                    r.trials_used,
                    c.seed,
                    c.mode.as_str(),
                    r.successes,
                    r.estimate
                )
                .unwrap();
                for ce in &r.counterexamples {
                    writeln!(s, "counterexample:\n{ce}").unwrap();
                }
            }
            s
        }
    }
}
