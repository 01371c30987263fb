// Estimates how often `[δ_01]` generates a cyclic Jacobian of `G(n, 1/2)`.
//
//     cargo run --release --example random_experiment -- [mode] [n] [trials] [seed]

use critgroup::experiments::{self, ExperimentConfig, Format, Mode};

pub fn run(mode: Mode, n: usize, trials: u64, seed: u64) -> critgroup::Result<String> {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let cfg = ExperimentConfig::new(mode, n, trials, seed).with_jobs(jobs);
    let result = experiments::run(&cfg)?;

    let mut out = experiments::emit_results(std::slice::from_ref(&result), Format::Text);
    out.push_str(&format!(
        "exact {}  ±{:.5} (1 s.e.)  resamples {}  {:.2?}\n",
        result.estimate_exact,
        result.standard_error(),
        result.resamples,
        result.elapsed
    ));
    Ok(out)
}

pub fn run_example() -> critgroup::Result<String> {
    run(Mode::FixedDelta, 8, 500, 2024)
}

fn bad(e: std::num::ParseIntError) -> critgroup::Error {
    critgroup::Error::InvalidArgument(e.to_string())
}

#[allow(dead_code)]
fn main() -> critgroup::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize| args.get(i).map(String::as_str);
    let mode: Mode = arg(0).unwrap_or("fixed-delta").parse()?;
    let n = arg(1).map_or(Ok(8), str::parse).map_err(bad)?;
    let trials = arg(2).map_or(Ok(500), str::parse).map_err(bad)?;
    let seed = arg(3).map_or(Ok(2024), str::parse).map_err(bad)?;
    print!("{}", run(mode, n, trials, seed)?);
    Ok(())
}
