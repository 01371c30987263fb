// Exhaustive check, over labeled biconnected simple graphs, that every vertex
// x has some y with |[δ_xy]| ≥ n; then a sampled run at a larger n.

use critgroup::experiments::{self, ExperimentConfig, Mode};
use std::fmt::Write as _;

pub fn run_example() -> critgroup::Result<String> {
    let mut out = String::new();
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    for n in 3..=5 {
        let s = experiments::scan_order_conjecture(n, jobs)?;
        writeln!(
            out,
            "n = {n}: {} graphs, {} (graph, x) pairs, {} counterexamples",
            s.graphs,
            s.checks,
            s.counterexamples.len()
        )
        .unwrap();
    }
    let r = experiments::run(&ExperimentConfig::new(Mode::OrderConjecture, 12, 200, 5).with_jobs(jobs))?;
    writeln!(
        out,
        "G(12, 1/2) biconnected samples: {}/{} have y with |[δ_0y]| ≥ 12 ({} rejected)",
        r.successes, r.trials_used, r.resamples
    )
    .unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> critgroup::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
