// Critical groups of a few standard families, plus one read from the
// edge-list format.

use critgroup::{Multigraph, ReducedJacobian};
use std::fmt::Write as _;

const THETA: &str = "\
# two vertices joined by paths of lengths 1, 2 and 3
n=5
0 1
0 2
2 1
0 3
3 4
4 1
";

fn describe(name: &str, g: &Multigraph, out: &mut String) -> critgroup::Result<()> {
    let s = ReducedJacobian::at_last(g)?.structure();
    let factors: Vec<String> = s.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
    let group = if factors.is_empty() { "0".to_string() } else { factors.join(" x ") };
    writeln!(out, "{name:<12} m = {:<8} {group:<24} rank {}", s.order, s.rank).unwrap();
    Ok(())
}

pub fn run_example() -> critgroup::Result<String> {
    let mut out = String::new();
    describe("path P5", &Multigraph::path(5), &mut out)?;
    for n in [4, 6, 9] {
        describe(&format!("cycle C{n}"), &Multigraph::cycle(n), &mut out)?;
    }
    for n in [4, 5, 6] {
        describe(&format!("complete K{n}"), &Multigraph::complete(n), &mut out)?;
    }
    describe("banana B5", &Multigraph::banana(5), &mut out)?;
    describe("theta", &THETA.parse()?, &mut out)?;

    let s = ReducedJacobian::at_last(&Multigraph::complete(4))?.structure();
    writeln!(out, "K4 as JSON: {}", serde_json::to_string(&s).expect("serializable")).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> critgroup::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
