// Lower bounds on the largest order of δ_xy over an edge, checked with exact
// rationals. The ε/(ε−n+1) bound fails once the graph has a bridge.

use critgroup::theorems::{self, BoundStatus};
use critgroup::Multigraph;
use std::fmt::Write as _;

pub fn run_example() -> critgroup::Result<String> {
    let bridged = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)])?;
    let mut fat = Multigraph::cycle(4);
    fat.add_edges(0, 1, 2)?;
    let graphs = [
        ("path P5", Multigraph::path(5)),
        ("cycle C7", Multigraph::cycle(7)),
        ("complete K5", Multigraph::complete(5)),
        ("C4 + 2 edges", fat),
        ("triangle+leaf", bridged),
    ];

    let mut out = String::new();
    for (name, g) in &graphs {
        writeln!(out, "{name}").unwrap();
        for c in theorems::bound_report(g)?.checks {
            let status = match &c.status {
                BoundStatus::Holds { attained: true } => "attained".to_string(),
                BoundStatus::Holds { attained: false } => "holds".to_string(),
                BoundStatus::Violated => "VIOLATED".to_string(),
                BoundStatus::Skipped { reason } => format!("skipped ({reason})"),
            };
            let detail = match (&c.bound, &c.order) {
                (Some(b), Some(o)) => format!("bound {b}, order {o}"),
                _ => String::new(),
            };
            writeln!(out, "  {:<24} {status} {detail}", c.name).unwrap();
            out.truncate(out.trim_end().len());
            out.push('\n');
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> critgroup::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
