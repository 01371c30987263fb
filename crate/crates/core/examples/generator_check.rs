// Which two-vertex divisors generate the Jacobian of a wheel and of a
// 4-cycle with a pendant vertex, and the gcd
// criterion that predicts it.

use critgroup::{theorems, Multigraph, ReducedJacobian};
use std::fmt::Write as _;

/// The wheel with `k` spokes; the hub is vertex `k`.
fn wheel(k: usize) -> Multigraph {
    let mut g = Multigraph::new(k + 1);
    for u in 0..k {
        g.add_edges(u, (u + 1) % k, 1).expect("valid");
        g.add_edges(u, k, 1).expect("valid");
    }
    g
}

pub fn run_example() -> critgroup::Result<String> {
    let mut out = String::new();
    for g in [wheel(4), Multigraph::from_edges(5, &[(0, 3), (0, 4), (1, 3), (1, 4), (2, 4)])?] {
        let jac = ReducedJacobian::at_last(&g)?;
        writeln!(out, "n = {}, m = {}, invariant factors {:?}", g.n(), jac.order(), jac.invariant_factors()).unwrap();
        for x in 0..g.n() {
            for y in x + 1..g.n() {
                let c = theorems::generator_check(&g, x, y)?;
                writeln!(
                    out,
                    "  δ_{x}{y}: order {:<4} generates {:<5}  gcd(m, |Jac(G+xy)|) = 1: {:<5} consistent {}",
                    c.order,
                    c.by_order,
                    c.by_addition,
                    c.consistent()
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> critgroup::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
