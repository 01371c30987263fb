// Deletion-contraction for spanning trees, and the divisor D_x that
// generates Jac(G/e) when |Jac G| and |Jac G/e| are coprime.

use critgroup::{theorems, Multigraph};
use std::fmt::Write as _;

pub fn run_example() -> critgroup::Result<String> {
    let mut out = String::new();
    // a 5-cycle with the chord 0-2
    let mut g = Multigraph::cycle(5);
    g.add_edges(0, 2, 1)?;
    writeln!(out, "edge    T(G) T(G-e) T(G/e)  C_yy  coprime  |[D_x]|  |Jac G/e|  D_x ~ -D_y").unwrap();
    for (x, y, _) in g.edges().collect::<Vec<_>>() {
        let r = theorems::contraction_recurrence_check(&g, x, y)?;
        let c = theorems::contraction_generator(&g, x, y)?;
        writeln!(
            out,
            "({x},{y}) {:>6} {:>6} {:>6} {:>5} {:>8} {:>8} {:>10} {:>11}",
            r.t_graph, r.t_deleted, r.t_contracted, r.c_yy, c.hypothesis, c.order_d_x, c.m_contracted, c.dx_equiv_neg_dy
        )
        .unwrap();
    }
    let (d, contraction) = theorems::contraction_divisor(&g, 0, 1)?;
    writeln!(
        out,
        "D_0 on G/(0,1): {:?} (merged vertex {})",
        d.values(),
        contraction.merged
    )
    .unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> critgroup::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
