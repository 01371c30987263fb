// Removing or adding edges between x and y: the deletion identity and the
// divisibility laws relating the index of ⟨[δ_xy]⟩ to gcd(|Jac G|, |Jac G₁|).

use critgroup::{theorems, Multigraph};
use std::fmt::Write as _;

pub fn run_example() -> critgroup::Result<String> {
    let mut out = String::new();
    let mut g = Multigraph::complete(5);
    g.add_edges(0, 1, 2)?;
    writeln!(out, "K5 with two extra edges between 0 and 1").unwrap();
    writeln!(out, "   k     m    m1  C_yy  index  index1   gcd  law1  law2   iff").unwrap();
    let fmt = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
    for k in [-2, -1, 1, 2, 3] {
        let r = theorems::divisibility_report(&g, 0, 1, k)?;
        writeln!(
            out,
            "{k:>4} {:>5} {:>5} {:>5} {:>6} {:>7} {:>5} {:>5} {:>5} {:>5}",
            r.m,
            r.m1,
            r.c_yy,
            r.index,
            r.index1,
            r.gcd_val,
            r.law1_holds && r.law1_g1_holds,
            fmt(r.law2_holds),
            fmt(r.iff_holds)
        )
        .unwrap();
    }

    // C_yy counts the spanning trees through the edge xy
    let c4 = Multigraph::cycle(4);
    writeln!(
        out,
        "C4: trees through (0,1) = {} by cofactor, {} by enumeration",
        theorems::trees_containing_edge(&c4, 0, 1)?,
        theorems::trees_containing_edge_brute(&c4, 0, 1)?
    )
    .unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> critgroup::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
