// Chip-firing on K4: an explicit firing script relating two equivalent
// divisors, monodromy weights, and the pairing on Jac(G).

use critgroup::jacobian::fire;
use critgroup::{Divisor, Multigraph, ReducedJacobian};
use std::fmt::Write as _;

pub fn run_example() -> critgroup::Result<String> {
    let g = Multigraph::complete(4);
    let jac = ReducedJacobian::at_last(&g)?;
    let mut out = String::new();

    let d1 = Divisor::from_i64(&[2, -1, 0, -1]);
    let d2 = Divisor::from_i64(&[-1, 0, 1, 0]);
    match jac.equivalence_witness(&d1, &d2)? {
        Some(script) => {
            writeln!(out, "D1 = {:?} ~ D2 = {:?}", d1.values(), d2.values()).unwrap();
            writeln!(out, "firing script {:?}", script.0).unwrap();
            writeln!(out, "fire(D1) = {:?}", fire(&g, &d1, &script)?.values()).unwrap();
        }
        None => writeln!(out, "D1 and D2 are not equivalent").unwrap(),
    }
    let d3 = Divisor::from_i64(&[1, -1, 0, 0]);
    writeln!(out, "D1 ~ {:?}: {}", d3.values(), jac.equivalent(&d1, &d3)?).unwrap();
    writeln!(out, "weights agree: {}", jac.equivalent_by_weights(&d1, &d2)?).unwrap();

    let pairs = [(0, 1), (0, 2), (1, 2), (0, 3)];
    writeln!(out, "pairing <δ_xy, δ_uv> mod {}:", jac.order()).unwrap();
    for &(x, y) in &pairs {
        let row: Vec<String> = pairs
            .iter()
            .map(|&(u, v)| {
                jac.pairing(&Divisor::delta(4, x, y).unwrap(), &Divisor::delta(4, u, v).unwrap())
                    .map(|p| format!("{p:>3}"))
            })
            .collect::<critgroup::Result<_>>()?;
        writeln!(out, "  δ_{x}{y}: {}", row.join(" ")).unwrap();
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> critgroup::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
