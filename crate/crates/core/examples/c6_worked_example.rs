// The six-cycle: reduced Laplacian, cofactor matrix mod 6, rank, and the
// kernel of L̃ over Z/6.

use critgroup::linalg::{self, BigMatrix};
use critgroup::{Divisor, Multigraph, ReducedJacobian};
use num_bigint::BigInt;
use std::fmt::Write as _;

pub fn run_example() -> critgroup::Result<String> {
    let g = Multigraph::cycle(6);
    let jac = ReducedJacobian::at_last(&g)?;
    let m = jac.order().clone();
    let mut out = String::new();

    writeln!(out, "reduced Laplacian (vertex 5 deleted):\n{}", jac.reduced_laplacian()).unwrap();
    writeln!(out, "cofactor matrix mod {m}:\n{}", jac.adjugate().reduced_mod(&m)).unwrap();
    writeln!(out, "m = {m}, invariant factors {:?}, rank {}", jac.invariant_factors(), jac.rank()).unwrap();

    // L̃·C = m·I
    let check = jac.reduced_laplacian().mul(jac.adjugate())?;
    writeln!(out, "L̃·C = {m}·I: {}", check == BigMatrix::identity(5).scaled(&m)).unwrap();

    let v: Vec<BigInt> = (1..=5).map(BigInt::from).collect();
    let lv: Vec<BigInt> = jac.reduced_laplacian().mul_vec(&v)?.iter().map(|e| e % &m).collect();
    writeln!(out, "L̃·(1,2,3,4,5) mod 6 = {lv:?}").unwrap();
    writeln!(
        out,
        "kernel generators mod 6: {}",
        linalg::kernel_min_generators_mod(jac.reduced_laplacian(), &m)?
    )
    .unwrap();

    let d = Divisor::delta(6, 5, 0)?;
    writeln!(out, "weight of δ_50: {:?}", jac.monodromy_weight(&d)?.weights).unwrap();
    writeln!(out, "order of [δ_50] = {}", jac.order_of(&d)?).unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> critgroup::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
