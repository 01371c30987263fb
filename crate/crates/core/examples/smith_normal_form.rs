// Exact integer linear algebra underneath: Bareiss determinant, adjugate,
// integral solves and Smith normal form with transforms.

use critgroup::linalg::{self, BigMatrix};
use num_bigint::BigInt;
use std::fmt::Write as _;

pub fn run_example() -> critgroup::Result<String> {
    let mut out = String::new();
    let m = BigMatrix::from_i64_rows(&[[4, -2, 0], [-2, 6, -2], [0, -2, 8]]);
    writeln!(out, "M =\n{m}").unwrap();
    writeln!(out, "det M = {}", linalg::determinant(&m)?).unwrap();
    writeln!(out, "adj M =\n{}", linalg::adjugate(&m)?).unwrap();

    let b: Vec<BigInt> = [2, 2, 6].into_iter().map(BigInt::from).collect();
    writeln!(out, "M x = (2, 2, 6): x = {:?}", linalg::solve_integer(&m, &b)?).unwrap();
    let b: Vec<BigInt> = [1, 0, 0].into_iter().map(BigInt::from).collect();
    writeln!(out, "M x = (1, 0, 0): x = {:?}", linalg::solve_integer(&m, &b)?).unwrap();

    let snf = linalg::smith_normal_form(&m, true);
    writeln!(out, "Smith diagonal {:?}", snf.diag).unwrap();
    let (left, right) = (snf.left.as_ref().expect("requested"), snf.right.as_ref().expect("requested"));
    let reconstructed = left.mul(&m)?.mul(right)?;
    writeln!(out, "left · M · right = diag: {}", reconstructed == snf.diagonal_matrix(3, 3)).unwrap();
    writeln!(
        out,
        "kernel of M mod 8 needs {} generator(s)",
        linalg::kernel_min_generators_mod(&m, &BigInt::from(8))?
    )
    .unwrap();
    Ok(out)
}

#[allow(dead_code)]
fn main() -> critgroup::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
