//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use critgroup::{Divisor, Multigraph};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if a[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = a[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
            .collect();
        let term = BigInt::from(a[0][j]) * det_cofactor(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k × k` minors and the `k`-th factor is `d_k / d_{k−1}`.
pub fn invariant_factors_by_minors(a: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut d = BigInt::zero();
        for r in subsets(rows, k) {
            for c in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = r.iter().map(|&i| c.iter().map(|&j| a[i][j]).collect()).collect();
                d = d.gcd(&det_cofactor(&minor));
            }
        }
        if d.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), rows.min(cols) - out.len()));
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    out
}

/// Reduced Laplacian at the last vertex as `i64` rows.
pub fn reduced_laplacian_i64(g: &Multigraph) -> Vec<Vec<i64>> {
    let n = g.n();
    (0..n - 1)
        .map(|i| {
            (0..n - 1)
                .map(|j| if i == j { g.valency(i) as i64 } else { -(g.mult(i, j) as i64) })
                .collect()
        })
        .collect()
}

/// Solves `A x = b` over the rationals by Gauss–Jordan elimination.
pub fn rational_solve(a: &[Vec<i64>], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            row.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .chain(std::iter::once(BigRational::from_integer(bi.clone())))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Order of `[D]`: the lcm of the denominators of `L̃⁻¹ D̃`.
pub fn order_by_rationals(g: &Multigraph, d: &Divisor) -> BigInt {
    let n = g.n();
    let b: Vec<BigInt> = d.values()[..n - 1].to_vec();
    let x = rational_solve(&reduced_laplacian_i64(g), &b).expect("connected graph");
    x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Number of `x ∈ (Z/m)^k` with `A x ≡ 0 (mod m)`, by enumeration.
pub fn kernel_size_mod(a: &[Vec<i64>], m: i64) -> u64 {
    let k = a.first().map_or(0, Vec::len);
    let mut x = vec![0i64; k];
    let mut count = 0;
    loop {
        if a.iter().all(|row| row.iter().zip(&x).map(|(r, v)| r * v).sum::<i64>().rem_euclid(m) == 0) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return count;
            }
            x[i] += 1;
            if x[i] < m {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Connected multigraphs: a random spanning tree plus extra parallel edges.
pub fn connected_multigraph(max_n: usize, max_extra: u32) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let parents = (1..n).map(|i| 0..i).collect::<Vec<_>>();
        let extras = proptest::collection::vec(0..=max_extra, n * (n - 1) / 2);
        (Just(n), parents, extras).prop_map(|(n, parents, extras)| {
            let mut g = Multigraph::new(n);
            for (i, p) in parents.into_iter().enumerate() {
                g.add_edges(i + 1, p, 1).unwrap();
            }
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if extras[k] > 0 {
                        g.add_edges(u, v, extras[k]).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// Like [`connected_multigraph`] with at most one edge per pair.
pub fn connected_simple(max_n: usize) -> impl Strategy<Value = Multigraph> {
    connected_multigraph(max_n, 1).prop_map(|g| {
        let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
        Multigraph::from_edges(g.n(), &edges).unwrap()
    })
}

