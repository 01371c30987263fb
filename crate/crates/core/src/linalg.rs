//! Exact integer matrix algebra over arbitrary-precision integers.
//!
//! Everything here is fraction-free: determinants and adjugates come out of a
//! single Bareiss elimination, integer solves are exact back substitutions, and
//! the Smith form is computed by unimodular row/column operations.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of big integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl BigMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BigMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        BigMatrix { rows, cols, data }
    }

    /// Builds a matrix from small integer rows. Panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(
            rows.iter().all(|r| r.as_ref().len() == cols),
            "ragged rows"
        );
        Self::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i].as_ref()[j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &BigMatrix) -> Result<BigMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        BigMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Entrywise reduction into `[0, m)`.
    pub fn reduced_mod(&self, m: &BigInt) -> Self {
        BigMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mod_floor(m)).collect(),
        }
    }

    /// Drops row `i` and column `i` of a square matrix.
    pub fn without_row_col(&self, i: usize) -> Self {
        assert!(self.is_square() && i < self.rows);
        let n = self.rows - 1;
        Self::from_fn(n, n, |r, c| {
            let r = if r >= i { r + 1 } else { r };
            let c = if c >= i { c + 1 } else { c };
            self[(r, c)].clone()
        })
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn from_row_vecs(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let r = rows.len();
        BigMatrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }
}

impl Index<(usize, usize)> for BigMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for BigMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for BigMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// gcd of `m` and every entry of `v`; `gcd(0, a) = |a|`.
pub fn gcd_with(m: &BigInt, v: &[BigInt]) -> BigInt {
    v.iter().fold(m.abs(), |g, x| g.gcd(x))
}

/// Upper-triangular result of fraction-free elimination on `[M | B]`.
struct Elimination {
    /// Rows of the eliminated augmented matrix.
    rows: Vec<Vec<BigInt>>,
    n: usize,
    /// Parity of the row permutation.
    negated: bool,
}

impl Elimination {
    /// Bareiss elimination on the square part of `[m | rhs]`. Returns `None`
    /// when `m` is singular.
    fn run(m: &BigMatrix, rhs: &[Vec<BigInt>]) -> Option<Elimination> {
        let n = m.rows;
        let mut rows = m.to_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            for col in rhs {
                row.push(col[i].clone());
            }
        }
        let width = n + rhs.len();
        let mut negated = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !rows[r][k].is_zero())?;
            if pivot != k {
                rows.swap(pivot, k);
                negated = !negated;
            }
            let (head, tail) = rows.split_at_mut(k + 1);
            let pivot_row = &head[k];
            let pk = &pivot_row[k];
            for row in tail.iter_mut() {
                let lead = std::mem::take(&mut row[k]);
                for j in k + 1..width {
                    let v = pk * &row[j] - &lead * &pivot_row[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
            }
            prev = rows[k][k].clone();
        }
        Some(Elimination { rows, n, negated })
    }

    fn last_pivot(&self) -> BigInt {
        if self.n == 0 {
            BigInt::one()
        } else {
            self.rows[self.n - 1][self.n - 1].clone()
        }
    }

    fn det(&self) -> BigInt {
        let p = self.last_pivot();
        if self.negated {
            -p
        } else {
            p
        }
    }

    /// For each augmented column `b`, returns `adj(M)·b` exactly.
    fn adjugate_times(&self) -> Vec<Vec<BigInt>> {
        let n = self.n;
        let p = self.last_pivot();
        let extra = self.rows.first().map_or(0, |r| r.len() - n);
        (0..extra)
            .map(|c| {
                // U·y = p·b' has the integral solution y = p·M⁻¹·b.
                let mut y = vec![BigInt::zero(); n];
                for i in (0..n).rev() {
                    let row = &self.rows[i];
                    let mut acc = &p * &row[n + c];
                    for j in i + 1..n {
                        acc -= &row[j] * &y[j];
                    }
                    y[i] = acc / &row[i];
                }
                if self.negated {
                    y.iter_mut().for_each(|v| *v = -std::mem::take(v));
                }
                y
            })
            .collect()
    }
}

fn require_square(m: &BigMatrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::Dimension(format!(
            "expected square matrix, got {}x{}",
            m.rows, m.cols
        )))
    }
}

/// Exact determinant by Bareiss elimination. The empty matrix has determinant 1.
pub fn determinant(m: &BigMatrix) -> Result<BigInt> {
    require_square(m)?;
    Ok(Elimination::run(m, &[]).map_or_else(BigInt::zero, |e| e.det()))
}

/// Returns `(det M, adj(M)·b)` for every column `b` of `rhs`.
pub fn adjugate_apply(m: &BigMatrix, rhs: &[Vec<BigInt>]) -> Result<(BigInt, Vec<Vec<BigInt>>)> {
    require_square(m)?;
    if rhs.iter().any(|b| b.len() != m.rows) {
        return Err(Error::Dimension("right-hand side length".into()));
    }
    let e = Elimination::run(m, rhs).ok_or(Error::Singular)?;
    Ok((e.det(), e.adjugate_times()))
}

/// Adjugate (classical cofactor transpose) of a nonsingular square matrix,
/// so that `M·adj(M) = adj(M)·M = det(M)·I`.
pub fn adjugate(m: &BigMatrix) -> Result<BigMatrix> {
    let n = m.rows;
    let unit: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| BigInt::from((i == j) as u8)).collect())
        .collect();
    let (_, cols) = adjugate_apply(m, &unit)?;
    Ok(BigMatrix::from_fn(n, n, |i, j| cols[j][i].clone()))
}

/// Unique solution of `M·x = b` when it is integral, `None` when it is not.
pub fn solve_integer(m: &BigMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let (det, mut cols) = adjugate_apply(m, &[b.to_vec()])?;
    let y = cols.pop().unwrap_or_default();
    let mut x = Vec::with_capacity(y.len());
    for v in y {
        let (q, r) = v.div_rem(&det);
        if !r.is_zero() {
            return Ok(None);
        }
        x.push(q);
    }
    Ok(Some(x))
}

/// Smith normal form `left · M · right = diag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonnegative invariant factors, `min(rows, cols)` of them, zeros last.
    pub diag: Vec<BigInt>,
    pub left: Option<BigMatrix>,
    pub right: Option<BigMatrix>,
}

impl SmithForm {
    /// Invariant factors strictly greater than one.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }

    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> BigMatrix {
        let mut d = BigMatrix::zeros(rows, cols);
        for (i, v) in self.diag.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

struct SmithCalc {
    a: Vec<Vec<BigInt>>,
    left: Option<Vec<Vec<BigInt>>>,
    // stored transposed so column operations are row operations
    right_t: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

impl SmithCalc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(l) = &mut self.left {
                l.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(r) = &mut self.right_t {
                r.swap(i, j);
            }
        }
    }

    /// row_dst -= q * row_src
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        axpy_rows(&mut self.a, dst, src, q);
        if let Some(l) = &mut self.left {
            axpy_rows(l, dst, src, q);
        }
    }

    /// col_dst -= q * col_src
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for row in &mut self.a {
            if !row[src].is_zero() {
                let t = q * &row[src];
                row[dst] -= t;
            }
        }
        if let Some(r) = &mut self.right_t {
            axpy_rows(r, dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.a[i] {
            *v = -std::mem::take(v);
        }
        if let Some(l) = &mut self.left {
            for v in &mut l[i] {
                *v = -std::mem::take(v);
            }
        }
    }

    /// Smallest nonzero |entry| in the trailing block, ties to lowest (row, col).
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].magnitude() <= v.magnitude() => {}
                    _ => {
                        best = Some((i, j));
                        if v.magnitude().is_one() {
                            return best;
                        }
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<BigInt> {
        let k = self.rows.min(self.cols);
        let mut diag = vec![BigInt::zero(); k];
        'outer: for t in 0..k {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else {
                    break 'outer;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);

                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = &self.a[i][t] / &self.a[t][t];
                    self.row_axpy(i, t, &q);
                    dirty |= !self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = &self.a[t][j] / &self.a[t][t];
                    self.col_axpy(j, t, &q);
                    dirty |= !self.a[t][j].is_zero();
                }
                if dirty {
                    continue;
                }
                let p = self.a[t][t].clone();
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match offender {
                    Some(i) => self.row_axpy(t, i, &BigInt::from(-1)),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            diag[t] = self.a[t][t].clone();
        }
        diag
    }
}

fn axpy_rows(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (d, s) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Smith normal form with minimal-absolute-value pivoting. Output is a pure
/// function of the input.
pub fn smith_normal_form(m: &BigMatrix, with_transforms: bool) -> SmithForm {
    let ident = |n: usize| BigMatrix::identity(n).to_rows();
    let mut calc = SmithCalc {
        a: m.to_rows(),
        left: with_transforms.then(|| ident(m.rows)),
        right_t: with_transforms.then(|| ident(m.cols)),
        rows: m.rows,
        cols: m.cols,
    };
    let diag = calc.run();
    SmithForm {
        diag,
        left: calc.left.map(|l| BigMatrix::from_row_vecs(l, m.rows)),
        right: calc
            .right_t
            .map(|r| BigMatrix::from_row_vecs(r, m.cols).transpose()),
    }
}

/// Minimal number of generators of `{x ∈ (Z/mZ)^n : M·x ≡ 0}` as a Z/mZ-module.
///
/// With invariant factors `d_i` of `M` the kernel is `⊕ Z/gcd(d_i, m)`, so the
/// count is the number of `d_i` with `gcd(d_i, m) > 1`.
pub fn kernel_min_generators_mod(m: &BigMatrix, modulus: &BigInt) -> Result<usize> {
    require_square(m)?;
    if !modulus.is_positive() {
        return Err(Error::ZeroModulus);
    }
    let snf = smith_normal_form(m, false);
    Ok(snf
        .diag
        .iter()
        .filter(|d| !d.gcd(modulus).is_one())
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn c6_reduced() -> BigMatrix {
        BigMatrix::from_i64_rows(&[
            [2, -1, 0, 0, 0],
            [-1, 2, -1, 0, 0],
            [0, -1, 2, -1, 0],
            [0, 0, -1, 2, -1],
            [0, 0, 0, -1, 2],
        ])
    }

    fn k4_reduced() -> BigMatrix {
        BigMatrix::from_i64_rows(&[[3, -1, -1], [-1, 3, -1], [-1, -1, 3]])
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&c6_reduced()).unwrap(), bi(6));
        assert_eq!(determinant(&BigMatrix::identity(4)).unwrap(), bi(1));
        assert_eq!(determinant(&k4_reduced()).unwrap(), bi(16));
        assert_eq!(determinant(&BigMatrix::zeros(0, 0)).unwrap(), bi(1));
        assert_eq!(determinant(&BigMatrix::zeros(3, 3)).unwrap(), bi(0));
        // needs a row swap
        let m = BigMatrix::from_i64_rows(&[[0, 1], [1, 0]]);
        assert_eq!(determinant(&m).unwrap(), bi(-1));
        assert!(determinant(&BigMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn adjugate_small() {
        let m = BigMatrix::from_i64_rows(&[[2, -1], [-1, 2]]);
        assert_eq!(adjugate(&m).unwrap(), BigMatrix::from_i64_rows(&[[2, 1], [1, 2]]));
        assert_eq!(adjugate(&BigMatrix::identity(3)).unwrap(), BigMatrix::identity(3));
        assert_eq!(
            adjugate(&BigMatrix::from_i64_rows(&[[1, 2], [2, 4]])),
            Err(Error::Singular)
        );
    }

    #[test]
    fn solve() {
        let b: Vec<BigInt> = [6, 0, 0, 0, 0].into_iter().map(bi).collect();
        let x = solve_integer(&c6_reduced(), &b).unwrap().unwrap();
        assert_eq!(x, [5, 4, 3, 2, 1].map(bi).to_vec());
        let b: Vec<BigInt> = [3, -7].into_iter().map(bi).collect();
        assert_eq!(solve_integer(&BigMatrix::identity(2), &b).unwrap(), Some(b.clone()));
        let m = BigMatrix::from_i64_rows(&[[2]]);
        assert_eq!(solve_integer(&m, &[bi(1)]).unwrap(), None);
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(&c6_reduced(), false);
        assert_eq!(s.diag, [1, 1, 1, 1, 6].map(bi).to_vec());
        let s = smith_normal_form(&k4_reduced(), false);
        assert_eq!(s.diag, [1, 4, 4].map(bi).to_vec());
        let s = smith_normal_form(&BigMatrix::zeros(2, 2), true);
        assert_eq!(s.diag, [0, 0].map(bi).to_vec());
    }

    #[test]
    fn smith_rectangular_with_transforms() {
        let m = BigMatrix::from_i64_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16], [0, 0, 0]]);
        let s = smith_normal_form(&m, true);
        assert_eq!(s.diag, [2, 6, 12].map(bi).to_vec());
        let l = s.left.as_ref().unwrap();
        let r = s.right.as_ref().unwrap();
        assert_eq!(l.mul(&m).unwrap().mul(r).unwrap(), s.diagonal_matrix(4, 3));
    }

    #[test]
    fn kernel_generators() {
        assert_eq!(kernel_min_generators_mod(&c6_reduced(), &bi(6)).unwrap(), 1);
        assert_eq!(kernel_min_generators_mod(&BigMatrix::identity(3), &bi(5)).unwrap(), 0);
        assert_eq!(kernel_min_generators_mod(&k4_reduced(), &bi(16)).unwrap(), 2);
        assert_eq!(
            kernel_min_generators_mod(&k4_reduced(), &bi(0)),
            Err(Error::ZeroModulus)
        );
    }

    #[test]
    fn gcd_convention() {
        assert_eq!(gcd_with(&bi(0), &[bi(-4)]), bi(4));
        assert_eq!(gcd_with(&bi(6), &[bi(5), bi(4)]), bi(1));
        assert_eq!(gcd_with(&bi(6), &[]), bi(6));
    }
}
