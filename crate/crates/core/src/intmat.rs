//! Dense integer matrices with Smith and Hermite normal forms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul};

/// Row-major dense matrix over `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    /// Builds an `n x k` matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[&[i64]]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n, "column length");
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs() == 1
    }

    /// Integer inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        if !self.is_unimodular() {
            return None;
        }
        let s = smith(self);
        // U A V = I, so A^{-1} = V U.
        Some(&s.right * &s.left)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..self.cols {
            let x = self[(src, j)];
            self[(dst, j)] += k * x;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        for i in 0..self.rows {
            let x = self[(i, src)];
            self[(i, dst)] += k * x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Smith decomposition `left * a * right = diag`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub diag: IntMatrix,
    /// Nonzero invariant factors, positive and successively dividing.
    pub factors: Vec<i64>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen as the entry of least absolute value in the remaining
/// block, ties broken by lowest row then column, so the transforms are
/// reproducible.
pub fn smith(a: &IntMatrix) -> Smith {
    let (r, c) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = IntMatrix::identity(r);
    let mut right = IntMatrix::identity(c);
    let mut factors = Vec::new();
    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_pivot(&d, t) else { break };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                let q = d[(i, t)].div_euclid(d[(t, t)]);
                if q != 0 {
                    d.add_row(i, t, -q);
                    left.add_row(i, t, -q);
                }
                dirty |= d[(i, t)] != 0;
            }
            for j in t + 1..c {
                let q = d[(t, j)].div_euclid(d[(t, t)]);
                if q != 0 {
                    d.add_col(j, t, -q);
                    right.add_col(j, t, -q);
                }
                dirty |= d[(t, j)] != 0;
            }
            if !dirty {
                // Enforce divisibility of the remaining block.
                let p = d[(t, t)];
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| d[(i, j)] % p != 0));
                match bad {
                    Some(i) => {
                        d.add_row(t, i, 1);
                        left.add_row(t, i, 1);
                    }
                    None => break,
                }
            }
            let (pi, pj) = min_pivot_in_cross(&d, t);
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            left.negate_row(t);
        }
        factors.push(d[(t, t)]);
    }
    Smith {
        left,
        right,
        diag: d,
        factors,
    }
}

fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d[(i, j)].abs();
            if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                best = Some((x, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Least nonzero entry in row `t` or column `t` at or past the diagonal.
fn min_pivot_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (d[(t, t)].abs(), t, t);
    if best.0 == 0 {
        best.0 = i64::MAX;
    }
    for i in t + 1..d.rows {
        let x = d[(i, t)].abs();
        if x != 0 && x < best.0 {
            best = (x, i, t);
        }
    }
    for j in t + 1..d.cols {
        let x = d[(t, j)].abs();
        if x != 0 && x < best.0 {
            best = (x, t, j);
        }
    }
    (best.1, best.2)
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns the nonzero rows in echelon form with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Two families of vectors span
/// the same lattice exactly when their forms agree.
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut a = IntMatrix::from_rows(rows);
    let (r, c) = (a.rows, a.cols);
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for j in 0..c {
        if pivot_row == r {
            break;
        }
        loop {
            let pick = (pivot_row..r)
                .filter(|&i| a[(i, j)] != 0)
                .min_by_key(|&i| (a[(i, j)].abs(), i));
            let Some(p) = pick else { break };
            a.swap_rows(pivot_row, p);
            let mut done = true;
            for i in pivot_row + 1..r {
                let q = a[(i, j)].div_euclid(a[(pivot_row, j)]);
                if q != 0 {
                    a.add_row(i, pivot_row, -q);
                }
                done &= a[(i, j)] == 0;
            }
            if done {
                break;
            }
        }
        if a[(pivot_row, j)] == 0 {
            continue;
        }
        if a[(pivot_row, j)] < 0 {
            a.negate_row(pivot_row);
        }
        let p = a[(pivot_row, j)];
        for i in 0..pivot_row {
            let q = a[(i, j)].div_euclid(p);
            if q != 0 {
                a.add_row(i, pivot_row, -q);
            }
        }
        pivots.push(j);
        pivot_row += 1;
    }
    (0..pivot_row).map(|i| a.row(i).to_vec()).collect()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0, |g, &x| gcd(g, x)) == 1
}
