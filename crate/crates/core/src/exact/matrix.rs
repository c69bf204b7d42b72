use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use super::rational::ExactRational;

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must match dimensions");
        IntMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Convenience constructor from machine-integer rows; used heavily in tests.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for v in row {
                entries.push(v.clone().into());
            }
        }
        IntMatrix::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.at(r, c) + a * other.at(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Stacks `self` on top of `other` (column counts must agree).
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        IntMatrix::new(self.rows + other.rows, self.cols, entries)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.at(i, c).clone();
            self.set(i, c, v);
        }
    }

    /// row_i += factor * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.at(i, c) + factor * self.at(j, c);
            self.set(i, c, v);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn negate_col(&mut self, i: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, i).clone();
            self.set(r, i, v);
        }
    }

    /// col_i += factor * col_j
    fn add_col_multiple(&mut self, i: usize, j: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.at(r, i) + factor * self.at(r, j);
            self.set(r, i, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(h, u)` with `u` unimodular and `u * m = h`. Pivot entries are
/// positive, entries above each pivot are reduced into `[0, pivot)`, pivot
/// columns increase top to bottom, and zero rows sink to the bottom.
/// Pivoting picks the smallest nonzero absolute value to control entry growth.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        loop {
            // smallest nonzero |entry| among rows r.. in this column
            let pivot = (r..h.rows())
                .filter(|&i| !h.at(i, c).is_zero())
                .min_by_key(|&i| h.at(i, c).abs());
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut cleared = true;
            for i in r + 1..h.rows() {
                if h.at(i, c).is_zero() {
                    continue;
                }
                let q = -(h.at(i, c) / h.at(r, c));
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h.at(i, c).is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if h.at(r, c).is_zero() {
            continue;
        }
        if h.at(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h.at(i, c).div_floor(h.at(r, c));
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: `(s, u, v)` with `u`, `v` unimodular, `u * m * v = s`,
/// `s` diagonal with nonnegative entries satisfying `s_1 | s_2 | ...`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let d = SmithDecomposition::compute(m);
    (d.s, d.u, d.v)
}

/// Smith normal form together with the inverses of both transforms.
pub struct SmithDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    pub fn compute(m: &IntMatrix) -> SmithDecomposition {
        let mut s = m.clone();
        let mut u = IntMatrix::identity(m.rows());
        let mut u_inv = IntMatrix::identity(m.rows());
        let mut v = IntMatrix::identity(m.cols());
        let mut v_inv = IntMatrix::identity(m.cols());

        let n = m.rows().min(m.cols());
        let mut t = 0;
        while t < n {
            // smallest nonzero |entry| in the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..s.rows() {
                for j in t..s.cols() {
                    if s.at(i, j).is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| s.at(i, j).abs() < s.at(pi, pj).abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            swap_rows_tracked(&mut s, &mut u, &mut u_inv, t, pi);
            swap_cols_tracked(&mut s, &mut v, &mut v_inv, t, pj);

            'clear: loop {
                for i in t + 1..s.rows() {
                    if s.at(i, t).is_zero() {
                        continue;
                    }
                    let q = -(s.at(i, t) / s.at(t, t));
                    add_row_tracked(&mut s, &mut u, &mut u_inv, i, t, &q);
                    if !s.at(i, t).is_zero() {
                        // remainder is strictly smaller; promote it to the pivot
                        swap_rows_tracked(&mut s, &mut u, &mut u_inv, t, i);
                        continue 'clear;
                    }
                }
                for j in t + 1..s.cols() {
                    if s.at(t, j).is_zero() {
                        continue;
                    }
                    let q = -(s.at(t, j) / s.at(t, t));
                    add_col_tracked(&mut s, &mut v, &mut v_inv, j, t, &q);
                    if !s.at(t, j).is_zero() {
                        swap_cols_tracked(&mut s, &mut v, &mut v_inv, t, j);
                        continue 'clear;
                    }
                }
                // clearing the row may have refilled the column
                if (t + 1..s.rows()).any(|i| !s.at(i, t).is_zero()) {
                    continue 'clear;
                }
                break;
            }

            // divisibility: every trailing entry must be a multiple of the pivot
            let mut offender = None;
            'scan: for i in t + 1..s.rows() {
                for j in t + 1..s.cols() {
                    if !s.at(i, j).mod_floor(s.at(t, t)).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = offender {
                add_row_tracked(&mut s, &mut u, &mut u_inv, t, i, &BigInt::one());
                continue;
            }

            if s.at(t, t).is_negative() {
                negate_row_tracked(&mut s, &mut u, &mut u_inv, t);
            }
            t += 1;
        }

        SmithDecomposition { s, u, v, u_inv, v_inv }
    }

    /// Diagonal of `s`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.at(i, i).clone()).collect()
    }
}

fn swap_rows_tracked(s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, j: usize) {
    s.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
}

fn negate_row_tracked(s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize) {
    s.negate_row(i);
    u.negate_row(i);
    u_inv.negate_col(i);
}

/// row_i += q * row_j on s, mirrored on u; u_inv picks up the inverse column op.
fn add_row_tracked(s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    s.add_row_multiple(i, j, q);
    u.add_row_multiple(i, j, q);
    u_inv.add_col_multiple(j, i, &-q.clone());
}

fn swap_cols_tracked(s: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize) {
    s.swap_cols(i, j);
    v.swap_cols(i, j);
    v_inv.swap_rows(i, j);
}

/// col_i += q * col_j on s, mirrored on v; v_inv picks up the inverse row op.
fn add_col_tracked(s: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    s.add_col_multiple(i, j, q);
    v.add_col_multiple(i, j, q);
    v_inv.add_row_multiple(j, i, &-q.clone());
}

/// Rank of a rational matrix (rows of equal length), exact Gaussian elimination.
pub fn rational_rank(rows: &[Vec<ExactRational>]) -> usize {
    let mut m: Vec<Vec<ExactRational>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for j in c..ncols {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for r in 0..nrows {
            if r == rank || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for j in c..ncols {
                let sub = &f * &m[rank][j];
                m[r][j] = &m[r][j] - &sub;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}
