//! Dense matrices over `F_q` with counted Gaussian elimination.
//!
//! Vectors are rows throughout the crate: a linear map `M` acts as `x * M`.
//! Elimination skips zero coefficients and counts every executed base-field
//! operation, so decoder-internal linear algebra shows up in the operation
//! tallies with its true cost.

use crate::base_field::{ops, FieldParams, Tally};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u16>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        FqMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u16 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u16] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u16] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut out = FqMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// `x * self` for a row vector `x` of length `rows`.
    pub fn row_vec_mul(&self, params: &FieldParams, x: &[u16], t: &mut Tally) -> Vec<u16> {
        assert_eq!(x.len(), self.rows, "vector/matrix shape mismatch");
        let mut out = vec![0u16; self.cols];
        let mut touched = vec![false; self.cols];
        for (k, &xk) in x.iter().enumerate() {
            if xk == 0 {
                continue;
            }
            let row = self.row(k);
            for (c, &m) in row.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let p = if m == 1 {
                    xk
                } else if xk == 1 {
                    m
                } else {
                    t.muls += 1;
                    params.raw_mul(xk, m)
                };
                if touched[c] {
                    t.adds += 1;
                }
                touched[c] = true;
                out[c] ^= p;
            }
        }
        out
    }

    /// Counted matrix product `self * rhs`.
    pub fn mat_mul(&self, params: &FieldParams, rhs: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut t = Tally::default();
        let mut out = FqMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let v = rhs.row_vec_mul(params, self.row(r), &mut t);
            out.row_mut(r).copy_from_slice(&v);
        }
        t.flush();
        out
    }

    /// Rank over `F_q` by row reduction on a scratch copy.
    pub fn rank(&self, params: &FieldParams) -> usize {
        let mut work = self.clone();
        let mut t = Tally::default();
        let r = work.row_echelon(params, &mut t);
        t.flush();
        r
    }

    /// In-place reduction to row echelon form; returns the rank.
    fn row_echelon(&mut self, params: &FieldParams, t: &mut Tally) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(pivot_row, found);
            self.scale_row_to_unit(params, pivot_row, col, t);
            for r in pivot_row + 1..self.rows {
                let c = self.get(r, col);
                if c != 0 {
                    self.row_axpy(params, r, pivot_row, c, col, t);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Scale a row so its entry at `col` becomes 1.
    fn scale_row_to_unit(&mut self, params: &FieldParams, r: usize, col: usize, t: &mut Tally) {
        let p = self.get(r, col);
        debug_assert!(p != 0);
        if p == 1 {
            return;
        }
        t.invs += 1;
        let pinv = params.raw_inv(p);
        let cols = self.cols;
        let row = self.row_mut(r);
        for c in 0..cols {
            if row[c] != 0 {
                t.muls += 1;
                row[c] = params.raw_mul(row[c], pinv);
            }
        }
    }

    /// `row[dst] += c * row[src]`, skipping columns left of `from_col` that
    /// are known to be zero in `src`.
    fn row_axpy(
        &mut self,
        params: &FieldParams,
        dst: usize,
        src: usize,
        c: u16,
        from_col: usize,
        t: &mut Tally,
    ) {
        debug_assert!(c != 0);
        let cols = self.cols;
        for col in from_col..cols {
            let s = self.data[src * cols + col];
            if s == 0 {
                continue;
            }
            let p = if c == 1 {
                s
            } else {
                t.muls += 1;
                params.raw_mul(c, s)
            };
            if self.data[dst * cols + col] != 0 {
                t.adds += 1;
            }
            self.data[dst * cols + col] ^= p;
        }
    }

    /// Inverse of a square matrix, or `Err(SingularSystem)`.
    pub fn inverse(&self, params: &FieldParams) -> Result<FqMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut t = Tally::default();
        // augmented [self | I], reduced to [I | inv]
        let mut aug = FqMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        for col in 0..n {
            let Some(found) = (col..n).find(|&r| aug.get(r, col) != 0) else {
                t.flush();
                return Err(Error::SingularSystem);
            };
            aug.swap_rows(col, found);
            aug.scale_row_to_unit(params, col, col, &mut t);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let c = aug.get(r, col);
                if c != 0 {
                    aug.row_axpy(params, r, col, c, col, &mut t);
                }
            }
        }
        let mut inv = FqMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        t.flush();
        Ok(inv)
    }

    /// Basis (as rows) of the left null space `{ x : x * self = 0 }`.
    pub fn left_null_space(&self, params: &FieldParams) -> FqMatrix {
        // Left kernel of M = kernel of M^T x^T = 0; run RREF on M^T with
        // standard free-variable extraction.
        let mt = self.transpose();
        let mut t = Tally::default();
        let out = kernel_rows(params, mt, &mut t);
        t.flush();
        out
    }

    /// Solve `x * self = b` for a single row vector `b` (any one solution).
    pub fn solve_left(&self, params: &FieldParams, b: &[u16]) -> Result<Vec<u16>> {
        assert_eq!(b.len(), self.cols, "rhs length mismatch");
        // x * M = b  <=>  M^T x^T = b^T
        let mt = self.transpose();
        let mut t = Tally::default();
        let r = solve_square_like(params, mt, b, &mut t);
        t.flush();
        r
    }
}

/// Kernel of `m x^T = 0` (right kernel), rows of the result form the basis.
fn kernel_rows(params: &FieldParams, mut m: FqMatrix, t: &mut Tally) -> FqMatrix {
    let cols = m.cols;
    // full RREF with pivot bookkeeping
    let mut pivots: Vec<usize> = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == m.rows {
            break;
        }
        let Some(found) = (pivot_row..m.rows).find(|&r| m.get(r, col) != 0) else {
            continue;
        };
        m.swap_rows(pivot_row, found);
        m.scale_row_to_unit(params, pivot_row, col, t);
        for r in 0..m.rows {
            if r == pivot_row {
                continue;
            }
            let c = m.get(r, col);
            if c != 0 {
                m.row_axpy(params, r, pivot_row, c, col, t);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = FqMatrix::zeros(free.len(), cols);
    for (k, &fc) in free.iter().enumerate() {
        basis.set(k, fc, 1);
        for (prow, &pc) in pivots.iter().enumerate() {
            // x_pc = -m[prow][fc] * x_fc ; char 2 drops the sign
            basis.set(k, pc, m.get(prow, fc));
        }
    }
    basis
}

/// Solve `a y^T = b^T` for column system with `a` possibly rectangular
/// (rows >= cols requires consistency). Returns one solution as a row.
fn solve_square_like(
    params: &FieldParams,
    mut a: FqMatrix,
    b: &[u16],
    t: &mut Tally,
) -> Result<Vec<u16>> {
    let rows = a.rows;
    let cols = a.cols;
    assert_eq!(b.len(), rows);
    let mut rhs: Vec<u16> = b.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        a.swap_rows(pivot_row, found);
        rhs.swap(pivot_row, found);
        let p = a.get(pivot_row, col);
        if p != 1 {
            t.invs += 1;
            let pinv = params.raw_inv(p);
            for c in 0..cols {
                let v = a.get(pivot_row, c);
                if v != 0 {
                    t.muls += 1;
                    a.set(pivot_row, c, params.raw_mul(v, pinv));
                }
            }
            if rhs[pivot_row] != 0 {
                t.muls += 1;
                rhs[pivot_row] = params.raw_mul(rhs[pivot_row], pinv);
            }
        }
        for r in 0..rows {
            if r == pivot_row {
                continue;
            }
            let c = a.get(r, col);
            if c != 0 {
                a.row_axpy(params, r, pivot_row, c, col, t);
                let s = rhs[pivot_row];
                if s != 0 {
                    let p = if c == 1 {
                        s
                    } else {
                        t.muls += 1;
                        params.raw_mul(c, s)
                    };
                    if rhs[r] != 0 {
                        t.adds += 1;
                    }
                    rhs[r] ^= p;
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    // consistency of the remaining equations
    for r in pivot_row..rows {
        if rhs[r] != 0 {
            return Err(Error::SingularSystem);
        }
    }
    let mut x = vec![0u16; cols];
    for &(r, c) in &pivots {
        x[c] = rhs[r];
    }
    Ok(x)
}
