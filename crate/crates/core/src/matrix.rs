//! Dense exact linear algebra over a [`FieldContext`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    ctx: FieldContext,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>, // row-major
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFq {}x{} over GF({}^{})", self.rows, self.cols, self.ctx.p(), self.ctx.m())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl MatrixFq {
    pub fn new(ctx: &FieldContext, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        if let Some(e) = entries.iter().find(|e| !ctx.contains(e)) {
            return Err(Error::InvalidElement(format!("{e:?} does not belong to the field")));
        }
        Ok(MatrixFq { ctx: ctx.clone(), rows, cols, entries })
    }

    pub fn from_rows(ctx: &FieldContext, cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        if let Some(bad) = rows.iter().find(|row| row.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        Self::new(ctx, r, cols, rows.into_iter().flatten().collect())
    }

    pub fn zeros(ctx: &FieldContext, rows: usize, cols: usize) -> Self {
        MatrixFq { ctx: ctx.clone(), rows, cols, entries: vec![ctx.zero(); rows * cols] }
    }

    pub fn identity(ctx: &FieldContext, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn select_cols(&self, cols: &[usize]) -> Result<MatrixFq> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange { index: bad, bound: self.cols });
        }
        let entries = (0..self.rows)
            .flat_map(|r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        Ok(MatrixFq { ctx: self.ctx.clone(), rows: self.rows, cols: cols.len(), entries })
    }

    pub fn transpose(&self) -> MatrixFq {
        let entries = (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| self.get(r, c).clone()))
            .collect();
        MatrixFq { ctx: self.ctx.clone(), rows: self.cols, cols: self.rows, entries }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(MatrixFq { ctx: self.ctx.clone(), rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// Row vector times matrix: v·M.
    pub fn left_mul(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let ctx = &self.ctx;
        let mut out = vec![ctx.zero(); self.cols];
        for (r, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                ctx.add_assign(slot, &ctx.mul(coeff, self.get(r, c)));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector: M·x.
    pub fn right_mul(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        let ctx = &self.ctx;
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = ctx.zero();
                for (a, b) in self.row(r).iter().zip(x) {
                    ctx.add_assign(&mut acc, &ctx.mul(a, b));
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            entries.extend(other.left_mul(self.row(r))?);
        }
        Ok(MatrixFq { ctx: self.ctx.clone(), rows: self.rows, cols: other.cols, entries })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form and pivot columns. The pivot in each column
    /// is the first row (at or below the current one) holding a nonzero entry.
    pub fn rref(&self) -> (MatrixFq, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Eliminates using only the first `limit` columns as pivot candidates.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let ctx = self.ctx.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..limit.min(self.cols) {
            if lead == self.rows {
                break;
            }
            let Some(src) = (lead..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(lead, src);
            let inv = ctx.inv(self.get(lead, col)).expect("nonzero pivot");
            for c in col..self.cols {
                let v = ctx.mul(self.get(lead, c), &inv);
                self.set(lead, c, v);
            }
            for r in 0..self.rows {
                if r == lead || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let t = ctx.mul(&factor, self.get(lead, c));
                    let v = ctx.sub(self.get(r, c), &t);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rank_by_elimination()
    }

    fn rank_by_elimination(&self) -> usize {
        // forward elimination only; cheaper than the full rref
        let ctx = &self.ctx;
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(src) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
                continue;
            };
            if src != rank {
                for c in 0..cols {
                    m.swap(src * cols + c, rank * cols + c);
                }
            }
            let inv = ctx.inv(&m[rank * cols + col]).expect("nonzero pivot");
            for r in rank + 1..rows {
                if m[r * cols + col].is_zero() {
                    continue;
                }
                let factor = ctx.mul(&m[r * cols + col], &inv);
                for c in col..cols {
                    let t = ctx.mul(&factor, &m[rank * cols + c]);
                    m[r * cols + c] = ctx.sub(&m[r * cols + c], &t);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis rows of {x : M·xᵀ = 0}.
    pub fn null_space(&self) -> MatrixFq {
        let ctx = &self.ctx;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut entries = Vec::with_capacity(free.len() * self.cols);
        for &f in &free {
            let mut v = vec![ctx.zero(); self.cols];
            v[f] = ctx.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = ctx.neg(r.get(i, f));
            }
            entries.extend(v);
        }
        MatrixFq { ctx: ctx.clone(), rows: free.len(), cols: self.cols, entries }
    }
}

pub fn rank(m: &MatrixFq) -> usize {
    m.rank()
}

pub fn null_space(m: &MatrixFq) -> MatrixFq {
    m.null_space()
}

/// True iff the selected columns are linearly independent.
pub fn columns_independent(m: &MatrixFq, cols: &[usize]) -> Result<bool> {
    if cols.len() > m.rows() {
        // cannot be independent; still validate the indices
        m.select_cols(cols)?;
        return Ok(false);
    }
    Ok(m.select_cols(cols)?.rank() == cols.len())
}

/// Solves A·x = b for square A.
pub fn solve_square(a: &MatrixFq, b: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.cols() });
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.len() });
    }
    let ctx = a.ctx();
    let mut entries = Vec::with_capacity(n * (n + 1));
    for r in 0..n {
        entries.extend_from_slice(a.row(r));
        entries.push(b[r].clone());
    }
    let mut aug = MatrixFq { ctx: ctx.clone(), rows: n, cols: n + 1, entries };
    let pivots = aug.rref_in_place(n);
    if pivots.len() < n {
        return Err(Error::Singular);
    }
    Ok((0..n).map(|r| aug.get(r, n).clone()).collect())
}
