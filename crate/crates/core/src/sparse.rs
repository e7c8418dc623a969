//! Compressed sparse rows, used for cochain differentials whose dense form
//! would not fit in memory.

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::linalg::Matrix;

/// Sparse vector as sorted `(index, value)` pairs without zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Sorts, merges duplicate indices and drops zeros.
pub fn normalize(field: PrimeField, entries: &mut SparseVec) {
    entries.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for &(i, v) in entries.iter() {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = field.add(last.1, v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    *entries = out;
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::ZERO; len];
    for &(i, x) in v {
        out[i] = x;
    }
    out
}

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, &x)| (i, x))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    vals: Vec<Scalar>,
}

impl SparseMatrix {
    pub fn builder(field: PrimeField, cols: usize) -> SparseBuilder {
        SparseBuilder {
            m: SparseMatrix {
                field,
                rows: 0,
                cols,
                row_ptr: vec![0],
                col_idx: Vec::new(),
                vals: Vec::new(),
            },
        }
    }

    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        let mut b = Self::builder(field, cols);
        for _ in 0..rows {
            b.push_row(&mut Vec::new());
        }
        b.finish()
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let mut b = Self::builder(m.field(), m.cols());
        for r in 0..m.rows() {
            b.push_row(&mut from_dense(m.row(r)));
        }
        b.finish()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, Scalar)> + '_ {
        let (a, b) = (self.row_ptr[r], self.row_ptr[r + 1]);
        self.col_idx[a..b]
            .iter()
            .zip(&self.vals[a..b])
            .map(|(&c, &v)| (c as usize, v))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn to_dense(&self) -> Result<Matrix> {
        let mut m = Matrix::try_zeros(self.field, self.rows, self.cols)?;
        for (r, c, v) in self.entries() {
            m.set(r, c, v);
        }
        Ok(m)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut counts = vec![0usize; self.cols + 1];
        for &c in &self.col_idx {
            counts[c as usize + 1] += 1;
        }
        for i in 0..self.cols {
            counts[i + 1] += counts[i];
        }
        let row_ptr = counts.clone();
        let mut next = counts;
        let mut col_idx = vec![0u32; self.nnz()];
        let mut vals = vec![Scalar::ZERO; self.nnz()];
        for (r, c, v) in self.entries() {
            let slot = next[c];
            col_idx[slot] = r as u32;
            vals[slot] = v;
            next[c] += 1;
        }
        SparseMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            row_ptr,
            col_idx,
            vals,
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .fold(Scalar::ZERO, |acc, (c, x)| f.mul_add(acc, x, v[c]))
            })
            .collect())
    }

    /// Product `self * other` as a sparse matrix.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut acc = vec![Scalar::ZERO; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut b = SparseMatrix::builder(f, other.cols);
        for r in 0..self.rows {
            for (k, a) in self.row(r) {
                for (c, x) in other.row(k) {
                    if acc[c].is_zero() {
                        touched.push(c);
                    }
                    acc[c] = f.mul_add(acc[c], a, x);
                }
            }
            let mut row: SparseVec = touched.iter().map(|&c| (c, acc[c])).collect();
            for &c in &touched {
                acc[c] = Scalar::ZERO;
            }
            touched.clear();
            b.push_row(&mut row);
        }
        Ok(b.finish())
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }
}

pub struct SparseBuilder {
    m: SparseMatrix,
}

impl SparseBuilder {
    /// Appends a row; `entries` may be unsorted and contain duplicates.
    pub fn push_row(&mut self, entries: &mut SparseVec) {
        normalize(self.m.field, entries);
        for &(c, v) in entries.iter() {
            debug_assert!(c < self.m.cols);
            self.m.col_idx.push(c as u32);
            self.m.vals.push(v);
        }
        self.m.rows += 1;
        self.m.row_ptr.push(self.m.col_idx.len());
    }

    pub fn finish(self) -> SparseMatrix {
        self.m
    }
}
