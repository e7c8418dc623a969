//! Dense Gauss-Jordan linear algebra over F_p.
//!
//! Everything that computes a rank, a kernel or a cohomology group ends up
//! here. Matrices are row-major; vectors are plain `Vec<Scalar>` and maps act
//! on column vectors (`M v`).

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};

/// Refuse to allocate dense matrices larger than this.
pub const MAX_DENSE_ENTRIES: u128 = 100_000_000;

pub(crate) fn check_budget(rows: usize, cols: usize) -> Result<()> {
    let entries = rows as u128 * cols as u128;
    if entries > MAX_DENSE_ENTRIES {
        return Err(Error::BudgetExceeded {
            entries,
            limit: MAX_DENSE_ENTRIES,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn try_zeros(field: PrimeField, rows: usize, cols: usize) -> Result<Self> {
        check_budget(rows, cols)?;
        Ok(Matrix {
            field,
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
        })
    }

    /// Panics past the dense budget; use [`Matrix::try_zeros`] for sizes that
    /// depend on user input.
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self::try_zeros(field, rows, cols).expect("dense matrix budget")
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::ONE);
        }
        m
    }

    /// Builds from integer rows, reducing mod p. Rows must have equal length.
    pub fn from_i64(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, field.elem(v));
            }
        }
        m
    }

    pub fn from_row_vectors(field: PrimeField, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::try_zeros(field, rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            m.row_mut(i).copy_from_slice(r);
        }
        Ok(m)
    }

    pub fn from_column_vectors(field: PrimeField, rows: usize, cols: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::try_zeros(field, rows, cols.len())?;
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: Scalar) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(self.data[i], v);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let p = f.p() as u64;
        let mut out = Matrix::try_zeros(f, self.rows, other.cols)?;
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(r).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot = (*slot + a.0 as u64 * b.0 as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.set(r, c, Scalar(v as u32));
            }
        }
        Ok(out)
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
                    .iter()
                    .zip(v)
                    .fold(Scalar::ZERO, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let f = self.field;
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(self.field.neg(Scalar::ONE)))
    }

    pub fn scale(&self, s: Scalar) -> Matrix {
        let f = self.field;
        let mut out = self.clone();
        out.data.iter_mut().for_each(|a| *a = f.mul(*a, s));
        out
    }

    /// Gauss-Jordan in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p() as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(pr) = (rank..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if pr != rank {
                for k in c..cols {
                    self.data.swap(pr * cols + k, rank * cols + k);
                }
            }
            let inv = f.inv(self.get(rank, c)).expect("pivot is nonzero");
            for v in &mut self.row_mut(rank)[c..] {
                *v = f.mul(*v, inv);
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                let neg = p - factor.0 as u64;
                let (lo, hi) = self.data.split_at_mut(r.max(rank) * cols);
                let (target, source) = if r < rank {
                    (&mut lo[r * cols..(r + 1) * cols], &hi[..cols])
                } else {
                    (&mut hi[..cols], &lo[rank * cols..(rank + 1) * cols])
                };
                for k in c..cols {
                    let s = source[k].0 as u64;
                    if s != 0 {
                        target[k] = Scalar(((target[k].0 as u64 + neg * s) % p) as u32);
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn kernel_basis(&self) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let vectors: Vec<Vec<Scalar>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Scalar::ZERO; self.cols];
                v[free] = Scalar::ONE;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(matrix.get(i, free));
                }
                v
            })
            .collect();
        Subspace::from_spanning(f, self.cols, &vectors).expect("kernel fits the budget")
    }

    pub fn row_space(&self) -> Subspace {
        let Rref { mut matrix, rank, pivots } = self.rref();
        matrix.data.truncate(rank * self.cols);
        matrix.rows = rank;
        Subspace {
            field: self.field,
            ambient: self.cols,
            basis: matrix,
            pivots,
        }
    }

    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }
}

/// A subspace of F_p^ambient held as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Matrix::identity(field, ambient).row_space()
    }

    pub fn from_spanning(field: PrimeField, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        Ok(Matrix::from_row_vectors(field, ambient, vectors)?.row_space())
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Canonical remainder of `v` modulo the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(v)?;
        let f = self.field;
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let coef = out[pc];
            if coef.is_zero() {
                continue;
            }
            let neg = f.neg(coef);
            for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *o = f.mul_add(*o, neg, b);
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|x| x.is_zero()))
    }

    /// `v - w` lies in the subspace.
    pub fn class_equal(&self, v: &[Scalar], w: &[Scalar]) -> Result<bool> {
        self.check_len(w)?;
        let f = self.field;
        let diff: Vec<Scalar> = v.iter().zip(w).map(|(&a, &b)| f.sub(a, b)).collect();
        self.contains(&diff)
    }

    /// Coordinates with respect to the RREF basis, or `None` outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&c| v[c]).collect()))
    }

    /// Vector with the given coordinates.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![Scalar::ZERO; self.ambient];
        for (i, &c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                *o = f.mul_add(*o, c, b);
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for v in self.vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Incrementally built echelon basis. Each stored row has a unit at its pivot
/// and zeros at the pivots of all rows inserted before it, which is enough
/// for reduction in insertion order. Rows remember which inserted vectors
/// they came from so that solves can be read back.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    len: usize,
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new(field: PrimeField, len: usize) -> Self {
        Echelon {
            field,
            len,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_tracked(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let f = self.field;
        let mut out = v.to_vec();
        let mut combo = vec![Scalar::ZERO; self.inserted];
        for (pc, row, row_combo) in &self.rows {
            let coef = out[*pc];
            if coef.is_zero() {
                continue;
            }
            let neg = f.neg(coef);
            for (o, &b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *o = f.mul_add(*o, neg, b);
                }
            }
            for (c, &b) in combo.iter_mut().zip(row_combo) {
                *c = f.mul_add(*c, coef, b);
            }
        }
        (out, combo)
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.reduce_tracked(v).0
    }

    /// Inserts `v`; returns whether it was independent of earlier insertions.
    /// Dependent vectors are still counted as inserted (with a zero row) so
    /// that solve coordinates line up with insertion order.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.len);
        let f = self.field;
        let (mut r, combo) = self.reduce_tracked(v);
        self.inserted += 1;
        for (_, _, c) in &mut self.rows {
            c.push(Scalar::ZERO);
        }
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // r = v - sum(combo_i * inserted_i)
        let mut row_combo: Vec<Scalar> = combo.iter().map(|&c| f.neg(c)).collect();
        row_combo.push(Scalar::ONE);
        let inv = f.inv(r[pc]).expect("nonzero pivot");
        r.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        row_combo.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        self.rows.push((pc, r, row_combo));
        true
    }

    /// Coefficients expressing `v` in terms of the inserted vectors.
    pub fn solve(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (r, combo) = self.reduce_tracked(v);
        r.iter().all(|x| x.is_zero()).then_some(combo)
    }
}

/// Cohomology of `C^{m-1} --d_in--> C^m --d_out--> C^{m+1}` at `C^m`.
#[derive(Clone, Debug)]
pub struct CohomologyAt {
    pub dim: usize,
    pub kernel: Subspace,
    pub image: Subspace,
    /// Kernel vectors completing a basis of the image inside the kernel.
    pub representatives: Vec<Vec<Scalar>>,
}

pub fn cohomology_at(d_in: &Matrix, d_out: &Matrix) -> Result<CohomologyAt> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch {
            expected: d_out.cols(),
            found: d_in.rows(),
        });
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NotAComplex { degree: 0 });
    }
    let field = d_in.field();
    let kernel = d_out.kernel_basis();
    let image = d_in.column_space();
    let mut ech = Echelon::new(field, kernel.ambient_dim());
    for v in image.vectors() {
        ech.insert(&v);
    }
    let mut representatives = Vec::new();
    for v in kernel.vectors() {
        if ech.insert(&v) {
            representatives.push(v);
        }
    }
    Ok(CohomologyAt {
        dim: kernel.dim() - image.dim(),
        kernel,
        image,
        representatives,
    })
}

/// Matrix of `map` restricted to `source`, in the bases of `source` and `target`.
pub fn restrict_map(map: &Matrix, source: &Subspace, target: &Subspace) -> Result<Matrix> {
    let mut out = Matrix::try_zeros(map.field(), target.dim(), source.dim())?;
    for (j, v) in source.vectors().iter().enumerate() {
        let w = map.mul_vec(v)?;
        let coords = target.coordinates(&w)?.ok_or_else(|| {
            Error::InvalidStructure("map does not send the source subspace into the target".into())
        })?;
        for (i, c) in coords.into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(out)
}
