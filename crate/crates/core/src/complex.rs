//! Cochain complexes with sparse differentials and blockwise cohomology.
//!
//! Differentials of bar-type complexes are extremely sparse and respect
//! several gradings at once, so the coordinates of each degree split into
//! many small blocks that no differential connects. Cohomology is computed
//! block by block with dense elimination; the dense budget applies per block.

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::algebra::{GroupAction, MonomialAction};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::group::FinGroup;
use crate::linalg::{cohomology_at, Echelon, Matrix};
use crate::sparse::{normalize, to_dense, SparseMatrix, SparseVec};

/// Cochain spaces above this many coordinates are refused.
pub const MAX_COCHAIN_DIM: usize = 1_000_000;

pub(crate) fn check_cochain_dim(dim: u128) -> Result<()> {
    if dim > MAX_COCHAIN_DIM as u128 {
        return Err(Error::BudgetExceeded {
            entries: dim,
            limit: MAX_COCHAIN_DIM as u128,
        });
    }
    Ok(())
}

/// `C^0 -> C^1 -> ... -> C^top`; `differentials[m]` has `dims[m+1]` rows and `dims[m]` columns.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    field: PrimeField,
    dims: Vec<usize>,
    differentials: Vec<SparseMatrix>,
}

impl CochainComplex {
    /// Validates shapes and d∘d = 0.
    pub fn new(field: PrimeField, dims: Vec<usize>, differentials: Vec<SparseMatrix>) -> Result<Self> {
        if dims.is_empty() || differentials.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch {
                expected: dims.len().saturating_sub(1),
                found: differentials.len(),
            });
        }
        for (m, d) in differentials.iter().enumerate() {
            if d.rows() != dims[m + 1] || d.cols() != dims[m] {
                return Err(Error::DimensionMismatch {
                    expected: dims[m + 1] * dims[m],
                    found: d.rows() * d.cols(),
                });
            }
        }
        differentials
            .par_windows(2)
            .enumerate()
            .try_for_each(|(m, w)| {
                if w[1].mul(&w[0])?.is_zero() {
                    Ok(())
                } else {
                    Err(Error::NotAComplex { degree: m + 1 })
                }
            })?;
        Ok(CochainComplex {
            field,
            dims,
            differentials,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, m: usize) -> usize {
        self.dims[m]
    }

    /// Highest degree whose cochain space is present.
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Highest degree at which cohomology can be computed (needs the outgoing map).
    pub fn max_cohomology_degree(&self) -> Option<usize> {
        self.top_degree().checked_sub(1)
    }

    /// `d_m: C^m -> C^{m+1}`.
    pub fn differential(&self, m: usize) -> &SparseMatrix {
        &self.differentials[m]
    }

    pub fn apply_differential(&self, m: usize, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_degree(m, self.top_degree().saturating_sub(1))?;
        self.differentials[m].mul_vec(v)
    }

    pub fn is_cocycle(&self, m: usize, v: &[Scalar]) -> Result<bool> {
        Ok(self.apply_differential(m, v)?.iter().all(|x| x.is_zero()))
    }

    fn check_degree(&self, m: usize, max: usize) -> Result<()> {
        if m > max || self.differentials.is_empty() {
            return Err(Error::DegreeOutOfRange { degree: m, max });
        }
        Ok(())
    }

    pub fn cohomology(&self, m: usize) -> Result<DegreeCohomology> {
        let max = self.max_cohomology_degree().unwrap_or(0);
        self.check_degree(m, max)?;
        let d_out = &self.differentials[m];
        let d_in_t = if m > 0 {
            self.differentials[m - 1].transpose()
        } else {
            SparseMatrix::zero(self.field, 0, self.dims[0])
        };
        let space = BlockedSpace::build(self.field, self.dims[m], Some(d_out), &d_in_t)?;
        let representatives = space.representatives();
        Ok(DegreeCohomology {
            degree: m,
            space,
            representatives,
        })
    }

    pub fn cohomology_dims(&self) -> Result<Vec<usize>> {
        match self.max_cohomology_degree() {
            None => Ok(Vec::new()),
            Some(max) => (0..=max).map(|m| Ok(self.cohomology(m)?.dim())).collect(),
        }
    }

    /// Coboundaries in C^m; available up to the top degree.
    pub fn coboundaries(&self, m: usize) -> Result<Coboundaries> {
        if m > self.top_degree() {
            return Err(Error::DegreeOutOfRange {
                degree: m,
                max: self.top_degree(),
            });
        }
        let d_in_t = if m > 0 {
            self.differentials[m - 1].transpose()
        } else {
            SparseMatrix::zero(self.field, 0, self.dims[0])
        };
        Ok(Coboundaries {
            degree: m,
            space: BlockedSpace::build(self.field, self.dims[m], None, &d_in_t)?,
        })
    }
}

#[derive(Clone, Debug)]
struct Block {
    coords: Vec<usize>,
    image_dim: usize,
    /// Image basis first, then the representatives.
    echelon: Echelon,
    reps: Vec<Vec<Scalar>>,
}

/// Blocks of one cochain space with image (and, if known, kernel) data.
#[derive(Clone, Debug)]
struct BlockedSpace {
    field: PrimeField,
    ambient: usize,
    block_of: Vec<u32>,
    local: Vec<u32>,
    blocks: Vec<Block>,
    dim: usize,
}

impl BlockedSpace {
    /// `d_out` maps out of this space (rows are targets); `d_in_t` is the
    /// transpose of the incoming map (rows are sources). Without `d_out`,
    /// only the image is recorded.
    fn build(field: PrimeField, ambient: usize, d_out: Option<&SparseMatrix>, d_in_t: &SparseMatrix) -> Result<Self> {
        let mut uf = UnionFind::<usize>::new(ambient);
        let mut link = |m: &SparseMatrix| {
            for r in 0..m.rows() {
                let mut it = m.row(r);
                if let Some((first, _)) = it.next() {
                    for (c, _) in it {
                        uf.union(first, c);
                    }
                }
            }
        };
        if let Some(d) = d_out {
            link(d);
        }
        link(d_in_t);
        let labels = uf.into_labeling();
        let mut block_of = vec![u32::MAX; ambient];
        let mut local = vec![0u32; ambient];
        let mut root_block = vec![u32::MAX; ambient];
        let mut coords_of: Vec<Vec<usize>> = Vec::new();
        for c in 0..ambient {
            let root = labels[c];
            if root_block[root] == u32::MAX {
                root_block[root] = coords_of.len() as u32;
                coords_of.push(Vec::new());
            }
            let b = root_block[root];
            block_of[c] = b;
            local[c] = coords_of[b as usize].len() as u32;
            coords_of[b as usize].push(c);
        }
        let nb = coords_of.len();
        let mut out_rows: Vec<Vec<usize>> = vec![Vec::new(); nb];
        if let Some(d) = d_out {
            for r in 0..d.rows() {
                if let Some((c, _)) = d.row(r).next() {
                    out_rows[block_of[c] as usize].push(r);
                }
            }
        }
        let mut in_cols: Vec<Vec<usize>> = vec![Vec::new(); nb];
        for r in 0..d_in_t.rows() {
            if let Some((c, _)) = d_in_t.row(r).next() {
                in_cols[block_of[c] as usize].push(r);
            }
        }
        let blocks: Vec<Block> = coords_of
            .into_par_iter()
            .zip(out_rows.into_par_iter())
            .zip(in_cols.into_par_iter())
            .map(|((coords, rows), cols)| {
                let s = coords.len();
                let mut d_in = Matrix::try_zeros(field, s, cols.len())?;
                for (j, &src) in cols.iter().enumerate() {
                    for (c, v) in d_in_t.row(src) {
                        d_in.set(local[c] as usize, j, v);
                    }
                }
                let cohom = match d_out {
                    Some(d) => {
                        let mut d_o = Matrix::try_zeros(field, rows.len(), s)?;
                        for (i, &r) in rows.iter().enumerate() {
                            for (c, v) in d.row(r) {
                                d_o.set(i, local[c] as usize, v);
                            }
                        }
                        cohomology_at(&d_in, &d_o)?
                    }
                    None => {
                        let zero = Matrix::try_zeros(field, 0, s)?;
                        let mut c = cohomology_at(&d_in, &zero)?;
                        c.representatives.clear();
                        c
                    }
                };
                let mut echelon = Echelon::new(field, s);
                for v in cohom.image.vectors() {
                    echelon.insert(&v);
                }
                for v in &cohom.representatives {
                    echelon.insert(v);
                }
                Ok(Block {
                    coords,
                    image_dim: cohom.image.dim(),
                    echelon,
                    reps: cohom.representatives,
                })
            })
            .collect::<Result<_>>()?;
        let dim = blocks.iter().map(|b| b.reps.len()).sum();
        Ok(BlockedSpace {
            field,
            ambient,
            block_of,
            local,
            blocks,
            dim,
        })
    }

    fn representatives(&self) -> Vec<SparseVec> {
        let mut out = Vec::with_capacity(self.dim);
        for b in &self.blocks {
            for r in &b.reps {
                let mut v: SparseVec = r
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, &x)| (b.coords[i], x))
                    .collect();
                v.sort_unstable_by_key(|e| e.0);
                out.push(v);
            }
        }
        // Order representatives by their leading coordinate for stable output.
        out.sort_by_key(|v| v.first().map_or(usize::MAX, |e| e.0));
        out
    }

    /// Splits `v` into per-block local vectors (only blocks where `v` is nonzero).
    fn split(&self, v: &[Scalar]) -> Result<Vec<(usize, Vec<Scalar>)>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        let mut touched: Vec<usize> = Vec::new();
        let mut parts: std::collections::HashMap<usize, Vec<Scalar>> = std::collections::HashMap::new();
        for (c, &x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let b = self.block_of[c] as usize;
            let part = parts.entry(b).or_insert_with(|| {
                touched.push(b);
                vec![Scalar::ZERO; self.blocks[b].coords.len()]
            });
            part[self.local[c] as usize] = x;
        }
        Ok(touched.into_iter().map(|b| (b, parts.remove(&b).expect("present"))).collect())
    }

    /// Per block, the coefficients on (image basis, representatives), or `None`
    /// if `v` leaves their span.
    fn solve(&self, v: &[Scalar]) -> Result<Option<Vec<(usize, Vec<Scalar>)>>> {
        let mut out = Vec::new();
        for (b, part) in self.split(v)? {
            match self.blocks[b].echelon.solve(&part) {
                Some(combo) => out.push((b, combo)),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }
}

/// Cohomology at one degree.
#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    degree: usize,
    space: BlockedSpace,
    representatives: Vec<SparseVec>,
}

impl DegreeCohomology {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.ambient
    }

    /// Cocycles whose classes form a basis, sorted by leading coordinate.
    pub fn representatives(&self) -> &[SparseVec] {
        &self.representatives
    }

    pub fn representative(&self, i: usize) -> Vec<Scalar> {
        to_dense(&self.representatives[i], self.space.ambient)
    }

    /// Coordinates of the class of `v` in the basis of [`Self::representatives`].
    pub fn class_coordinates(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let f = self.space.field;
        let parts = self
            .space
            .solve(v)?
            .ok_or(Error::NotACocycle { degree: self.degree })?;
        // Express the block-local representatives as sparse vectors, then locate them
        // in the globally sorted list.
        let mut out = vec![Scalar::ZERO; self.dim()];
        for (b, combo) in parts {
            let block = &self.space.blocks[b];
            for (k, &c) in combo[block.image_dim..].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let idx = self.global_index(b, k);
                out[idx] = f.add(out[idx], c);
            }
        }
        Ok(out)
    }

    fn global_index(&self, block: usize, k: usize) -> usize {
        let b = &self.space.blocks[block];
        let r = &b.reps[k];
        let lead = r.iter().position(|x| !x.is_zero()).expect("nonzero representative");
        let coord = b.coords[lead];
        let pos = self
            .representatives
            .partition_point(|v| v.first().map_or(usize::MAX, |e| e.0) < coord);
        debug_assert_eq!(self.representatives[pos][0].0, coord);
        pos
    }

    pub fn is_coboundary(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.class_coordinates(v)?.iter().all(|x| x.is_zero()))
    }

    /// `v - w` is a coboundary (both must be cocycles).
    pub fn class_equal(&self, v: &[Scalar], w: &[Scalar]) -> Result<bool> {
        let f = self.space.field;
        let diff: Vec<Scalar> = v.iter().zip(w).map(|(&a, &b)| f.sub(a, b)).collect();
        self.is_coboundary(&diff)
    }
}

/// Coboundaries in one degree, usable at the top of a truncated complex.
#[derive(Clone, Debug)]
pub struct Coboundaries {
    degree: usize,
    space: BlockedSpace,
}

impl Coboundaries {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.blocks.iter().map(|b| b.image_dim).sum()
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.space.solve(v)?.is_some())
    }
}

/// The invariant subcomplex of a complex under a degreewise group action.
/// Each degree has a basis of invariant cochains together with readout
/// coordinates: basis vector i is 1 at `readout[i]` and 0 at every other readout.
#[derive(Clone, Debug)]
pub struct InvariantComplex {
    pub complex: CochainComplex,
    bases: Vec<Vec<SparseVec>>,
    readout: Vec<Vec<usize>>,
    ambient_dims: Vec<usize>,
}

fn monomial_to_sparse(field: PrimeField, act: &MonomialAction, g: usize) -> SparseMatrix {
    let dim = act.dim();
    let mut rows: Vec<SparseVec> = vec![Vec::new(); dim];
    for i in 0..dim {
        let (j, c) = act.image(g, i);
        rows[j].push((i, c));
    }
    let mut b = SparseMatrix::builder(field, dim);
    for mut r in rows {
        b.push_row(&mut r);
    }
    b.finish()
}

impl InvariantComplex {
    /// Invariants under monomial actions, one per degree of `complex`.
    pub fn from_monomial(complex: &CochainComplex, group: &FinGroup, actions: &[MonomialAction]) -> Result<Self> {
        let f = complex.field();
        Self::check_lengths(complex, actions.len(), |m| actions[m].dim())?;
        let gens = group.generators();
        let mats: Vec<Vec<SparseMatrix>> = actions
            .iter()
            .map(|a| gens.iter().map(|&g| monomial_to_sparse(f, a, g)).collect())
            .collect();
        Self::check_commutes(complex, &mats)?;
        let mut bases = Vec::new();
        let mut readout = Vec::new();
        for a in actions {
            let inv = a.invariant_basis()?;
            readout.push(inv.iter().map(|v| v.representative).collect());
            bases.push(inv.into_iter().map(|v| v.vector).collect());
        }
        Self::assemble(complex, bases, readout)
    }

    /// Invariants under dense actions (image of the averaging projector).
    pub fn from_dense(complex: &CochainComplex, group: &FinGroup, actions: &[GroupAction]) -> Result<Self> {
        Self::check_lengths(complex, actions.len(), |m| actions[m].dim())?;
        let gens = group.generators();
        let mats: Vec<Vec<SparseMatrix>> = actions
            .iter()
            .map(|a| gens.iter().map(|&g| SparseMatrix::from_dense(a.matrix(g))).collect())
            .collect();
        Self::check_commutes(complex, &mats)?;
        let mut bases = Vec::new();
        let mut readout = Vec::new();
        for a in actions {
            let inv = a.invariants()?;
            readout.push(inv.pivots().to_vec());
            bases.push(inv.vectors().iter().map(|v| crate::sparse::from_dense(v)).collect());
        }
        Self::assemble(complex, bases, readout)
    }

    fn check_lengths(complex: &CochainComplex, n: usize, dim: impl Fn(usize) -> usize) -> Result<()> {
        if n != complex.dims().len() {
            return Err(Error::DimensionMismatch {
                expected: complex.dims().len(),
                found: n,
            });
        }
        for m in 0..n {
            if dim(m) != complex.dim(m) {
                return Err(Error::DimensionMismatch {
                    expected: complex.dim(m),
                    found: dim(m),
                });
            }
        }
        Ok(())
    }

    fn check_commutes(complex: &CochainComplex, mats: &[Vec<SparseMatrix>]) -> Result<()> {
        for m in 0..complex.top_degree() {
            let d = complex.differential(m);
            for (lo, hi) in mats[m].iter().zip(&mats[m + 1]) {
                if hi.mul(d)? != d.mul(lo)? {
                    return Err(Error::ActionNotChainMap { degree: m });
                }
            }
        }
        Ok(())
    }

    fn assemble(complex: &CochainComplex, bases: Vec<Vec<SparseVec>>, readout: Vec<Vec<usize>>) -> Result<Self> {
        let f = complex.field();
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let mut diffs = Vec::new();
        for m in 0..complex.top_degree() {
            let dt = complex.differential(m).transpose();
            let target_dim = complex.dim(m + 1);
            let mut slot = vec![u32::MAX; target_dim];
            for (i, &r) in readout[m + 1].iter().enumerate() {
                slot[r] = i as u32;
            }
            let mut cols = SparseMatrix::builder(f, dims[m + 1]);
            for b in &bases[m] {
                let mut w = SparseVec::new();
                for &(k, a) in b {
                    for (t, c) in dt.row(k) {
                        w.push((t, f.mul(a, c)));
                    }
                }
                normalize(f, &mut w);
                let mut coords: SparseVec = w
                    .iter()
                    .filter(|e| slot[e.0] != u32::MAX)
                    .map(|&(t, c)| (slot[t] as usize, c))
                    .collect();
                // The image must be the combination read off at the readout coordinates.
                let mut back = SparseVec::new();
                for &(i, c) in &coords {
                    for &(t, x) in &bases[m + 1][i] {
                        back.push((t, f.mul(c, x)));
                    }
                }
                normalize(f, &mut back);
                if back != w {
                    return Err(Error::ActionNotChainMap { degree: m });
                }
                cols.push_row(&mut coords);
            }
            diffs.push(cols.finish().transpose());
        }
        Ok(InvariantComplex {
            complex: CochainComplex::new(f, dims, diffs)?,
            bases,
            readout,
            ambient_dims: complex.dims().to_vec(),
        })
    }

    pub fn basis(&self, m: usize) -> &[SparseVec] {
        &self.bases[m]
    }

    pub fn to_ambient(&self, m: usize, coords: &[Scalar]) -> Vec<Scalar> {
        let f = self.complex.field();
        let mut out = vec![Scalar::ZERO; self.ambient_dims[m]];
        for (i, &c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(t, x) in &self.bases[m][i] {
                out[t] = f.mul_add(out[t], c, x);
            }
        }
        out
    }

    /// Invariant coordinates of an ambient cochain, which must be invariant.
    pub fn from_ambient(&self, m: usize, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.readout[m].iter().map(|&r| v[r]).collect();
        if self.to_ambient(m, &coords) != v {
            return Err(Error::InvalidStructure(format!("cochain of degree {m} is not invariant")));
        }
        Ok(coords)
    }
}
