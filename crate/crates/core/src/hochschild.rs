//! Hochschild cochains Hom(Ā^{⊗m}, M) with the bar differential, and cup products.
//!
//! C^m has coordinates `(t, e)` at index `t * dim M + e`, where `t` enumerates
//! m-tuples of slot positions lexicographically (leftmost slowest) and `e` is a
//! basis index of M. In the normalized complex the slots run over the non-unit
//! basis elements of A; otherwise over all of them.

use rayon::prelude::*;

use crate::algebra::{Algebra, Bimodule, MonomialAction};
use crate::complex::{check_cochain_dim, CochainComplex, InvariantComplex};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::group::FinGroup;
use crate::sparse::{SparseMatrix, SparseVec};

/// Bar cochain complex of an algebra with bimodule coefficients.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub complex: CochainComplex,
    /// Basis indices of A occupying the tensor slots.
    slots: Vec<usize>,
    mdim: usize,
    normalized: bool,
    /// Set when M is an algebra receiving A, enabling cup products.
    coefficients: Option<Algebra>,
}

fn tuple_count(slots: usize, m: usize) -> u128 {
    (slots as u128).pow(m as u32)
}

impl BarComplex {
    /// Cochains up to degree `max_degree + 1`, so cohomology is available through `max_degree`.
    pub fn new(a: &Algebra, m: &Bimodule, max_degree: usize, normalized: bool) -> Result<Self> {
        Self::build(a, m, max_degree, normalized, None)
    }

    /// HH(A, A).
    pub fn regular(a: &Algebra, max_degree: usize) -> Result<Self> {
        Self::build(a, &Bimodule::regular(a), max_degree, true, Some(a.clone()))
    }

    /// Coefficients in an algebra `c` through the algebra map sending basis
    /// vector i of A to `images[i]`.
    pub fn with_coefficients(a: &Algebra, c: &Algebra, images: &[Vec<Scalar>], max_degree: usize) -> Result<Self> {
        let m = Bimodule::restricted(a, c, images)?;
        Self::build(a, &m, max_degree, true, Some(c.clone()))
    }

    fn build(
        a: &Algebra,
        m: &Bimodule,
        max_degree: usize,
        normalized: bool,
        coefficients: Option<Algebra>,
    ) -> Result<Self> {
        let f = a.field();
        let unit = a.unit_index();
        let slots: Vec<usize> = if normalized {
            let u = unit.ok_or_else(|| {
                Error::InvalidStructure("normalized cochains need the unit to be a basis vector".into())
            })?;
            (0..a.dim()).filter(|&i| i != u).collect()
        } else {
            (0..a.dim()).collect()
        };
        let mdim = m.dim();
        let top = max_degree + 1;
        for deg in 0..=top {
            check_cochain_dim(tuple_count(slots.len(), deg) * mdim as u128)?;
        }
        let dims: Vec<usize> = (0..=top)
            .map(|deg| tuple_count(slots.len(), deg) as usize * mdim)
            .collect();
        let mut slot_of = vec![usize::MAX; a.dim()];
        for (s, &i) in slots.iter().enumerate() {
            slot_of[i] = s;
        }
        let left: Vec<Vec<SparseVec>> = (0..a.dim()).map(|i| matrix_rows(m.left(i))).collect();
        let right: Vec<Vec<SparseVec>> = (0..a.dim()).map(|i| matrix_rows(m.right(i))).collect();
        let ctx = RowContext {
            field: f,
            a,
            slots: &slots,
            slot_of: &slot_of,
            mdim,
            left: &left,
            right: &right,
        };
        let diffs: Vec<SparseMatrix> = (0..top).map(|deg| ctx.differential(deg)).collect();
        let complex = CochainComplex::new(f, dims, diffs)?;
        Ok(BarComplex {
            complex,
            slots,
            mdim,
            normalized,
            coefficients,
        })
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn coefficient_dim(&self) -> usize {
        self.mdim
    }

    /// Index of the tuple of slot positions `t`.
    pub fn tuple_index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &s| acc * self.slots.len() + s)
    }

    pub fn tuple_of(&self, mut idx: usize, len: usize) -> Vec<usize> {
        let k = self.slots.len();
        let mut t = vec![0; len];
        for i in (0..len).rev() {
            t[i] = idx % k;
            idx /= k;
        }
        t
    }

    /// Slot position holding basis index `i` of A, if any.
    pub fn slot_of(&self, i: usize) -> Option<usize> {
        self.slots.iter().position(|&s| s == i)
    }

    /// f ⌣ g (f(a_1..a_l) g(a_{l+1}..a_{l+m}) multiplied in the coefficient algebra).
    pub fn cup(&self, f: &[Scalar], l: usize, g: &[Scalar], m: usize) -> Result<Vec<Scalar>> {
        let c = self
            .coefficients
            .as_ref()
            .ok_or_else(|| Error::InvalidStructure("cup products need algebra coefficients".into()))?;
        for (v, deg) in [(f, l), (g, m)] {
            if deg < self.complex.top_degree() && !self.complex.is_cocycle(deg, v)? {
                return Err(Error::NotACocycle { degree: deg });
            }
        }
        Ok(self.cup_cochains(c, f, l, g, m))
    }

    /// Cochain-level product without the cocycle check.
    pub fn cup_cochains(&self, c: &Algebra, f: &[Scalar], l: usize, g: &[Scalar], m: usize) -> Vec<Scalar> {
        let field = c.field();
        let k = self.slots.len();
        let d = self.mdim;
        let nl = k.pow(l as u32);
        let nm = k.pow(m as u32);
        let fs: Vec<SparseVec> = (0..nl).map(|t| crate::sparse::from_dense(&f[t * d..(t + 1) * d])).collect();
        let gs: Vec<SparseVec> = (0..nm).map(|t| crate::sparse::from_dense(&g[t * d..(t + 1) * d])).collect();
        let mut out = vec![Scalar::ZERO; nl * nm * d];
        out.par_chunks_mut(nm * d).enumerate().for_each(|(tl, chunk)| {
            if fs[tl].is_empty() {
                return;
            }
            for (tm, gv) in gs.iter().enumerate() {
                for (e, v) in c.mul_sparse(&fs[tl], gv) {
                    chunk[tm * d + e] = field.add(chunk[tm * d + e], v);
                }
            }
        });
        out
    }
}

fn matrix_rows(m: &crate::linalg::Matrix) -> Vec<SparseVec> {
    (0..m.rows()).map(|r| crate::sparse::from_dense(m.row(r))).collect()
}

struct RowContext<'a> {
    field: PrimeField,
    a: &'a Algebra,
    slots: &'a [usize],
    slot_of: &'a [usize],
    mdim: usize,
    left: &'a [Vec<SparseVec>],
    right: &'a [Vec<SparseVec>],
}

impl RowContext<'_> {
    /// d_m: C^m -> C^{m+1} with
    /// (df)(s_0..s_m) = s_0 f(s_1..s_m) + Σ_j (-1)^{j+1} f(..s_j s_{j+1}..) + (-1)^{m+1} f(s_0..s_{m-1}) s_m.
    fn differential(&self, m: usize) -> SparseMatrix {
        let f = self.field;
        let k = self.slots.len();
        let d = self.mdim;
        let src_cols = k.pow(m as u32) * d;
        let n_tuples = k.pow(m as u32 + 1);
        let rows: Vec<Vec<SparseVec>> = (0..n_tuples)
            .into_par_iter()
            .map(|ti| {
                let mut t = vec![0; m + 1];
                let mut x = ti;
                for i in (0..=m).rev() {
                    t[i] = x % k;
                    x /= k;
                }
                let index = |tt: &[usize]| tt.iter().fold(0, |acc, &s| acc * k + s);
                let mut out: Vec<SparseVec> = vec![Vec::new(); d];
                // s_0 f(s_1..s_m)
                let base = index(&t[1..]) * d;
                for (e, row) in self.left[self.slots[t[0]]].iter().enumerate() {
                    for &(e2, c) in row {
                        out[e].push((base + e2, c));
                    }
                }
                for j in 0..m {
                    let sign = if j % 2 == 0 { f.neg(Scalar::ONE) } else { Scalar::ONE };
                    let prod = self.a.basis_product(self.slots[t[j]], self.slots[t[j + 1]]);
                    for &(kk, c) in prod {
                        let s = self.slot_of[kk];
                        if s == usize::MAX {
                            continue;
                        }
                        let mut t2 = Vec::with_capacity(m);
                        t2.extend_from_slice(&t[..j]);
                        t2.push(s);
                        t2.extend_from_slice(&t[j + 2..]);
                        let col = index(&t2) * d;
                        let v = f.mul(sign, c);
                        for (e, o) in out.iter_mut().enumerate() {
                            o.push((col + e, v));
                        }
                    }
                }
                let sign = if m % 2 == 0 { f.neg(Scalar::ONE) } else { Scalar::ONE };
                let base = index(&t[..m]) * d;
                for (e, row) in self.right[self.slots[t[m]]].iter().enumerate() {
                    for &(e2, c) in row {
                        out[e].push((base + e2, f.mul(sign, c)));
                    }
                }
                out
            })
            .collect();
        let mut b = SparseMatrix::builder(f, src_cols);
        for mut tuple_rows in rows {
            for r in tuple_rows.iter_mut() {
                b.push_row(r);
            }
        }
        b.finish()
    }
}

/// Bar complex of A with coefficients in an algebra C ⊇ A together with its
/// invariant subcomplex under a monomial group action on cochains.
#[derive(Clone, Debug)]
pub struct InvariantBarComplex {
    pub bar: BarComplex,
    pub invariant: InvariantComplex,
}

impl InvariantBarComplex {
    pub fn new(bar: BarComplex, group: &FinGroup, actions: &[MonomialAction]) -> Result<Self> {
        let invariant = InvariantComplex::from_monomial(&bar.complex, group, actions)?;
        Ok(InvariantBarComplex { bar, invariant })
    }

    /// Cup product of invariant cocycles, in invariant coordinates.
    pub fn cup(&self, f: &[Scalar], l: usize, g: &[Scalar], m: usize) -> Result<Vec<Scalar>> {
        let c = &self.invariant.complex;
        for (v, deg) in [(f, l), (g, m)] {
            if deg < c.top_degree() && !c.is_cocycle(deg, v)? {
                return Err(Error::NotACocycle { degree: deg });
            }
        }
        let fa = self.invariant.to_ambient(l, f);
        let ga = self.invariant.to_ambient(m, g);
        let prod = self.bar.cup(&fa, l, &ga, m)?;
        self.invariant.from_ambient(l + m, &prod)
    }
}

/// HH^*(A, A) cup product on classes given by cocycle vectors.
pub fn cup_product_bar(bar: &BarComplex, f: &[Scalar], l: usize, g: &[Scalar], m: usize) -> Result<Vec<Scalar>> {
    bar.cup(f, l, g, m)
}

pub fn cup_on_invariant(inv: &InvariantBarComplex, f: &[Scalar], l: usize, g: &[Scalar], m: usize) -> Result<Vec<Scalar>> {
    inv.cup(f, l, g, m)
}
