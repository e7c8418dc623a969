//! Finite-dimensional associative algebras given by structure constants.
//!
//! Products of basis elements are stored sparsely: every algebra built here
//! has products with very few terms, and the largest (the subalgebra of
//! B ⊗ B^op for a 96-dimensional B) has 384^2 basis products.

mod action;
mod construct;
mod module;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::linalg::{Matrix, Subspace};
use crate::sparse::{normalize, SparseVec};

pub use action::{invariants_of_group_action, GroupAction, InvariantVector, MonomialAction};
pub use construct::{
    d_algebra_groupcase, group_algebra, smash_product, truncated_poly, DEmbedding, SmashData,
};
pub use module::{hom_module_space, hom_module_space_generated, Bimodule, ModuleOverAlgebra};

/// Associativity is checked on all triples up to this dimension.
const EXHAUSTIVE_ASSOC_DIM: usize = 40;
const SAMPLED_TRIPLES: usize = 4000;
/// Largest tensor product materialized as an [`Algebra`] (number of basis products).
const MAX_MATERIALIZED_PRODUCTS: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: PrimeField,
    labels: Vec<String>,
    /// `products[i * dim + j]` = e_i e_j.
    products: Vec<SparseVec>,
    unit: Vec<Scalar>,
}

impl Algebra {
    /// Builds and validates (associativity, two-sided unit).
    pub fn from_fn(
        field: PrimeField,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        mut product: impl FnMut(usize, usize) -> SparseVec,
    ) -> Result<Self> {
        let alg = Self::from_fn_unchecked(field, labels, unit, &mut product)?;
        alg.check()?;
        Ok(alg)
    }

    fn from_fn_unchecked(
        field: PrimeField,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        product: &mut impl FnMut(usize, usize) -> SparseVec,
    ) -> Result<Self> {
        let dim = labels.len();
        if unit.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: unit.len(),
            });
        }
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut v = product(i, j);
                normalize(field, &mut v);
                if v.iter().any(|&(k, _)| k >= dim) {
                    return Err(Error::InvalidStructure(format!("product e{i} e{j} leaves the basis")));
                }
                products.push(v);
            }
        }
        Ok(Algebra {
            field,
            labels,
            products,
            unit,
        })
    }

    /// Associativity (exhaustive for small dimension, sampled above) and unit laws.
    pub fn check(&self) -> Result<()> {
        let d = self.dim();
        let assoc = |i: usize, j: usize, l: usize| -> Result<()> {
            let left = self.mul_sparse(self.basis_product(i, j), &vec![(l, Scalar::ONE)]);
            let right = self.mul_sparse(&vec![(i, Scalar::ONE)], self.basis_product(j, l));
            if left != right {
                return Err(Error::InvalidStructure(format!(
                    "(e{i} e{j}) e{l} != e{i} (e{j} e{l})"
                )));
            }
            Ok(())
        };
        if d <= EXHAUSTIVE_ASSOC_DIM {
            for i in 0..d {
                for j in 0..d {
                    for l in 0..d {
                        assoc(i, j, l)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa55_0c);
            for _ in 0..SAMPLED_TRIPLES {
                assoc(rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))?;
            }
        }
        let unit = crate::sparse::from_dense(&self.unit);
        for i in 0..d {
            let e = vec![(i, Scalar::ONE)];
            if self.mul_sparse(&unit, &e) != e || self.mul_sparse(&e, &unit) != e {
                return Err(Error::InvalidStructure(format!("unit fails on e{i}")));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Index of the unit when it is itself a basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.dim()).filter(|&i| !self.unit[i].is_zero()).collect();
        match nz[..] {
            [i] if self.unit[i] == Scalar::ONE => Some(i),
            _ => None,
        }
    }

    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim() + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; self.dim()];
        v[i] = Scalar::ONE;
        v
    }

    pub fn mul_sparse(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let f = self.field;
        let mut out = SparseVec::new();
        for &(i, a) in u {
            for &(j, b) in v {
                let ab = f.mul(a, b);
                for &(k, c) in self.basis_product(i, j) {
                    out.push((k, f.mul(ab, c)));
                }
            }
        }
        normalize(f, &mut out);
        out
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let out = self.mul_sparse(&crate::sparse::from_dense(u), &crate::sparse::from_dense(v));
        crate::sparse::to_dense(&out, self.dim())
    }

    /// Matrix of `v -> e_i v`.
    pub fn left_mult(&self, i: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            for &(k, c) in self.basis_product(i, j) {
                m.set(k, j, c);
            }
        }
        m
    }

    /// Matrix of `v -> v e_i`.
    pub fn right_mult(&self, i: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            for &(k, c) in self.basis_product(j, i) {
                m.set(k, j, c);
            }
        }
        m
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_mult_by(&self, u: &[Scalar]) -> Matrix {
        let d = self.dim();
        let f = self.field;
        let mut m = Matrix::zeros(f, d, d);
        for (i, &a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..d {
                for &(k, c) in self.basis_product(i, j) {
                    m.add_to(k, j, f.mul(a, c));
                }
            }
        }
        m
    }

    pub fn right_mult_by(&self, u: &[Scalar]) -> Matrix {
        let d = self.dim();
        let f = self.field;
        let mut m = Matrix::zeros(f, d, d);
        for (i, &a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..d {
                for &(k, c) in self.basis_product(j, i) {
                    m.add_to(k, j, f.mul(a, c));
                }
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Same basis, reversed products.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim();
        let products = (0..d * d)
            .map(|ij| self.products[(ij % d) * d + ij / d].clone())
            .collect();
        Algebra {
            field: self.field,
            labels: self.labels.clone(),
            products,
            unit: self.unit.clone(),
        }
    }

    /// `self ⊗ other`, basis `e_i ⊗ f_j` at index `i * other.dim() + j`.
    pub fn tensor_product(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::AlgebraMismatch);
        }
        let (m, n) = (self.dim(), other.dim());
        let products = (m * n) * (m * n);
        if products > MAX_MATERIALIZED_PRODUCTS {
            return Err(Error::BudgetExceeded {
                entries: products as u128,
                limit: MAX_MATERIALIZED_PRODUCTS as u128,
            });
        }
        let labels = (0..m * n)
            .map(|x| format!("{}⊗{}", self.labels[x / n], other.labels[x % n]))
            .collect();
        let f = self.field;
        let unit = (0..m * n)
            .map(|x| f.mul(self.unit[x / n], other.unit[x % n]))
            .collect();
        let alg = Self::from_fn_unchecked(f, labels, unit, &mut |x, y| {
            tensor_basis_product(self, other, x, y)
        })?;
        alg.check()?;
        Ok(alg)
    }

    /// `A ⊗ A^op`.
    pub fn enveloping(&self) -> Result<Algebra> {
        self.tensor_product(&self.opposite())
    }

    /// Solves `z e_a = e_a z` for every basis element.
    pub fn center(&self) -> Subspace {
        let d = self.dim();
        let f = self.field;
        let mut constraints = Matrix::zeros(f, d * d, d);
        for a in 0..d {
            for k in 0..d {
                for &(l, c) in self.basis_product(k, a) {
                    constraints.add_to(a * d + l, k, c);
                }
                for &(l, c) in self.basis_product(a, k) {
                    constraints.add_to(a * d + l, k, f.neg(c));
                }
            }
        }
        constraints.kernel_basis()
    }

    /// Stable identity of the structure constants, used to match modules.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.field.p().hash(&mut h);
        self.products.hash(&mut h);
        self.unit.hash(&mut h);
        h.finish()
    }
}

fn tensor_basis_product(left: &Algebra, right: &Algebra, x: usize, y: usize) -> SparseVec {
    let n = right.dim();
    let f = left.field;
    let mut out = SparseVec::new();
    for &(k, a) in left.basis_product(x / n, y / n) {
        for &(l, b) in right.basis_product(x % n, y % n) {
            out.push((k * n + l, f.mul(a, b)));
        }
    }
    out
}

/// Product in `left ⊗ right` without materializing the tensor algebra.
pub fn tensor_mul(left: &Algebra, right: &Algebra, u: &SparseVec, v: &SparseVec) -> SparseVec {
    let f = left.field;
    let mut out = SparseVec::new();
    for &(x, a) in u {
        for &(y, b) in v {
            let ab = f.mul(a, b);
            for (k, c) in tensor_basis_product(left, right, x, y) {
                out.push((k, f.mul(ab, c)));
            }
        }
    }
    normalize(f, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Character, FinGroup, GroupSpec};

    fn k5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn truncated_polynomials() {
        let a2 = truncated_poly(k5(), 2).unwrap();
        assert!(a2.basis_product(1, 1).is_empty());
        let a3 = truncated_poly(k5(), 3).unwrap();
        assert_eq!(a3.basis_product(1, 1), &vec![(2, Scalar::ONE)]);
        assert!(a3.basis_product(2, 2).is_empty());
        let a4 = truncated_poly(k5(), 4).unwrap();
        assert_eq!(a4.dim(), 4);
        let mut x = a4.basis_vector(1);
        for _ in 0..3 {
            assert!(x.iter().any(|v| !v.is_zero()));
            x = a4.mul(&x, &a4.basis_vector(1));
        }
        assert!(x.iter().all(|v| v.is_zero()));
        assert!(matches!(truncated_poly(k5(), 1), Err(Error::BadParameter(_))));
    }

    #[test]
    fn opposite_and_enveloping() {
        let a = truncated_poly(k5(), 3).unwrap();
        assert_eq!(a.opposite(), a);
        let ae = a.enveloping().unwrap();
        assert_eq!(ae.dim(), 9);
        assert_eq!(ae.unit_index(), Some(0));
    }

    #[test]
    fn tensor_factors_commute_in_b_enveloping() {
        let k = k5();
        let g = FinGroup::new(&GroupSpec::Cyclic(2)).unwrap();
        let chi = Character::from_generator_values(k, &g, &[(1, k.elem(4))]).unwrap();
        let b = smash_product(k, 2, &g, &chi).unwrap().algebra;
        assert!(!b.is_commutative());
        let be = b.enveloping().unwrap();
        let d = b.dim();
        for i in 0..d {
            let left = vec![(i * d, Scalar::ONE)]; // b_i ⊗ 1
            let right = vec![(i, Scalar::ONE)]; // 1 ⊗ b_i
            assert_eq!(be.mul_sparse(&left, &right), be.mul_sparse(&right, &left));
        }
    }

    #[test]
    fn centers() {
        let k = k5();
        let c4 = FinGroup::new(&GroupSpec::Cyclic(4)).unwrap();
        assert_eq!(group_algebra(k, &c4).unwrap().center().dim(), 4);
        let s3 = FinGroup::new(&GroupSpec::Dihedral(6)).unwrap();
        assert_eq!(group_algebra(k, &s3).unwrap().center().dim(), 3);
        assert_eq!(truncated_poly(k, 4).unwrap().center().dim(), 4);
    }

    #[test]
    fn bad_structure_constants_are_rejected() {
        let k = k5();
        // e1 e1 = e0 + e1 with unit e0 is fine; e1 e1 = e2 out of range is not.
        let labels = vec!["1".to_string(), "t".to_string()];
        let unit = vec![Scalar::ONE, Scalar::ZERO];
        let err = Algebra::from_fn(k, labels.clone(), unit.clone(), |i, j| {
            if i == 1 && j == 1 {
                vec![(2, Scalar::ONE)]
            } else {
                vec![(i + j, Scalar::ONE)]
            }
        });
        assert!(err.is_err());
        // Left-zero-ish product without unit.
        let err = Algebra::from_fn(k, labels, unit, |_, j| vec![(j, Scalar::ONE)]);
        assert!(matches!(err, Err(Error::InvalidStructure(_))));
    }
}
