//! The concrete algebras: k[x]/(x^n), kG, A # kG and A^e # kG.
//!
//! Index conventions (all other modules rely on them):
//! - A: x^i at index i.
//! - B = A # kG: x^i g at index `i + n * g`.
//! - A^e # kG: (x^i ⊗ x^j) g at index `(i * n + j) + n^2 * g`.
//! - B^e = B ⊗ B^op: b1 ⊗ b2 at index `b1 * dim B + b2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{tensor_mul, Algebra};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::group::{Character, FinGroup};
use crate::linalg::Matrix;
use crate::sparse::SparseVec;

fn power_label(var: &str, i: usize) -> String {
    match i {
        0 => "1".to_string(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    }
}

/// k[x]/(x^n).
pub fn truncated_poly(field: PrimeField, n: usize) -> Result<Algebra> {
    if n < 2 {
        return Err(Error::BadParameter(format!("truncation degree n = {n} must be at least 2")));
    }
    let labels = (0..n).map(|i| power_label("x", i)).collect();
    let mut unit = vec![Scalar::ZERO; n];
    unit[0] = Scalar::ONE;
    Algebra::from_fn(field, labels, unit, |i, j| {
        if i + j < n {
            vec![(i + j, Scalar::ONE)]
        } else {
            Vec::new()
        }
    })
}

pub fn group_algebra(field: PrimeField, group: &FinGroup) -> Result<Algebra> {
    let labels = group.elements().map(|g| group.label(g).to_string()).collect();
    let mut unit = vec![Scalar::ZERO; group.order()];
    unit[group.identity()] = Scalar::ONE;
    Algebra::from_fn(field, labels, unit, |g, h| vec![(group.mul(g, h), Scalar::ONE)])
}

fn check_characteristic(field: PrimeField, group: &FinGroup) -> Result<()> {
    if group.order() % field.p() as usize == 0 {
        return Err(Error::CharacteristicDividesGroupOrder {
            p: field.p(),
            order: group.order(),
        });
    }
    Ok(())
}

/// B = k[x]/(x^n) # kG together with the data it was built from.
#[derive(Clone, Debug)]
pub struct SmashData {
    pub algebra: Algebra,
    pub n: usize,
    pub group: FinGroup,
    pub chi: Character,
}

impl SmashData {
    #[inline]
    pub fn index(&self, i: usize, g: usize) -> usize {
        i + self.n * g
    }

    /// `(i, g)` with basis element x^i g.
    #[inline]
    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx % self.n, idx / self.n)
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    /// χ(g)^e, e may be negative.
    pub fn chi_pow(&self, g: usize, e: i64) -> Scalar {
        self.field()
            .pow(self.chi.value(g), e)
            .expect("character values are nonzero")
    }
}

/// (x^i g)(x^j h) = χ(g)^j x^{i+j} gh, zero once i + j >= n.
pub fn smash_product(field: PrimeField, n: usize, group: &FinGroup, chi: &Character) -> Result<SmashData> {
    if n < 2 {
        return Err(Error::BadParameter(format!("truncation degree n = {n} must be at least 2")));
    }
    check_characteristic(field, group)?;
    if chi.values().len() != group.order() {
        return Err(Error::DimensionMismatch {
            expected: group.order(),
            found: chi.values().len(),
        });
    }
    let order = group.order();
    let mut labels = Vec::with_capacity(n * order);
    for g in 0..order {
        for i in 0..n {
            labels.push(match (i, g == group.identity()) {
                (0, _) => group.label(g).to_string(),
                (_, true) => power_label("x", i),
                _ => format!("{}·{}", power_label("x", i), group.label(g)),
            });
        }
    }
    let mut unit = vec![Scalar::ZERO; n * order];
    unit[n * group.identity()] = Scalar::ONE;
    let algebra = Algebra::from_fn(field, labels, unit, |a, b| {
        let (i, g) = (a % n, a / n);
        let (j, h) = (b % n, b / n);
        if i + j >= n {
            return Vec::new();
        }
        let c = field.pow(chi.value(g), j as i64).expect("nonzero");
        vec![(i + j + n * group.mul(g, h), c)]
    })?;
    Ok(SmashData {
        algebra,
        n,
        group: group.clone(),
        chi: chi.clone(),
    })
}

/// Embedding of A^e # kG into B ⊗ B^op as sparse images of basis vectors.
#[derive(Clone, Debug)]
pub struct DEmbedding {
    pub images: Vec<SparseVec>,
    pub target_dim: usize,
}

impl DEmbedding {
    /// Rows are images of the basis of the source.
    pub fn to_matrix(&self, field: PrimeField) -> Result<Matrix> {
        let mut m = Matrix::try_zeros(field, self.images.len(), self.target_dim)?;
        for (r, img) in self.images.iter().enumerate() {
            for &(c, v) in img {
                m.set(r, c, v);
            }
        }
        Ok(m)
    }

    pub fn apply(&self, field: PrimeField, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for &(i, a) in v {
            for &(c, b) in &self.images[i] {
                out.push((c, field.mul(a, b)));
            }
        }
        crate::sparse::normalize(field, &mut out);
        out
    }

    /// Unital, multiplicative (exhaustive when `dim D <= 64`, else 10^4 seeded pairs)
    /// and injective. Products in B^e are formed factorwise.
    pub fn verify(&self, d: &Algebra, b: &Algebra) -> Result<()> {
        let f = d.field();
        let b_op = b.opposite();
        let dim_b = b.dim();
        if self.target_dim != dim_b * dim_b || self.images.len() != d.dim() {
            return Err(Error::DimensionMismatch {
                expected: dim_b * dim_b,
                found: self.target_dim,
            });
        }
        let unit_d = crate::sparse::from_dense(d.unit());
        let unit_b = crate::sparse::from_dense(b.unit());
        let mut unit_be = SparseVec::new();
        for &(i, a) in &unit_b {
            for &(j, c) in &unit_b {
                unit_be.push((i * dim_b + j, f.mul(a, c)));
            }
        }
        crate::sparse::normalize(f, &mut unit_be);
        if self.apply(f, &unit_d) != unit_be {
            return Err(Error::InvalidStructure("embedding is not unital".into()));
        }
        let check = |i: usize, j: usize| -> Result<()> {
            let lhs = self.apply(f, d.basis_product(i, j));
            let rhs = tensor_mul(b, &b_op, &self.images[i], &self.images[j]);
            if lhs != rhs {
                return Err(Error::InvalidStructure(format!(
                    "embedding not multiplicative on ({}, {})",
                    d.label(i),
                    d.label(j)
                )));
            }
            Ok(())
        };
        let dim = d.dim();
        if dim <= 64 {
            for i in 0..dim {
                for j in 0..dim {
                    check(i, j)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xd_e3b);
            for _ in 0..10_000 {
                check(rng.gen_range(0..dim), rng.gen_range(0..dim))?;
            }
        }
        // Images of basis vectors are monomials; injective iff their supports are distinct.
        let mut seen = std::collections::HashSet::new();
        for img in &self.images {
            match img[..] {
                [(c, _)] if seen.insert(c) => {}
                _ => {
                    let m = self.to_matrix(f)?;
                    if m.rank() != dim {
                        return Err(Error::InvalidStructure("embedding is not injective".into()));
                    }
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

/// A^e # kG with the diagonal action ^g(x^i ⊗ x^j) = χ(g)^{i+j} x^i ⊗ x^j, and its
/// embedding (a ⊗ b)g ↦ ag ⊗ (^{g^-1} b) g^-1 into B^e.
pub fn d_algebra_groupcase(smash: &SmashData) -> Result<(Algebra, DEmbedding)> {
    let field = smash.field();
    let n = smash.n;
    let group = &smash.group;
    let order = group.order();
    let nn = n * n;
    let mut labels = Vec::with_capacity(nn * order);
    for g in 0..order {
        for ij in 0..nn {
            labels.push(format!(
                "({}⊗{}){}",
                power_label("x", ij / n),
                power_label("x", ij % n),
                group.label(g)
            ));
        }
    }
    let mut unit = vec![Scalar::ZERO; nn * order];
    unit[nn * group.identity()] = Scalar::ONE;
    let d = Algebra::from_fn(field, labels, unit, |u, v| {
        let (a, b, g) = ((u % nn) / n, u % n, u / nn);
        let (c, e, h) = ((v % nn) / n, v % n, v / nn);
        if a + c >= n || b + e >= n {
            return Vec::new();
        }
        let coeff = smash.chi_pow(g, (c + e) as i64);
        vec![((a + c) * n + (b + e) + nn * group.mul(g, h), coeff)]
    })?;
    let dim_b = smash.algebra.dim();
    let images = (0..nn * order)
        .map(|u| {
            let (i, j, g) = ((u % nn) / n, u % n, u / nn);
            let gi = group.inv(g);
            let coeff = smash.chi_pow(g, -(j as i64));
            vec![(smash.index(i, g) * dim_b + smash.index(j, gi), coeff)]
        })
        .collect();
    let emb = DEmbedding {
        images,
        target_dim: dim_b * dim_b,
    };
    emb.verify(&d, &smash.algebra)?;
    Ok((d, emb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn sweedler() -> SmashData {
        let k = PrimeField::new(5).unwrap();
        let g = FinGroup::new(&GroupSpec::Cyclic(2)).unwrap();
        let chi = Character::from_generator_values(k, &g, &[(1, k.elem(4))]).unwrap();
        smash_product(k, 2, &g, &chi).unwrap()
    }

    #[test]
    fn smash_product_rule() {
        let b = sweedler();
        let a = &b.algebra;
        assert_eq!(a.dim(), 4);
        let xg = b.index(1, 1);
        assert!(a.basis_product(xg, xg).is_empty());
        // (1·g)(x·1) = χ(g) x·g
        let k = b.field();
        assert_eq!(a.basis_product(b.index(0, 1), b.index(1, 0)), &vec![(xg, k.elem(4))]);
        assert_eq!(a.label(xg), "x·g");
        assert_eq!(a.unit_index(), Some(0));
    }

    #[test]
    fn characteristic_must_not_divide_order() {
        let k = PrimeField::new(5).unwrap();
        let g = FinGroup::new(&GroupSpec::Cyclic(5)).unwrap();
        let chi = Character::trivial(&g);
        assert_eq!(
            smash_product(k, 2, &g, &chi).unwrap_err(),
            Error::CharacteristicDividesGroupOrder { p: 5, order: 5 }
        );
    }

    #[test]
    fn d_embedding_sweedler() {
        let b = sweedler();
        let (d, emb) = d_algebra_groupcase(&b).unwrap();
        assert_eq!(d.dim(), 8);
        // (1⊗1)g ↦ g ⊗ g^{-1}
        let g = 1;
        let src = 4 * g;
        let tgt = b.index(0, g) * 4 + b.index(0, b.group.inv(g));
        assert_eq!(emb.images[src], vec![(tgt, Scalar::ONE)]);
        assert_eq!(emb.to_matrix(b.field()).unwrap().rank(), 8);
    }

    #[test]
    fn d_embedding_nonabelian() {
        let k = PrimeField::new(13).unwrap();
        let z4 = GroupSpec::Cyclic(4);
        let s3 = GroupSpec::Dihedral(6);
        let g = FinGroup::new(&GroupSpec::Product(Box::new(z4), Box::new(s3))).unwrap();
        let chi = Character::from_generator_values(k, &g, &[(6, k.elem(5)), (1, k.elem(1)), (3, k.elem(12))])
            .unwrap();
        let b = smash_product(k, 4, &g, &chi).unwrap();
        assert_eq!(b.algebra.dim(), 96);
        let (d, _) = d_algebra_groupcase(&b).unwrap();
        assert_eq!(d.dim(), 384);
    }
}
