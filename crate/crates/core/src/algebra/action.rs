//! Linear actions of finite groups and their invariants.

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::group::FinGroup;
use crate::linalg::{Matrix, Subspace};
use crate::sparse::{normalize, SparseVec};

fn check_characteristic(field: PrimeField, order: usize) -> Result<()> {
    if order % field.p() as usize == 0 {
        return Err(Error::CharacteristicDividesGroupOrder { p: field.p(), order });
    }
    Ok(())
}

/// Dense representation `g -> ρ(g)`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    field: PrimeField,
    dim: usize,
    matrices: Vec<Matrix>,
}

impl GroupAction {
    /// Checks ρ(1) = id and ρ(s)ρ(h) = ρ(sh) for generators s and all h, which
    /// forces ρ to be a homomorphism.
    pub fn new(group: &FinGroup, field: PrimeField, dim: usize, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: matrices.len(),
            });
        }
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: 0 });
        }
        if matrices[group.identity()] != Matrix::identity(field, dim) {
            return Err(Error::InvalidStructure("identity does not act trivially".into()));
        }
        for s in group.generators() {
            for h in group.elements() {
                if matrices[s].mul(&matrices[h])? != matrices[group.mul(s, h)] {
                    return Err(Error::InvalidStructure(format!(
                        "rho({}) rho({}) != rho({})",
                        group.label(s),
                        group.label(h),
                        group.label(group.mul(s, h))
                    )));
                }
            }
        }
        Ok(GroupAction { field, dim, matrices })
    }

    pub fn trivial(group: &FinGroup, field: PrimeField, dim: usize) -> Self {
        GroupAction {
            field,
            dim,
            matrices: vec![Matrix::identity(field, dim); group.order()],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    /// (1/|G|) Σ ρ(g).
    pub fn projector(&self) -> Result<Matrix> {
        let order = self.matrices.len();
        check_characteristic(self.field, order)?;
        let mut sum = Matrix::zeros(self.field, self.dim, self.dim);
        for m in &self.matrices {
            sum = sum.add(m)?;
        }
        Ok(sum.scale(self.field.inv_int(order)?))
    }

    /// Image of the averaging projector, checked fixed by every ρ(g).
    pub fn invariants(&self) -> Result<Subspace> {
        let inv = self.projector()?.column_space();
        for v in inv.vectors() {
            for m in &self.matrices {
                if m.mul_vec(&v)? != v {
                    return Err(Error::InvalidStructure("projector image is not invariant".into()));
                }
            }
        }
        Ok(inv)
    }
}

pub fn invariants_of_group_action(rho: &GroupAction) -> Result<Subspace> {
    rho.invariants()
}

/// Action sending each basis vector to a nonzero multiple of a basis vector:
/// `g · e_i = c · e_j` with `images[g][i] = (j, c)`.
#[derive(Clone, Debug)]
pub struct MonomialAction {
    field: PrimeField,
    images: Vec<Vec<(u32, Scalar)>>,
}

impl MonomialAction {
    pub fn new(
        group: &FinGroup,
        field: PrimeField,
        dim: usize,
        mut image: impl FnMut(usize, usize) -> (usize, Scalar),
    ) -> Result<Self> {
        let images: Vec<Vec<(u32, Scalar)>> = group
            .elements()
            .map(|g| {
                (0..dim)
                    .map(|i| {
                        let (j, c) = image(g, i);
                        (j as u32, c)
                    })
                    .collect()
            })
            .collect();
        for (g, img) in images.iter().enumerate() {
            let mut hit = vec![false; dim];
            for &(j, c) in img {
                let j = j as usize;
                if j >= dim || c.is_zero() || std::mem::replace(&mut hit[j], true) {
                    return Err(Error::InvalidStructure(format!(
                        "{} does not act by a monomial bijection",
                        group.label(g)
                    )));
                }
            }
        }
        let act = MonomialAction { field, images };
        let e = group.identity();
        if act.images[e].iter().enumerate().any(|(i, &(j, c))| j as usize != i || c != Scalar::ONE) {
            return Err(Error::InvalidStructure("identity does not act trivially".into()));
        }
        for s in group.generators() {
            for h in group.elements() {
                let sh = group.mul(s, h);
                for i in 0..dim {
                    let (j, c) = act.images[h][i];
                    let (l, c2) = act.images[s][j as usize];
                    if act.images[sh][i] != (l, field.mul(c, c2)) {
                        return Err(Error::InvalidStructure(format!(
                            "monomial action is not a homomorphism at ({}, {})",
                            group.label(s),
                            group.label(h)
                        )));
                    }
                }
            }
        }
        Ok(act)
    }

    pub fn dim(&self) -> usize {
        self.images.first().map_or(0, |v| v.len())
    }

    pub fn group_order(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, g: usize, i: usize) -> (usize, Scalar) {
        let (j, c) = self.images[g][i];
        (j as usize, c)
    }

    pub fn apply(&self, g: usize, v: &SparseVec) -> SparseVec {
        let mut out: SparseVec = v
            .iter()
            .map(|&(i, a)| {
                let (j, c) = self.image(g, i);
                (j, self.field.mul(a, c))
            })
            .collect();
        normalize(self.field, &mut out);
        out
    }

    pub fn to_dense(&self, group: &FinGroup) -> Result<GroupAction> {
        let dim = self.dim();
        let mats = (0..self.group_order())
            .map(|g| {
                let mut m = Matrix::try_zeros(self.field, dim, dim)?;
                for i in 0..dim {
                    let (j, c) = self.image(g, i);
                    m.set(j, i, c);
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        GroupAction::new(group, self.field, dim, mats)
    }

    /// Basis of the invariants: nonzero orbit sums Σ_g g·e_r over orbit
    /// representatives r (smallest index in each orbit), in increasing order of r.
    pub fn invariant_basis(&self) -> Result<Vec<InvariantVector>> {
        let f = self.field;
        check_characteristic(f, self.group_order())?;
        let dim = self.dim();
        let mut seen = vec![false; dim];
        let mut out = Vec::new();
        for r in 0..dim {
            if seen[r] {
                continue;
            }
            let mut sum = SparseVec::new();
            for g in 0..self.group_order() {
                let (j, c) = self.image(g, r);
                seen[j] = true;
                sum.push((j, c));
            }
            normalize(f, &mut sum);
            if sum.is_empty() {
                continue;
            }
            // Coefficient at r is |Stab(r)| times a root of unity summed; normalize it to 1.
            let lead = sum
                .iter()
                .find(|e| e.0 == r)
                .map(|e| e.1)
                .ok_or_else(|| Error::InvalidStructure("orbit sum vanishes at its representative".into()))?;
            let s = f.inv(lead)?;
            for e in sum.iter_mut() {
                e.1 = f.mul(e.1, s);
            }
            out.push(InvariantVector { representative: r, vector: sum });
        }
        Ok(out)
    }
}

/// An orbit-sum invariant; its coordinate at `representative` is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantVector {
    pub representative: usize,
    pub vector: SparseVec,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn swap_invariants() {
        let k = PrimeField::new(5).unwrap();
        let g = FinGroup::new(&GroupSpec::Cyclic(2)).unwrap();
        let swap = Matrix::from_i64(k, &[vec![0, 1], vec![1, 0]]);
        let rho = GroupAction::new(&g, k, 2, vec![Matrix::identity(k, 2), swap]).unwrap();
        let inv = invariants_of_group_action(&rho).unwrap();
        assert_eq!(inv.dim(), 1);
        assert!(inv.contains(&[k.elem(1), k.elem(1)]).unwrap());
        let e = rho.projector().unwrap();
        assert_eq!(e.mul(&e).unwrap(), e);
        let triv = GroupAction::trivial(&g, k, 2);
        assert_eq!(triv.invariants().unwrap().dim(), 2);
    }

    #[test]
    fn characteristic_guard() {
        let k = PrimeField::new(3).unwrap();
        let g = FinGroup::new(&GroupSpec::Cyclic(3)).unwrap();
        let triv = GroupAction::trivial(&g, k, 1);
        assert_eq!(
            triv.invariants().unwrap_err(),
            Error::CharacteristicDividesGroupOrder { p: 3, order: 3 }
        );
    }

    #[test]
    fn monomial_matches_dense() {
        let k = PrimeField::new(5).unwrap();
        let g = FinGroup::new(&GroupSpec::Cyclic(4)).unwrap();
        // Generator acts on k^3 by e0 -> 2 e0, e1 <-> e2 with signs.
        let act = MonomialAction::new(&g, k, 3, |h, i| match i {
            0 => (0, k.pow(k.elem(2), h as i64).unwrap()),
            _ => {
                let j = if h % 2 == 0 { i } else { 3 - i };
                (j, k.pow(k.elem(4), h as i64).unwrap())
            }
        })
        .unwrap();
        let dense = act.to_dense(&g).unwrap().invariants().unwrap();
        let mono = act.invariant_basis().unwrap();
        assert_eq!(dense.dim(), mono.len());
        for v in mono {
            assert!(dense.contains(&crate::sparse::to_dense(&v.vector, 3)).unwrap());
        }
    }

    #[test]
    fn bad_monomial_action() {
        let k = PrimeField::new(5).unwrap();
        let g = FinGroup::new(&GroupSpec::Cyclic(2)).unwrap();
        assert!(MonomialAction::new(&g, k, 2, |h, i| (i, k.elem(1 + h as i64))).is_err());
    }
}
