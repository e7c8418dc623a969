//! The subalgebra 𝒟 = (A ⊗ A^op)δ(kG) of B^e and the identification
//! HH^*(B) ≅ Ext_𝒟(A, B) ≅ H^*(Hom(Ā^{⊗m}, B)^G), the lift of small-complex
//! cocycles to the bar complex of B, and the algebra Γ = A^e ⋊ kG.
//!
//! Algebras with basis (x^i ⊗ x^j)g (𝒟 and Γ) index it as `(i n + j) + n^2 g`.

mod gamma;
mod lift;

pub use gamma::{build_gamma, gamma_iso_d, hopf_hochschild_dims, GammaAlgebra, GammaIso, HopfHochschild};
pub use lift::{lift_cocycle_to_bar, transport_to_ext_d, verify_lifts, LiftReport};

use crate::algebra::{
    d_algebra_groupcase, hom_module_space_generated, Algebra, Bimodule, DEmbedding, ModuleOverAlgebra,
    MonomialAction, SmashData,
};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hochschild::{BarComplex, InvariantBarComplex};
use crate::linalg::Matrix;
use crate::rankone::RankOneData;
use crate::sparse::SparseVec;

/// Above this many unknowns a direct Hom computation over 𝒟 or Γ is skipped.
pub const MAX_HOM_UNKNOWNS: usize = 3000;

/// δ(g) = g ⊗ g^{-1} in B^e, checked unital, multiplicative and injective.
pub fn delta_embedding(smash: &SmashData) -> Result<Vec<SparseVec>> {
    let b = &smash.algebra;
    let b_op = b.opposite();
    let group = &smash.group;
    let dim_b = b.dim();
    let images: Vec<SparseVec> = group
        .elements()
        .map(|g| vec![(smash.index(0, g) * dim_b + smash.index(0, group.inv(g)), Scalar::ONE)])
        .collect();
    let unit = b.unit_index().expect("B has a basis unit");
    if images[group.identity()] != vec![(unit * dim_b + unit, Scalar::ONE)] {
        return Err(Error::InvalidStructure("δ(1) is not the unit".into()));
    }
    for g in group.elements() {
        for h in group.elements() {
            let prod = crate::algebra::tensor_mul(b, &b_op, &images[g], &images[h]);
            if prod != images[group.mul(g, h)] {
                return Err(Error::InvalidStructure("δ is not multiplicative".into()));
            }
        }
    }
    let mut seen: Vec<usize> = images.iter().map(|v| v[0].0).collect();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != group.order() {
        return Err(Error::InvalidStructure("δ is not injective".into()));
    }
    Ok(images)
}

/// Action of (x^i ⊗ x^j)g on A^{⊗k}: x^i·^g(t_0 ⊗ … ⊗ t_{k-1})·x^j.
pub(crate) fn tensor_power_module(smash: &SmashData, algebra: &Algebra, k: usize) -> Result<ModuleOverAlgebra> {
    let f = smash.field();
    let n = smash.n;
    let nn = n * n;
    let dim = n.pow(k as u32);
    let actions = (0..algebra.dim())
        .map(|u| {
            let (i, j, g) = ((u % nn) / n, u % n, u / nn);
            let mut m = Matrix::try_zeros(f, dim, dim)?;
            for col in 0..dim {
                let mut t = digits(col, n, k);
                let deg: usize = t.iter().sum();
                t[0] += i;
                t[k - 1] += j;
                if t.iter().any(|&e| e >= n) {
                    continue;
                }
                let row = t.iter().fold(0, |acc, &e| acc * n + e);
                m.add_to(row, col, smash.chi_pow(g, deg as i64));
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    ModuleOverAlgebra::new(algebra, dim, actions)
}

/// A B-bimodule as a module over an algebra mapped into B^e by `images`.
pub(crate) fn bimodule_through(
    algebra: &Algebra,
    images: &[SparseVec],
    dim_b: usize,
    m: &Bimodule,
) -> Result<ModuleOverAlgebra> {
    let f = m.field();
    let actions = images
        .iter()
        .map(|img| {
            let mut acc = Matrix::zeros(f, m.dim(), m.dim());
            for &(idx, c) in img {
                let term = m.left(idx / dim_b).mul(m.right(idx % dim_b))?.scale(c);
                acc = acc.add(&term)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    ModuleOverAlgebra::new(algebra, m.dim(), actions)
}

pub(crate) fn digits(mut code: usize, n: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    d
}

/// Generators x⊗1, 1⊗x and the group generators of an algebra with basis (x^i ⊗ x^j)g.
pub(crate) fn label_generators(smash: &SmashData) -> Vec<usize> {
    let n = smash.n;
    let nn = n * n;
    let e = smash.group.identity();
    let mut gens = vec![n + nn * e, 1 + nn * e];
    gens.extend(smash.group.generators().into_iter().map(|g| nn * g));
    gens
}

/// G acting on Hom(Ā^{⊗m}, B): (g·f)(a) = g f(g^{-1}·a) g^{-1}.
fn cochain_action(r: &RankOneData, bar: &BarComplex, m: usize) -> Result<MonomialAction> {
    let group = r.group();
    let n = r.n;
    let dim_b = r.dim_b();
    let slots = bar.slots().to_vec();
    let dim = bar.complex.dim(m);
    MonomialAction::new(group, r.field, dim, |g, idx| {
        let (t, e) = (idx / dim_b, idx % dim_b);
        let tuple = bar.tuple_of(t, m);
        let deg: usize = tuple.iter().map(|&s| slots[s]).sum();
        let (j, h) = (e % n, e / n);
        let target = t * dim_b + r.b_index(j, group.conjugate(h, g));
        (target, r.chi_pow(g, j as i64 - deg as i64))
    })
}

/// H^*(Hom(Ā^{⊗m}, B)^G), the normalized bar complex of A with coefficients in B.
#[derive(Clone, Debug)]
pub struct ExtDComplex {
    pub complex: InvariantBarComplex,
    max_degree: usize,
}

impl ExtDComplex {
    pub fn new(r: &RankOneData, max_degree: usize) -> Result<Self> {
        let e = r.group().identity();
        let images: Vec<Vec<Scalar>> = (0..r.n).map(|i| r.b().basis_vector(r.b_index(i, e))).collect();
        let bar = BarComplex::with_coefficients(&r.a, r.b(), &images, max_degree)?;
        let actions = (0..bar.complex.dims().len())
            .map(|m| cochain_action(r, &bar, m))
            .collect::<Result<Vec<_>>>()?;
        let complex = InvariantBarComplex::new(bar, r.group(), &actions)?;
        Ok(ExtDComplex { complex, max_degree })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dims(&self) -> Result<Vec<usize>> {
        (0..=self.max_degree)
            .map(|m| Ok(self.complex.invariant.complex.cohomology(m)?.dim()))
            .collect()
    }
}

pub fn ext_d_dims(r: &RankOneData, max_degree: usize) -> Result<Vec<usize>> {
    ExtDComplex::new(r, max_degree)?.dims()
}

/// dim Hom_𝒟(A^{⊗(m+2)}, B) computed directly, against dim Hom(A^{⊗m}, B)^G
/// for the unnormalized cochains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDSpotCheck {
    pub degree: usize,
    /// None when the direct computation exceeds [`MAX_HOM_UNKNOWNS`].
    pub hom_d_dim: Option<usize>,
    pub invariant_dim: usize,
}

impl HomDSpotCheck {
    pub fn passed(&self) -> Option<bool> {
        self.hom_d_dim.map(|d| d == self.invariant_dim)
    }
}

pub fn hom_d_spot_check(r: &RankOneData, max_m: usize) -> Result<Vec<HomDSpotCheck>> {
    let (d, emb): (Algebra, DEmbedding) = d_algebra_groupcase(&r.smash)?;
    let target = bimodule_through(&d, &emb.images, r.dim_b(), &Bimodule::regular(r.b()))?;
    let gens = label_generators(&r.smash);
    let group = r.group();
    let n = r.n;
    (0..=max_m)
        .map(|m| {
            let tensor_dim = n.pow(m as u32);
            let act = MonomialAction::new(group, r.field, tensor_dim * r.dim_b(), |g, idx| {
                let (t, e) = (idx / r.dim_b(), idx % r.dim_b());
                let deg: usize = digits(t, n, m).iter().sum();
                let (j, h) = (e % n, e / n);
                (t * r.dim_b() + r.b_index(j, group.conjugate(h, g)), r.chi_pow(g, j as i64 - deg as i64))
            })?;
            let invariant_dim = act.invariant_basis()?.len();
            let unknowns = n.pow(m as u32 + 2) * r.dim_b();
            let hom_d_dim = if unknowns > MAX_HOM_UNKNOWNS {
                None
            } else {
                let source = tensor_power_module(&r.smash, &d, m + 2)?;
                Some(hom_module_space_generated(&source, &target, &gens)?.dim())
            };
            Ok(HomDSpotCheck {
                degree: m,
                hom_d_dim,
                invariant_dim,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::group::{Character, FinGroup, GroupSpec};
    use crate::rankone::bg_complex;

    pub(crate) fn build(p: u64, n: usize, spec: GroupSpec, chi: &[(usize, i64)], g1: usize) -> RankOneData {
        let k = PrimeField::new(p).unwrap();
        let g = FinGroup::new(&spec).unwrap();
        let vals: Vec<(usize, Scalar)> = chi.iter().map(|&(e, v)| (e, k.elem(v))).collect();
        let c = Character::from_generator_values(k, &g, &vals).unwrap();
        RankOneData::new(k, n, &g, &c, g1).unwrap()
    }

    #[test]
    fn delta_properties() {
        let r = build(7, 3, GroupSpec::Cyclic(3), &[(1, 2)], 1);
        let delta = delta_embedding(&r.smash).unwrap();
        let b = r.b();
        let b_op = b.opposite();
        let dim_b = b.dim();
        let unit = r.b_index(0, 0);
        assert_eq!(delta[0], vec![(unit * dim_b + unit, Scalar::ONE)]);
        // δ(g)(x ⊗ x^2)δ(g^{-1}) = ^g x ⊗ ^g x^2 = χ(g)^3 (x ⊗ x^2).
        let (g, gi) = (1, 2);
        let a = vec![(r.b_index(1, 0) * dim_b + r.b_index(2, 0), Scalar::ONE)];
        let conj = crate::algebra::tensor_mul(b, &b_op, &crate::algebra::tensor_mul(b, &b_op, &delta[g], &a), &delta[gi]);
        let chi3 = r.chi_pow(g, 3);
        assert_eq!(conj, vec![(a[0].0, chi3)]);
    }

    #[test]
    fn ext_d_matches_bg() {
        let e1 = build(5, 2, GroupSpec::Cyclic(2), &[(1, 4)], 1);
        assert_eq!(ext_d_dims(&e1, 3).unwrap(), vec![1; 4]);
        let e3 = build(5, 2, GroupSpec::Cyclic(4), &[(1, 2)], 2);
        assert_eq!(ext_d_dims(&e3, 3).unwrap(), bg_complex(&e3, 3).unwrap().dims());
    }

    #[test]
    fn spot_check_small_degrees() {
        let e1 = build(5, 2, GroupSpec::Cyclic(2), &[(1, 4)], 1);
        for c in hom_d_spot_check(&e1, 2).unwrap() {
            assert_eq!(c.passed(), Some(true), "{c:?}");
        }
    }
}
