//! Γ = A^e ⋊ kG with (a⊗b⊗h)(c⊗d⊗l) = a ^h c ⊗ ^h d b ⊗ hl, its isomorphism
//! with 𝒟, and Hopf-Hochschild cochains Hom_Γ(A^{⊗(m+2)}, M).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bimodule_through, label_generators, tensor_power_module, MAX_HOM_UNKNOWNS};
use crate::algebra::{d_algebra_groupcase, hom_module_space_generated, tensor_mul, Algebra, Bimodule, SmashData};
use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};
use crate::sparse::{SparseMatrix, SparseVec};

#[derive(Clone, Debug)]
pub struct GammaAlgebra {
    pub algebra: Algebra,
    /// Images a⊗b⊗g -> ag ⊗ g^{-1}b in B^e.
    pub to_be: Vec<SparseVec>,
}

pub fn build_gamma(smash: &SmashData) -> Result<GammaAlgebra> {
    let f = smash.field();
    let n = smash.n;
    let nn = n * n;
    let group = &smash.group;
    let label = |i: usize| match i {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{i}"),
    };
    let labels = (0..nn * group.order())
        .map(|u| format!("{}⊗{}⊗{}", label((u % nn) / n), label(u % n), group.label(u / nn)))
        .collect();
    let mut unit = vec![Scalar::ZERO; nn * group.order()];
    unit[nn * group.identity()] = Scalar::ONE;
    let algebra = Algebra::from_fn(f, labels, unit, |u, v| {
        let (a, b, h) = ((u % nn) / n, u % n, u / nn);
        let (c, d, l) = ((v % nn) / n, v % n, v / nn);
        // a·^h c ⊗ ^h d·b ⊗ hl
        if a + c >= n || d + b >= n {
            return Vec::new();
        }
        vec![((a + c) * n + (d + b) + nn * group.mul(h, l), smash.chi_pow(h, (c + d) as i64))]
    })?;
    let b = &smash.algebra;
    let dim_b = b.dim();
    let to_be = (0..nn * group.order())
        .map(|u| {
            let (i, j, g) = ((u % nn) / n, u % n, u / nn);
            let gi = group.inv(g);
            // g^{-1} x^j = χ(g)^{-j} x^j g^{-1}
            vec![(smash.index(i, g) * dim_b + smash.index(j, gi), smash.chi_pow(g, -(j as i64)))]
        })
        .collect();
    Ok(GammaAlgebra { algebra, to_be })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaIso {
    pub dim: usize,
    pub exhaustive: bool,
    pub pairs_checked: usize,
}

/// Checks that Γ -> 𝒟, a⊗b⊗g -> (a⊗b)g, is a unital bijective algebra map and
/// that it agrees with the map ag ⊗ g^{-1}b into B^e.
pub fn gamma_iso_d(gamma: &GammaAlgebra, smash: &SmashData) -> Result<GammaIso> {
    let (d, emb) = d_algebra_groupcase(smash)?;
    let g = &gamma.algebra;
    if g.dim() != d.dim() {
        return Err(Error::IsoCheckFailed(format!("dim Γ = {} but dim 𝒟 = {}", g.dim(), d.dim())));
    }
    if g.unit() != d.unit() {
        return Err(Error::IsoCheckFailed("unit does not map to the unit".into()));
    }
    // The map is the identity on labels, hence bijective; it must also agree
    // with both embeddings into B^e.
    if gamma.to_be != emb.images {
        return Err(Error::IsoCheckFailed("Γ and 𝒟 have different images in B^e".into()));
    }
    let b = &smash.algebra;
    let b_op = b.opposite();
    let dim = g.dim();
    let check = |u: usize, v: usize| -> Result<()> {
        if g.basis_product(u, v) != d.basis_product(u, v) {
            return Err(Error::IsoCheckFailed(format!("not multiplicative on ({}, {})", g.label(u), g.label(v))));
        }
        let mut lhs = SparseVec::new();
        for &(w, c) in g.basis_product(u, v) {
            lhs.extend(gamma.to_be[w].iter().map(|&(t, x)| (t, smash.field().mul(c, x))));
        }
        crate::sparse::normalize(smash.field(), &mut lhs);
        if lhs != tensor_mul(b, &b_op, &gamma.to_be[u], &gamma.to_be[v]) {
            return Err(Error::IsoCheckFailed(format!("B^e image not multiplicative on ({}, {})", g.label(u), g.label(v))));
        }
        Ok(())
    };
    let exhaustive = dim <= 64;
    let pairs_checked = if exhaustive {
        for u in 0..dim {
            for v in 0..dim {
                check(u, v)?;
            }
        }
        dim * dim
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6a77a);
        for _ in 0..10_000 {
            check(rng.gen_range(0..dim), rng.gen_range(0..dim))?;
        }
        10_000
    };
    Ok(GammaIso {
        dim,
        exhaustive,
        pairs_checked,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfHochschild {
    pub cochain_dims: Vec<usize>,
    pub dims: Vec<usize>,
}

/// Cohomology of Hom_Γ(A^{⊗(m+2)}, M) with the differential induced by b'.
pub fn hopf_hochschild_dims(smash: &SmashData, m: &Bimodule, max_degree: usize) -> Result<HopfHochschild> {
    let f = smash.field();
    let n = smash.n;
    let gamma = build_gamma(smash)?;
    let target = bimodule_through(&gamma.algebra, &gamma.to_be, smash.algebra.dim(), m)?;
    let gens = label_generators(smash);
    let top = max_degree + 1;
    let largest = n.pow(top as u32 + 2) * m.dim();
    if largest > MAX_HOM_UNKNOWNS {
        return Err(Error::BudgetExceeded {
            entries: largest as u128,
            limit: MAX_HOM_UNKNOWNS as u128,
        });
    }
    let homs: Vec<Subspace> = (0..=top)
        .map(|deg| hom_module_space_generated(&tensor_power_module(smash, &gamma.algebra, deg + 2)?, &target, &gens))
        .collect::<Result<Vec<_>>>()?;
    let mut diffs = Vec::new();
    for deg in 0..top {
        let b = bar_prime(smash, deg + 3);
        let src = n.pow(deg as u32 + 2);
        let mut cols = SparseMatrix::builder(f, homs[deg + 1].dim());
        for v in homs[deg].vectors() {
            let phi = Matrix::from_row_vectors(f, src, &v.chunks(src).map(|c| c.to_vec()).collect::<Vec<_>>())?;
            let pulled = phi.mul(&b)?.row_vectors().concat();
            let coords = homs[deg + 1]
                .coordinates(&pulled)?
                .ok_or_else(|| Error::InvalidStructure(format!("b' pullback leaves Hom_Γ in degree {}", deg + 1)))?;
            let mut row: Vec<(usize, Scalar)> = coords.into_iter().enumerate().filter(|e| !e.1.is_zero()).collect();
            cols.push_row(&mut row);
        }
        diffs.push(cols.finish().transpose());
    }
    let cochain_dims: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
    let complex = CochainComplex::new(f, cochain_dims.clone(), diffs)?;
    let dims = (0..=max_degree)
        .map(|deg| Ok(complex.cohomology(deg)?.dim()))
        .collect::<Result<Vec<_>>>()?;
    Ok(HopfHochschild { cochain_dims, dims })
}

/// b': A^{⊗k} -> A^{⊗(k-1)}, Σ_j (-1)^j multiplying factors j and j+1.
fn bar_prime(smash: &SmashData, k: usize) -> Matrix {
    let f = smash.field();
    let n = smash.n;
    let mut m = Matrix::zeros(f, n.pow(k as u32 - 1), n.pow(k as u32));
    for col in 0..n.pow(k as u32) {
        let t = super::digits(col, n, k);
        for j in 0..k - 1 {
            if t[j] + t[j + 1] >= n {
                continue;
            }
            let mut s: Vec<usize> = t[..j].to_vec();
            s.push(t[j] + t[j + 1]);
            s.extend_from_slice(&t[j + 2..]);
            let row = s.iter().fold(0, |acc, &e| acc * n + e);
            let sign = if j % 2 == 0 { Scalar::ONE } else { f.neg(Scalar::ONE) };
            m.add_to(row, col, sign);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::smashext::tests::build;

    #[test]
    fn gamma_is_d() {
        let r = build(5, 2, GroupSpec::Cyclic(2), &[(1, 4)], 1);
        let gamma = build_gamma(&r.smash).unwrap();
        gamma.algebra.check().unwrap();
        let iso = gamma_iso_d(&gamma, &r.smash).unwrap();
        assert_eq!((iso.dim, iso.exhaustive, iso.pairs_checked), (8, true, 64));
    }

    #[test]
    fn bar_prime_squares_to_zero() {
        let r = build(7, 3, GroupSpec::Cyclic(3), &[(1, 2)], 1);
        let d4 = bar_prime(&r.smash, 4);
        let d5 = bar_prime(&r.smash, 5);
        assert!(d4.mul(&d5).unwrap().is_zero());
    }

    #[test]
    fn hopf_hochschild_equals_hochschild() {
        let e1 = build(5, 2, GroupSpec::Cyclic(2), &[(1, 4)], 1);
        let hh = hopf_hochschild_dims(&e1.smash, &Bimodule::regular(e1.b()), 3).unwrap();
        assert_eq!(hh.dims, vec![1; 4]);
        assert_eq!(hh.dims[0], e1.b().center().dim());
    }
}
