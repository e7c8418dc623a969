//! Lifting small-complex cocycles to the normalized bar complex of B. For
//! grouplike coefficients the lift is
//! f̃(a_1 g_1 ⊗ … ⊗ a_m g_m) = F(a_1 ⊗ ^{g_1}a_2 ⊗ … ⊗ ^{g_1⋯g_{m-1}}a_m)·g_1⋯g_m
//! where F(w) = (f∘ψ_m)(1 ⊗ w ⊗ 1).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hochschild::BarComplex;
use crate::linalg::Matrix;
use super::ExtDComplex;
use crate::rankone::{bg_complex, BgComplex, ChainMaps, RankOneData};

/// f̃ as a cochain of `bar`, the normalized bar complex of B with coefficients in B.
pub fn lift_cocycle_to_bar(
    r: &RankOneData,
    bg: &BgComplex,
    maps: &ChainMaps,
    bar: &BarComplex,
    f: &[Scalar],
    m: usize,
) -> Result<Vec<Scalar>> {
    let coords = bg.invariant.from_ambient(m, f)?;
    if !bg.invariant.complex.is_cocycle(m, &coords)? {
        return Err(Error::NotACocycle { degree: m });
    }
    if m > maps.max_degree() {
        return Err(Error::DegreeOutOfRange {
            degree: m,
            max: maps.max_degree(),
        });
    }
    if bar.coefficient_dim() != r.dim_b() || !bar.is_normalized() {
        return Err(Error::DimensionMismatch {
            expected: r.dim_b(),
            found: bar.coefficient_dim(),
        });
    }
    let field = r.field;
    let n = r.n;
    let group = r.group();
    let dim_b = r.dim_b();
    let slots = bar.slots();
    let e = group.identity();
    let xs: Vec<Vec<Scalar>> = (0..n).map(|i| r.b().basis_vector(r.b_index(i, e))).collect();
    let tuples = slots.len().pow(m as u32);
    let mut out = vec![Scalar::ZERO; bar.complex.dim(m)];
    for t in 0..tuples {
        let tuple = bar.tuple_of(t, m);
        let mut w = Vec::with_capacity(m);
        let mut prefix = e;
        let mut coeff = Scalar::ONE;
        for &s in &tuple {
            let (i, g) = r.smash.split(slots[s]);
            coeff = field.mul(coeff, r.chi_pow(prefix, i as i64));
            w.push(i);
            prefix = group.mul(prefix, g);
        }
        let mut value = vec![Scalar::ZERO; dim_b];
        for (idx, c) in maps.psi(&w).into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = r.b().mul(&r.b().mul(&xs[idx / n], f), &xs[idx % n]);
            for (v, x) in value.iter_mut().zip(term) {
                *v = field.mul_add(*v, c, x);
            }
        }
        let value = r.b().mul(&value, &r.b().basis_vector(r.b_index(0, prefix)));
        for (k, v) in value.into_iter().enumerate() {
            out[t * dim_b + k] = field.mul(coeff, v);
        }
    }
    Ok(out)
}

/// The comparison f -> f∘ψ from the small complex to Hom(Ā^{⊗m}, B)^G, in
/// invariant coordinates of `ext`.
pub fn transport_to_ext_d(
    r: &RankOneData,
    maps: &ChainMaps,
    ext: &ExtDComplex,
    f: &[Scalar],
    m: usize,
) -> Result<Vec<Scalar>> {
    let bar = &ext.complex.bar;
    let field = r.field;
    let n = r.n;
    let dim_b = r.dim_b();
    let e = r.group().identity();
    let xs: Vec<Vec<Scalar>> = (0..n).map(|i| r.b().basis_vector(r.b_index(i, e))).collect();
    let slots = bar.slots();
    let mut out = vec![Scalar::ZERO; bar.complex.dim(m)];
    for t in 0..slots.len().pow(m as u32) {
        let w: Vec<usize> = bar.tuple_of(t, m).iter().map(|&s| slots[s]).collect();
        for (idx, c) in maps.psi(&w).into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = r.b().mul(&r.b().mul(&xs[idx / n], f), &xs[idx % n]);
            for (k, x) in term.into_iter().enumerate() {
                out[t * dim_b + k] = field.mul_add(out[t * dim_b + k], c, x);
            }
        }
    }
    ext.complex.invariant.from_ambient(m, &out)
}

/// Per degree: lifted cocycles are cocycles, a basis of HH^m lifts to
/// independent classes of the bar complex, and lifted coboundaries are coboundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub degree: usize,
    pub dim: usize,
    pub cocycles: bool,
    pub independent: bool,
    pub coboundaries_to_coboundaries: bool,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.cocycles && self.independent && self.coboundaries_to_coboundaries
    }
}

pub fn verify_lifts(r: &RankOneData, max_degree: usize, samples: usize) -> Result<Vec<LiftReport>> {
    let bg = bg_complex(r, max_degree)?;
    let maps = ChainMaps::new(r, max_degree)?;
    let bar = BarComplex::regular(r.b(), max_degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x11f7);
    let mut reports = Vec::new();
    for m in 0..=max_degree {
        let h = bar.complex.cohomology(m)?;
        let mut cocycles = true;
        let mut rows = Vec::new();
        for f in bg.representatives(m)? {
            let lifted = lift_cocycle_to_bar(r, &bg, &maps, &bar, &f, m)?;
            cocycles &= bar.complex.is_cocycle(m, &lifted)?;
            if cocycles {
                rows.push(h.class_coordinates(&lifted)?);
            }
        }
        let independent =
            cocycles && (rows.is_empty() || Matrix::from_row_vectors(r.field, h.dim(), &rows)?.rank() == rows.len());
        let mut coboundaries_to_coboundaries = true;
        if m > 0 {
            let inv = &bg.invariant;
            let below = inv.complex.dim(m - 1);
            let bounds = bar.complex.coboundaries(m)?;
            for _ in 0..samples {
                let src: Vec<Scalar> = (0..below).map(|_| r.field.elem(rng.gen_range(0..r.field.p() as i64))).collect();
                let d = inv.complex.apply_differential(m - 1, &src)?;
                let lifted = lift_cocycle_to_bar(r, &bg, &maps, &bar, &inv.to_ambient(m, &d), m)?;
                coboundaries_to_coboundaries &= bounds.contains(&lifted)?;
            }
        }
        reports.push(LiftReport {
            degree: m,
            dim: bg.cohomology(m)?.dim(),
            cocycles,
            independent,
            coboundaries_to_coboundaries,
        });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::smashext::tests::build;

    #[test]
    fn degree_zero_lift_is_the_element() {
        let r = build(5, 2, GroupSpec::Cyclic(2), &[(1, 4)], 1);
        let bg = bg_complex(&r, 2).unwrap();
        let maps = ChainMaps::new(&r, 2).unwrap();
        let bar = BarComplex::regular(r.b(), 2).unwrap();
        let one = r.b().unit().to_vec();
        assert_eq!(lift_cocycle_to_bar(&r, &bg, &maps, &bar, &one, 0).unwrap(), one);
        let not_cocycle = r.b().basis_vector(r.b_index(0, 1));
        assert_eq!(
            lift_cocycle_to_bar(&r, &bg, &maps, &bar, &not_cocycle, 0).unwrap_err(),
            Error::NotACocycle { degree: 0 }
        );
    }

    #[test]
    fn cup_small_matches_bar_cup() {
        use crate::rankone::cup_small;
        let r = build(7, 3, GroupSpec::Cyclic(3), &[(1, 2)], 1);
        let bg = bg_complex(&r, 4).unwrap();
        let maps = ChainMaps::new(&r, 4).unwrap();
        let ext = ExtDComplex::new(&r, 4).unwrap();
        for l in 0..=4 {
            for m in 0..=4 - l {
                for a in bg.representatives(l).unwrap() {
                    for b in bg.representatives(m).unwrap() {
                        let small = cup_small(&r, &maps, &a, l, &b, m).unwrap();
                        let ta = transport_to_ext_d(&r, &maps, &ext, &a, l).unwrap();
                        let tb = transport_to_ext_d(&r, &maps, &ext, &b, m).unwrap();
                        let via_bar = ext.complex.cup(&ta, l, &tb, m).unwrap();
                        let ts = transport_to_ext_d(&r, &maps, &ext, &small, l + m).unwrap();
                        let h = ext.complex.invariant.complex.cohomology(l + m).unwrap();
                        assert!(h.class_equal(&via_bar, &ts).unwrap(), "degrees {l}, {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn sweedler_lifts() {
        let r = build(5, 2, GroupSpec::Cyclic(2), &[(1, 4)], 1);
        for rep in verify_lifts(&r, 3, 5).unwrap() {
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.dim, 1);
        }
    }
}
