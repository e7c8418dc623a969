//! Hom_{A^e}(P_m, B)^G with P_m the small resolution: every degree is a copy
//! of B, the differential out of an even degree is b -> xb - bx, out of an odd
//! degree b -> Σ_j x^{n-1-j} b x^j, and G acts in degree m by
//! g·b = χ(g)^{-e(m)} g b g^{-1}.

use super::RankOneData;
use crate::algebra::MonomialAction;
use crate::complex::{CochainComplex, DegreeCohomology, InvariantComplex};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::sparse::{SparseMatrix, SparseVec};

#[derive(Clone, Debug)]
pub struct BgComplex {
    /// Invariant subcomplex, built one degree past `max_degree`.
    pub invariant: InvariantComplex,
    max_degree: usize,
    cohomology: Vec<DegreeCohomology>,
}

/// Twisted conjugation of degree m on B as a monomial action.
pub(crate) fn twisted_conjugation(r: &RankOneData, m: usize) -> Result<MonomialAction> {
    let group = r.group();
    let n = r.n;
    let e = r.twist_exponent(m);
    MonomialAction::new(group, r.field, r.dim_b(), |g, idx| {
        let (i, h) = (idx % n, idx / n);
        (r.b_index(i, group.conjugate(h, g)), r.chi_pow(g, i as i64 - e))
    })
}

fn differential(r: &RankOneData, from_degree: usize) -> SparseMatrix {
    let f = r.field;
    let b = r.b();
    let dim = r.dim_b();
    let e = r.group().identity();
    let xp: Vec<SparseVec> = (0..r.n).map(|i| vec![(r.b_index(i, e), Scalar::ONE)]).collect();
    // Columns are images of basis vectors; assemble the transpose row by row.
    let mut cols = SparseMatrix::builder(f, dim);
    for j in 0..dim {
        let basis = vec![(j, Scalar::ONE)];
        let mut img = if from_degree % 2 == 0 {
            let mut v = b.mul_sparse(&xp[1], &basis);
            for (t, c) in b.mul_sparse(&basis, &xp[1]) {
                v.push((t, f.neg(c)));
            }
            v
        } else {
            let mut v = SparseVec::new();
            for k in 0..r.n {
                let left = b.mul_sparse(&xp[r.n - 1 - k], &basis);
                v.extend(b.mul_sparse(&left, &xp[k]));
            }
            v
        };
        cols.push_row(&mut img);
    }
    cols.finish().transpose()
}

/// Builds the invariant complex through degree `max_degree + 1` and its
/// cohomology through `max_degree`.
pub fn bg_complex(r: &RankOneData, max_degree: usize) -> Result<BgComplex> {
    let top = max_degree + 1;
    let dims = vec![r.dim_b(); top + 1];
    let diffs = (0..top).map(|m| differential(r, m)).collect();
    let complex = CochainComplex::new(r.field, dims, diffs)?;
    let actions = (0..=top).map(|m| twisted_conjugation(r, m)).collect::<Result<Vec<_>>>()?;
    let invariant = InvariantComplex::from_monomial(&complex, r.group(), &actions)?;
    let cohomology = (0..=max_degree)
        .map(|m| invariant.complex.cohomology(m))
        .collect::<Result<Vec<_>>>()?;
    Ok(BgComplex {
        invariant,
        max_degree,
        cohomology,
    })
}

impl BgComplex {
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dims(&self) -> Vec<usize> {
        self.cohomology.iter().map(|c| c.dim()).collect()
    }

    pub fn cohomology(&self, m: usize) -> Result<&DegreeCohomology> {
        self.cohomology.get(m).ok_or(Error::DegreeOutOfRange {
            degree: m,
            max: self.max_degree,
        })
    }

    /// Cohomology basis as elements of B.
    pub fn representatives(&self, m: usize) -> Result<Vec<Vec<Scalar>>> {
        let h = self.cohomology(m)?;
        Ok((0..h.dim())
            .map(|i| self.invariant.to_ambient(m, &h.representative(i)))
            .collect())
    }

    /// Class coordinates of an invariant cocycle given as an element of B.
    pub fn class_coordinates(&self, m: usize, b: &[Scalar]) -> Result<Vec<Scalar>> {
        let h = self.cohomology(m)?;
        let coords = self.invariant.from_ambient(m, b)?;
        h.class_coordinates(&coords)
    }

    pub fn class_equal(&self, m: usize, a: &[Scalar], b: &[Scalar]) -> Result<bool> {
        Ok(self.class_coordinates(m, a)? == self.class_coordinates(m, b)?)
    }

    /// Degrees where the computed dimension differs from the closed form.
    pub fn closed_form_violations(&self, r: &RankOneData) -> Vec<usize> {
        self.dims()
            .iter()
            .enumerate()
            .filter(|&(m, &d)| d != r.closed_form_dim(m))
            .map(|(m, _)| m)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::group::{Character, FinGroup, GroupSpec};

    fn build(p: u64, n: usize, spec: GroupSpec, chi: &[(usize, i64)], g1: usize) -> RankOneData {
        let k = PrimeField::new(p).unwrap();
        let g = FinGroup::new(&spec).unwrap();
        let vals: Vec<(usize, Scalar)> = chi.iter().map(|&(e, v)| (e, k.elem(v))).collect();
        let c = Character::from_generator_values(k, &g, &vals).unwrap();
        RankOneData::new(k, n, &g, &c, g1).unwrap()
    }

    #[test]
    fn sweedler_dims() {
        let r = build(5, 2, GroupSpec::Cyclic(2), &[(1, 4)], 1);
        let bg = bg_complex(&r, 5).unwrap();
        assert_eq!(bg.dims(), vec![1; 6]);
        assert!(bg.closed_form_violations(&r).is_empty());
    }

    #[test]
    fn gap_pattern() {
        let r = build(5, 2, GroupSpec::Cyclic(4), &[(1, 2)], 2);
        let bg = bg_complex(&r, 7).unwrap();
        assert_eq!(bg.dims(), vec![1, 1, 0, 0, 1, 1, 0, 0]);
    }

    #[test]
    fn nonabelian_dims() {
        let spec = GroupSpec::Product(Box::new(GroupSpec::Cyclic(4)), Box::new(GroupSpec::Dihedral(6)));
        let r = build(13, 4, spec, &[(6, 5), (1, 1), (3, 12)], 6);
        let bg = bg_complex(&r, 6).unwrap();
        assert_eq!(bg.dims(), vec![3; 7]);
        assert!(bg.closed_form_violations(&r).is_empty());
    }

    #[test]
    fn class_sums_are_degree_zero_classes() {
        let r = build(5, 2, GroupSpec::Cyclic(2), &[(1, 4)], 1);
        let bg = bg_complex(&r, 1).unwrap();
        let (_, one) = &r.kernel_class_sums()[0];
        assert_eq!(bg.class_coordinates(0, one).unwrap().len(), 1);
        assert!(bg.class_coordinates(1, &r.times_x(one)).unwrap().iter().any(|c| !c.is_zero()));
    }
}
