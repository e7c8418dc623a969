//! Rank one data B = k[x]/(x^n) # kG with g1 central and χ(g1) a primitive
//! n-th root of unity, and the small-resolution route to HH^*(B).
//!
//! The coproduct Δ(x) = x ⊗ 1 + g1 ⊗ x only enters through the adjoint action.

mod adjoint;
mod bg;
mod chainmaps;
mod cup;
mod resolution;

pub use adjoint::{adjoint_route, AdjointRoute, ClassSummand};
pub use bg::{bg_complex, BgComplex};
pub use chainmaps::{ChainMapReport, ChainMaps, Tensor};
pub use cup::{cup_classes, cup_small, ring_presentation, ProductEntry, RingPresentation};
pub use resolution::SmallResolution;

use crate::algebra::{smash_product, truncated_poly, Algebra, SmashData};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::group::{Character, FinGroup, KernelData};

#[derive(Clone, Debug)]
pub struct RankOneData {
    pub field: PrimeField,
    pub n: usize,
    pub g1: usize,
    /// B together with G and χ.
    pub smash: SmashData,
    /// A = k[x]/(x^n).
    pub a: Algebra,
    /// χ(g1).
    pub zeta: Scalar,
    pub kernel: KernelData,
    /// Order of χ^n as a character.
    pub p_ord: usize,
}

impl RankOneData {
    pub fn new(field: PrimeField, n: usize, group: &FinGroup, chi: &Character, g1: usize) -> Result<Self> {
        if group.order() % field.p() as usize == 0 {
            return Err(Error::BadCharacteristic(format!(
                "p = {} divides |G| = {}",
                field.p(),
                group.order()
            )));
        }
        if n < 2 {
            return Err(Error::BadParameter(format!("n = {n} must be at least 2")));
        }
        if g1 >= group.order() {
            return Err(Error::BadParameter(format!("g1 = {g1} is not an element of G")));
        }
        if !group.is_central(g1) {
            return Err(Error::G1NotCentral(g1));
        }
        let zeta = chi.value(g1);
        if field.multiplicative_order(zeta)? != n as u64 {
            return Err(Error::NotPrimitiveRoot { value: zeta.value(), n });
        }
        let smash = smash_product(field, n, group, chi)?;
        let a = truncated_poly(field, n)?;
        let kernel = chi.kernel(group);
        let chi_n = chi.power(field, n as i64);
        let p_ord = chi_n.order(field) as usize;
        Ok(RankOneData {
            field,
            n,
            g1,
            smash,
            a,
            zeta,
            kernel,
            p_ord,
        })
    }

    pub fn group(&self) -> &FinGroup {
        &self.smash.group
    }

    pub fn chi(&self) -> &Character {
        &self.smash.chi
    }

    pub fn b(&self) -> &Algebra {
        &self.smash.algebra
    }

    pub fn dim_b(&self) -> usize {
        self.smash.algebra.dim()
    }

    /// Index of x^i g in B.
    pub fn b_index(&self, i: usize, g: usize) -> usize {
        self.smash.index(i, g)
    }

    /// χ(g)^e.
    pub fn chi_pow(&self, g: usize, e: i64) -> Scalar {
        self.smash.chi_pow(g, e)
    }

    /// Exponent of the degree-m twist: in for m = 2i, in + 1 for m = 2i + 1.
    pub fn twist_exponent(&self, m: usize) -> i64 {
        ((m / 2) * self.n + m % 2) as i64
    }

    /// dim HH^m(B) predicted by the closed form: the number of G-classes in N
    /// when χ^{in} is trivial (m = 2i or 2i + 1), and 0 otherwise.
    pub fn closed_form_dim(&self, m: usize) -> usize {
        if (m / 2) % self.p_ord == 0 {
            self.kernel.g_classes_in_kernel.len()
        } else {
            0
        }
    }

    /// G-class sums of elements of N, ordered by class representative, as B-vectors.
    pub fn kernel_class_sums(&self) -> Vec<(String, Vec<Scalar>)> {
        let classes = self.group().conjugacy_classes();
        self.kernel
            .g_classes_in_kernel
            .iter()
            .map(|&c| {
                let mut v = vec![Scalar::ZERO; self.dim_b()];
                for &g in &classes.members[c] {
                    v[self.b_index(0, g)] = Scalar::ONE;
                }
                (format!("[{}]", self.group().label(classes.representatives[c])), v)
            })
            .collect()
    }

    /// Left multiplication by x on B-vectors.
    pub fn times_x(&self, v: &[Scalar]) -> Vec<Scalar> {
        let x = self.b().basis_vector(self.b_index(1, self.group().identity()));
        self.b().mul(&x, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn cyclic(p: u64, n: usize, ord: usize, chi: i64, g1: usize) -> Result<RankOneData> {
        let k = PrimeField::new(p).unwrap();
        let g = FinGroup::new(&GroupSpec::Cyclic(ord)).unwrap();
        let c = Character::from_generator_values(k, &g, &[(1, k.elem(chi))]).unwrap();
        RankOneData::new(k, n, &g, &c, g1)
    }

    #[test]
    fn p_ord_examples() {
        assert_eq!(cyclic(5, 2, 2, 4, 1).unwrap().p_ord, 1);
        assert_eq!(cyclic(5, 2, 4, 2, 2).unwrap().p_ord, 2);
        assert_eq!(cyclic(7, 3, 3, 2, 1).unwrap().p_ord, 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            cyclic(5, 2, 4, 2, 1).unwrap_err(),
            Error::NotPrimitiveRoot { value: 2, n: 2 }
        );
        let k = PrimeField::new(7).unwrap();
        let s3 = FinGroup::new(&GroupSpec::Dihedral(6)).unwrap();
        let sign = Character::from_generator_values(k, &s3, &[(1, k.elem(1)), (3, k.elem(6))]).unwrap();
        assert_eq!(RankOneData::new(k, 2, &s3, &sign, 3).unwrap_err(), Error::G1NotCentral(3));
        let k3 = PrimeField::new(3).unwrap();
        let z3 = FinGroup::new(&GroupSpec::Cyclic(3)).unwrap();
        let triv = Character::trivial(&z3);
        assert!(matches!(
            RankOneData::new(k3, 2, &z3, &triv, 0),
            Err(Error::BadCharacteristic(_))
        ));
    }
}
