//! Left modules given by action matrices, bimodules, and Hom-spaces between modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Algebra;
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::linalg::{check_budget, Matrix, Subspace};

/// Largest `dim A^2 * dim M^3` for which the module axioms are checked on all pairs.
const EXHAUSTIVE_MODULE_WORK: usize = 50_000_000;
const SAMPLED_PAIRS: usize = 300;

/// Left module: `actions[i]` is the matrix of `e_i` acting on column vectors.
#[derive(Clone, Debug)]
pub struct ModuleOverAlgebra {
    field: PrimeField,
    algebra_fingerprint: u64,
    dim: usize,
    actions: Vec<Matrix>,
}

fn check_action_law(
    algebra: &Algebra,
    dim: usize,
    compose: impl Fn(usize, usize) -> Result<Matrix>,
    act: &[Matrix],
    what: &str,
) -> Result<()> {
    let f = algebra.field();
    let d = algebra.dim();
    let expected = |i: usize, j: usize| -> Matrix {
        let mut m = Matrix::zeros(f, dim, dim);
        for &(l, c) in algebra.basis_product(i, j) {
            m = m.add(&act[l].scale(c)).expect("same shape");
        }
        m
    };
    let check = |i: usize, j: usize| -> Result<()> {
        if compose(i, j)? != expected(i, j) {
            return Err(Error::InvalidStructure(format!(
                "{what}: action fails on ({}, {})",
                algebra.label(i),
                algebra.label(j)
            )));
        }
        Ok(())
    };
    if d * d * dim * dim * dim <= EXHAUSTIVE_MODULE_WORK {
        for i in 0..d {
            for j in 0..d {
                check(i, j)?;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x30d);
        for _ in 0..SAMPLED_PAIRS {
            check(rng.gen_range(0..d), rng.gen_range(0..d))?;
        }
    }
    let mut unit = Matrix::zeros(f, dim, dim);
    for (l, &c) in algebra.unit().iter().enumerate() {
        if !c.is_zero() {
            unit = unit.add(&act[l].scale(c))?;
        }
    }
    if unit != Matrix::identity(f, dim) {
        return Err(Error::InvalidStructure(format!("{what}: unit does not act as identity")));
    }
    Ok(())
}

fn check_shapes(algebra: &Algebra, dim: usize, actions: &[Matrix]) -> Result<()> {
    if actions.len() != algebra.dim() {
        return Err(Error::DimensionMismatch {
            expected: algebra.dim(),
            found: actions.len(),
        });
    }
    for m in actions {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.rows().max(m.cols()),
            });
        }
    }
    Ok(())
}

impl ModuleOverAlgebra {
    pub fn new(algebra: &Algebra, dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        check_shapes(algebra, dim, &actions)?;
        check_action_law(
            algebra,
            dim,
            |i, j| actions[i].mul(&actions[j]),
            &actions,
            "left module",
        )?;
        Ok(ModuleOverAlgebra {
            field: algebra.field(),
            algebra_fingerprint: algebra.fingerprint(),
            dim,
            actions,
        })
    }

    /// A acting on itself by left multiplication.
    pub fn regular(algebra: &Algebra) -> Self {
        ModuleOverAlgebra {
            field: algebra.field(),
            algebra_fingerprint: algebra.fingerprint(),
            dim: algebra.dim(),
            actions: (0..algebra.dim()).map(|i| algebra.left_mult(i)).collect(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    pub fn algebra_dim(&self) -> usize {
        self.actions.len()
    }

    pub fn same_algebra(&self, other: &ModuleOverAlgebra) -> bool {
        self.algebra_fingerprint == other.algebra_fingerprint && self.field == other.field
    }
}

/// Bimodule stored as commuting left and right actions.
#[derive(Clone, Debug)]
pub struct Bimodule {
    field: PrimeField,
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl Bimodule {
    /// `right[i]` is the matrix of `m -> m e_i`.
    pub fn new(algebra: &Algebra, dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Self> {
        check_shapes(algebra, dim, &left)?;
        check_shapes(algebra, dim, &right)?;
        check_action_law(algebra, dim, |i, j| left[i].mul(&left[j]), &left, "left action")?;
        check_action_law(algebra, dim, |i, j| right[j].mul(&right[i]), &right, "right action")?;
        let d = algebra.dim();
        let commute = |i: usize, j: usize| -> Result<()> {
            if left[i].mul(&right[j])? != right[j].mul(&left[i])? {
                return Err(Error::InvalidStructure("left and right actions do not commute".into()));
            }
            Ok(())
        };
        if d * d * dim * dim * dim <= EXHAUSTIVE_MODULE_WORK {
            for i in 0..d {
                for j in 0..d {
                    commute(i, j)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xb1);
            for _ in 0..SAMPLED_PAIRS {
                commute(rng.gen_range(0..d), rng.gen_range(0..d))?;
            }
        }
        Ok(Bimodule {
            field: algebra.field(),
            dim,
            left,
            right,
        })
    }

    pub fn regular(algebra: &Algebra) -> Self {
        let d = algebra.dim();
        Bimodule {
            field: algebra.field(),
            dim: d,
            left: (0..d).map(|i| algebra.left_mult(i)).collect(),
            right: (0..d).map(|i| algebra.right_mult(i)).collect(),
        }
    }

    /// `target` viewed as a bimodule over `source` through the algebra map whose
    /// value on basis vector i is `images[i]`.
    pub fn restricted(source: &Algebra, target: &Algebra, images: &[Vec<Scalar>]) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                found: images.len(),
            });
        }
        let left = images.iter().map(|v| target.left_mult_by(v)).collect();
        let right = images.iter().map(|v| target.right_mult_by(v)).collect();
        Bimodule::new(source, target.dim(), left, right)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    /// The same data as a left module over `enveloping` = A ⊗ A^op,
    /// with `a ⊗ b` acting as `m -> a m b`.
    pub fn as_enveloping_module(&self, enveloping: &Algebra) -> Result<ModuleOverAlgebra> {
        let d = self.left.len();
        if enveloping.dim() != d * d {
            return Err(Error::AlgebraMismatch);
        }
        let mut actions = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                actions.push(self.left[i].mul(&self.right[j])?);
            }
        }
        ModuleOverAlgebra::new(enveloping, self.dim, actions)
    }
}

/// Hom_A(M, N) as a subspace of the dim(N)·dim(M) matrices, vectorized row-major.
pub fn hom_module_space(m: &ModuleOverAlgebra, n: &ModuleOverAlgebra) -> Result<Subspace> {
    let gens: Vec<usize> = (0..m.algebra_dim()).collect();
    hom_module_space_generated(m, n, &gens)
}

/// As [`hom_module_space`] but imposing equivariance only for `generators`,
/// which must generate the algebra.
pub fn hom_module_space_generated(
    m: &ModuleOverAlgebra,
    n: &ModuleOverAlgebra,
    generators: &[usize],
) -> Result<Subspace> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field;
    let (dm, dn) = (m.dim, n.dim);
    let vars = dm * dn;
    // Constraints are eliminated one generator at a time, keeping only independent rows.
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for &a in generators {
        let rho_m = &m.actions[a];
        let rho_n = &n.actions[a];
        let rows = basis.len() + vars;
        check_budget(rows, vars)?;
        let mut c = Matrix::try_zeros(f, rows, vars)?;
        for (r, v) in basis.iter().enumerate() {
            c.row_mut(r).copy_from_slice(v);
        }
        // (f ρ_M(a) − ρ_N(a) f)[r][col] = 0
        for r in 0..dn {
            for col in 0..dm {
                let row = basis.len() + r * dm + col;
                for k in 0..dm {
                    let x = rho_m.get(k, col);
                    if !x.is_zero() {
                        c.add_to(row, r * dm + k, x);
                    }
                }
                for k in 0..dn {
                    let x = rho_n.get(r, k);
                    if !x.is_zero() {
                        c.add_to(row, k * dm + col, f.neg(x));
                    }
                }
            }
        }
        let rank = c.rref_in_place().len();
        basis = (0..rank).map(|r| c.row(r).to_vec()).collect();
    }
    let constraints = Matrix::from_row_vectors(f, vars, &basis)?;
    let hom = constraints.kernel_basis();
    for v in hom.vectors() {
        let map = Matrix::from_row_vectors(f, dm, &v.chunks(dm).map(|c| c.to_vec()).collect::<Vec<_>>())?;
        for &a in generators {
            if map.mul(&m.actions[a])? != n.actions[a].mul(&map)? {
                return Err(Error::InvalidStructure("Hom solver returned a non-equivariant map".into()));
            }
        }
    }
    Ok(hom)
}

#[cfg(test)]
mod tests {
    use super::super::{smash_product, truncated_poly};
    use super::*;
    use crate::group::{Character, FinGroup, GroupSpec};

    #[test]
    fn hom_regular_truncated() {
        let k = PrimeField::new(5).unwrap();
        let a = truncated_poly(k, 2).unwrap();
        let reg = ModuleOverAlgebra::regular(&a);
        assert_eq!(hom_module_space(&reg, &reg).unwrap().dim(), 2);
        let id: Vec<Scalar> = Matrix::identity(k, 2).row_vectors().concat();
        assert!(hom_module_space(&reg, &reg).unwrap().contains(&id).unwrap());
    }

    #[test]
    fn hom_from_free_enveloping_module() {
        let k = PrimeField::new(5).unwrap();
        let g = FinGroup::new(&GroupSpec::Cyclic(2)).unwrap();
        let chi = Character::from_generator_values(k, &g, &[(1, k.elem(4))]).unwrap();
        let b = smash_product(k, 2, &g, &chi).unwrap().algebra;
        let be = b.enveloping().unwrap();
        let free = ModuleOverAlgebra::regular(&be);
        let target = Bimodule::regular(&b).as_enveloping_module(&be).unwrap();
        assert_eq!(hom_module_space(&free, &target).unwrap().dim(), b.dim());
    }

    #[test]
    fn mismatched_algebras() {
        let k = PrimeField::new(5).unwrap();
        let a2 = ModuleOverAlgebra::regular(&truncated_poly(k, 2).unwrap());
        let a3 = ModuleOverAlgebra::regular(&truncated_poly(k, 3).unwrap());
        assert_eq!(hom_module_space(&a2, &a3).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn bad_module_rejected() {
        let k = PrimeField::new(5).unwrap();
        let a = truncated_poly(k, 2).unwrap();
        // x acting invertibly contradicts x^2 = 0.
        let acts = vec![Matrix::identity(k, 1), Matrix::identity(k, 1)];
        assert!(ModuleOverAlgebra::new(&a, 1, acts).is_err());
    }
}
