//! HH^*(B) as Ext_B(k, B^ad): B acts on itself by the adjoint action and k is
//! resolved by copies of A with maps ·x (odd degrees) and ·x^{n-1} (even
//! degrees), where g acts on degree m by g·x^i = χ(g)^{e(m)+i} x^i.

use super::RankOneData;
use crate::algebra::{hom_module_space_generated, ModuleOverAlgebra};
use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};
use crate::sparse::SparseMatrix;

/// Ext dims of one class summand span{x^i c : c in the class}, together with
/// its split at j: span over i ≤ j plus span over i > j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSummand {
    pub representative: String,
    pub class_size: usize,
    /// Smallest j with χ(rep) = χ(g1)^{-j}, else n - 1.
    pub j: usize,
    pub dims: Vec<usize>,
    pub lower_dims: Vec<usize>,
    pub upper_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointRoute {
    pub dims: Vec<usize>,
    /// One per conjugacy class of G, ordered by minimal representative.
    pub summands: Vec<ClassSummand>,
}

/// ad(x) and ad(g) on B.
fn ad_generators(r: &RankOneData) -> (Matrix, Vec<Matrix>) {
    let f = r.field;
    let n = r.n;
    let dim = r.dim_b();
    let group = r.group();
    let mut ad_x = Matrix::zeros(f, dim, dim);
    for h in group.elements() {
        for i in 0..n - 1 {
            // (1 - χ(g1)^i χ(h)) x^{i+1} h
            let c = f.sub(Scalar::ONE, f.mul(r.chi_pow(r.g1, i as i64), r.chi().value(h)));
            ad_x.set(r.b_index(i + 1, h), r.b_index(i, h), c);
        }
    }
    let ad_g = group
        .elements()
        .map(|g| {
            let mut m = Matrix::zeros(f, dim, dim);
            for h in group.elements() {
                for i in 0..n {
                    m.set(r.b_index(i, group.conjugate(h, g)), r.b_index(i, h), r.chi_pow(g, i as i64));
                }
            }
            m
        })
        .collect();
    (ad_x, ad_g)
}

/// Module over B from the images of x and of every g, extended by
/// x^i g -> X^i G.
fn module_from(r: &RankOneData, dim: usize, x: &Matrix, g: &[Matrix]) -> Result<ModuleOverAlgebra> {
    let mut xp = vec![Matrix::identity(r.field, dim)];
    for i in 1..r.n {
        xp.push(xp[i - 1].mul(x)?);
    }
    let mut actions = vec![Matrix::zeros(r.field, dim, dim); r.dim_b()];
    for h in r.group().elements() {
        for i in 0..r.n {
            actions[r.b_index(i, h)] = xp[i].mul(&g[h])?;
        }
    }
    ModuleOverAlgebra::new(r.b(), dim, actions)
}

fn restrict(m: &Matrix, idx: &[usize]) -> Matrix {
    let mut out = Matrix::zeros(m.field(), idx.len(), idx.len());
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            out.set(a, b, m.get(i, j));
        }
    }
    out
}

struct Resolution {
    modules: Vec<ModuleOverAlgebra>,
    /// maps[m]: P_{m+1} -> P_m.
    maps: Vec<Matrix>,
}

fn resolution_of_k(r: &RankOneData, top: usize) -> Result<Resolution> {
    let f = r.field;
    let n = r.n;
    let mut x = Matrix::zeros(f, n, n);
    for i in 0..n - 1 {
        x.set(i + 1, i, Scalar::ONE);
    }
    let mut xn1 = Matrix::zeros(f, n, n);
    xn1.set(n - 1, 0, Scalar::ONE);
    let modules = (0..=top)
        .map(|m| {
            let e = r.twist_exponent(m);
            let g: Vec<Matrix> = r
                .group()
                .elements()
                .map(|g| {
                    let mut d = Matrix::zeros(f, n, n);
                    for i in 0..n {
                        d.set(i, i, r.chi_pow(g, e + i as i64));
                    }
                    d
                })
                .collect();
            module_from(r, n, &x, &g)
        })
        .collect::<Result<Vec<_>>>()?;
    // P_{m+1} -> P_m is ·x out of odd degrees and ·x^{n-1} out of even ones.
    let maps: Vec<Matrix> = (1..=top).map(|m| if m % 2 == 1 { x.clone() } else { xn1.clone() }).collect();
    for (m, d) in maps.iter().enumerate() {
        for a in 0..r.dim_b() {
            if d.mul(modules[m + 1].action(a))? != modules[m].action(a).mul(d)? {
                return Err(Error::InvalidStructure(format!("resolution map out of degree {} is not B-linear", m + 1)));
            }
        }
    }
    Ok(Resolution { modules, maps })
}

/// Cohomology of Hom_B(P_*, M) in degrees 0..=max_degree.
fn ext_dims(r: &RankOneData, res: &Resolution, target: &ModuleOverAlgebra, max_degree: usize) -> Result<Vec<usize>> {
    let f = r.field;
    let gens: Vec<usize> = std::iter::once(r.b_index(1, r.group().identity()))
        .chain(r.group().generators().into_iter().map(|g| r.b_index(0, g)))
        .collect();
    let homs: Vec<Subspace> = res
        .modules
        .iter()
        .map(|p| hom_module_space_generated(p, target, &gens))
        .collect::<Result<Vec<_>>>()?;
    let dp = r.n;
    let dm = target.dim();
    let mut diffs = Vec::new();
    for (m, d) in res.maps.iter().enumerate() {
        let mut cols = SparseMatrix::builder(f, homs[m + 1].dim());
        for v in homs[m].vectors() {
            let phi = Matrix::from_row_vectors(f, dp, &v.chunks(dp).map(|c| c.to_vec()).collect::<Vec<_>>())?;
            let pulled: Vec<Scalar> = phi.mul(d)?.row_vectors().concat();
            let coords = homs[m + 1]
                .coordinates(&pulled)?
                .ok_or_else(|| Error::InvalidStructure(format!("pullback leaves Hom in degree {}", m + 1)))?;
            let mut row: Vec<(usize, Scalar)> = coords.into_iter().enumerate().filter(|e| !e.1.is_zero()).collect();
            cols.push_row(&mut row);
        }
        diffs.push(cols.finish().transpose());
    }
    debug_assert_eq!(dm * dp, homs[0].ambient_dim());
    let complex = CochainComplex::new(f, homs.iter().map(|h| h.dim()).collect(), diffs)?;
    (0..=max_degree).map(|m| Ok(complex.cohomology(m)?.dim())).collect()
}

pub fn adjoint_route(r: &RankOneData, max_degree: usize) -> Result<AdjointRoute> {
    let group = r.group();
    let n = r.n;
    let (ad_x, ad_g) = ad_generators(r);
    let res = resolution_of_k(r, max_degree + 1)?;
    let full = module_from(r, r.dim_b(), &ad_x, &ad_g)?;
    let dims = ext_dims(r, &res, &full, max_degree)?;

    let classes = group.conjugacy_classes();
    let zeta = r.zeta;
    let mut summands = Vec::new();
    for (c, members) in classes.members.iter().enumerate() {
        let rep = classes.representatives[c];
        let chi_rep = r.chi().value(rep);
        let j = (0..n)
            .find(|&j| r.field.mul(chi_rep, r.field.pow(zeta, j as i64).expect("zeta is a unit")) == Scalar::ONE)
            .unwrap_or(n - 1);
        let part = |lo: usize, hi: usize| -> Result<Vec<usize>> {
            let idx: Vec<usize> = members.iter().flat_map(|&h| (lo..hi).map(move |i| r.b_index(i, h))).collect();
            if idx.is_empty() {
                return Ok(vec![0; max_degree + 1]);
            }
            let mut idx = idx;
            idx.sort_unstable();
            let x = restrict(&ad_x, &idx);
            let g: Vec<Matrix> = ad_g.iter().map(|m| restrict(m, &idx)).collect();
            ext_dims(r, &res, &module_from(r, idx.len(), &x, &g)?, max_degree)
        };
        let summand = ClassSummand {
            representative: group.label(rep).to_string(),
            class_size: members.len(),
            j,
            dims: part(0, n)?,
            lower_dims: part(0, j + 1)?,
            upper_dims: part(j + 1, n)?,
        };
        let split_ok = summand
            .dims
            .iter()
            .zip(summand.lower_dims.iter().zip(&summand.upper_dims))
            .all(|(&d, (&a, &b))| d == a + b);
        if !split_ok {
            return Err(Error::InvalidStructure(format!(
                "split of the summand at {} does not add up",
                summand.representative
            )));
        }
        summands.push(summand);
    }
    for m in 0..=max_degree {
        let total: usize = summands.iter().map(|s| s.dims[m]).sum();
        if total != dims[m] {
            return Err(Error::InvalidStructure(format!("summands do not add up in degree {m}")));
        }
    }
    Ok(AdjointRoute { dims, summands })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::group::{Character, FinGroup, GroupSpec};
    use crate::rankone::bg_complex;

    fn build(p: u64, n: usize, spec: GroupSpec, chi: &[(usize, i64)], g1: usize) -> RankOneData {
        let k = PrimeField::new(p).unwrap();
        let g = FinGroup::new(&spec).unwrap();
        let vals: Vec<(usize, Scalar)> = chi.iter().map(|&(e, v)| (e, k.elem(v))).collect();
        let c = Character::from_generator_values(k, &g, &vals).unwrap();
        RankOneData::new(k, n, &g, &c, g1).unwrap()
    }

    #[test]
    fn adjoint_formulas() {
        let r = build(7, 3, GroupSpec::Cyclic(3), &[(1, 2)], 1);
        let (ad_x, ad_g) = ad_generators(&r);
        // ad g (x h) = χ(g) x h in an abelian group.
        let (xi, g) = (r.b_index(1, 2), 1);
        assert_eq!(ad_g[g].get(xi, xi), r.field.elem(2));
        // ad x (x^0 e) = 0 and ad x (x g) = (1 - ζ χ(g)) x^2 g.
        assert!(ad_x.column(r.b_index(0, 0)).iter().all(|c| c.is_zero()));
        let expect = r.field.sub(Scalar::ONE, r.field.elem(4));
        assert_eq!(ad_x.get(r.b_index(2, 1), r.b_index(1, 1)), expect);
    }

    #[test]
    fn agrees_with_bg() {
        for r in [
            build(5, 2, GroupSpec::Cyclic(2), &[(1, 4)], 1),
            build(5, 2, GroupSpec::Cyclic(4), &[(1, 2)], 2),
        ] {
            let route = adjoint_route(&r, 5).unwrap();
            assert_eq!(route.dims, bg_complex(&r, 5).unwrap().dims());
            assert_eq!(route.summands.len(), r.group().conjugacy_classes().len());
        }
    }
}
