//! Cup products on the small complex, computed by transporting cochains to the
//! bar complex with ψ, cupping there, and evaluating on φ(1⊗1).

use super::{bg_complex, BgComplex, ChainMaps, RankOneData};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;

/// F_a(w) = (ψ^* f_a)(w) = Σ ψ(1⊗w⊗1)_{jk} x^j a x^k.
fn transported(r: &RankOneData, maps: &ChainMaps, a: &[Scalar], w: &[usize], xs: &[Vec<Scalar>]) -> Vec<Scalar> {
    let f = r.field;
    let n = r.n;
    let mut out = vec![Scalar::ZERO; r.dim_b()];
    for (idx, c) in maps.psi(w).into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = r.b().mul(&r.b().mul(&xs[idx / n], a), &xs[idx % n]);
        for (o, t) in out.iter_mut().zip(term) {
            *o = f.mul_add(*o, c, t);
        }
    }
    out
}

/// Cup product of cochains a (degree `deg_a`) and b (degree `deg_b`) on the
/// small complex, both given as elements of B.
pub fn cup_small(
    r: &RankOneData,
    maps: &ChainMaps,
    a: &[Scalar],
    deg_a: usize,
    b: &[Scalar],
    deg_b: usize,
) -> Result<Vec<Scalar>> {
    let deg = deg_a + deg_b;
    if deg > maps.max_degree() {
        return Err(Error::DegreeOutOfRange {
            degree: deg,
            max: maps.max_degree(),
        });
    }
    let f = r.field;
    let e = r.group().identity();
    let xs: Vec<Vec<Scalar>> = (0..r.n).map(|i| r.b().basis_vector(r.b_index(i, e))).collect();
    let mut out = vec![Scalar::ZERO; r.dim_b()];
    for (exps, c) in maps.phi(deg)?.iter() {
        // φ terms all start with 1; the last factor multiplies on the right.
        let inner = &exps[1..exps.len() - 1];
        let fa = transported(r, maps, a, &inner[..deg_a], &xs);
        if fa.iter().all(|v| v.is_zero()) {
            continue;
        }
        let fb = transported(r, maps, b, &inner[deg_a..], &xs);
        let term = r.b().mul(&r.b().mul(&fa, &fb), &xs[exps[exps.len() - 1]]);
        for (o, t) in out.iter_mut().zip(term) {
            *o = f.mul_add(*o, c, t);
        }
    }
    Ok(out)
}

/// One product of canonical basis elements x^e·c with the class it should equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductEntry {
    pub left_degree: usize,
    pub left: String,
    pub right_degree: usize,
    pub right: String,
    /// Label of the expected product, "0" when it vanishes.
    pub expected: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub max_degree: usize,
    /// G-class sums of elements of N, by minimal representative.
    pub degree0_basis: Vec<String>,
    pub deg_y: usize,
    pub deg_z: usize,
    /// Canonical basis labels per degree: c, or z·c in odd degrees, times y^k.
    pub basis: Vec<Vec<String>>,
    pub table: Vec<ProductEntry>,
    pub z_squared_zero: bool,
    /// (m, cup with y is bijective HH^m -> HH^{m + deg y}).
    pub y_bijective: Vec<(usize, bool)>,
    /// a⌣b = (-1)^{|a||b|} b⌣a on every basis pair in the table.
    pub graded_commutative: bool,
    /// Number of G-classes in N, the proof-level count.
    pub g_classes_in_kernel: usize,
    /// dim Z(kN), the count in the statement.
    pub center_of_kernel_dim: usize,
}

impl RingPresentation {
    pub fn class_counts_agree(&self) -> bool {
        self.g_classes_in_kernel == self.center_of_kernel_dim
    }
}

struct Canonical {
    label: String,
    vector: Vec<Scalar>,
    /// Index into the degree-0 class sums.
    class: usize,
}

fn canonical_basis(r: &RankOneData, classes: &[(String, Vec<Scalar>)], m: usize) -> Vec<Canonical> {
    if r.closed_form_dim(m) == 0 {
        return Vec::new();
    }
    let ypow = m / (2 * r.p_ord);
    let prefix = match (ypow, m % 2) {
        (0, 0) => String::new(),
        (0, _) => "z".to_string(),
        (1, 0) => "y".to_string(),
        (1, _) => "yz".to_string(),
        (k, 0) => format!("y^{k}"),
        (k, _) => format!("y^{k}z"),
    };
    classes
        .iter()
        .enumerate()
        .map(|(k, (label, v))| Canonical {
            label: format!("{prefix}{label}"),
            vector: if m % 2 == 1 { r.times_x(v) } else { v.clone() },
            class: k,
        })
        .collect()
}

/// Identifies z (degree 1), y (degree 2·p_ord) and the degree-0 class sums,
/// and checks the full product table and the relations through `max_degree`.
pub fn ring_presentation(r: &RankOneData, max_degree: usize) -> Result<RingPresentation> {
    let deg_y = 2 * r.p_ord;
    if max_degree < deg_y + 1 {
        return Err(Error::BadParameter(format!(
            "max_degree {max_degree} must be at least 2·p_ord + 1 = {}",
            deg_y + 1
        )));
    }
    let bg = bg_complex(r, max_degree)?;
    let maps = ChainMaps::new(r, max_degree)?;
    let f = r.field;
    let classes = r.kernel_class_sums();
    let mismatch = |s: String| Err(Error::PresentationMismatch(s));

    let canon: Vec<Vec<Canonical>> = (0..=max_degree).map(|m| canonical_basis(r, &classes, m)).collect();
    for (m, basis) in canon.iter().enumerate() {
        let h = bg.cohomology(m)?;
        if h.dim() != basis.len() {
            return mismatch(format!("dim HH^{m} = {} but the canonical basis has {}", h.dim(), basis.len()));
        }
        let coords = basis
            .iter()
            .map(|c| bg.class_coordinates(m, &c.vector))
            .collect::<Result<Vec<_>>>()?;
        if !coords.is_empty() && Matrix::from_row_vectors(f, h.dim(), &coords)?.rank() != h.dim() {
            return mismatch(format!("canonical classes are dependent in degree {m}"));
        }
    }

    let mut table = Vec::new();
    let mut graded_commutative = true;
    for m1 in 0..=max_degree {
        for m2 in 0..=max_degree - m1 {
            for a in &canon[m1] {
                for b in &canon[m2] {
                    let prod = cup_small(r, &maps, &a.vector, m1, &b.vector, m2)?;
                    let (expected, label) = if m1 % 2 == 1 && m2 % 2 == 1 {
                        (vec![Scalar::ZERO; r.dim_b()], "0".to_string())
                    } else {
                        let cc = r.b().mul(&classes[a.class].1, &classes[b.class].1);
                        let v = if (m1 + m2) % 2 == 1 { r.times_x(&cc) } else { cc };
                        (v, format!("{}*{}", a.label, b.label))
                    };
                    let matches = bg.class_equal(m1 + m2, &prod, &expected)?;
                    if !matches {
                        return mismatch(format!("{}⌣{} differs from {label}", a.label, b.label));
                    }
                    let swapped = cup_small(r, &maps, &b.vector, m2, &a.vector, m1)?;
                    let sign = if m1 * m2 % 2 == 1 { f.neg(Scalar::ONE) } else { Scalar::ONE };
                    let signed: Vec<Scalar> = swapped.iter().map(|&v| f.mul(sign, v)).collect();
                    graded_commutative &= bg.class_equal(m1 + m2, &prod, &signed)?;
                    table.push(ProductEntry {
                        left_degree: m1,
                        left: a.label.clone(),
                        right_degree: m2,
                        right: b.label.clone(),
                        expected: label,
                        matches,
                    });
                }
            }
        }
    }
    if !graded_commutative {
        return mismatch("cup product is not graded commutative".into());
    }

    // z = x·1 in degree 1, y = 1 in degree deg_y.
    let unit = classes
        .iter()
        .position(|(_, v)| v[r.b_index(0, r.group().identity())] == Scalar::ONE)
        .expect("the identity class lies in N");
    let one = classes[unit].1.clone();
    let z = r.times_x(&one);
    let z2 = cup_small(r, &maps, &z, 1, &z, 1)?;
    let z_squared_zero = bg.cohomology(2)?.dim() == 0 || bg.class_coordinates(2, &z2)?.iter().all(|c| c.is_zero());
    if !z_squared_zero {
        return mismatch("z⌣z is not zero".into());
    }
    let mut y_bijective = Vec::new();
    for m in 0..=max_degree - deg_y {
        let (src, dst) = (bg.cohomology(m)?.dim(), bg.cohomology(m + deg_y)?.dim());
        let rows = bg
            .representatives(m)?
            .iter()
            .map(|v| bg.class_coordinates(m + deg_y, &cup_small(r, &maps, &one, deg_y, v, m)?))
            .collect::<Result<Vec<_>>>()?;
        let ok = src == dst && (src == 0 || Matrix::from_row_vectors(f, dst, &rows)?.rank() == dst);
        if !ok {
            return mismatch(format!("cup with y is not bijective from degree {m}"));
        }
        y_bijective.push((m, ok));
    }

    Ok(RingPresentation {
        max_degree,
        degree0_basis: classes.iter().map(|c| c.0.clone()).collect(),
        deg_y,
        deg_z: 1,
        basis: canon.iter().map(|b| b.iter().map(|c| c.label.clone()).collect()).collect(),
        table,
        z_squared_zero,
        y_bijective,
        graded_commutative,
        g_classes_in_kernel: r.kernel.g_classes_in_kernel.len(),
        center_of_kernel_dim: r.kernel.n_class_count,
    })
}

/// Cup product of two bg cohomology basis classes, as class coordinates.
pub fn cup_classes(
    r: &RankOneData,
    bg: &BgComplex,
    maps: &ChainMaps,
    (m1, i): (usize, usize),
    (m2, j): (usize, usize),
) -> Result<Vec<Scalar>> {
    let a = &bg.representatives(m1)?[i];
    let b = &bg.representatives(m2)?[j];
    bg.class_coordinates(m1 + m2, &cup_small(r, maps, a, m1, b, m2)?)
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
    fn unit_cup_is_identity() {
        let r = build(5, 2, GroupSpec::Cyclic(2), &[(1, 4)], 1);
        let bg = bg_complex(&r, 4).unwrap();
        let maps = ChainMaps::new(&r, 4).unwrap();
        let one = r.b().unit().to_vec();
        for m in 0..=4 {
            for v in bg.representatives(m).unwrap() {
                let left = cup_small(&r, &maps, &one, 0, &v, m).unwrap();
                let right = cup_small(&r, &maps, &v, m, &one, 0).unwrap();
                assert!(bg.class_equal(m, &left, &v).unwrap());
                assert!(bg.class_equal(m, &right, &v).unwrap());
            }
        }
        assert_eq!(cup_classes(&r, &bg, &maps, (1, 0), (1, 0)).unwrap(), vec![Scalar::ZERO]);
    }

    #[test]
    fn presentations() {
        let e1 = build(5, 2, GroupSpec::Cyclic(2), &[(1, 4)], 1);
        let p = ring_presentation(&e1, 6).unwrap();
        assert_eq!((p.deg_y, p.deg_z), (2, 1));
        assert!(p.table.iter().all(|e| e.matches));

        let e3 = build(5, 2, GroupSpec::Cyclic(4), &[(1, 2)], 2);
        assert_eq!(ring_presentation(&e3, 6).unwrap().deg_y, 4);

        let z2z4 = GroupSpec::Product(Box::new(GroupSpec::Cyclic(2)), Box::new(GroupSpec::Cyclic(4)));
        let e5 = build(5, 2, z2z4, &[(4, 1), (1, 2)], 2);
        let p5 = ring_presentation(&e5, 6).unwrap();
        assert_eq!(p5.degree0_basis.len(), 2);
        assert_eq!(p5.deg_y, 4);
        assert!(p5.class_counts_agree());
    }

    #[test]
    fn nonabelian_class_sums_multiply_as_in_b() {
        let spec = GroupSpec::Product(Box::new(GroupSpec::Cyclic(4)), Box::new(GroupSpec::Dihedral(6)));
        let r = build(13, 4, spec, &[(6, 5), (1, 1), (3, 12)], 6);
        let p = ring_presentation(&r, 4).unwrap();
        assert_eq!(p.degree0_basis.len(), 3);
        assert!(p.table.iter().filter(|e| e.left_degree == 2 && e.right_degree == 2).all(|e| e.matches));
        assert_eq!(p.center_of_kernel_dim, 3);
    }

    #[test]
    fn odd_cup_odd_vanishes_and_range_is_checked() {
        let r = build(7, 3, GroupSpec::Cyclic(3), &[(1, 2)], 1);
        let maps = ChainMaps::new(&r, 4).unwrap();
        let (_, one) = &r.kernel_class_sums()[0];
        let z = r.times_x(one);
        let zz = cup_small(&r, &maps, &z, 1, &z, 3).unwrap();
        assert!(zz.iter().all(|c| c.is_zero()));
        assert_eq!(
            cup_small(&r, &maps, &z, 3, &z, 3).unwrap_err(),
            Error::DegreeOutOfRange { degree: 6, max: 4 }
        );
    }
}
