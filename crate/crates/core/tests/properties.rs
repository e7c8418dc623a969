//! Property tests against independent oracles.

use hochschild_core::algebra::{group_algebra, truncated_poly};
use hochschild_core::group::{Character, FinGroup, GroupSpec};
use hochschild_core::hochschild::BarComplex;
use hochschild_core::linalg::Matrix;
use hochschild_core::rankone::{adjoint_route, bg_complex, RankOneData};
use hochschild_core::{PrimeField, Scalar};
use proptest::prelude::*;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// (p, m, n) with n | m | p - 1, so Z_m has a faithful character into F_p.
const CYCLIC_CASES: [(u64, usize, usize); 9] = [
    (5, 2, 2),
    (5, 4, 2),
    (5, 4, 4),
    (7, 3, 3),
    (7, 6, 2),
    (7, 6, 3),
    (13, 4, 2),
    (13, 6, 3),
    (13, 12, 4),
];

/// Z_m with χ(g) = ω^k and g1 = g^{m/n}; `None` when χ(g1) is not primitive.
fn cyclic_data(p: u64, m: usize, n: usize, k: usize) -> Option<RankOneData> {
    if gcd(k, n) != 1 {
        return None;
    }
    let f = PrimeField::new(p).unwrap();
    let omega = f.element_of_order(m as u64).unwrap();
    let g = FinGroup::new(&GroupSpec::Cyclic(m)).unwrap();
    let chi = Character::from_generator_values(f, &g, &[(1, f.pow(omega, k as i64).unwrap())]).unwrap();
    Some(RankOneData::new(f, n, &g, &chi, m / n).unwrap())
}

/// Closed form for Z_m by counting: |ker χ| = gcd(k, m) and χ^n has order m / gcd(nk, m).
fn cyclic_oracle(m: usize, n: usize, k: usize, degree: usize) -> usize {
    let kernel = gcd(k, m);
    let p_ord = m / gcd(n * k, m);
    if (degree / 2) % p_ord == 0 {
        kernel
    } else {
        0
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bg_matches_counting_oracle(case in 0..CYCLIC_CASES.len(), k in 1usize..12) {
        let (p, m, n) = CYCLIC_CASES[case];
        let k = 1 + (k - 1) % (m - 1).max(1);
        if let Some(r) = cyclic_data(p, m, n, k) {
            let dims = bg_complex(&r, 5).unwrap().dims();
            let want: Vec<usize> = (0..=5).map(|d| cyclic_oracle(m, n, k, d)).collect();
            prop_assert_eq!(dims, want);
        }
    }

    #[test]
    fn adjoint_agrees_with_bg(case in 0..6usize, k in 1usize..6) {
        let (p, m, n) = CYCLIC_CASES[case];
        let k = 1 + (k - 1) % (m - 1).max(1);
        if let Some(r) = cyclic_data(p, m, n, k) {
            let route = adjoint_route(&r, 4).unwrap();
            prop_assert_eq!(route.dims, bg_complex(&r, 4).unwrap().dims());
        }
    }

    #[test]
    fn rank_nullity(p in prop::sample::select(vec![3u64, 5, 7, 11]),
                    rows in 1usize..7, cols in 1usize..7, seed in any::<Vec<i64>>()) {
        let f = PrimeField::new(p).unwrap();
        let entries: Vec<Vec<i64>> = (0..rows)
            .map(|i| (0..cols).map(|j| seed.get(i * cols + j).copied().unwrap_or(0) % 3).collect())
            .collect();
        let a = Matrix::from_i64(f, &entries);
        prop_assert_eq!(a.rank() + a.kernel_basis().dim(), cols);
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn field_inverse(p in prop::sample::select(vec![3u64, 5, 7, 13, 65521]), v in 1i64..1_000_000) {
        let f = PrimeField::new(p).unwrap();
        let a = f.elem(v);
        prop_assume!(!a.is_zero());
        prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Scalar::ONE);
        prop_assert_eq!(f.pow(a, (p - 1) as i64).unwrap(), Scalar::ONE);
    }
}

/// HH of a separable algebra is its center in degree 0.
#[test]
fn group_algebras_are_separable() {
    for (p, spec, classes) in [
        (5u64, GroupSpec::Cyclic(3), 3),
        (7, GroupSpec::Dihedral(6), 3),
        (5, GroupSpec::Dihedral(8), 5),
    ] {
        let f = PrimeField::new(p).unwrap();
        let kg = group_algebra(f, &FinGroup::new(&spec).unwrap()).unwrap();
        let dims = BarComplex::regular(&kg, 2).unwrap().complex.cohomology_dims().unwrap();
        assert_eq!(dims, vec![classes, 0, 0], "{spec:?}");
    }
}

/// HH^m(k[x]/(x^n)) has dimension n for m = 0 and n - 1 above when p does not divide n.
#[test]
fn truncated_polynomials() {
    for (p, n) in [(5u64, 2usize), (5, 3), (7, 4)] {
        let a = truncated_poly(PrimeField::new(p).unwrap(), n).unwrap();
        let dims = BarComplex::regular(&a, 4).unwrap().complex.cohomology_dims().unwrap();
        let mut want = vec![n - 1; 5];
        want[0] = n;
        assert_eq!(dims, want);
    }
}

#[test]
fn kernel_classes_are_normal() {
    let f = PrimeField::new(13).unwrap();
    let g = FinGroup::new(&GroupSpec::Product(
        Box::new(GroupSpec::Cyclic(4)),
        Box::new(GroupSpec::Dihedral(6)),
    ))
    .unwrap();
    let chi = Character::from_generator_values(f, &g, &[(6, f.elem(5)), (1, f.elem(1)), (3, f.elem(12))]).unwrap();
    let ker = chi.kernel(&g);
    assert!(ker.is_normal_in(&g));
    assert_eq!(ker.elements.len(), 6);
    assert_eq!(ker.g_classes_in_kernel.len(), ker.n_class_count);
}
