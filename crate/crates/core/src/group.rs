//! Finite groups as Cayley tables, F_p-valued linear characters and
//! conjugacy bookkeeping.
//!
//! Element indexing per constructor:
//! - cyclic of order m: `g^k` is index `k`;
//! - dihedral of order 2m: `r^k s^e` is index `k + m*e` (so S3 is dihedral 6);
//! - direct product: `(a, b)` is index `a * |H| + b`, left factor slowest.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};

/// Exhaustive associativity check up to this order, sampled above.
const EXHAUSTIVE_ASSOC_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of the given order (2m, symmetries of an m-gon).
    Dihedral(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

impl FinGroup {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        match spec {
            GroupSpec::Cyclic(m) => {
                let m = *m;
                if m == 0 {
                    return Err(Error::InvalidTable("cyclic group of order 0".into()));
                }
                let rows: Vec<Vec<usize>> =
                    (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
                let labels = (0..m)
                    .map(|k| if k == 0 { "e".into() } else { power_label("g", k) })
                    .collect();
                Self::from_table_labeled(rows, labels)
            }
            GroupSpec::Dihedral(order) => {
                let order = *order;
                if order < 2 || order % 2 != 0 {
                    return Err(Error::InvalidTable(format!("no dihedral group of order {order}")));
                }
                let m = order / 2;
                let split = |i: usize| (i % m, i / m);
                let rows: Vec<Vec<usize>> = (0..order)
                    .map(|x| {
                        let (a, b) = split(x);
                        (0..order)
                            .map(|y| {
                                let (c, d) = split(y);
                                let rot = if b == 0 { (a + c) % m } else { (a + m - c) % m };
                                rot + m * ((b + d) % 2)
                            })
                            .collect()
                    })
                    .collect();
                let labels = (0..order)
                    .map(|x| {
                        let (a, b) = split(x);
                        let s = format!("{}{}", power_label("r", a), if b == 1 { "s" } else { "" });
                        if s.is_empty() { "e".into() } else { s }
                    })
                    .collect();
                Self::from_table_labeled(rows, labels)
            }
            GroupSpec::Product(g, h) => {
                let g = Self::new(g)?;
                let h = Self::new(h)?;
                Ok(g.direct_product(&h))
            }
            GroupSpec::Table(rows) => {
                let labels = (0..rows.len()).map(|i| format!("g{i}")).collect();
                Self::from_table_labeled(rows.clone(), labels)
            }
        }
    }

    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(&GroupSpec::Table(rows))
    }

    fn from_table_labeled(rows: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(Error::InvalidTable(format!("row {i} has length {}", r.len())));
            }
            let mut seen = vec![false; order];
            for &x in r {
                if x >= order || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTable(format!("row {i} is not a permutation")));
                }
            }
            table.extend_from_slice(r);
        }
        for c in 0..order {
            let mut seen = vec![false; order];
            for r in 0..order {
                if std::mem::replace(&mut seen[table[r * order + c]], true) {
                    return Err(Error::InvalidTable(format!("column {c} is not a permutation")));
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        let inverses = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| table[x * order + y] == identity)
                    .expect("latin square has inverses")
            })
            .collect();
        let g = FinGroup {
            order,
            table,
            identity,
            inverses,
            labels,
        };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= EXHAUSTIVE_ASSOC_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidTable(format!("({a}{b}){c} != {a}({b}{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6772_6f75_70);
            for _ in 0..20_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::InvalidTable(format!("({a}{b}){c} != {a}({b}{c})")));
                }
            }
        }
        Ok(())
    }

    pub fn direct_product(&self, other: &FinGroup) -> FinGroup {
        let (m, n) = (self.order, other.order);
        let rows: Vec<Vec<usize>> = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| self.mul(x / n, y / n) * n + other.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        let labels = (0..m * n)
            .map(|x| format!("({},{})", self.labels[x / n], other.labels[x % n]))
            .collect();
        Self::from_table_labeled(rows, labels).expect("product of groups is a group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// `h g h^{-1}`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn is_central(&self, g: usize) -> bool {
        self.elements().all(|h| self.mul(g, h) == self.mul(h, g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|g| self.is_central(g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        self.elements().filter(|&h| self.mul(g, h) == self.mul(h, g)).collect()
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([self.identity]);
        seen[self.identity] = true;
        while let Some(a) = queue.pop_front() {
            for &s in gens {
                let b = self.mul(a, s);
                if !std::mem::replace(&mut seen[b], true) {
                    queue.push_back(b);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }

    /// Greedy generating set: smallest indices not already generated.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = vec![self.identity];
        for g in self.elements() {
            if sub.len() == self.order {
                break;
            }
            if sub.binary_search(&g).is_err() {
                gens.push(g);
                sub = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    pub fn conjugacy_classes(&self) -> ConjClasses {
        let mut class_of = vec![usize::MAX; self.order];
        let mut members = Vec::new();
        for g in self.elements() {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = members.len();
            let mut class: Vec<usize> = self.elements().map(|h| self.conjugate(g, h)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                class_of[c] = id;
            }
            members.push(class);
        }
        let representatives = members.iter().map(|c| c[0]).collect();
        ConjClasses {
            class_of,
            representatives,
            members,
        }
    }

    /// Conjugacy classes of the subgroup `sub` under conjugation by `sub` itself.
    pub fn classes_within(&self, sub: &[usize]) -> usize {
        let mut seen = vec![false; self.order];
        let mut count = 0;
        for &g in sub {
            if seen[g] {
                continue;
            }
            count += 1;
            for &h in sub {
                seen[self.conjugate(g, h)] = true;
            }
        }
        count
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClasses {
    pub class_of: Vec<usize>,
    /// Minimal element index of each class; classes are ordered by it.
    pub representatives: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl ConjClasses {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A homomorphism G -> F_p^x, as its full value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<Scalar>,
}

impl Character {
    pub fn trivial(group: &FinGroup) -> Self {
        Character {
            values: vec![Scalar::ONE; group.order()],
        }
    }

    /// Extends values on a generating set to all of G, then validates the
    /// homomorphism property on every pair.
    pub fn from_generator_values(
        field: PrimeField,
        group: &FinGroup,
        assignments: &[(usize, Scalar)],
    ) -> Result<Self> {
        let n = group.order();
        let mut values: Vec<Option<Scalar>> = vec![None; n];
        values[group.identity()] = Some(Scalar::ONE);
        for &(g, v) in assignments {
            if g >= n {
                return Err(Error::NotAHomomorphism(format!("element {g} out of range")));
            }
            if v.is_zero() {
                return Err(Error::NotAHomomorphism(format!("chi({}) = 0", group.label(g))));
            }
        }
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(a) = queue.pop_front() {
            let va = values[a].expect("queued elements have values");
            for &(s, vs) in assignments {
                let b = group.mul(a, s);
                let vb = field.mul(va, vs);
                match values[b] {
                    None => {
                        values[b] = Some(vb);
                        queue.push_back(b);
                    }
                    Some(old) if old != vb => {
                        return Err(Error::NotAHomomorphism(format!(
                            "conflicting values {old} and {vb} at {}",
                            group.label(b)
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        if let Some(missing) = values.iter().position(|v| v.is_none()) {
            return Err(Error::NotAHomomorphism(format!(
                "assigned elements do not generate the group ({} unreachable)",
                group.label(missing)
            )));
        }
        let ch = Character {
            values: values.into_iter().map(|v| v.expect("checked")).collect(),
        };
        ch.validate(field, group)?;
        Ok(ch)
    }

    fn validate(&self, field: PrimeField, group: &FinGroup) -> Result<()> {
        for g in group.elements() {
            for h in group.elements() {
                if self.values[group.mul(g, h)] != field.mul(self.values[g], self.values[h]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "chi({}{}) != chi({})chi({})",
                        group.label(g),
                        group.label(h),
                        group.label(g),
                        group.label(h)
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn value(&self, g: usize) -> Scalar {
        self.values[g]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// g -> chi(g)^j
    pub fn power(&self, field: PrimeField, j: i64) -> Character {
        Character {
            values: self
                .values
                .iter()
                .map(|&v| field.pow(v, j).expect("character values are units"))
                .collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == Scalar::ONE)
    }

    /// Order of the character in Hom(G, F_p^x).
    pub fn order(&self, field: PrimeField) -> u64 {
        let mut k = 1;
        while !self.power(field, k as i64).is_trivial() {
            k += 1;
        }
        k
    }

    pub fn kernel(&self, group: &FinGroup) -> KernelData {
        let elements: Vec<usize> = group.elements().filter(|&g| self.values[g] == Scalar::ONE).collect();
        let classes = group.conjugacy_classes();
        let g_classes_in_kernel: Vec<usize> = (0..classes.len())
            .filter(|&c| classes.members[c].iter().all(|&g| self.values[g] == Scalar::ONE))
            .collect();
        KernelData {
            n_class_count: group.classes_within(&elements),
            elements,
            g_classes_in_kernel,
        }
    }
}

/// N = ker(chi) with its class combinatorics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelData {
    pub elements: Vec<usize>,
    /// Indices (into [`FinGroup::conjugacy_classes`]) of G-classes inside N.
    pub g_classes_in_kernel: Vec<usize>,
    /// Number of N-conjugacy classes of N, i.e. dim Z(kN).
    pub n_class_count: usize,
}

impl KernelData {
    pub fn is_normal_in(&self, group: &FinGroup) -> bool {
        self.elements
            .iter()
            .all(|&n| group.elements().all(|h| self.elements.binary_search(&group.conjugate(n, h)).is_ok()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_s3() -> FinGroup {
        FinGroup::new(&GroupSpec::Product(
            Box::new(GroupSpec::Cyclic(4)),
            Box::new(GroupSpec::Dihedral(6)),
        ))
        .unwrap()
    }

    #[test]
    fn constructors() {
        let c4 = FinGroup::new(&GroupSpec::Cyclic(4)).unwrap();
        assert_eq!(c4.order(), 4);
        assert_eq!(c4.conjugacy_classes().len(), 4);
        assert_eq!(c4.label(3), "g^3");
        let d8 = FinGroup::new(&GroupSpec::Dihedral(8)).unwrap();
        assert_eq!(d8.conjugacy_classes().len(), 5);
        assert_eq!(d8.label(5), "rs");
        assert_eq!(z4_s3().order(), 24);
        assert!(!z4_s3().is_abelian());
    }

    #[test]
    fn bad_tables_are_rejected() {
        assert!(matches!(
            FinGroup::from_table(vec![vec![0, 1], vec![0, 1]]),
            Err(Error::InvalidTable(_))
        ));
        // Latin square with identity 0 that is not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FinGroup::from_table(t), Err(Error::InvalidTable(_))));
        let c3 = FinGroup::from_table(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        assert_eq!(c3.inv(1), 2);
    }

    #[test]
    fn conjugacy_in_dihedral_8() {
        let d8 = FinGroup::new(&GroupSpec::Dihedral(8)).unwrap();
        let cc = d8.conjugacy_classes();
        let r = 1;
        assert_eq!(cc.members[cc.class_of[r]], vec![1, 3]);
        assert_eq!(d8.centralizer(r).len(), 4);
        for g in d8.elements() {
            assert_eq!(cc.members[cc.class_of[g]].len() * d8.centralizer(g).len(), 8);
        }
        let c4 = FinGroup::new(&GroupSpec::Cyclic(4)).unwrap();
        assert!(c4.conjugacy_classes().members.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn characters() {
        let k = PrimeField::new(5).unwrap();
        let c4 = FinGroup::new(&GroupSpec::Cyclic(4)).unwrap();
        let chi = Character::from_generator_values(k, &c4, &[(1, k.elem(2))]).unwrap();
        assert_eq!(chi.values(), &[1, 2, 4, 3].map(|v| k.elem(v)));
        let triv = Character::from_generator_values(k, &c4, &[(1, Scalar::ONE)]).unwrap();
        assert!(triv.is_trivial());
        let c2 = FinGroup::new(&GroupSpec::Cyclic(2)).unwrap();
        assert!(matches!(
            Character::from_generator_values(k, &c2, &[(1, k.elem(2))]),
            Err(Error::NotAHomomorphism(_))
        ));
        assert!(chi.power(k, chi.order(k) as i64).is_trivial());
        assert_eq!(chi.order(k), 4);
    }

    #[test]
    fn kernels() {
        let k = PrimeField::new(5).unwrap();
        let c4 = FinGroup::new(&GroupSpec::Cyclic(4)).unwrap();
        let chi = Character::from_generator_values(k, &c4, &[(1, k.elem(2))]).unwrap();
        let ker = chi.kernel(&c4);
        assert_eq!(ker.elements, vec![0]);
        assert_eq!(ker.g_classes_in_kernel.len(), 1);
        let ker = Character::trivial(&c4).kernel(&c4);
        assert_eq!(ker.elements.len(), 4);

        let k13 = PrimeField::new(13).unwrap();
        let g = z4_s3();
        // (a, e) = 6, (e, r) = 1, (e, s) = 3
        let chi = Character::from_generator_values(
            k13,
            &g,
            &[(6, k13.elem(5)), (1, Scalar::ONE), (3, k13.elem(-1))],
        )
        .unwrap();
        let ker = chi.kernel(&g);
        assert_eq!(ker.elements.len(), 6);
        assert_eq!(ker.g_classes_in_kernel.len(), 3);
        assert_eq!(ker.n_class_count, 3);
        assert!(ker.is_normal_in(&g));
    }

    #[test]
    fn class_sums_have_index_many_terms() {
        let g = z4_s3();
        let cc = g.conjugacy_classes();
        for x in g.elements() {
            assert_eq!(cc.members[cc.class_of[x]].len(), g.order() / g.centralizer(x).len());
        }
        assert_eq!(g.subgroup_generated(&g.generators()).len(), 24);
    }
}
