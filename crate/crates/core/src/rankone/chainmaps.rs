//! Comparison maps between the small resolution P (P_m = A^e) and the bar
//! resolution A^{⊗(m+2)} of A = k[x]/(x^n). Both are A^e-linear on the outer
//! factors, so φ_m is stored as φ_m(1⊗1) and ψ_m is evaluated on 1⊗w⊗1.

use std::collections::BTreeMap;

use super::RankOneData;
use crate::error::{Error, Result};
use crate::field::{PrimeField, Scalar};
use crate::sparse::SparseMatrix;

/// Element of A^{⊗k} in the monomial basis: exponent tuple -> coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    pub terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Tensor {
    pub fn monomial(exps: Vec<usize>) -> Self {
        let mut t = Tensor::default();
        t.terms.insert(exps, Scalar::ONE);
        t
    }

    /// Adds c·x^{e_0}⊗…; terms with an exponent ≥ n vanish.
    pub fn add(&mut self, field: PrimeField, n: usize, exps: Vec<usize>, c: Scalar) {
        if c.is_zero() || exps.iter().any(|&e| e >= n) {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(Scalar::ZERO);
        *entry = field.add(*entry, c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, Scalar)> + '_ {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    /// Position in the basis of A^{⊗k}, left factor slowest.
    pub fn index_of(exps: &[usize], n: usize) -> usize {
        exps.iter().fold(0, |acc, &e| acc * n + e)
    }
}

/// Outcome of the verification run at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapReport {
    pub max_degree: usize,
    /// +1 or -1, the sign applied to every odd-degree ψ.
    pub psi_odd_sign: i8,
    /// (degree, ψ_m∘φ_m = id) for even degrees; all are true on success.
    pub even_identity: Vec<(usize, bool)>,
    /// Recorded, not asserted.
    pub odd_identity: Vec<(usize, bool)>,
}

#[derive(Clone, Debug)]
pub struct ChainMaps {
    field: PrimeField,
    n: usize,
    max_degree: usize,
    psi_odd_sign: Scalar,
    phi: Vec<Tensor>,
    report: ChainMapReport,
}

/// Compositions i_1 + … + i_{l+1} = l(n-1) with i_1..i_l ≥ 1 and every part < n.
fn alpha_exponents(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, l: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            if left < n {
                let mut c = cur.clone();
                c.push(left);
                out.push(c);
            }
            return;
        }
        for i in 1..n.min(left + 1) {
            cur.push(i);
            go(n, l, left - i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, l, l * (n - 1), &mut Vec::new(), &mut out);
    out
}

fn phi_generator(field: PrimeField, n: usize, m: usize) -> Tensor {
    let l = m / 2;
    let mut t = Tensor::default();
    for parts in alpha_exponents(n, l) {
        let mut exps = vec![0];
        if m % 2 == 1 {
            exps.push(1);
        }
        for (k, &i) in parts.iter().enumerate() {
            exps.push(i);
            if k < l {
                exps.push(1);
            }
        }
        t.add(field, n, exps, Scalar::ONE);
    }
    t
}

impl ChainMaps {
    pub fn new(r: &RankOneData, max_degree: usize) -> Result<Self> {
        let mut last_err = None;
        for sign in [1i8, -1] {
            let mut maps = ChainMaps {
                field: r.field,
                n: r.n,
                max_degree,
                psi_odd_sign: r.field.elem(sign as i64),
                phi: (0..=max_degree).map(|m| phi_generator(r.field, r.n, m)).collect(),
                report: ChainMapReport {
                    max_degree,
                    psi_odd_sign: sign,
                    even_identity: Vec::new(),
                    odd_identity: Vec::new(),
                },
            };
            match maps.verify(r) {
                Ok(()) => return Ok(maps),
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.expect("at least one attempt"))
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn report(&self) -> &ChainMapReport {
        &self.report
    }

    /// φ_m(1⊗1) ∈ A^{⊗(m+2)}.
    pub fn phi(&self, m: usize) -> Result<&Tensor> {
        self.phi.get(m).ok_or(Error::DegreeOutOfRange {
            degree: m,
            max: self.max_degree,
        })
    }

    /// ψ_m(1⊗x^{w_1}⊗…⊗x^{w_m}⊗1) as a vector of A^e (x^a⊗x^b at a n + b).
    pub fn psi(&self, w: &[usize]) -> Vec<Scalar> {
        let f = self.field;
        let n = self.n;
        let mut out = vec![Scalar::ZERO; n * n];
        let pair_power = |pairs: &[usize]| -> Option<usize> {
            let mut s = 0;
            for p in pairs.chunks(2) {
                s += (p[0] + p[1]).checked_sub(n)?;
            }
            (s < n).then_some(s)
        };
        if w.len() % 2 == 0 {
            if let Some(s) = pair_power(w) {
                out[s] = Scalar::ONE;
            }
        } else if let Some(s) = pair_power(&w[1..]) {
            for a in 0..w[0] {
                let b = w[0] - a - 1 + s;
                if b < n {
                    out[a * n + b] = f.add(out[a * n + b], self.psi_odd_sign);
                }
            }
        }
        out
    }

    /// A^e-linear extension of ψ_m to A^{⊗(m+2)}.
    pub fn psi_tensor(&self, t: &Tensor) -> Vec<Scalar> {
        let f = self.field;
        let n = self.n;
        let mut out = vec![Scalar::ZERO; n * n];
        for (exps, c) in t.iter() {
            let k = exps.len();
            let (a0, a1) = (exps[0], exps[k - 1]);
            for (idx, v) in self.psi(&exps[1..k - 1]).into_iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (a, b) = (idx / n + a0, idx % n + a1);
                if a < n && b < n {
                    out[a * n + b] = f.mul_add(out[a * n + b], c, v);
                }
            }
        }
        out
    }

    /// A^e-linear extension of φ_m to an element of A^e.
    pub fn phi_apply(&self, m: usize, w: &[Scalar]) -> Result<Tensor> {
        let gen = self.phi(m)?;
        let n = self.n;
        let mut out = Tensor::default();
        for (idx, &c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = (idx / n, idx % n);
            for (exps, v) in gen.iter() {
                let mut e = exps.clone();
                let k = e.len();
                e[0] += a;
                e[k - 1] += b;
                out.add(self.field, n, e, self.field.mul(c, v));
            }
        }
        Ok(out)
    }

    /// Matrix of ψ_m: A^{⊗(m+2)} -> A^e.
    pub fn psi_matrix(&self, m: usize) -> Result<SparseMatrix> {
        let n = self.n;
        let cols = n.checked_pow(m as u32 + 2).ok_or(Error::BudgetExceeded {
            entries: u128::MAX,
            limit: crate::complex::MAX_COCHAIN_DIM as u128,
        })?;
        crate::complex::check_cochain_dim(cols as u128)?;
        let mut t = SparseMatrix::builder(self.field, n * n);
        for col in 0..cols {
            let exps = digits(col, n, m + 2);
            let mut row: Vec<(usize, Scalar)> = self
                .psi_tensor(&Tensor::monomial(exps))
                .into_iter()
                .enumerate()
                .filter(|e| !e.1.is_zero())
                .collect();
            t.push_row(&mut row);
        }
        Ok(t.finish().transpose())
    }

    /// Matrix of φ_m: A^e -> A^{⊗(m+2)}.
    pub fn phi_matrix(&self, m: usize) -> Result<SparseMatrix> {
        let n = self.n;
        let rows = n.pow(m as u32 + 2);
        crate::complex::check_cochain_dim(rows as u128)?;
        let mut t = SparseMatrix::builder(self.field, rows);
        for idx in 0..n * n {
            let mut w = vec![Scalar::ZERO; n * n];
            w[idx] = Scalar::ONE;
            let mut col: Vec<(usize, Scalar)> = self
                .phi_apply(m, &w)?
                .iter()
                .map(|(e, c)| (Tensor::index_of(e, n), c))
                .collect();
            t.push_row(&mut col);
        }
        Ok(t.finish().transpose())
    }

    fn verify(&mut self, r: &RankOneData) -> Result<()> {
        let f = self.field;
        let n = self.n;
        let res_gen = |m: usize| -> Vec<Scalar> {
            let mut g = vec![Scalar::ZERO; n * n];
            if m % 2 == 1 {
                g[n] = Scalar::ONE;
                g[1] = f.neg(Scalar::ONE);
            } else {
                for k in 0..n {
                    g[(n - 1 - k) * n + k] = Scalar::ONE;
                }
            }
            g
        };
        let gens = r.group().generators();
        let fail = |s: String| Err(Error::ChainMapCheckFailed(s));
        for m in 0..=self.max_degree {
            // φ square: b'φ_m(1⊗1) = φ_{m-1}(∂_m(1⊗1)).
            if m >= 1 && bar_differential(f, n, self.phi(m)?) != self.phi_apply(m - 1, &res_gen(m))? {
                return fail(format!("phi square fails in degree {m}"));
            }
            let e = r.twist_exponent(m);
            for (exps, _) in self.phi(m)?.iter() {
                let deg: usize = exps.iter().sum();
                if gens.iter().any(|&g| r.chi_pow(g, deg as i64) != r.chi_pow(g, e)) {
                    return fail(format!("phi is not G-equivariant in degree {m}"));
                }
            }
            // ψ square on the free generators 1⊗w⊗1.
            for code in 0..n.pow(m as u32) {
                let w = digits(code, n, m);
                let image = self.psi(&w);
                let deg: usize = w.iter().sum();
                for (idx, c) in image.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let out = (e + (idx / n + idx % n) as i64) as i64;
                    if gens.iter().any(|&g| r.chi_pow(g, out) != r.chi_pow(g, deg as i64)) {
                        return fail(format!("psi is not G-equivariant in degree {m}"));
                    }
                }
                if m == 0 {
                    continue;
                }
                let lhs = mul_enveloping(f, n, &image, &res_gen(m));
                let mut full = vec![0];
                full.extend_from_slice(&w);
                full.push(0);
                let rhs = self.psi_tensor(&bar_differential(f, n, &Tensor::monomial(full)));
                if lhs != rhs {
                    return fail(format!("psi square fails in degree {m} at {w:?}"));
                }
            }
            let mut one = vec![Scalar::ZERO; n * n];
            one[0] = Scalar::ONE;
            let id = self.psi_tensor(self.phi(m)?) == one;
            if m % 2 == 0 {
                if !id {
                    return fail(format!("psi∘phi is not the identity in degree {m}"));
                }
                self.report.even_identity.push((m, id));
            } else {
                self.report.odd_identity.push((m, id));
            }
        }
        Ok(())
    }
}

fn digits(mut code: usize, n: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    d
}

/// Product in A^e = A ⊗ A (A commutative).
fn mul_enveloping(f: PrimeField, n: usize, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::ZERO; n * n];
    for (i, &a) in u.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in v.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let (p, q) = (i / n + j / n, i % n + j % n);
            if p < n && q < n {
                out[p * n + q] = f.mul_add(out[p * n + q], a, b);
            }
        }
    }
    out
}

/// b'(a_0⊗…⊗a_k) = Σ_j (-1)^j a_0⊗…⊗a_j a_{j+1}⊗…⊗a_k.
pub(crate) fn bar_differential(f: PrimeField, n: usize, t: &Tensor) -> Tensor {
    let mut out = Tensor::default();
    for (exps, c) in t.iter() {
        for j in 0..exps.len() - 1 {
            let mut e = Vec::with_capacity(exps.len() - 1);
            e.extend_from_slice(&exps[..j]);
            e.push(exps[j] + exps[j + 1]);
            e.extend_from_slice(&exps[j + 2..]);
            let s = if j % 2 == 0 { c } else { f.neg(c) };
            out.add(f, n, e, s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Character, FinGroup, GroupSpec};

    fn cyclic(p: u64, n: usize, ord: usize, chi: i64, g1: usize) -> RankOneData {
        let k = PrimeField::new(p).unwrap();
        let g = FinGroup::new(&GroupSpec::Cyclic(ord)).unwrap();
        let c = Character::from_generator_values(k, &g, &[(1, k.elem(chi))]).unwrap();
        RankOneData::new(k, n, &g, &c, g1).unwrap()
    }

    #[test]
    fn alpha_small_cases() {
        assert_eq!(alpha_exponents(2, 0), vec![vec![0]]);
        assert_eq!(alpha_exponents(2, 1), vec![vec![1, 0]]);
        // n = 3, l = 1: i_1 + i_2 = 2 with i_1 ≥ 1.
        assert_eq!(alpha_exponents(3, 1), vec![vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn low_degree_maps() {
        let r = cyclic(5, 2, 2, 4, 1);
        let maps = ChainMaps::new(&r, 6).unwrap();
        assert_eq!(maps.phi(0).unwrap(), &Tensor::monomial(vec![0, 0]));
        assert_eq!(maps.phi(2).unwrap(), &Tensor::monomial(vec![0, 1, 1, 0]));
        // ψ_0 is the identity on A^e.
        let p0 = maps.psi_matrix(0).unwrap().to_dense().unwrap();
        assert_eq!(p0, crate::linalg::Matrix::identity(r.field, 4));
        assert_eq!(maps.report().psi_odd_sign, 1);
        assert!(maps.report().even_identity.iter().all(|e| e.1));
        assert_eq!(maps.phi(7).unwrap_err(), Error::DegreeOutOfRange { degree: 7, max: 6 });
    }

    #[test]
    fn maps_verify_on_taft_and_gap_examples() {
        for r in [cyclic(7, 3, 3, 2, 1), cyclic(5, 2, 4, 2, 2), cyclic(13, 4, 4, 5, 1)] {
            let maps = ChainMaps::new(&r, 6).unwrap();
            assert_eq!(maps.report().even_identity.len(), 4);
            assert_eq!(maps.report().odd_identity.len(), 3);
        }
    }

    #[test]
    fn matrices_match_the_generator_form() {
        let r = cyclic(7, 3, 3, 2, 1);
        let maps = ChainMaps::new(&r, 3).unwrap();
        for m in 0..=3 {
            let psi = maps.psi_matrix(m).unwrap();
            let phi = maps.phi_matrix(m).unwrap();
            assert_eq!(psi.cols(), phi.rows());
            // ψ∘φ on all of A^e in even degrees.
            if m % 2 == 0 {
                let comp = psi.mul(&phi).unwrap().to_dense().unwrap();
                assert_eq!(comp, crate::linalg::Matrix::identity(r.field, 9));
            }
        }
    }
}
