//! The periodic A^e-resolution of A:
//! ... --·v--> A^e --·u--> A^e --·v--> A^e --·u--> A^e --mult--> A,
//! with u = x⊗1 − 1⊗x and v = Σ_k x^{n−1−k} ⊗ x^k, made G-equivariant by
//! scaling the diagonal action in degree m by χ(g)^{twist_exponent(m)}.

use super::RankOneData;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct SmallResolution {
    /// A^e = A ⊗ A^op, x^i ⊗ x^j at index i n + j.
    pub enveloping: Algebra,
    pub u: Vec<Scalar>,
    pub v: Vec<Scalar>,
    pub mul_u: Matrix,
    pub mul_v: Matrix,
    n: usize,
}

impl SmallResolution {
    /// Builds and verifies exactness and equivariance through `max_degree`.
    pub fn new(r: &RankOneData, max_degree: usize) -> Result<Self> {
        let f = r.field;
        let n = r.n;
        let enveloping = r.a.enveloping()?;
        let mut u = vec![Scalar::ZERO; n * n];
        u[n] = Scalar::ONE;
        u[1] = f.neg(Scalar::ONE);
        let mut v = vec![Scalar::ZERO; n * n];
        for k in 0..n {
            v[(n - 1 - k) * n + k] = Scalar::ONE;
        }
        let res = SmallResolution {
            mul_u: enveloping.right_mult_by(&u),
            mul_v: enveloping.right_mult_by(&v),
            enveloping,
            u,
            v,
            n,
        };
        res.verify(r, max_degree)?;
        Ok(res)
    }

    /// P_m -> P_{m-1} for m >= 1: ·u in odd degrees, ·v in even degrees.
    pub fn map(&self, m: usize) -> &Matrix {
        if m % 2 == 1 {
            &self.mul_u
        } else {
            &self.mul_v
        }
    }

    /// Diagonal matrix of g acting on P_m = A^e.
    pub fn twist(&self, r: &RankOneData, m: usize, g: usize) -> Matrix {
        let n = self.n;
        let mut t = Matrix::zeros(r.field, n * n, n * n);
        let e = r.twist_exponent(m);
        for i in 0..n {
            for j in 0..n {
                t.set(i * n + j, i * n + j, r.chi_pow(g, e + (i + j) as i64));
            }
        }
        t
    }

    /// Multiplication A^e -> A.
    pub fn augmentation(&self, r: &RankOneData) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zeros(r.field, n, n * n);
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    m.set(i + j, i * n + j, Scalar::ONE);
                }
            }
        }
        m
    }

    fn verify(&self, r: &RankOneData, max_degree: usize) -> Result<()> {
        let fail = |what: &str| Err(Error::InvalidStructure(format!("small resolution: {what}")));
        if !self.mul_u.mul(&self.mul_v)?.is_zero() || !self.mul_v.mul(&self.mul_u)?.is_zero() {
            return fail("u v != 0");
        }
        let eps = self.augmentation(r);
        if !eps.mul(&self.mul_u)?.is_zero() {
            return fail("augmentation does not kill the image of u");
        }
        // Exactness: ker ε = im ·u, ker ·u = im ·v, ker ·v = im ·u.
        let nn = self.n * self.n;
        let rank_eps = eps.rank();
        let rank_u = self.mul_u.rank();
        let rank_v = self.mul_v.rank();
        if nn - rank_eps != rank_u || nn - rank_u != rank_v || nn - rank_v != rank_u {
            return fail("not exact");
        }
        for m in 1..=max_degree.max(2) {
            for g in r.group().generators() {
                let lhs = self.twist(r, m - 1, g).mul(self.map(m))?;
                let rhs = self.map(m).mul(&self.twist(r, m, g))?;
                if lhs != rhs {
                    return fail(&format!("map out of degree {m} is not G-equivariant"));
                }
            }
        }
        Ok(())
    }
}
