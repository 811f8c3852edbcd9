//! Square matrices with polynomial entries.

use std::collections::HashMap;

use super::packed::{self, PackedMatrix, PackedPoly};
use super::{GaussianRational as GR, Matrix, Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    n: usize,
    arity: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(n: usize, arity: usize) -> Self {
        PolyMatrix {
            n,
            arity,
            data: vec![Polynomial::zero(arity); n * n],
        }
    }

    pub fn identity(n: usize, arity: usize) -> Self {
        let mut m = Self::zeros(n, arity);
        for i in 0..n {
            m.data[i * n + i] = Polynomial::one(arity);
        }
        m
    }

    pub fn from_fn(n: usize, arity: usize, f: impl Fn(usize, usize) -> Polynomial) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let p = f(i, j);
                assert_eq!(p.arity(), arity);
                data.push(p);
            }
        }
        PolyMatrix { n, arity, data }
    }

    /// The generic element `Σ x_k B_k` of the span of `basis`.
    pub fn generic_element(basis: &[Matrix]) -> Self {
        let arity = basis.len();
        let n = basis.first().map_or(0, Matrix::rows);
        Self::from_fn(n, arity, |i, j| {
            let coeffs: Vec<GR> = basis.iter().map(|b| b[(i, j)].clone()).collect();
            Polynomial::linear(&coeffs)
        })
    }

    /// Lifts a constant matrix.
    pub fn constant(m: &Matrix, arity: usize) -> Self {
        Self::from_fn(m.rows(), arity, |i, j| Polynomial::constant(arity, m[(i, j)].clone()))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.data[i * self.n + j] = p;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.arity, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n, self.arity);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j].add_product(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> Self {
        Self::from_fn(self.n, self.arity, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn trace(&self) -> Polynomial {
        (0..self.n).fold(Polynomial::zero(self.arity), |acc, i| &acc + self.get(i, i))
    }

    /// `trace(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &PolyMatrix) -> Polynomial {
        let mut acc = Polynomial::zero(self.arity);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.get(i, k);
                let b = other.get(k, i);
                if !a.is_zero() && !b.is_zero() {
                    acc.add_product(a, b);
                }
            }
        }
        acc
    }

    /// `tr(A^k)` for `k = 1..=kmax`, from the powers `A^j`, `j ≤ ⌈kmax/2⌉`,
    /// as `tr(A^a · A^b)` with `a + b = k`.
    pub fn power_sums(&self, kmax: usize) -> Vec<Polynomial> {
        if let Some(p) = self.power_sums_packed(kmax) {
            return p;
        }
        let half = kmax.div_ceil(2).max(1);
        let mut powers = vec![self.clone()];
        while powers.len() < half {
            let next = powers.last().unwrap().mul(self);
            powers.push(next);
        }
        (1..=kmax)
            .map(|k| {
                if k == 1 {
                    return self.trace();
                }
                let a = k / 2;
                powers[k - a - 1].trace_of_product(&powers[a - 1])
            })
            .collect()
    }

    fn packed_power_sums(&self, kmax: usize) -> Option<Vec<PackedPoly>> {
        let entry_degree = self.data.iter().filter_map(Polynomial::degree).max().unwrap_or(0) as usize;
        if self.arity > packed::MAX_ARITY || entry_degree * kmax > packed::MAX_DEGREE {
            return None;
        }
        let base = PackedMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .map(PackedPoly::from_polynomial)
                .collect::<Option<_>>()?,
        };
        let half = kmax.div_ceil(2).max(1);
        let mut powers = vec![base.clone()];
        while powers.len() < half {
            let next = powers.last().unwrap().mul(&base);
            powers.push(next);
        }
        Some(
            (1..=kmax)
                .map(|k| {
                    if k == 1 {
                        base.trace()
                    } else {
                        let a = k / 2;
                        powers[k - a - 1].trace_of_product(&powers[a - 1])
                    }
                })
                .collect(),
        )
    }

    /// Same computation on packed monomials, when degrees stay within the
    /// packing bound.
    fn power_sums_packed(&self, kmax: usize) -> Option<Vec<Polynomial>> {
        let p = self.packed_power_sums(kmax)?;
        Some(p.iter().map(|x| x.to_polynomial(self.arity)).collect())
    }

    /// Coefficients `a_1..a_n` of `det(t·I − A) = tⁿ + a_1 tⁿ⁻¹ + … + a_n`.
    pub fn char_poly_coefficients(&self) -> Vec<Polynomial> {
        self.char_poly_coefficients_upto(self.n)
    }

    /// `a_1..a_kmax` only, by Newton's identities `k·a_k = −Σ_{i<k} a_i p_{k−i}`.
    pub fn char_poly_coefficients_upto(&self, kmax: usize) -> Vec<Polynomial> {
        let kmax = kmax.min(self.n);
        if let Some(p) = self.packed_power_sums(kmax) {
            let mut a: Vec<PackedPoly> = Vec::with_capacity(kmax);
            for k in 1..=kmax {
                let mut s = p[k - 1].clone();
                for i in 1..k {
                    s.add_product(&a[i - 1], &p[k - i - 1]);
                }
                s.scale(&GR::real(Rational::new(-1, k as i64)));
                s.prune();
                a.push(s);
            }
            return a.iter().map(|x| x.to_polynomial(self.arity)).collect();
        }
        let p = self.power_sums(kmax);
        let mut a: Vec<Polynomial> = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            let mut s = p[k - 1].clone();
            for i in 1..k {
                s.add_product(&a[i - 1], &p[k - i - 1]);
            }
            a.push(s.scale(&GR::real(Rational::new(-1, k as i64))));
        }
        a
    }

    pub fn det(&self) -> Polynomial {
        let n = self.n;
        if n == 0 {
            return Polynomial::one(self.arity);
        }
        let a_n = self.char_poly_coefficients().pop().unwrap();
        if n.is_multiple_of(2) {
            a_n
        } else {
            -&a_n
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| self.get(i, j) == &-self.get(j, i))
        })
    }

    /// Pfaffian of an antisymmetric matrix with polynomial entries, by
    /// expansion along the first remaining row (memoized on index subsets).
    pub fn pfaffian(&self) -> Result<Polynomial> {
        if self.n % 2 == 1 {
            return Err(Error::Dimension(format!(
                "pfaffian of odd dimension {}",
                self.n
            )));
        }
        if self.n > 62 {
            return Err(Error::Unsupported("pfaffian above dimension 62".into()));
        }
        if !self.is_antisymmetric() {
            return Err(Error::Dimension("pfaffian of a non-antisymmetric matrix".into()));
        }
        let mut memo = HashMap::new();
        let full: u64 = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        Ok(self.pf_rec(full, &mut memo))
    }

    fn pf_rec(&self, mask: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        if mask == 0 {
            return Polynomial::one(self.arity);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << first);
        let mut acc = Polynomial::zero(self.arity);
        let mut sign_positive = true;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let a = self.get(first, j);
            if !a.is_zero() {
                let sub = self.pf_rec(rest & !(1u64 << j), memo);
                let t = a * &sub;
                acc = if sign_positive { &acc + &t } else { &acc - &t };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(mask, acc.clone());
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic_antisymmetric(m: usize) -> PolyMatrix {
        let arity = m * (m - 1) / 2;
        let mut idx = HashMap::new();
        let mut k = 0;
        for i in 0..m {
            for j in i + 1..m {
                idx.insert((i, j), k);
                k += 1;
            }
        }
        PolyMatrix::from_fn(m, arity, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => Polynomial::var(arity, idx[&(i, j)]),
            std::cmp::Ordering::Greater => -&Polynomial::var(arity, idx[&(j, i)]),
            std::cmp::Ordering::Equal => Polynomial::zero(arity),
        })
    }

    #[test]
    fn pfaffian_two_by_two() {
        let a = generic_antisymmetric(2);
        assert_eq!(a.pfaffian().unwrap(), Polynomial::var(1, 0));
    }

    #[test]
    fn pfaffian_four_by_four_expansion() {
        // Variables: a12 a13 a14 a23 a24 a34.
        let a = generic_antisymmetric(4);
        let v = |i| Polynomial::var(6, i);
        let expected = &(&(&v(0) * &v(5)) - &(&v(1) * &v(4))) + &(&v(2) * &v(3));
        let pf = a.pfaffian().unwrap();
        assert_eq!(pf, expected);
        assert_eq!(&pf * &pf, a.det());
    }

    #[test]
    fn pfaffian_rejects_odd_dimension() {
        assert!(generic_antisymmetric(3).pfaffian().is_err());
    }

    #[test]
    fn char_poly_of_constant_matrix() {
        let m = Matrix::from_ints(&[vec![2, 1], vec![0, 3]]);
        let c = PolyMatrix::constant(&m, 1).char_poly_coefficients();
        assert_eq!(c[0], Polynomial::constant(1, GR::from_int(-5)));
        assert_eq!(c[1], Polynomial::constant(1, GR::from_int(6)));
    }
}
