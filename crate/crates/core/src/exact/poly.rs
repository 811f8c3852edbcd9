//! Sparse multivariate polynomials over ℚ(i) with a fixed number of variables.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Range, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{GaussianRational as GR, Matrix, Rational};
use crate::error::{Error, Result};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then the exponent of the first variable, then the second, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u16]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A polynomial in `arity` variables `x1..xn`.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, GR>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: GR) -> Self {
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(arity), c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, GR::ONE)
    }

    /// The coordinate function `x_{i+1}` (0-based index `i`).
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index out of range");
        let mut p = Self::zero(arity);
        p.terms.insert(Monomial::var(arity, i), GR::ONE);
        p
    }

    /// Sums duplicate exponents and drops zero coefficients.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Vec<u16>, GR)>) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent vector length must equal arity");
            p.add_term(Monomial::from_exponents(e), &c);
        }
        p
    }

    /// `Σ coeffs[i]·x_i`.
    pub fn linear(coeffs: &[GR]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(n, i), c.clone());
            }
        }
        p
    }

    /// `self += a·b`, accumulating in place.
    pub fn add_product(&mut self, a: &Polynomial, b: &Polynomial) {
        self.check_arity(a);
        self.check_arity(b);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), &(ca * cb));
            }
        }
    }

    fn add_term(&mut self, m: Monomial, c: &GR) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GR)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u16]) -> GR {
        self.terms
            .get(&Monomial::from_exponents(exps.to_vec()))
            .cloned()
            .unwrap_or(GR::ZERO)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Degrees with respect to each block of variables, if every term
    /// has the same block degrees.
    pub fn multidegree(&self, blocks: &[Range<usize>]) -> Option<Vec<u32>> {
        let block_deg = |m: &Monomial| -> Vec<u32> {
            blocks
                .iter()
                .map(|r| m.0[r.clone()].iter().map(|&e| e as u32).sum())
                .collect()
        };
        let mut it = self.terms.keys().map(block_deg);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.arity);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_arity(&self, other: &Polynomial) {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
    }

    pub fn evaluate(&self, v: &[GR]) -> Result<GR> {
        if v.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                found: v.len(),
            });
        }
        let mut powers: Vec<Vec<GR>> = vec![vec![GR::ONE]; self.arity];
        let mut acc = GR::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap() * &v[i];
                    pw.push(next);
                }
                t = &t * &pw[e as usize];
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to variable `i` (0-based).
    pub fn derivative(&self, i: usize) -> Self {
        let mut p = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.to_vec();
            exps[i] -= 1;
            p.terms
                .insert(Monomial::from_exponents(exps), c.scale(&Rational::from_int(e as i64)));
        }
        p
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.arity).map(|i| self.derivative(i)).collect()
    }

    /// `x ↦ p(A·x)`; `A` must be square of size `arity`.
    pub fn compose_linear(&self, a: &Matrix) -> Result<Self> {
        if a.rows() != a.cols() || a.cols() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                found: a.cols(),
            });
        }
        let n = self.arity;
        let images: Vec<Polynomial> = (0..n)
            .map(|i| Polynomial::linear(a.row(i)))
            .collect();
        Ok(self.substitute_unchecked(&images))
    }

    /// Replaces each variable `x_i` by `images[i]`; all images must share an arity.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self> {
        if images.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                found: images.len(),
            });
        }
        if let Some(first) = images.first() {
            if images.iter().any(|q| q.arity != first.arity) {
                return Err(Error::Arity {
                    expected: first.arity,
                    found: images.iter().map(|q| q.arity).find(|&a| a != first.arity).unwrap(),
                });
            }
        }
        Ok(self.substitute_unchecked(images))
    }

    fn substitute_unchecked(&self, images: &[Polynomial]) -> Self {
        let target = images.first().map_or(0, |q| q.arity);
        let mut cache: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        let mut acc_terms: HashMap<Monomial, GR> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = power_cached(&mut cache, &images[i], i, e);
                t = &t * pw;
                if t.is_zero() {
                    break;
                }
            }
            for (mm, cc) in t.terms {
                accumulate(&mut acc_terms, mm, &cc);
            }
        }
        acc.terms = acc_terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        acc
    }

    /// Keeps only terms supported on `keep` and re-indexes those variables
    /// as `0..keep.len()`; every other variable is set to zero.
    pub fn restrict_to(&self, keep: &[usize]) -> Self {
        let mut p = Self::zero(keep.len());
        let mut inside = vec![false; self.arity];
        for &k in keep {
            inside[k] = true;
        }
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| e > 0 && !inside[i]) {
                continue;
            }
            let exps: Vec<u16> = keep.iter().map(|&k| m.0[k]).collect();
            p.terms.insert(Monomial::from_exponents(exps), c.clone());
        }
        p
    }

    /// Rescales a polynomial with rational coefficients to integer
    /// coefficients with content 1 and positive leading (graded-lex largest)
    /// coefficient. Polynomials with non-real coefficients are returned as is.
    pub fn primitive(&self) -> Self {
        if self.is_zero() || self.terms.values().any(|c| !c.is_real()) {
            return self.clone();
        }
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.re.denom()));
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.re.numer() * (&den / c.re.denom());
            g = g.gcd(&n);
        }
        let lead_neg = self.terms.values().next_back().unwrap().re.is_negative();
        let mut factor = Rational::from_bigints(den, g.abs());
        if lead_neg {
            factor = -factor;
        }
        self.scale(&GR::real(factor))
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Appends `extra` variables that do not occur.
    pub fn extend_arity(&self, extra: usize) -> Self {
        let mut p = Self::zero(self.arity + extra);
        for (m, c) in &self.terms {
            let mut e = m.0.to_vec();
            e.resize(self.arity + extra, 0);
            p.terms.insert(Monomial::from_exponents(e), c.clone());
        }
        p
    }
}

fn accumulate(acc: &mut HashMap<Monomial, GR>, m: Monomial, c: &GR) {
    match acc.get_mut(&m) {
        Some(v) => *v += c,
        None => {
            acc.insert(m, c.clone());
        }
    }
}

fn power_cached<'a>(
    cache: &'a mut HashMap<(usize, u16), Polynomial>,
    base: &Polynomial,
    i: usize,
    e: u16,
) -> &'a Polynomial {
    if !cache.contains_key(&(i, e)) {
        let v = if e == 1 {
            base.clone()
        } else {
            let prev = power_cached(cache, base, i, e - 1).clone();
            &prev * base
        };
        cache.insert((i, e), v);
    }
    &cache[&(i, e)]
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_arity(rhs);
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.check_arity(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_arity(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_arity(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.arity);
        }
        let mut acc: HashMap<Monomial, GR> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate(&mut acc, ma.mul(mb), &(ca * cb));
            }
        }
        Polynomial {
            arity: self.arity,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-GR::ONE)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Polynomial {
    /// Terms from the graded-lex largest down, e.g. `x1^2*x3 - 1/2*x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            let (neg, mag) = if c.is_real() && c.re.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coeff = if c.is_real() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.arity, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: Vec<u16>,
    coefficient: GR,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    arity: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exponents: m.0.to_vec(),
                    coefficient: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolynomialJson::deserialize(d)?;
        if j.terms.iter().any(|t| t.exponents.len() != j.arity) {
            return Err(serde::de::Error::custom("exponent vector length differs from arity"));
        }
        Ok(Polynomial::from_terms(
            j.arity,
            j.terms.into_iter().map(|t| (t.exponents, t.coefficient)),
        ))
    }
}
