//! Exact traces of matrix powers by multimodular arithmetic.
//!
//! For a square matrix `M` with Gaussian-integer entries the power sums
//! `tr(Mᵏ)` are Gaussian integers bounded by `n·Rᵏ`, where `R` is the largest
//! absolute row sum (with `|a+bi| ≤ |a|+|b|`). The power sums are computed
//! modulo enough primes `p ≡ 1 (mod 4)` to exceed twice that bound and
//! recovered by Chinese remaindering, so the result is exact. Modulo each
//! prime the characteristic polynomial comes from a Hessenberg reduction and
//! the power sums from Newton's identities, which need no division.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{GaussianRational as GR, Matrix, Rational};
use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

const PRIME_POOL: usize = 512;

/// Primes `p ≡ 1 (mod 4)` below 2³¹, largest first, each with a square root of −1.
fn gaussian_primes() -> &'static [(u64, u64)] {
    static POOL: OnceLock<Vec<(u64, u64)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let start = (1u64 << 31) - 1;
        (0..)
            .map(move |k| start - k)
            .filter(|&p| p % 4 == 1 && is_prime(p))
            .map(|p| {
                let mut a = 2;
                while pow_mod(a, (p - 1) / 2, p) != p - 1 {
                    a += 1;
                }
                (p, pow_mod(a, (p - 1) / 4, p))
            })
            .take(PRIME_POOL)
            .collect()
    })
}

/// Characteristic polynomial `det(tI − M)` modulo `p`, coefficients in
/// ascending powers of `t` (length `n + 1`, monic).
pub(crate) fn char_poly_mod(mut h: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
    let at = |i: usize, j: usize| i * n + j;
    // Reduce to upper Hessenberg form by elimination similarities.
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[at(i, j)] != 0) else {
            continue;
        };
        if piv != j + 1 {
            for c in 0..n {
                h.swap(at(piv, c), at(j + 1, c));
            }
            for r in 0..n {
                h.swap(at(r, piv), at(r, j + 1));
            }
        }
        let inv = inv_mod(h[at(j + 1, j)], p);
        for r in j + 2..n {
            let u = mul_mod(h[at(r, j)], inv, p);
            if u == 0 {
                continue;
            }
            for c in j..n {
                let t = mul_mod(u, h[at(j + 1, c)], p);
                h[at(r, c)] = sub_mod(h[at(r, c)], t, p);
            }
            for row in 0..n {
                let t = mul_mod(u, h[at(row, r)], p);
                h[at(row, j + 1)] = add_mod(h[at(row, j + 1)], t, p);
            }
        }
    }
    // Characteristic polynomials of leading principal submatrices.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let hm = |i: usize, j: usize| h[at(i - 1, j - 1)];
        let prev = &polys[m - 1];
        let mut cur = vec![0u64; m + 1];
        let diag = hm(m, m);
        for (k, &c) in prev.iter().enumerate() {
            cur[k + 1] = (cur[k + 1] + c) % p;
            cur[k] = (cur[k] + p - mul_mod(diag, c, p)) % p;
        }
        let mut prod = 1u64;
        for i in 1..m {
            prod = mul_mod(prod, hm(m - i + 1, m - i), p);
            if prod == 0 {
                break;
            }
            let f = mul_mod(hm(m - i, m), prod, p);
            if f == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                cur[k] = sub_mod(cur[k], mul_mod(f, c, p), p);
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}

/// `tr(Mᵏ)` for `k = 1..=kmax` from the characteristic polynomial (mod p).
fn power_sums_mod(charpoly: &[u64], kmax: usize, p: u64) -> Vec<u64> {
    let n = charpoly.len() - 1;
    // a[k] = coefficient of t^{n-k}.
    let a = |k: usize| charpoly[n - k];
    let mut s = vec![0u64; kmax + 1];
    for k in 1..=kmax {
        let mut acc = 0u64;
        for i in 1..k.min(n + 1) {
            acc = (acc + mul_mod(a(i), s[k - i], p)) % p;
        }
        if k <= n {
            acc = (acc + mul_mod(k as u64 % p, a(k), p)) % p;
        }
        s[k] = (p - acc) % p;
    }
    s
}

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Incremental Chinese remaindering with a symmetric final range.
struct Crt {
    value: BigInt,
    modulus: BigInt,
}

impl Crt {
    fn new() -> Self {
        Crt {
            value: BigInt::zero(),
            modulus: BigInt::one(),
        }
    }

    fn push(&mut self, r: u64, p: u64) {
        let m_mod_p = residue(&self.modulus, p);
        let v_mod_p = residue(&self.value, p);
        let diff = (r + p - v_mod_p) % p;
        let t = mul_mod(diff, inv_mod(m_mod_p, p), p);
        self.value += &self.modulus * BigInt::from(t);
        self.modulus *= BigInt::from(p);
    }

    fn symmetric(&self) -> BigInt {
        let half: BigInt = &self.modulus >> 1;
        if self.value > half {
            &self.value - &self.modulus
        } else {
            self.value.clone()
        }
    }
}

/// Exact `tr(Mᵏ)`, `k = 1..=kmax`, for a square matrix whose entries are
/// Gaussian integers.
pub fn trace_power_sums(m: &Matrix, kmax: usize) -> Result<Vec<GR>> {
    if !m.is_square() {
        return Err(Error::Dimension("power sums of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut re = Vec::with_capacity(n * n);
    let mut im = Vec::with_capacity(n * n);
    for v in m.entries() {
        if !v.re.is_integer() || !v.im.is_integer() {
            return Err(Error::Dimension(
                "multimodular power sums need Gaussian-integer entries".into(),
            ));
        }
        re.push(v.re.numer());
        im.push(v.im.numer());
    }
    let complex = im.iter().any(|x| !x.is_zero());
    let row_norm = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| re[i * n + j].abs() + im[i * n + j].abs())
                .sum::<BigInt>()
        })
        .max()
        .unwrap_or_else(BigInt::zero)
        .max(BigInt::one());
    let bound: BigInt = BigInt::from(n.max(1)) * num_traits::pow(row_norm, kmax) * 2 + 1;

    let mut primes = Vec::new();
    let mut modulus = BigInt::one();
    for &(p, r) in gaussian_primes() {
        if modulus > bound {
            break;
        }
        modulus *= BigInt::from(p);
        primes.push((p, r));
    }
    if modulus <= bound {
        return Err(Error::Unsupported(format!(
            "power-sum bound exceeds {PRIME_POOL} primes"
        )));
    }

    let residues: Vec<(u64, Vec<u64>, Vec<u64>)> = primes
        .par_iter()
        .map(|&(p, r)| {
            let re_p: Vec<u64> = re.iter().map(|x| residue(x, p)).collect();
            let im_p: Vec<u64> = im.iter().map(|x| residue(x, p)).collect();
            let embed = |root: u64| -> Vec<u64> {
                re_p.iter()
                    .zip(&im_p)
                    .map(|(&a, &b)| (a + mul_mod(b, root, p)) % p)
                    .collect()
            };
            let s1 = power_sums_mod(&char_poly_mod(embed(r), n, p), kmax, p);
            if !complex {
                return (p, s1, vec![0; kmax + 1]);
            }
            let s2 = power_sums_mod(&char_poly_mod(embed(p - r), n, p), kmax, p);
            let inv2 = inv_mod(2, p);
            let inv2r = inv_mod(mul_mod(2, r, p), p);
            let real: Vec<u64> = s1
                .iter()
                .zip(&s2)
                .map(|(&x, &y)| mul_mod((x + y) % p, inv2, p))
                .collect();
            let imag: Vec<u64> = s1
                .iter()
                .zip(&s2)
                .map(|(&x, &y)| mul_mod((x + p - y) % p, inv2r, p))
                .collect();
            (p, real, imag)
        })
        .collect();

    let mut out = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let mut cre = Crt::new();
        let mut cim = Crt::new();
        for (p, real, imag) in &residues {
            cre.push(real[k], *p);
            cim.push(imag[k], *p);
        }
        out.push(GR::new(
            Rational::from_bigint(cre.symmetric()),
            Rational::from_bigint(cim.symmetric()),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_power_sums(m: &Matrix, kmax: usize) -> Vec<GR> {
        let mut acc = Matrix::identity(m.rows());
        (1..=kmax)
            .map(|_| {
                acc = &acc * m;
                acc.trace()
            })
            .collect()
    }

    #[test]
    fn matches_direct_powers_real() {
        let m = Matrix::from_ints(&[
            vec![3, -1, 0, 7],
            vec![2, 0, 5, -4],
            vec![0, 9, -2, 1],
            vec![-6, 1, 1, 8],
        ]);
        assert_eq!(trace_power_sums(&m, 12).unwrap(), direct_power_sums(&m, 12));
    }

    #[test]
    fn matches_direct_powers_complex() {
        let g = |a: i64, b: i64| GR::new(Rational::from_int(a), Rational::from_int(b));
        let m = Matrix::from_rows(vec![
            vec![g(1, 2), g(0, -3), g(4, 0)],
            vec![g(-2, 1), g(5, 5), g(0, 0)],
            vec![g(0, 1), g(1, 0), g(-3, -2)],
        ]);
        assert_eq!(trace_power_sums(&m, 9).unwrap(), direct_power_sums(&m, 9));
    }

    #[test]
    fn nilpotent_and_zero_matrices() {
        let m = Matrix::from_ints(&[vec![0, 5, 1], vec![0, 0, 2], vec![0, 0, 0]]);
        assert!(trace_power_sums(&m, 5).unwrap().iter().all(GR::is_zero));
        let z = Matrix::zeros(3, 3);
        assert!(trace_power_sums(&z, 3).unwrap().iter().all(GR::is_zero));
    }

    #[test]
    fn rejects_fractional_entries() {
        let m = Matrix::from_rows(vec![vec![GR::frac(1, 2)]]);
        assert!(trace_power_sums(&m, 2).is_err());
    }
}
