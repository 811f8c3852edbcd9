//! Allocation-free polynomials for matrix-power traces.
//!
//! A monomial of degree at most 16 in at most 255 variables is stored as
//! the sorted multiset of its variable indices (shifted by one, one byte
//! each, zero padded) inside a `u128`.

use std::collections::HashMap;

use super::{GaussianRational as GR, Polynomial};

pub(crate) const MAX_DEGREE: usize = 16;
pub(crate) const MAX_ARITY: usize = 255;

#[derive(Clone, Debug, Default)]
pub(crate) struct PackedPoly {
    terms: HashMap<u128, GR>,
}

fn unpack(mut key: u128, out: &mut [u8; MAX_DEGREE]) -> usize {
    let mut n = 0;
    while key != 0 {
        out[n] = (key & 0xff) as u8;
        key >>= 8;
        n += 1;
    }
    n
}

/// Merges two sorted index multisets; `None` if the degree exceeds 16.
fn key_mul(a: u128, b: u128) -> Option<u128> {
    if a == 0 {
        return Some(b);
    }
    if b == 0 {
        return Some(a);
    }
    let mut xa = [0u8; MAX_DEGREE];
    let mut xb = [0u8; MAX_DEGREE];
    let na = unpack(a, &mut xa);
    let nb = unpack(b, &mut xb);
    if na + nb > MAX_DEGREE {
        return None;
    }
    let (mut i, mut j, mut shift) = (0, 0, 0);
    let mut key = 0u128;
    while i < na || j < nb {
        let v = if j == nb || (i < na && xa[i] <= xb[j]) {
            i += 1;
            xa[i - 1]
        } else {
            j += 1;
            xb[j - 1]
        };
        key |= (v as u128) << shift;
        shift += 8;
    }
    Some(key)
}

impl PackedPoly {
    pub fn from_polynomial(p: &Polynomial) -> Option<Self> {
        if p.arity() > MAX_ARITY {
            return None;
        }
        let mut terms = HashMap::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            let mut key = 0u128;
            let mut shift = 0;
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    if shift == 8 * MAX_DEGREE {
                        return None;
                    }
                    key |= ((i + 1) as u128) << shift;
                    shift += 8;
                }
            }
            terms.insert(key, c.clone());
        }
        Some(PackedPoly { terms })
    }

    pub fn to_polynomial(&self, arity: usize) -> Polynomial {
        let mut buf = [0u8; MAX_DEGREE];
        Polynomial::from_terms(
            arity,
            self.terms.iter().filter(|(_, c)| !c.is_zero()).map(|(&k, c)| {
                let n = unpack(k, &mut buf);
                let mut e = vec![0u16; arity];
                for &v in &buf[..n] {
                    e[v as usize - 1] += 1;
                }
                (e, c.clone())
            }),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(GR::is_zero)
    }

    pub fn add_assign(&mut self, other: &PackedPoly) {
        for (&k, c) in &other.terms {
            *self.terms.entry(k).or_insert(GR::ZERO) += c;
        }
    }

    /// `self += a·b`; panics past degree 16 (callers check degrees first).
    pub fn add_product(&mut self, a: &PackedPoly, b: &PackedPoly) {
        for (&ka, ca) in &a.terms {
            if ca.is_zero() {
                continue;
            }
            for (&kb, cb) in &b.terms {
                if cb.is_zero() {
                    continue;
                }
                let k = key_mul(ka, kb).expect("packed degree bound");
                *self.terms.entry(k).or_insert(GR::ZERO) += &(ca * cb);
            }
        }
    }

    pub fn scale(&mut self, c: &GR) {
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    pub fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }
}

/// Square matrix of packed polynomials.
#[derive(Clone, Debug)]
pub(crate) struct PackedMatrix {
    pub n: usize,
    pub data: Vec<PackedPoly>,
}

impl PackedMatrix {
    pub fn get(&self, i: usize, j: usize) -> &PackedPoly {
        &self.data[i * self.n + j]
    }

    pub fn mul(&self, other: &PackedMatrix) -> PackedMatrix {
        let n = self.n;
        let mut data = vec![PackedPoly::default(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        data[i * n + j].add_product(a, b);
                    }
                }
            }
        }
        data.iter_mut().for_each(PackedPoly::prune);
        PackedMatrix { n, data }
    }

    pub fn trace(&self) -> PackedPoly {
        let mut acc = PackedPoly::default();
        for i in 0..self.n {
            acc.add_assign(self.get(i, i));
        }
        acc.prune();
        acc
    }

    pub fn trace_of_product(&self, other: &PackedMatrix) -> PackedPoly {
        let mut acc = PackedPoly::default();
        for i in 0..self.n {
            for k in 0..self.n {
                acc.add_product(self.get(i, k), other.get(k, i));
            }
        }
        acc.prune();
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_product() {
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 2);
        let p = &(&x * &y) + &Polynomial::constant(3, GR::from_int(2));
        let q = &(&x * &x) - &y;
        let pp = PackedPoly::from_polynomial(&p).unwrap();
        let pq = PackedPoly::from_polynomial(&q).unwrap();
        assert_eq!(pp.to_polynomial(3), p);
        let mut prod = PackedPoly::default();
        prod.add_product(&pp, &pq);
        assert_eq!(prod.to_polynomial(3), &p * &q);
    }

    #[test]
    fn degree_bound() {
        assert!(key_mul(u128::MAX >> 8, 1).is_some());
        assert!(key_mul(u128::MAX, 1).is_none());
    }
}
