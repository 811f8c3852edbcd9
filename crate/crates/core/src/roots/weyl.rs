//! Weyl group elements as integer matrices on root coordinates.

use std::collections::{HashSet, VecDeque};
use std::ops::{Index, IndexMut};

use serde::Serialize;

use super::RootSystem;
use crate::error::{Error, Result};

/// Default enumeration cap; `|W(E6)| = 51840` is still enumerated.
pub const DEFAULT_WEYL_CAP: usize = 51840;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        IntMatrix {
            n,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a != 0 {
                    for j in 0..n {
                        data[i * n + j] += a * other.data[k * n + j];
                    }
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.data[i * self.n + j] * v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        IntMatrix { n, data }
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    pub fn is_minus_identity(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| self.data[i * n + j] == if i == j { -1 } else { 0 }))
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    /// Coefficients of `det(t·I − M)` in ascending powers of `t`.
    pub fn char_poly(&self) -> Vec<i64> {
        let n = self.n;
        let mut coeffs = vec![0i128; n + 1];
        coeffs[n] = 1;
        let big: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mul = |a: &[i128], b: &[i128]| -> Vec<i128> {
            let mut out = vec![0i128; n * n];
            for i in 0..n {
                for k in 0..n {
                    if a[i * n + k] != 0 {
                        for j in 0..n {
                            out[i * n + j] += a[i * n + k] * b[k * n + j];
                        }
                    }
                }
            }
            out
        };
        let mut m: Vec<i128> = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        for k in 1..=n {
            let am = mul(&big, &m);
            let tr: i128 = (0..n).map(|i| am[i * n + i]).sum();
            assert_eq!(tr % k as i128, 0, "integer characteristic polynomial");
            let c = -tr / k as i128;
            coeffs[n - k] = c;
            m = am;
            for i in 0..n {
                m[i * n + i] += c;
            }
        }
        coeffs.into_iter().map(|c| c as i64).collect()
    }

    /// Multiplicative order, if at most `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.n + j]
    }
}

/// A Weyl group element with a reduced word `s_{w[0]} s_{w[1]} ⋯`.
#[derive(Clone, Debug, Serialize)]
pub struct WeylElement {
    pub matrix: IntMatrix,
    pub word: Vec<usize>,
}

/// All elements of the Weyl group in breadth-first order (so every word is
/// reduced). Fails with [`Error::GroupTooLarge`] if the group has more than
/// `cap` elements.
pub fn weyl_enumerate(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>> {
    let r = rs.rank();
    let gens: Vec<IntMatrix> = (0..r).map(|i| rs.simple_reflection(i)).collect();
    let id = IntMatrix::identity(r);
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![WeylElement {
        matrix: id,
        word: Vec::new(),
    }];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let m = out[k].matrix.mul(g);
            if seen.contains(&m) {
                continue;
            }
            if out.len() == cap {
                return Err(Error::GroupTooLarge { cap });
            }
            seen.insert(m.clone());
            let mut word = out[k].word.clone();
            word.push(i);
            out.push(WeylElement { matrix: m, word });
            queue.push_back(out.len() - 1);
        }
    }
    Ok(out)
}

/// The longest element `w₀`, built by right-multiplying with simple
/// reflections `s_i` while `w(α_i)` is positive. Never enumerates `W`.
pub fn longest_element(rs: &RootSystem) -> WeylElement {
    let r = rs.rank();
    let mut w = IntMatrix::identity(r);
    let mut word = Vec::new();
    'outer: loop {
        for i in 0..r {
            let col: Vec<i64> = (0..r).map(|k| w[(k, i)]).collect();
            if col.iter().all(|&c| c >= 0) {
                w = w.mul(&rs.simple_reflection(i));
                word.push(i);
                continue 'outer;
            }
        }
        break;
    }
    debug_assert_eq!(word.len(), rs.num_positive());
    WeylElement { matrix: w, word }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CartanType;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse::<CartanType>().unwrap())
    }

    #[test]
    fn weyl_orders() {
        for (t, order) in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("D4", 192), ("F4", 1152)] {
            let w = weyl_enumerate(&rs(t), DEFAULT_WEYL_CAP).unwrap();
            assert_eq!(w.len(), order, "{t}");
        }
    }

    #[test]
    fn e6_fits_the_cap_and_e7_does_not() {
        assert_eq!(weyl_enumerate(&rs("E6"), DEFAULT_WEYL_CAP).unwrap().len(), 51840);
        assert!(matches!(
            weyl_enumerate(&rs("E7"), DEFAULT_WEYL_CAP),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn words_are_reduced_and_match_matrices() {
        let sys = rs("B3");
        for e in weyl_enumerate(&sys, DEFAULT_WEYL_CAP).unwrap() {
            let m = e.word.iter().fold(IntMatrix::identity(3), |acc, &i| {
                acc.mul(&sys.simple_reflection(i))
            });
            assert_eq!(m, e.matrix);
            // Length equals the number of positive roots sent negative.
            let inversions = sys
                .positive_roots()
                .iter()
                .filter(|v| e.matrix.apply(v).iter().any(|&c| c < 0))
                .count();
            assert_eq!(inversions, e.word.len());
            assert!(sys.permutes_roots(&e.matrix));
        }
    }

    #[test]
    fn longest_elements() {
        assert!(longest_element(&rs("B2")).matrix.is_minus_identity());
        assert!(!longest_element(&rs("A2")).matrix.is_minus_identity());
        assert!(longest_element(&rs("E8")).matrix.is_minus_identity());
        assert!(!longest_element(&rs("E6")).matrix.is_minus_identity());
        assert!(longest_element(&rs("D4")).matrix.is_minus_identity());
        assert!(!longest_element(&rs("D5")).matrix.is_minus_identity());
        let a3 = longest_element(&rs("A3"));
        assert_eq!(a3.word.len(), 6);
        // w₀ on A3 is −(diagram flip).
        assert_eq!(a3.matrix.apply(&[1, 0, 0]), vec![0, 0, -1]);
    }

    #[test]
    fn char_poly_of_reflection() {
        let sys = rs("A2");
        // det(t − s_1) = (t − 1)(t + 1).
        assert_eq!(sys.simple_reflection(0).char_poly(), vec![-1, 0, 1]);
        assert_eq!(sys.coxeter_element().order(100), Some(3));
    }
}
