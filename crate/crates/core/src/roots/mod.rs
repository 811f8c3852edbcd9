//! Root data for the simple Lie algebras.
//!
//! Conventions: Bourbaki numbering of simple roots, Cartan matrix entries
//! `a_ij = ⟨α_i^∨, α_j⟩ = 2(α_i, α_j)/(α_i, α_i)`, so row `i` pairs the coroot
//! of `α_i` with the simple roots. For `G2` the first simple root is long,
//! giving `[[2, -1], [-3, 2]]`. Roots are integer coordinate vectors in the
//! basis of simple roots.

mod degrees;
mod molien;
mod weyl;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use degrees::{coxeter_number, invariant_degrees};
pub use molien::molien_degrees;
pub use weyl::{longest_element, weyl_enumerate, IntMatrix, WeylElement, DEFAULT_WEYL_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A Cartan type such as `A2` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    /// Admissible ranks: A n≥1, B n≥1, C n≥2, D n≥3, E 6–8, F 4, G 2.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A | Family::B => rank >= 1,
            Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InadmissibleType(format!("{}{}", family.letter(), rank)))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_classical(&self) -> bool {
        matches!(self.family, Family::A | Family::B | Family::C | Family::D)
    }

    /// Every admissible type of rank at most `max_rank`, in family order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for family in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            for rank in 1..=max_rank {
                if let Ok(t) = CartanType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Dimension of the simple Lie algebra of this type.
    pub fn algebra_dimension(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 2),
            Family::B | Family::C => n * (2 * n + 1),
            Family::D => n * (2 * n - 1),
            Family::E => match n {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            Family::F => 52,
            Family::G => 14,
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        cartan_matrix(*self)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Parses `A2`, `d4`, `E8`, ...
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse {
            what: "Cartan type",
            input: s.to_string(),
        };
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Cartan matrix in Bourbaki numbering.
pub fn cartan_matrix(t: CartanType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match t.family {
        Family::A => (0..n.saturating_sub(1)).for_each(|i| link(i, i + 1, -1, -1)),
        Family::B => {
            (0..n.saturating_sub(2)).for_each(|i| link(i, i + 1, -1, -1));
            if n >= 2 {
                link(n - 2, n - 1, -1, -2);
            }
        }
        Family::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -2, -1);
        }
        Family::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Family::G => link(0, 1, -1, -3),
    }
    a
}

/// Whether the type appears in the list of types all of whose
/// representations are self-dual: `B_n (n≥1)`, `C_n (n≥3)`, `D_{2n} (n≥2)`,
/// `E7`, `E8`, `F4`, `G2`. The low-rank aliases `A1 = B1` and `C2 = B2` are
/// answered through their `B` names.
pub fn is_self_dual_type(t: CartanType) -> bool {
    match (t.family, t.rank) {
        (Family::A, 1) => true,
        (Family::A, _) => false,
        (Family::B, _) => true,
        (Family::C, 2) => true,
        (Family::C, n) => n >= 3,
        (Family::D, n) => n % 2 == 0 && n >= 4,
        (Family::E, n) => n == 7 || n == 8,
        (Family::F, _) | (Family::G, _) => true,
    }
}

/// Roots, ordering and pairings of a reduced irreducible root system.
///
/// Root indices: `0..N` are the positive roots in order (height, then
/// decreasing coefficient vector), and `N + k` is the negative of root `k`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    /// `(α_i, α_i)/2`, normalized so the short roots have value 1.
    symmetrizer: Vec<i64>,
    positive: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    /// Closes the simple roots under addition, height by height, using
    /// root strings: `β + α_i` is a root iff `q − ⟨β, α_i^∨⟩ > 0`, where `q`
    /// is the largest integer with `β − qα_i` a root.
    pub fn new(t: CartanType) -> Self {
        let cartan = cartan_matrix(t);
        let r = t.rank;
        let symmetrizer = symmetrizer(&cartan);
        let simple: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect();
        let mut known: std::collections::HashSet<Vec<i64>> = simple.iter().cloned().collect();
        let mut all = simple.clone();
        let mut layer = simple;
        while !layer.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &layer {
                for i in 0..r {
                    let mut q = 0;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if known.contains(&probe) {
                            q += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..r).map(|j| cartan[i][j] * beta[j]).sum();
                    if q - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !known.contains(&up) {
                            known.insert(up.clone());
                            next.push(up);
                        }
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n = all.len();
        let mut index = HashMap::with_capacity(2 * n);
        for (k, v) in all.iter().enumerate() {
            index.insert(v.clone(), k);
            index.insert(v.iter().map(|x| -x).collect(), n + k);
        }
        RootSystem {
            cartan_type: t,
            cartan,
            symmetrizer,
            positive: all,
            index,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Coordinates of root `k` (`0 ≤ k < 2N`).
    pub fn root(&self, k: usize) -> Vec<i64> {
        let n = self.positive.len();
        if k < n {
            self.positive[k].clone()
        } else {
            self.positive[k - n].iter().map(|x| -x).collect()
        }
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.positive.len()
    }

    pub fn negate(&self, k: usize) -> usize {
        let n = self.positive.len();
        if k < n {
            k + n
        } else {
            k - n
        }
    }

    pub fn height(&self, k: usize) -> i64 {
        self.root(k).iter().sum()
    }

    /// Index of the `i`-th simple root.
    pub fn simple(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        self.index[&v]
    }

    /// Symmetric bilinear form `(β, γ)` on root-lattice coordinates.
    pub fn inner(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            if beta[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += beta[i] * self.symmetrizer[i] * self.cartan[i][j] * gamma[j];
            }
        }
        s
    }

    /// `⟨β, α_i^∨⟩ = Σ_j a_ij β_j`.
    pub fn coroot_pairing(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| self.cartan[i][j] * beta[j]).sum()
    }

    /// Coefficients of the coroot `h_β` in the basis of simple coroots.
    pub fn coroot_coefficients(&self, k: usize) -> Vec<i64> {
        let beta = self.root(k);
        let half_norm = self.inner(&beta, &beta) / 2;
        beta.iter()
            .zip(&self.symmetrizer)
            .map(|(b, d)| {
                debug_assert_eq!((b * d) % half_norm, 0);
                b * d / half_norm
            })
            .collect()
    }

    /// Largest `p` with `β − p·α` a root (roots given by index).
    pub fn string_down(&self, alpha: usize, beta: usize) -> i64 {
        let a = self.root(alpha);
        let mut v = self.root(beta);
        let mut p = 0;
        loop {
            for (x, y) in v.iter_mut().zip(&a) {
                *x -= y;
            }
            if self.index.contains_key(&v) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Index of `root(a) + root(b)` if it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let v: Vec<i64> = self
            .root(a)
            .iter()
            .zip(self.root(b))
            .map(|(x, y)| x + y)
            .collect();
        self.index_of(&v)
    }

    /// Matrix of the simple reflection `s_i` on root coordinates.
    pub fn simple_reflection(&self, i: usize) -> IntMatrix {
        let r = self.rank();
        let mut m = IntMatrix::identity(r);
        for j in 0..r {
            m[(i, j)] -= self.cartan[i][j];
        }
        m
    }

    /// `s_1 s_2 ⋯ s_r`.
    pub fn coxeter_element(&self) -> IntMatrix {
        (0..self.rank()).fold(IntMatrix::identity(self.rank()), |acc, i| {
            acc.mul(&self.simple_reflection(i))
        })
    }

    /// Whether an integer matrix maps every root to a root.
    pub fn permutes_roots(&self, m: &IntMatrix) -> bool {
        (0..self.num_roots()).all(|k| self.index.contains_key(&m.apply(&self.root(k))))
    }
}

fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    // d_i a_ij = d_j a_ji, propagated along the (connected) Dynkin diagram
    // as fractions num/den.
    let r = cartan.len();
    let mut d: Vec<Option<(i64, i64)>> = vec![None; r];
    d[0] = Some((1, 1));
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let (ni, di) = d[i].unwrap();
        for j in 0..r {
            if i != j && cartan[i][j] != 0 && d[j].is_none() {
                d[j] = Some((ni * cartan[i][j], di * cartan[j][i]));
                stack.push(j);
            }
        }
    }
    let lcm = d
        .iter()
        .map(|x| x.unwrap().1.abs())
        .fold(1i64, num_integer::lcm);
    let ints: Vec<i64> = d
        .iter()
        .map(|x| {
            let (n, den) = x.unwrap();
            n * (lcm / den)
        })
        .collect();
    let g = ints.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
    ints.iter().map(|x| x / g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn cartan_matrix_examples() {
        assert_eq!(ty("A2").cartan_matrix(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(ty("A1").cartan_matrix(), vec![vec![2]]);
        assert_eq!(ty("G2").cartan_matrix(), vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(ty("B2").cartan_matrix(), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(ty("C2").cartan_matrix(), vec![vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn cartan_matrices_are_well_formed() {
        for t in CartanType::all_up_to_rank(8) {
            let a = t.cartan_matrix();
            for i in 0..t.rank() {
                assert_eq!(a[i][i], 2);
                for j in 0..t.rank() {
                    if i != j {
                        assert!([0, -1, -2, -3].contains(&a[i][j]), "{t}");
                        assert_eq!(a[i][j] == 0, a[j][i] == 0, "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn admissibility() {
        assert!("C1".parse::<CartanType>().is_err());
        assert!("D2".parse::<CartanType>().is_err());
        assert!("E5".parse::<CartanType>().is_err());
        assert!("F3".parse::<CartanType>().is_err());
        assert!("X3".parse::<CartanType>().is_err());
        assert!("B1".parse::<CartanType>().is_ok());
        assert_eq!("e8".parse::<CartanType>().unwrap().to_string(), "E8");
        assert_eq!(CartanType::all_up_to_rank(8).len(), 34);
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(RootSystem::new(ty("A2")).num_positive(), 3);
        assert_eq!(RootSystem::new(ty("G2")).num_positive(), 6);
        assert_eq!(RootSystem::new(ty("E8")).num_positive(), 120);
        for t in CartanType::all_up_to_rank(8) {
            let rs = RootSystem::new(t);
            assert_eq!(2 * rs.num_positive(), t.algebra_dimension() - t.rank(), "{t}");
            assert!(rs.positive_roots().iter().all(|v| v.iter().all(|&c| c >= 0)));
        }
    }

    #[test]
    fn a2_roots_in_order() {
        let rs = RootSystem::new(ty("A2"));
        assert_eq!(rs.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn g2_symmetrizer_and_coroots() {
        let rs = RootSystem::new(ty("G2"));
        assert_eq!(rs.symmetrizer(), &[3, 1]);
        // α1 is long, so the highest root is 2α1 + 3α2.
        let top = rs.positive_roots().last().unwrap().clone();
        assert_eq!(top, vec![2, 3]);
        for k in 0..rs.num_roots() {
            let h = rs.coroot_coefficients(k);
            let root = rs.root(k);
            // ⟨β, β^∨⟩ = 2.
            let pairing: i64 = (0..2).map(|i| h[i] * rs.coroot_pairing(&root, i)).sum();
            assert_eq!(pairing, 2);
        }
    }

    #[test]
    fn self_dual_list() {
        assert!(is_self_dual_type(ty("B3")));
        assert!(!is_self_dual_type(ty("A2")));
        assert!(is_self_dual_type(ty("D4")));
        assert!(!is_self_dual_type(ty("D5")));
        assert!(is_self_dual_type(ty("C2")));
        assert!(!is_self_dual_type(ty("E6")));
    }

    #[test]
    fn self_duality_three_ways() {
        for t in CartanType::all_up_to_rank(8) {
            let rs = RootSystem::new(t);
            let even = invariant_degrees(t).iter().all(|d| d % 2 == 0);
            let w0 = longest_element(&rs).matrix.is_minus_identity();
            assert_eq!(is_self_dual_type(t), even, "{t}");
            assert_eq!(even, w0, "{t}");
        }
    }

    #[test]
    fn degree_product_is_weyl_order() {
        for t in CartanType::all_up_to_rank(6) {
            let rs = RootSystem::new(t);
            let Ok(w) = weyl_enumerate(&rs, DEFAULT_WEYL_CAP) else {
                continue;
            };
            assert_eq!(invariant_degrees(t).iter().product::<usize>(), w.len(), "{t}");
        }
    }
}
