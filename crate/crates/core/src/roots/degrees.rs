//! Degrees of the basic invariants of the Weyl group.
//!
//! The eigenvalues of a Coxeter element `c` are `e^{2πi m_j/h}` with `h` the
//! order of `c` and `m_j` the exponents; the degrees are `m_j + 1`. The
//! exponents are read off by dividing the characteristic polynomial of `c`
//! by cyclotomic polynomials.

use num_integer::Integer;

use super::{CartanType, RootSystem};

/// Integer polynomials, ascending coefficients.
type IntPoly = Vec<i64>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Quotient of `a` by monic `b`, if the division is exact.
fn div_exact(a: &[i64], b: &[i64]) -> Option<IntPoly> {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    if a.len() < b.len() {
        return if a.iter().all(|&c| c == 0) { Some(vec![0]) } else { None };
    }
    debug_assert_eq!(*b.last().unwrap(), 1);
    let mut rem = a.clone();
    let mut q = vec![0; a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = rem[k + b.len() - 1];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    rem.iter().all(|&c| c == 0).then(|| trim(q))
}

pub(crate) fn cyclotomic(d: usize) -> IntPoly {
    let mut p = vec![0; d + 1];
    p[0] = -1;
    p[d] = 1;
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = div_exact(&p, &cyclotomic(e)).expect("cyclotomic divisor");
        }
    }
    p
}

/// The Coxeter number `h`, the order of `s_1 ⋯ s_r`.
pub fn coxeter_number(rs: &RootSystem) -> usize {
    rs.coxeter_element()
        .order(64)
        .expect("Coxeter element of finite order")
}

/// Degrees of the basic invariants, ascending.
pub fn invariant_degrees(t: CartanType) -> Vec<usize> {
    let rs = RootSystem::new(t);
    let h = coxeter_number(&rs);
    let mut rest = rs.coxeter_element().char_poly();
    let mut exponents = Vec::new();
    for d in (1..=h).filter(|d| h.is_multiple_of(*d)) {
        let phi = cyclotomic(d);
        while let Some(q) = div_exact(&rest, &phi) {
            rest = q;
            exponents.extend((1..=d).filter(|u| u.gcd(&d) == 1).map(|u| (h / d) * u));
        }
    }
    assert_eq!(rest, vec![1], "Coxeter polynomial is a product of cyclotomics");
    let mut degrees: Vec<usize> = exponents.into_iter().map(|m| m + 1).collect();
    degrees.sort_unstable();
    degrees
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(s: &str) -> Vec<usize> {
        invariant_degrees(s.parse().unwrap())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn small_degrees() {
        assert_eq!(deg("A1"), vec![2]);
        assert_eq!(deg("A2"), vec![2, 3]);
        assert_eq!(deg("B2"), vec![2, 4]);
        assert_eq!(deg("G2"), vec![2, 6]);
        assert_eq!(deg("D4"), vec![2, 4, 4, 6]);
        assert_eq!(deg("F4"), vec![2, 6, 8, 12]);
        assert_eq!(deg("E6"), vec![2, 5, 6, 8, 9, 12]);
        assert_eq!(deg("E8"), vec![2, 8, 12, 14, 18, 20, 24, 30]);
    }

    #[test]
    fn degree_identities() {
        for t in CartanType::all_up_to_rank(8) {
            let d = invariant_degrees(t);
            let rs = RootSystem::new(t);
            assert_eq!(d.len(), t.rank());
            assert_eq!(d.iter().map(|x| x - 1).sum::<usize>(), rs.num_positive(), "{t}");
            assert_eq!(*d.last().unwrap(), coxeter_number(&rs), "{t}");
        }
    }
}
