//! Structure constants `N_{a,b}` from extraspecial pairs.
//!
//! For every non-simple positive root `η` the extraspecial pair `(α, β)` has
//! `α` the first simple root with `η − α ∈ Φ⁺`; there `N_{α,β} = p + 1` with
//! `p` the length of the `α`-string down from `β`. All other constants follow
//! from antisymmetry, `N_{−a,−b} = −N_{a,b}`, the triple rule
//! `N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)` for `a + b + c = 0`, and the
//! four-root relation for special pairs.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::roots::RootSystem;

pub(crate) struct StructureConstants<'a> {
    rs: &'a RootSystem,
    extraspecial: HashMap<usize, (usize, usize)>,
    memo: HashMap<(usize, usize), i64>,
}

impl<'a> StructureConstants<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        let mut extraspecial = HashMap::new();
        for eta in 0..rs.num_positive() {
            if rs.height(eta) == 1 {
                continue;
            }
            let alpha = (0..rs.num_positive())
                .find(|&a| rs.height(a) == 1 && diff(rs, eta, a).is_some_and(|b| rs.is_positive(b)))
                .expect("non-simple root has a simple summand");
            extraspecial.insert(eta, (alpha, diff(rs, eta, alpha).unwrap()));
        }
        StructureConstants {
            rs,
            extraspecial,
            memo: HashMap::new(),
        }
    }

    pub fn extraspecial_pair(&self, eta: usize) -> Option<(usize, usize)> {
        self.extraspecial.get(&eta).copied()
    }

    fn norm(&self, k: usize) -> i64 {
        let v = self.rs.root(k);
        self.rs.inner(&v, &v)
    }

    /// `N_{a,b}`, zero when `a + b` is not a root.
    pub fn get(&mut self, a: usize, b: usize) -> i64 {
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let rs = self.rs;
        let Some(s) = rs.sum(a, b) else {
            return 0;
        };
        let v = match (rs.is_positive(a), rs.is_positive(b)) {
            (true, true) if a > b => -self.get(b, a),
            (true, true) => self.special(a, b, s),
            (false, false) => -self.get(rs.negate(a), rs.negate(b)),
            _ => {
                let c = rs.negate(s);
                let (num, den, inner) = if rs.is_positive(b) == rs.is_positive(c) {
                    (self.norm(c), self.norm(a), self.get(b, c))
                } else {
                    (self.norm(c), self.norm(b), self.get(c, a))
                };
                exact(Ratio::new(num * inner, den))
            }
        };
        self.memo.insert((a, b), v);
        v
    }

    /// `N_{ξ,ζ}` for positive `ξ ≺ ζ` with `ξ + ζ = η`.
    fn special(&mut self, xi: usize, zeta: usize, eta: usize) -> i64 {
        let rs = self.rs;
        let (alpha, beta) = self.extraspecial[&eta];
        let n_ab = rs.string_down(alpha, beta) + 1;
        if (xi, zeta) == (alpha, beta) {
            return n_ab;
        }
        let (mxi, mzeta) = (rs.negate(xi), rs.negate(zeta));
        let mut t = Ratio::from_integer(0i64);
        let first = self.get(beta, mxi) * self.get(alpha, mzeta);
        if first != 0 {
            t += Ratio::new(first, self.norm(rs.sum(beta, mxi).unwrap()));
        }
        let second = self.get(mxi, alpha) * self.get(beta, mzeta);
        if second != 0 {
            t += Ratio::new(second, self.norm(rs.sum(alpha, mxi).unwrap()));
        }
        exact(t * Ratio::from_integer(self.norm(eta)) / Ratio::from_integer(n_ab))
    }
}

fn diff(rs: &RootSystem, a: usize, b: usize) -> Option<usize> {
    rs.sum(a, rs.negate(b))
}

fn exact(r: Ratio<i64>) -> i64 {
    assert!(r.is_integer(), "structure constant {r} is not an integer");
    r.to_integer()
}
