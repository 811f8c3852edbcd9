//! Shared inputs for the benchmarks.

use gprime_core::chevalley::ChevalleyAlgebra;
use gprime_core::roots::CartanType;
use gprime_core::{sampling, GaussianRational};

pub fn algebra(t: &str) -> ChevalleyAlgebra {
    let t: CartanType = t.parse().expect("valid type");
    ChevalleyAlgebra::build(t).expect("algebra builds")
}

/// A seeded rational point of `ℚ^dim`.
pub fn point(dim: usize, seed: u64) -> Vec<GaussianRational> {
    sampling::rational_point(&mut sampling::rng(seed), dim)
}
