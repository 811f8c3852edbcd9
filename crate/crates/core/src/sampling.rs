//! Seeded random points for exact point-evaluation checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{GaussianRational as GR, Rational};

/// Bound on numerators and denominators of sampled coordinates.
pub const HEIGHT: i64 = 100;

/// Points per identity in sampled checks.
pub const POINTS_PER_IDENTITY: usize = 20;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A point `(n_1/D, …, n_m/D)` with `|n_i| ≤ HEIGHT` and `1 ≤ D ≤ HEIGHT`.
///
/// A single denominator per point keeps the scaled point integral, which the
/// multimodular trace evaluation needs.
pub fn rational_point(rng: &mut impl Rng, m: usize) -> Vec<GR> {
    rational_point_with_height(rng, m, HEIGHT)
}

pub fn rational_point_with_height(rng: &mut impl Rng, m: usize, height: i64) -> Vec<GR> {
    let den = rng.gen_range(1..=height);
    (0..m)
        .map(|_| GR::real(Rational::new(rng.gen_range(-height..=height), den)))
        .collect()
}

/// Like [`rational_point`] but with independent real and imaginary parts.
pub fn gaussian_point(rng: &mut impl Rng, m: usize) -> Vec<GR> {
    let den = rng.gen_range(1..=HEIGHT);
    (0..m)
        .map(|_| {
            GR::new(
                Rational::new(rng.gen_range(-HEIGHT..=HEIGHT), den),
                Rational::new(rng.gen_range(-HEIGHT..=HEIGHT), den),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_reproducible_and_bounded() {
        let a = rational_point(&mut rng(7), 10);
        let b = rational_point(&mut rng(7), 10);
        assert_eq!(a, b);
        for v in &a {
            assert!(v.is_real());
            assert!(v.re.abs() <= Rational::from_int(HEIGHT));
        }
        assert_ne!(a, rational_point(&mut rng(8), 10));
    }
}
