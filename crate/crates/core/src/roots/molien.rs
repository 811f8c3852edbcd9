//! Invariant degrees from the Molien series `|W|⁻¹ Σ_w 1/det(1 − t·w)`.
//!
//! Independent of the Coxeter-element computation; used as a cross-check.

use std::collections::HashMap;

use super::{weyl_enumerate, RootSystem};
use crate::error::Result;

/// Power series of `1/q(t)` to order `len`, for `q(0) = 1`.
fn inverse_series(q: &[i128], len: usize) -> Vec<i128> {
    let mut out = vec![0i128; len];
    out[0] = 1;
    for k in 1..len {
        let s: i128 = (1..q.len().min(k + 1)).map(|j| q[j] * out[k - j]).sum();
        out[k] = -s;
    }
    out
}

/// Degrees extracted from the Molien series; enumerates `W` up to `cap`.
pub fn molien_degrees(rs: &RootSystem, cap: usize) -> Result<Vec<usize>> {
    let w = weyl_enumerate(rs, cap)?;
    let r = rs.rank();
    let len = rs.num_positive() + 2;
    let mut classes: HashMap<Vec<i64>, i128> = HashMap::new();
    for e in &w {
        *classes.entry(e.matrix.char_poly()).or_default() += 1;
    }
    let mut series = vec![0i128; len];
    for (cp, count) in &classes {
        // det(1 − t·w) is the reversed characteristic polynomial.
        let q: Vec<i128> = cp.iter().rev().map(|&c| c as i128).collect();
        for (s, c) in series.iter_mut().zip(inverse_series(&q, len)) {
            *s += count * c;
        }
    }
    let order = w.len() as i128;
    for s in series.iter_mut() {
        assert_eq!(*s % order, 0, "Molien coefficients are integers");
        *s /= order;
    }
    let mut degrees = Vec::with_capacity(r);
    while degrees.len() < r {
        let Some(k) = (1..len).find(|&k| series[k] != 0) else {
            break;
        };
        degrees.push(k);
        // Multiply by (1 − t^k).
        for i in (k..len).rev() {
            series[i] -= series[i - k];
        }
    }
    Ok(degrees)
}
