//! Trace forms `p_k(X) = tr((ad X)^k)`, their restriction to the Cartan
//! subalgebra, and the −ψ membership check.

use serde::Serialize;

use super::{minus_psi, ChevalleyAlgebra};
use crate::error::{Error, Result};
use crate::exact::modular::trace_power_sums;
use crate::exact::{common_denominator, GaussianRational as GR, Matrix, PolyMatrix, Polynomial, Rational};
use crate::roots::RootSystem;
use crate::sampling;

/// Largest dimension for which trace forms of degree above 2 are expanded
/// symbolically (rank ≤ 2).
pub const SYMBOLIC_DIM_LIMIT: usize = 14;

/// `p_k` as a polynomial in the coordinates of the Chevalley basis.
pub fn trace_form(alg: &ChevalleyAlgebra, k: usize) -> Result<Polynomial> {
    let dim = alg.dimension();
    if k == 0 {
        return Ok(Polynomial::constant(dim, GR::from_int(dim as i64)));
    }
    if k > 2 && dim > SYMBOLIC_DIM_LIMIT {
        return Err(Error::Unsupported(format!(
            "symbolic trace form of degree {k} in dimension {dim}; use point evaluation"
        )));
    }
    let ad: Vec<Matrix> = (0..dim).map(|i| alg.ad_basis(i)).collect();
    let a = PolyMatrix::generic_element(&ad);
    Ok(a.power_sums(k).pop().unwrap())
}

/// Exact `p_1(X), …, p_kmax(X)` at a point, by scaling to Gaussian integers
/// and multimodular power sums.
pub fn trace_form_values(alg: &ChevalleyAlgebra, x: &[GR], kmax: usize) -> Result<Vec<GR>> {
    let den = common_denominator(x.iter().flat_map(|v| [&v.re, &v.im]));
    let d = GR::real(Rational::from_bigint(den));
    let scaled: Vec<GR> = x.iter().map(|v| v * &d).collect();
    let sums = trace_power_sums(&alg.ad_matrix(&scaled)?, kmax)?;
    let mut dk = GR::ONE;
    Ok(sums
        .into_iter()
        .map(|s| {
            dk = &dk * &d;
            &s / &dk
        })
        .collect())
}

/// `p_k` restricted to the Cartan subalgebra, computed from the root
/// eigenvalues: `Σ_{ρ∈Φ} (Σ_i a_i ⟨ρ, α_i^∨⟩)^k`.
pub fn cartan_trace_form(rs: &RootSystem, k: usize) -> Polynomial {
    let r = rs.rank();
    let mut acc = Polynomial::zero(r);
    for q in 0..rs.num_roots() {
        let rho = rs.root(q);
        let coeffs: Vec<GR> = (0..r)
            .map(|i| GR::from_int(rs.coroot_pairing(&rho, i)))
            .collect();
        acc = &acc + &Polynomial::linear(&coeffs).pow(k as u32);
    }
    acc
}

/// Sets every root-space coordinate to zero.
pub fn restrict_to_cartan(alg: &ChevalleyAlgebra, p: &Polynomial) -> Result<Polynomial> {
    if p.arity() != alg.dimension() {
        return Err(Error::Arity {
            expected: alg.dimension(),
            found: p.arity(),
        });
    }
    let keep: Vec<usize> = (0..alg.rank()).collect();
    Ok(p.restrict_to(&keep))
}

/// Simple reflection `s_j` on Cartan coordinates `Σ a_i h_i`:
/// `a_j ↦ a_j − Σ_i a_ij a_i`.
pub fn cartan_reflection(rs: &RootSystem, j: usize) -> Matrix {
    let r = rs.rank();
    let a = rs.cartan_matrix();
    let mut m = Matrix::identity(r);
    for i in 0..r {
        m[(j, i)] -= &GR::from_int(a[i][j]);
    }
    m
}

/// Whether `p` (in Cartan coordinates) is fixed by every simple reflection.
pub fn is_w_invariant(rs: &RootSystem, p: &Polynomial) -> Result<bool> {
    for j in 0..rs.rank() {
        if p.compose_linear(&cartan_reflection(rs, j))? != *p {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinusPsiReport {
    pub cartan_type: String,
    /// `symbolic` or `sampled`.
    pub method: String,
    pub generators: Vec<String>,
    pub fixed: Vec<bool>,
    pub failing: Vec<String>,
    pub minus_psi_is_automorphism: bool,
    /// A basis pair on which −ψ fails to respect brackets.
    pub defect_pair: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points_per_identity: Option<usize>,
    pub passed: bool,
}

impl MinusPsiReport {
    fn finish(
        alg: &ChevalleyAlgebra,
        method: &str,
        generators: Vec<String>,
        fixed: Vec<bool>,
        points: Option<usize>,
    ) -> Result<Self> {
        let m = minus_psi(alg)?;
        let defect = alg.homomorphism_defect(&m.matrix)?;
        let failing: Vec<String> = generators
            .iter()
            .zip(&fixed)
            .filter(|(_, f)| !**f)
            .map(|(g, _)| g.clone())
            .collect();
        Ok(MinusPsiReport {
            cartan_type: alg.cartan_type().to_string(),
            method: method.into(),
            passed: failing.is_empty() && !m.is_automorphism,
            generators,
            fixed,
            failing,
            minus_psi_is_automorphism: m.is_automorphism,
            defect_pair: defect.map(|(i, j)| [alg.basis_label(i), alg.basis_label(j)]),
            points_per_identity: points,
        })
    }
}

/// Checks `g∘(−ψ) = g` exactly for each named generator, and that −ψ is not
/// a bracket automorphism.
pub fn verify_minus_psi(
    alg: &ChevalleyAlgebra,
    gens: &[(String, Polynomial)],
) -> Result<MinusPsiReport> {
    let m = minus_psi(alg)?;
    let mut fixed = Vec::with_capacity(gens.len());
    for (_, g) in gens {
        fixed.push(g.compose_linear(&m.matrix)? == *g);
    }
    MinusPsiReport::finish(
        alg,
        "symbolic",
        gens.iter().map(|(n, _)| n.clone()).collect(),
        fixed,
        None,
    )
}

/// Point-sampled variant for trace forms `p_k`, `k ∈ degrees`:
/// `p_k(−ψX) = p_k(X)` at [`sampling::POINTS_PER_IDENTITY`] seeded points.
pub fn verify_minus_psi_sampled(
    alg: &ChevalleyAlgebra,
    degrees: &[usize],
    seed: u64,
) -> Result<MinusPsiReport> {
    let m = minus_psi(alg)?;
    let kmax = degrees.iter().copied().max().unwrap_or(0);
    let mut rng = sampling::rng(seed);
    let mut fixed = vec![true; degrees.len()];
    for _ in 0..sampling::POINTS_PER_IDENTITY {
        let x = sampling::rational_point(&mut rng, alg.dimension());
        let before = trace_form_values(alg, &x, kmax)?;
        let after = trace_form_values(alg, &m.matrix.mul_vec(&x), kmax)?;
        for (f, &k) in fixed.iter_mut().zip(degrees) {
            *f &= before[k - 1] == after[k - 1];
        }
    }
    MinusPsiReport::finish(
        alg,
        "sampled",
        degrees.iter().map(|k| format!("p{k}")).collect(),
        fixed,
        Some(sampling::POINTS_PER_IDENTITY),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::chevalley_involution;
    use crate::roots::{invariant_degrees, CartanType};

    fn build(s: &str) -> ChevalleyAlgebra {
        ChevalleyAlgebra::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn killing_form_of_sl2_as_polynomial() {
        let a = build("A1");
        let p2 = trace_form(&a, 2).unwrap();
        let expected = Polynomial::from_terms(
            3,
            [(vec![2, 0, 0], GR::from_int(8)), (vec![0, 1, 1], GR::from_int(8))],
        );
        assert_eq!(p2, expected);
        let r = restrict_to_cartan(&a, &p2).unwrap();
        assert_eq!(r, Polynomial::from_terms(1, [(vec![2], GR::from_int(8))]));
    }

    #[test]
    fn odd_trace_forms_vanish_symbolically() {
        for t in ["A1", "A2", "B2", "C2", "G2"] {
            let a = build(t);
            assert!(trace_form(&a, 3).unwrap().is_zero(), "{t}");
        }
        assert!(trace_form(&build("A2"), 5).unwrap().is_zero());
    }

    #[test]
    fn trace_forms_are_psi_invariant_and_restrict_correctly() {
        for t in ["A2", "B2", "G2"] {
            let a = build(t);
            let (psi, _) = chevalley_involution(&a).unwrap();
            for k in [2, 4] {
                let p = trace_form(&a, k).unwrap();
                assert_eq!(p.compose_linear(&psi.matrix).unwrap(), p, "{t} p{k}");
                assert_eq!(
                    restrict_to_cartan(&a, &p).unwrap(),
                    cartan_trace_form(a.root_system(), k),
                    "{t} p{k}"
                );
            }
        }
    }

    #[test]
    fn trace_form_is_invariant_under_nilpotent_conjugation() {
        // exp(ad x) on sl2, with (ad x)^3 = 0.
        let a = build("A1");
        let ad = a.ad_basis(1);
        let half = GR::frac(1, 2);
        let g = &(&Matrix::identity(3) + &ad) + &(&ad * &ad).scale(&half);
        for k in [2, 4] {
            let p = trace_form(&a, k).unwrap();
            assert_eq!(p.compose_linear(&g).unwrap(), p);
        }
    }

    #[test]
    fn cartan_trace_forms_are_w_invariant() {
        for t in CartanType::all_up_to_rank(4) {
            let rs = RootSystem::new(t);
            for k in invariant_degrees(t) {
                assert!(is_w_invariant(&rs, &cartan_trace_form(&rs, k)).unwrap(), "{t} p{k}");
            }
            // Odd restrictions vanish since w₀ or ψ|𝔱 = −1 pairs ρ with −ρ.
            assert!(cartan_trace_form(&rs, 3).is_zero());
        }
    }

    #[test]
    fn point_values_match_symbolic_forms() {
        let a = build("G2");
        let mut rng = sampling::rng(3);
        let x = sampling::gaussian_point(&mut rng, a.dimension());
        let vals = trace_form_values(&a, &x, 6).unwrap();
        for k in [2, 3, 6] {
            let p = trace_form(&a, k).unwrap();
            assert_eq!(p.evaluate(&x).unwrap(), vals[k - 1], "p{k}");
        }
    }

    #[test]
    fn minus_psi_fixes_even_trace_forms() {
        let a = build("G2");
        let gens = vec![
            ("p2".to_string(), trace_form(&a, 2).unwrap()),
            ("p6".to_string(), trace_form(&a, 6).unwrap()),
        ];
        let rep = verify_minus_psi(&a, &gens).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.defect_pair.is_some());
        let sampled = verify_minus_psi_sampled(&build("F4"), &[2, 6, 8, 12], 0).unwrap();
        assert!(sampled.passed, "{sampled:?}");
    }
}
