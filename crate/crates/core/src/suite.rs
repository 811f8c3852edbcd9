//! The full verification suite, one result per criterion.

use serde::Serialize;

use crate::chevalley::{
    chevalley_involution, minus_psi, trace_form, verify_minus_psi, verify_minus_psi_sampled,
    ChevalleyAlgebra,
};
use crate::classical::rais_transpose_check;
use crate::engine::{dixmier_check, AdjointInvariants, LinearMap};
use crate::error::{Error, Result};
use crate::exact::GaussianRational as GR;
use crate::roots::{
    invariant_degrees, is_self_dual_type, longest_element, molien_degrees, CartanType, Family,
    RootSystem, DEFAULT_WEYL_CAP,
};
use crate::sl2::{generic_stabilizer_dim, verify_case, ModuleSpec, GENERIC_SAMPLES};

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub max_rank: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_rank: 8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CriterionResult {
    fn new(id: u8, title: &str) -> Self {
        CriterionResult {
            id,
            title: title.into(),
            passed: true,
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            self.failures.push(failure());
        }
    }

    fn error(&mut self, context: &str, e: Error) {
        self.check(false, || format!("{context}: {e}"));
    }
}

pub const CRITERIA: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

pub fn run(id: u8, opts: SuiteOptions) -> CriterionResult {
    match id {
        1 => structure_audit(opts),
        2 => psi_audit(opts),
        3 => self_duality(opts),
        4 => degree_tables(opts),
        5 => transpose_check(),
        6 => dixmier(),
        7 => sl2_cases(opts),
        8 => minus_identity(opts),
        9 => generic_stabilizers(opts),
        _ => {
            let mut r = CriterionResult::new(id, "unknown criterion");
            r.check(false, || format!("no criterion {id}"));
            r
        }
    }
}

pub fn run_all(opts: SuiteOptions) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&id| run(id, opts)).collect()
}

fn types(opts: SuiteOptions) -> Vec<CartanType> {
    CartanType::all_up_to_rank(opts.max_rank)
}

fn structure_audit(opts: SuiteOptions) -> CriterionResult {
    let mut r = CriterionResult::new(1, "structure audit: Jacobi, sl2 triples, Killing form");
    for t in types(opts) {
        match ChevalleyAlgebra::build(t) {
            Ok(alg) => {
                let a = alg.audit();
                r.check(
                    a.graded && a.antisymmetric && a.jacobi && a.sl2_triples && a.string_lengths,
                    || format!("{t}: bracket audit {a:?}"),
                );
                r.check(
                    a.killing_symmetric && a.killing_invariant && a.killing_determinant != "0",
                    || format!("{t}: Killing form audit {a:?}"),
                );
                r.check(alg.dimension() == t.algebra_dimension(), || {
                    format!("{t}: dimension {}", alg.dimension())
                });
                if t.family() == Family::E && t.rank() == 8 {
                    r.check(alg.dimension() == 248, || format!("dim E8 = {}", alg.dimension()));
                    let n = alg.root_system().num_positive();
                    r.check(n == 120, || format!("|Φ⁺(E8)| = {n}"));
                }
            }
            Err(e) => r.error(&t.to_string(), e),
        }
    }
    r
}

fn psi_audit(opts: SuiteOptions) -> CriterionResult {
    let mut r = CriterionResult::new(
        2,
        "ψ² = Id, ψ ∈ Aut, −ψ ∉ Aut, −ψ fixes the trace forms",
    );
    for t in types(opts) {
        let res = (|| -> Result<()> {
            let alg = ChevalleyAlgebra::build(t)?;
            let (psi, _) = chevalley_involution(&alg)?;
            r.check(psi.order == Some(2), || format!("{t}: ψ has order {:?}", psi.order));
            r.check(psi.is_automorphism, || format!("{t}: ψ is not an automorphism"));
            let m = minus_psi(&alg)?;
            r.check(!m.is_automorphism, || format!("{t}: −ψ is an automorphism"));
            let h = *invariant_degrees(t).last().unwrap();
            let ks: Vec<usize> = (2..=h).collect();
            let rep = if t.rank() <= 2 {
                let gens = ks
                    .iter()
                    .map(|&k| Ok((format!("p{k}"), trace_form(&alg, k)?)))
                    .collect::<Result<Vec<_>>>()?;
                verify_minus_psi(&alg, &gens)?
            } else {
                verify_minus_psi_sampled(&alg, &ks, opts.seed)?
            };
            r.check(rep.failing.is_empty(), || {
                format!("{t}: −ψ moves {:?} ({})", rep.failing, rep.method)
            });
            Ok(())
        })();
        if let Err(e) = res {
            r.error(&t.to_string(), e);
        }
    }
    r.notes.push(format!(
        "trace forms p_2..p_h checked symbolically for rank ≤ 2 and at {} seeded points otherwise",
        crate::sampling::POINTS_PER_IDENTITY
    ));
    r
}

fn self_duality(opts: SuiteOptions) -> CriterionResult {
    let mut r = CriterionResult::new(3, "self-dual ⇔ all degrees even ⇔ w₀ = −Id");
    for t in types(opts) {
        let rs = RootSystem::new(t);
        let a = is_self_dual_type(t);
        let b = invariant_degrees(t).iter().all(|d| d % 2 == 0);
        let c = longest_element(&rs).matrix.is_minus_identity();
        r.check(a == b && b == c, || {
            format!("{t}: self-dual {a}, even degrees {b}, w₀ = −Id {c}")
        });
    }
    r
}

fn degree_tables(opts: SuiteOptions) -> CriterionResult {
    let mut r = CriterionResult::new(4, "invariant degrees match the Molien series");
    let mut skipped = Vec::new();
    for t in types(opts) {
        let rs = RootSystem::new(t);
        match molien_degrees(&rs, DEFAULT_WEYL_CAP) {
            Ok(m) => {
                let d = invariant_degrees(t);
                r.check(m == d, || format!("{t}: Coxeter {d:?}, Molien {m:?}"));
            }
            Err(Error::GroupTooLarge { .. }) => skipped.push(t.to_string()),
            Err(e) => r.error(&t.to_string(), e),
        }
    }
    if opts.max_rank >= 4 {
        let d4 = invariant_degrees("D4".parse().unwrap());
        r.check(d4 == [2, 4, 4, 6], || format!("D4 degrees {d4:?}"));
    }
    if !skipped.is_empty() {
        r.notes.push(format!(
            "Weyl group above the enumeration cap {DEFAULT_WEYL_CAP}: {}",
            skipped.join(", ")
        ));
    }
    r
}

fn transpose_check() -> CriterionResult {
    let mut r = CriterionResult::new(
        5,
        "transpose fixes the char-poly generators of sl_n (n ≤ 5); −transpose ∈ Aut; transpose ∉ Aut",
    );
    for n in 2..=5 {
        match rais_transpose_check(n) {
            Ok(rep) => {
                r.check(rep.transpose_fixes_generators, || format!("sl{n}: transpose moves a generator"));
                r.check(rep.minus_transpose_is_automorphism, || {
                    format!("sl{n}: −transpose is not an automorphism")
                });
                r.check(!rep.transpose_is_automorphism, || {
                    format!("sl{n}: transpose is an automorphism")
                });
            }
            Err(e) => r.error(&format!("sl{n}"), e),
        }
    }
    r
}

fn dixmier() -> CriterionResult {
    let mut r = CriterionResult::new(6, "Lie stabilizer of the classical generators equals ad 𝔤");
    for (t, dim) in [("A1", 3), ("A2", 8), ("B2", 10)] {
        match dixmier_check(t.parse().unwrap()) {
            Ok(rep) => {
                r.check(rep.lie_stabilizer_dimension == dim, || {
                    format!("{t}: dimension {}", rep.lie_stabilizer_dimension)
                });
                r.check(rep.equals_ad, || format!("{t}: span differs from ad 𝔤"));
            }
            Err(e) => r.error(t, e),
        }
    }
    r
}

fn sl2_cases(opts: SuiteOptions) -> CriterionResult {
    let mut r = CriterionResult::new(
        7,
        "SL2 cases (1)-(5): claimed generators, Lie stabilizers, scalar subgroups, perturbations",
    );
    for id in 1..=5 {
        match verify_case(id, opts.seed) {
            Ok(rep) => {
                for m in &rep.modules {
                    r.checks += 1;
                    if !m.passed {
                        r.passed = false;
                        r.failures.extend(m.failures.iter().cloned());
                    }
                }
            }
            Err(e) => r.error(&format!("case {id}"), e),
        }
    }
    r
}

fn minus_identity(opts: SuiteOptions) -> CriterionResult {
    let mut r = CriterionResult::new(8, "−Id fixes the generators for self-dual types of rank ≤ 4");
    let mut converse = Vec::new();
    for t in CartanType::all_up_to_rank(opts.max_rank.min(4)) {
        let res = (|| -> Result<()> {
            let inv = AdjointInvariants::new(t)?;
            let dim = inv.algebra().dimension();
            let m = inv.membership(&LinearMap::scalar(dim, GR::from_int(-1)), opts.seed)?;
            if is_self_dual_type(t) {
                r.check(m.member, || {
                    format!("{t}: −Id moves {:?}", m.moved_generator)
                });
            } else if !m.member {
                converse.push(format!("{t} ({})", m.moved_generator.unwrap_or_default()));
            }
            Ok(())
        })();
        if let Err(e) = res {
            r.error(&t.to_string(), e);
        }
    }
    if !converse.is_empty() {
        r.notes.push(format!("−Id moves an odd generator of {}", converse.join(", ")));
    }
    r
}

/// Expected generic stabilizer dimensions.
pub const GENERIC_STABILIZER_TABLE: [(&str, usize); 8] = [
    ("R1", 1),
    ("2R1", 0),
    ("3R1", 0),
    ("R2", 0),
    ("2R2", 0),
    ("R2+R1", 0),
    ("R3", 0),
    ("R4", 0),
];

fn generic_stabilizers(opts: SuiteOptions) -> CriterionResult {
    let mut r = CriterionResult::new(9, "generic stabilizer dimensions in 𝔰𝔩₂");
    for (s, expected) in GENERIC_STABILIZER_TABLE {
        let spec: ModuleSpec = s.parse().unwrap();
        match generic_stabilizer_dim(&spec, GENERIC_SAMPLES, opts.seed) {
            Ok(d) => r.check(d == expected, || format!("{s}: dimension {d}, expected {expected}")),
            Err(e) => r.error(s, e),
        }
    }
    r
}
