//! Values checked against textbook formulas and independent computations.

use gprime_core::chevalley::{trace_form, ChevalleyAlgebra};
use gprime_core::classical::MatrixRealization;
use gprime_core::engine::{dixmier_check, lie_stabilizer, same_span};
use gprime_core::exact::PolyMatrix;
use gprime_core::roots::{invariant_degrees, weyl_enumerate, CartanType, RootSystem};
use gprime_core::sl2::{generic_stabilizer_dim, lie_action, module_invariant_gens, sl2_basis, ModuleSpec};
use gprime_core::{GaussianRational as GR, Matrix, Polynomial};

fn spec(s: &str) -> ModuleSpec {
    s.parse().unwrap()
}

fn poly(arity: usize, terms: &[(&[u16], i64)]) -> Polynomial {
    Polynomial::from_terms(arity, terms.iter().map(|(e, c)| (e.to_vec(), GR::from_int(*c))))
}

#[test]
fn e8_counts() {
    let alg = ChevalleyAlgebra::build("E8".parse().unwrap()).unwrap();
    assert_eq!(alg.dimension(), 248);
    assert_eq!(alg.root_system().num_positive(), 120);
}

#[test]
fn weyl_order_is_product_of_degrees() {
    // Independent of the degree computation: count the enumerated group.
    for t in CartanType::all_up_to_rank(5) {
        let w = weyl_enumerate(&RootSystem::new(t), 100_000).unwrap();
        let prod: usize = invariant_degrees(t).iter().product();
        assert_eq!(w.len(), prod, "{t}");
    }
}

#[test]
fn killing_form_is_a_multiple_of_trace_form() {
    // On sl_n: tr(ad X ad X) = 2n tr(X²).
    for n in 2..=4 {
        let t: CartanType = format!("A{}", n - 1).parse().unwrap();
        let alg = ChevalleyAlgebra::build(t).unwrap();
        let real = MatrixRealization::new(&alg).unwrap();
        let x: PolyMatrix = real.generic_element();
        let tr2 = x.mul(&x).trace().scale(&GR::from_int(2 * n as i64));
        assert_eq!(trace_form(&alg, 2).unwrap(), tr2, "sl{n}");
    }
}

#[test]
fn cubic_discriminant_matches_textbook() {
    // a x³ + b x²y + c xy² + d y³: b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd.
    let disc = poly(
        4,
        &[
            (&[0, 2, 2, 0], 1),
            (&[1, 0, 3, 0], -4),
            (&[0, 3, 0, 1], -4),
            (&[2, 0, 0, 2], -27),
            (&[1, 1, 1, 1], 18),
        ],
    );
    let g = &module_invariant_gens(&spec("R3")).unwrap()[0].1;
    assert!(*g == disc || *g == -&disc, "{g}");
}

#[test]
fn quartic_invariants_match_textbook() {
    // a x⁴ + b x³y + c x²y² + d xy³ + e y⁴.
    let i = poly(5, &[(&[1, 0, 0, 0, 1], 12), (&[0, 1, 0, 1, 0], -3), (&[0, 0, 2, 0, 0], 1)]);
    let j = poly(
        5,
        &[
            (&[1, 0, 1, 0, 1], 72),
            (&[0, 1, 1, 1, 0], 9),
            (&[1, 0, 0, 2, 0], -27),
            (&[0, 2, 0, 0, 1], -27),
            (&[0, 0, 3, 0, 0], -2),
        ],
    );
    let gens = module_invariant_gens(&spec("R4")).unwrap();
    assert_eq!(gens[0].1, i);
    assert_eq!(gens[1].1, j);
}

#[test]
fn kernel_ranks_at_explicit_points() {
    let kernel = |s: &str, v: &[i64]| {
        let sp = spec(s);
        let v: Vec<GR> = v.iter().map(|&x| GR::from_int(x)).collect();
        let cols: Vec<Vec<GR>> = sl2_basis()
            .iter()
            .map(|xi| lie_action(&sp, xi).unwrap().mul_vec(&v))
            .collect();
        3 - Matrix::from_columns(&cols).rank()
    };
    assert_eq!(kernel("R1", &[1, 0]), 1);
    assert_eq!(kernel("2R1", &[1, 0, 0, 1]), 0);
    assert_eq!(kernel("R2", &[0, 1, 0]), 1);
    assert_eq!(generic_stabilizer_dim(&spec("R1"), 8, 0).unwrap(), 1);
    assert_eq!(generic_stabilizer_dim(&spec("2R1"), 8, 0).unwrap(), 0);
    assert_eq!(generic_stabilizer_dim(&spec("R4"), 8, 0).unwrap(), 0);
}

#[test]
fn lie_stabilizers_of_binary_forms_are_sl2() {
    for s in ["R3", "R4", "R2", "2R2", "R2+R1"] {
        let sp = spec(s);
        let gens: Vec<Polynomial> = module_invariant_gens(&sp).unwrap().into_iter().map(|(_, p)| p).collect();
        let stab = lie_stabilizer(&gens, sp.total_dim()).unwrap();
        let image: Vec<Matrix> = sl2_basis().iter().map(|xi| lie_action(&sp, xi).unwrap()).collect();
        assert!(same_span(&stab, &image), "{s}");
    }
}

#[test]
fn dixmier_dimensions() {
    for (t, d) in [("A1", 3), ("A2", 8), ("B2", 10)] {
        let rep = dixmier_check(t.parse().unwrap()).unwrap();
        assert_eq!(rep.lie_stabilizer_dimension, d);
        assert!(rep.equals_ad);
    }
}
