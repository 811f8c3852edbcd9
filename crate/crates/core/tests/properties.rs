use proptest::prelude::*;

use gprime_core::chevalley::{trace_form, ChevalleyAlgebra};
use gprime_core::engine::{derivative_along, lie_stabilizer, membership_test, scalar_subgroup, LinearMap};
use gprime_core::sl2::{action_matrix, module_invariant_gens, supported_modules, ModuleSpec};
use gprime_core::{GaussianRational as GR, Matrix, Polynomial};

fn small_rational() -> impl Strategy<Value = GR> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| GR::frac(n, d))
}

fn gaussian() -> impl Strategy<Value = GR> {
    (small_rational(), small_rational()).prop_map(|(a, b)| GR::new(a.re, b.re))
}

fn matrix2() -> impl Strategy<Value = Matrix> {
    prop::collection::vec(small_rational(), 4)
        .prop_map(|v| Matrix::from_rows(vec![v[..2].to_vec(), v[2..].to_vec()]))
}

/// `[[1, t], [0, 1]]·[[1, 0], [s, 1]]·[[1, u], [0, 1]]`, an element of SL₂.
fn sl2_element() -> impl Strategy<Value = Matrix> {
    (small_rational(), small_rational(), small_rational()).prop_map(|(t, s, u)| {
        let upper = |x: &GR| Matrix::from_rows(vec![vec![GR::ONE, x.clone()], vec![GR::ZERO, GR::ONE]]);
        let lower = Matrix::from_rows(vec![vec![GR::ONE, GR::ZERO], vec![s, GR::ONE]]);
        &(&upper(&t) * &lower) * &upper(&u)
    })
}

fn module() -> impl Strategy<Value = ModuleSpec> {
    prop::sample::select(supported_modules())
}

fn gens(spec: &ModuleSpec) -> Vec<Polynomial> {
    module_invariant_gens(spec).unwrap().into_iter().map(|(_, p)| p).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gaussian_field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        let parsed: GR = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn action_is_multiplicative(spec in module(), g in matrix2(), h in matrix2()) {
        let lhs = action_matrix(&spec, &(&g * &h)).unwrap();
        let rhs = &action_matrix(&spec, &g).unwrap() * &action_matrix(&spec, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sl2_elements_are_members(spec in module(), g in sl2_element()) {
        let phi = LinearMap::new(action_matrix(&spec, &g).unwrap()).unwrap();
        prop_assert!(membership_test(&gens(&spec), &phi).unwrap());
    }

    #[test]
    fn stabilizer_is_closed(spec in module(), g in sl2_element(), h in sl2_element()) {
        let p = gens(&spec);
        let n = spec.total_dim();
        // An outer member for some modules: −Id or i·Id when they qualify.
        let outer = [GR::from_int(-1), GR::I]
            .into_iter()
            .map(|s| LinearMap::scalar(n, s))
            .find(|m| membership_test(&p, m).unwrap())
            .unwrap_or_else(|| LinearMap::identity(n));
        let a = LinearMap::new(action_matrix(&spec, &g).unwrap()).unwrap().compose(&outer);
        let b = LinearMap::new(action_matrix(&spec, &h).unwrap()).unwrap();
        prop_assert!(membership_test(&p, &a.compose(&b)).unwrap());
        prop_assert!(membership_test(&p, &a.inverse().unwrap()).unwrap());
    }

    #[test]
    fn lie_stabilizer_annihilates_generators(spec in module(), v in prop::collection::vec(small_rational(), 6)) {
        let p = gens(&spec);
        let n = spec.total_dim();
        // Every supported module has dimension at most 6.
        let v = &v[..n];
        for a in lie_stabilizer(&p, n).unwrap() {
            for g in &p {
                let d = derivative_along(g, &a).unwrap();
                prop_assert!(d.evaluate(v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn compose_linear_is_multiplicative(entries in prop::collection::vec(small_rational(), 9)) {
        let a = Matrix::from_rows(entries.chunks(3).map(|r| r.to_vec()).collect());
        let x = Polynomial::var(3, 0);
        let y = Polynomial::var(3, 1);
        let z = Polynomial::var(3, 2);
        let p = &(&x * &y) + &z;
        let q = &(&x * &x) - &(&y * &z);
        let lhs = (&p * &q).compose_linear(&a).unwrap();
        let rhs = &p.compose_linear(&a).unwrap() * &q.compose_linear(&a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn scalar_generators_and_next_order() {
    for spec in supported_modules() {
        let p = gens(&spec);
        let n = spec.total_dim();
        let s = scalar_subgroup(&p).unwrap();
        let Some(d) = s.order() else {
            continue;
        };
        if let Some(l) = s.generator_value() {
            assert!(membership_test(&p, &LinearMap::scalar(n, l)).unwrap(), "{spec}");
        }
        // A primitive 2d-th root, when it lies in ℚ(i).
        let next = match d {
            1 => Some(GR::from_int(-1)),
            2 => Some(GR::I),
            _ => None,
        };
        if let Some(l) = next {
            assert!(!membership_test(&p, &LinearMap::scalar(n, l)).unwrap(), "{spec}");
        }
    }
}

#[test]
fn ad_lies_in_the_lie_stabilizer() {
    let alg = ChevalleyAlgebra::build("G2".parse().unwrap()).unwrap();
    let p = vec![trace_form(&alg, 2).unwrap(), trace_form(&alg, 6).unwrap()];
    for i in 0..alg.dimension() {
        for g in &p {
            assert!(derivative_along(g, &alg.ad_basis(i)).unwrap().is_zero());
        }
    }
}
