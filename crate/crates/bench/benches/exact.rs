use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use gprime_bench::{algebra, point};
use gprime_core::chevalley::{trace_form, trace_form_values, ChevalleyAlgebra};
use gprime_core::engine::lie_stabilizer;
use gprime_core::roots::CartanType;
use gprime_core::sl2::{module_invariant_gens, ModuleSpec};
use gprime_core::Polynomial;

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    g.sample_size(10);
    for t in ["G2", "F4", "E8"] {
        let ty: CartanType = t.parse().unwrap();
        g.bench_function(t, |b| b.iter(|| ChevalleyAlgebra::build(black_box(ty)).unwrap()));
    }
    g.finish();
}

fn trace_forms(c: &mut Criterion) {
    let g2 = algebra("G2");
    c.bench_function("trace_form/G2/p6", |b| b.iter(|| trace_form(black_box(&g2), 6).unwrap()));

    let mut g = c.benchmark_group("trace_form_values");
    g.sample_size(10);
    for (t, kmax) in [("F4", 12), ("E8", 30)] {
        let alg = algebra(t);
        let x = point(alg.dimension(), 0);
        g.bench_function(t, |b| b.iter(|| trace_form_values(&alg, black_box(&x), kmax).unwrap()));
    }
    g.finish();
}

fn stabilizers(c: &mut Criterion) {
    let spec: ModuleSpec = "R4".parse().unwrap();
    let gens: Vec<Polynomial> = module_invariant_gens(&spec).unwrap().into_iter().map(|(_, p)| p).collect();
    c.bench_function("lie_stabilizer/R4", |b| {
        b.iter(|| lie_stabilizer(black_box(&gens), spec.total_dim()).unwrap())
    });
}

criterion_group!(benches, build, trace_forms, stabilizers);
criterion_main!(benches);
