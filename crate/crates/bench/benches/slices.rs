use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mackey_bench::{dense_matrix, example_e};
use mackey_core::boxprod::{box_product, comparison_to_zero_slice};
use mackey_core::mackey::{burnside, constant_z, dual_z, CyclicGroupSpec};
use mackey_core::random::random_corpus;
use mackey_core::rep::{sdim_bounds, GSet, SphereSpec};
use mackey_core::slice::{coslice_filtration, slice_tower, zero_slice_quotient};
use mackey_core::zmod::snf;

fn smith_forms(c: &mut Criterion) {
    let mut group = c.benchmark_group("snf");
    for n in [3, 6, 10] {
        let m = dense_matrix(n, 42);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| snf(black_box(m))));
    }
    group.finish();
}

fn burnside_towers(c: &mut Criterion) {
    let mut group = c.benchmark_group("burnside_tower");
    for (p, n) in [(2, 2), (2, 3), (3, 2), (5, 1)] {
        let a = burnside(CyclicGroupSpec::new(p, n).unwrap());
        group.bench_with_input(BenchmarkId::new(format!("C{p}"), n), &a, |b, a| b.iter(|| slice_tower(black_box(a))));
    }
    group.finish();
}

fn random_functors(c: &mut Criterion) {
    let corpus = random_corpus(1, 20).unwrap();
    c.bench_function("coslice_filtration/corpus20", |b| {
        b.iter(|| corpus.iter().map(|m| coslice_filtration(black_box(m)).unwrap().top_index()).sum::<u64>())
    });
    c.bench_function("zero_slice_quotient/corpus20", |b| {
        b.iter(|| corpus.iter().filter(|m| zero_slice_quotient(black_box(m)).is_ok()).count())
    });
}

fn box_products(c: &mut Criterion) {
    let e = example_e();
    let c2 = CyclicGroupSpec::new(2, 1).unwrap();
    let c4 = CyclicGroupSpec::new(2, 2).unwrap();
    c.bench_function("box_product/E_Z", |b| b.iter(|| box_product(black_box(&e), &constant_z(c2))));
    c.bench_function("box_product/A_dualZ_C4", |b| {
        let (a, d) = (burnside(c4), dual_z(c4));
        b.iter(|| box_product(black_box(&a), black_box(&d)))
    });
    c.bench_function("comparison_to_zero_slice/E", |b| b.iter(|| comparison_to_zero_slice(black_box(&e))));
}

fn sdim_catalogue(c: &mut Criterion) {
    let spec = CyclicGroupSpec::new(2, 3).unwrap();
    let spheres: Vec<SphereSpec> =
        GSet::all_up_to(spec, 12).iter().map(|x| SphereSpec::permutation(x, 1).unwrap()).collect();
    c.bench_function("sdim/permutation_C8", |b| {
        b.iter(|| spheres.iter().map(|s| sdim_bounds(black_box(s)).unwrap().lower).sum::<i64>())
    });
}

criterion_group!(benches, smith_forms, burnside_towers, random_functors, box_products, sdim_catalogue);
criterion_main!(benches);
