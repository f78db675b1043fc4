use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use oxn_core::category::{cone_semigroup, enumerate_normal_cones, Category};
use oxn_core::chain::enumerate_oxn;
use oxn_core::semigroup::find_isomorphism;
use oxn_core::{ChainSize, FiniteSemigroup, LCategory, PiCategory, PoCategory};

fn oxn_table(n: ChainSize) -> FiniteSemigroup {
    let elems = enumerate_oxn(n);
    FiniteSemigroup::build(&elems, |a, b| a.compose(b)).unwrap()
}

fn cayley(c: &mut Criterion) {
    let mut group = c.benchmark_group("cayley_table");
    for k in [3, 4, 5] {
        let n = ChainSize::new(k).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &n, |b, &n| b.iter(|| oxn_table(black_box(n))));
    }
    group.finish();
}

fn factorization(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_factorize_all");
    let n = ChainSize::new(4).unwrap();
    let po = PoCategory::new(n);
    let pi = PiCategory::new(n);
    let po_morphisms = po.morphisms();
    let pi_morphisms = pi.morphisms();
    group.bench_function("powerset_n4", |b| {
        b.iter(|| po_morphisms.iter().for_each(|f| {
            black_box(po.normal_factorize(f));
        }))
    });
    group.bench_function("partition_n4", |b| {
        b.iter(|| pi_morphisms.iter().for_each(|f| {
            black_box(pi.normal_factorize(f));
        }))
    });
    group.finish();
}

fn cones(c: &mut Criterion) {
    let n = ChainSize::new(4).unwrap();
    let po = PoCategory::new(n);
    let vertex = po.objects()[0].clone();
    c.bench_function("enumerate_normal_cones_po_n4_top", |b| {
        b.iter(|| enumerate_normal_cones(&po, black_box(&vertex)).len())
    });
}

fn isomorphism(c: &mut Criterion) {
    let n = ChainSize::new(4).unwrap();
    let s = oxn_table(n);
    let l = LCategory::new(n);
    let t = cone_semigroup(&l, &l.principal_cones()).unwrap();
    c.bench_function("find_isomorphism_oxn_tl_n4", |b| b.iter(|| find_isomorphism(&s, &t).is_some()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = cayley, factorization, cones, isomorphism
}
criterion_main!(benches);
