use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use copychains::catalogue::{is_copy, Ambient, ProductSetExpr, SetExpr, StructureId};
use copychains::generic::GenericConfig;
use copychains::order::{enumerate_posets, is_ultrahomogeneous, FinPoset};
use copychains::par::{map_par, map_seq};
use copychains::qset::QSpace;
use copychains::sample::Sampler;

fn ultrahomogeneity(c: &mut Criterion) {
    let mut group = c.benchmark_group("ultrahomogeneous");
    for n in [4, 5] {
        let posets: Vec<FinPoset<String>> =
            enumerate_posets(n).unwrap().iter().map(|f| f.to_poset()).collect();
        group.bench_with_input(BenchmarkId::new("seq", n), &posets, |b, ps| {
            b.iter(|| map_seq(black_box(ps), |p| is_ultrahomogeneous(p).holds))
        });
        group.bench_with_input(BenchmarkId::new("par", n), &posets, |b, ps| {
            b.iter(|| map_par(black_box(ps), |p| is_ultrahomogeneous(p).holds))
        });
    }
    group.finish();
}

fn copy_predicate(c: &mut Criterion) {
    let amb = Ambient::new(StructureId::C(3), GenericConfig::default()).unwrap();
    let mut s = Sampler::new(1, QSpace::default());
    let sets: Vec<SetExpr> = (0..200)
        .map(|_| SetExpr::Product(ProductSetExpr::times(s.expr(4), 3)))
        .collect();
    let mut group = c.benchmark_group("is_copy C_3");
    group.bench_function("seq", |b| {
        b.iter(|| map_seq(black_box(&sets), |x| is_copy(&amb, x).unwrap().is_copy()))
    });
    group.bench_function("par", |b| {
        b.iter(|| map_par(black_box(&sets), |x| is_copy(&amb, x).unwrap().is_copy()))
    });
    group.finish();
}

criterion_group!(benches, ultrahomogeneity, copy_predicate);
criterion_main!(benches);
