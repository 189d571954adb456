use criterion::{criterion_group, criterion_main, Criterion};

use canring::hilbert::hilbert_series;
use canring::resolution::minimal_resolution;
use canring::strata::{build, StratumKind};
use canring::{GbOptions, PrimeField};

fn instance(kind: StratumKind) -> canring::Ideal<PrimeField> {
    build(kind, PrimeField::default(), 1).unwrap().ideal
}

fn groebner(c: &mut Criterion) {
    let mut group = c.benchmark_group("groebner");
    for kind in [StratumKind::TypeA, StratumKind::TypeB, StratumKind::TypeDD, StratumKind::TypeDE] {
        let ideal = instance(kind);
        group.bench_function(kind.name(), |b| b.iter(|| ideal.groebner(&GbOptions::full()).unwrap()));
    }
    group.finish();
}

fn hilbert(c: &mut Criterion) {
    let ideal = instance(StratumKind::TypeDE);
    c.bench_function("hilbert/type-de", |b| b.iter(|| hilbert_series(&ideal, &GbOptions::full()).unwrap()));
}

fn resolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("resolution");
    group.sample_size(10);
    for kind in [StratumKind::TypeB, StratumKind::TypeDE] {
        let ideal = instance(kind);
        group.bench_function(kind.name(), |b| {
            b.iter(|| minimal_resolution(&ideal, None, &GbOptions::full()).unwrap())
        });
    }
    group.finish();
}

fn elimination(c: &mut Criterion) {
    let family = canring::strata::family_type_b(PrimeField::default(), 1, &[2]).unwrap();
    c.bench_function("eliminate/type-b-fiber", |b| {
        b.iter(|| family.eliminate_fiber(2, &GbOptions::full()).unwrap())
    });
}

criterion_group!(benches, groebner, hilbert, resolution, elimination);
criterion_main!(benches);
