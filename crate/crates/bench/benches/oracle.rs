use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use starfactor_core::families::{cycle, petersen, spider};
use starfactor_core::{classify, enumerate_star_factors, omega_oracle, DEFAULT_CAP};

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    for (name, g) in [("C12", cycle(12)), ("petersen", petersen()), ("spider_4x3", spider(4, 3))] {
        group.bench_function(name, |b| b.iter(|| omega_oracle(black_box(&g), DEFAULT_CAP)));
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let g = petersen();
    c.bench_function("enumerate/petersen", |b| b.iter(|| enumerate_star_factors(black_box(&g), DEFAULT_CAP)));
}

fn structural(c: &mut Criterion) {
    let g = spider(5, 4);
    c.bench_function("classify/spider_5x4", |b| b.iter(|| classify(black_box(&g), DEFAULT_CAP)));
}

criterion_group!(benches, oracle, enumeration, structural);
criterion_main!(benches);
