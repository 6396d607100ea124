use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use nst_bench::load;
use nst_core::coords::QVector;
use nst_core::enumerate::{enumerate_admissible_rays, find_positive_chi_surface, ConeSpec};
use nst_core::pipeline::{test_incompressible_with, PipelineOptions};
use nst_core::surface::reconstruct_from_q;
use nst_core::triangulation::{simplify, truncate_ideal_vertices};

fn enumeration(c: &mut Criterion) {
    let fig8 = load("4_1");
    c.bench_function("figure-eight quad rays", |b| {
        b.iter(|| enumerate_admissible_rays(&ConeSpec::q(&fig8)))
    });
    let k = load("8_17");
    c.bench_function("8_17 closed-surface rays", |b| {
        b.iter(|| enumerate_admissible_rays(&ConeSpec::q0(&k).unwrap()))
    });
}

fn search(c: &mut Criterion) {
    let t = truncate_ideal_vertices(&load("4_1")).unwrap();
    let (t, _) = simplify(&t, 1);
    c.bench_function("figure-eight exterior disc search", |b| {
        b.iter(|| find_positive_chi_surface(&t, None).unwrap())
    });
}

fn incompressibility(c: &mut Criterion) {
    let t = load("3_1");
    let ray = enumerate_admissible_rays(&ConeSpec::q0(&t).unwrap()).remove(0);
    let s = reconstruct_from_q(&t, &QVector(ray.0))
        .unwrap()
        .closed()
        .unwrap();
    let options = PipelineOptions {
        seed: 1,
        deterministic: true,
    };
    let mut g = c.benchmark_group("slow");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    g.bench_function("trefoil genus-two surface", |b| {
        b.iter(|| test_incompressible_with(&t, &s, &options).unwrap())
    });
    g.finish();
}

criterion_group!(benches, enumeration, search, incompressibility);
criterion_main!(benches);
