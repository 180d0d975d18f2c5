use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use orthopos::orbit::{is_admissible_def, is_admissible_moves, seed_from_table};
use orthopos::poset::verify_order_axioms;
use orthopos::{build_h_table, build_poset, enumerate_orbit, verify_braid, RootSystem};
use orthopos_bench::WORKLOADS;

fn root_systems(c: &mut Criterion) {
    let mut g = c.benchmark_group("root_system");
    for name in ["D8", "E8"] {
        let dt = name.parse().unwrap();
        g.bench_function(name, |b| b.iter(|| RootSystem::new(black_box(dt))));
    }
    g.finish();
}

fn orbits(c: &mut Criterion) {
    let mut g = c.benchmark_group("orbit");
    for w in WORKLOADS {
        let rs = Arc::new(RootSystem::new(w.dtype()));
        let seed = seed_from_table(&rs, w.size, w.variant)
            .unwrap()
            .orthoset(&rs)
            .unwrap();
        g.bench_function(format!("enumerate/{}", w.name), |b| {
            b.iter(|| enumerate_orbit(rs.clone(), black_box(seed.clone())).unwrap())
        });
        let orbit = w.orbit();
        g.bench_function(format!("admissible_def/{}", w.name), |b| {
            b.iter(|| is_admissible_def(black_box(&orbit)))
        });
        g.bench_function(format!("admissible_moves/{}", w.name), |b| {
            b.iter(|| is_admissible_moves(black_box(&orbit)))
        });
    }
    g.finish();
}

fn posets(c: &mut Criterion) {
    let mut g = c.benchmark_group("poset");
    g.sample_size(20);
    for w in WORKLOADS {
        let orbit = w.orbit();
        g.bench_function(format!("build/{}", w.name), |b| {
            b.iter(|| build_poset(black_box(orbit.clone())).unwrap())
        });
        let p = w.poset();
        g.bench_function(format!("axioms/{}", w.name), |b| {
            b.iter(|| verify_order_axioms(black_box(&p)))
        });
    }
    g.finish();
}

fn representation(c: &mut Criterion) {
    let mut g = c.benchmark_group("representation");
    g.sample_size(10);
    for w in WORKLOADS {
        let p = w.poset();
        g.bench_function(format!("h_table/{}", w.name), |b| {
            b.iter(|| build_h_table(black_box(&p)).unwrap())
        });
        let ht = build_h_table(&p).unwrap();
        g.bench_function(format!("braid/{}", w.name), |b| {
            b.iter(|| verify_braid(black_box(&p), &ht).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, root_systems, orbits, posets, representation);
criterion_main!(benches);
