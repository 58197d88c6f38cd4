use asep2::hecke::{apply_scaled_gen, monomial_basis};
use asep2::model::{markov_matrix, Sector};
use asep2::montecarlo::{simulate, SimConfig};
use asep2::observables::{mimachi_partition, partition_hom, QuadratureSettings};
use asep2::qkz::{build_state, h_table};
use asep2_bench::physical_point;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn state_construction(c: &mut Criterion) {
    let p = physical_point();
    let mut g = c.benchmark_group("build_state");
    for (n, m) in [(3, 1), (4, 1), (5, 2), (6, 2)] {
        g.bench_with_input(BenchmarkId::from_parameter(format!("N{n}_m{m}")), &(n, m), |b, &(n, m)| {
            b.iter(|| build_state(n, m, black_box(&p)).unwrap())
        });
    }
    g.finish();
}

fn markov(c: &mut Criterion) {
    let p = physical_point();
    let s = Sector::new(6, 2).unwrap();
    c.bench_function("markov_matrix N6_m2", |b| b.iter(|| markov_matrix(&s, black_box(&p), false).unwrap()));
}

fn hecke(c: &mut Criterion) {
    let p = physical_point();
    let basis = monomial_basis(4, 3);
    c.bench_function("scaled generators on degree-3 basis, N4", |b| {
        b.iter(|| {
            for poly in &basis {
                for i in 0..=4 {
                    black_box(apply_scaled_gen(i, poly, &p).unwrap());
                }
            }
        })
    });
}

fn hcoeff(c: &mut Criterion) {
    let p = physical_point();
    c.bench_function("h_table n12", |b| {
        b.iter(|| h_table(black_box(12), p.a(), p.b(), p.c(), p.d(), p.t()).unwrap())
    });
}

fn partition(c: &mut Criterion) {
    let p = physical_point();
    let settings = QuadratureSettings::default();
    c.bench_function("exact Z N6_m3", |b| b.iter(|| partition_hom(6, 3, black_box(&p)).unwrap()));
    let mut g = c.benchmark_group("contour Z");
    for n in [50usize, 100, 200] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| mimachi_partition(n, n / 10, black_box(&p), 1.0, &settings).unwrap())
        });
    }
    g.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let p = physical_point();
    let cfg = SimConfig::new(4, 1, p, 100_000, 7);
    c.bench_function("simulate N4_m1 1e5 events", |b| b.iter(|| simulate(black_box(&cfg)).unwrap()));
}

criterion_group!(benches, state_construction, markov, hecke, hcoeff, partition, monte_carlo);
criterion_main!(benches);
