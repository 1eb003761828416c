use std::hint::black_box;

use amalgam_core::catalog::build_expr;
use amalgam_core::ideal::oracle::ideals_by_subgroup_filter;
use amalgam_core::lattice::IdealLattice;
use amalgam_core::spectrum::spectrum;
use amalgam_core::{Budget, Ring};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const B: Budget = Budget::DEFAULT;

fn ring(expr: &str) -> Ring {
    build_expr(expr, &B).unwrap().ring().unwrap().clone()
}

fn lattices(c: &mut Criterion) {
    let mut g = c.benchmark_group("ideal_lattice");
    for expr in ["(zmod 12)", "(truncpoly 2 2 2)", "(truncpoly 2 2 3)", "(product (zmod 4) (zmod 8))"] {
        let r = ring(expr);
        g.bench_with_input(BenchmarkId::new("closure", expr), &r, |b, r| {
            b.iter(|| IdealLattice::new(black_box(r), &B).unwrap())
        });
        if r.size() <= 64 {
            g.bench_with_input(BenchmarkId::new("subgroup_filter", expr), &r, |b, r| {
                b.iter(|| ideals_by_subgroup_filter(black_box(r)))
            });
        }
    }
    g.finish();
}

fn spectra(c: &mut Criterion) {
    let r = ring("(truncpoly 2 2 3)");
    c.bench_function("spectrum R63", |b| b.iter(|| spectrum(black_box(&r), &B).unwrap()));
}

criterion_group!(benches, lattices, spectra);
criterion_main!(benches);
