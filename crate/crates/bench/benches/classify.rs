use std::hint::black_box;

use amalgam_core::catalog::build_expr;
use amalgam_core::classify::gauss_criterion;
use amalgam_core::{classify, Budget, Ring};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const B: Budget = Budget::DEFAULT;

fn ring(expr: &str) -> Ring {
    build_expr(expr, &B).unwrap().ring().unwrap().clone()
}

fn classification(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    g.sample_size(10);
    for expr in ["(zmod 6)", "(zmod 12)", "(dup (zmod 4) (ideal (zmod 4) 2))", "(truncpoly 2 2 3)"] {
        let r = ring(expr);
        g.bench_with_input(BenchmarkId::new("degree 1", expr), &r, |b, r| {
            b.iter(|| classify(black_box(r), 1, &B).unwrap())
        });
    }
    g.finish();
}

fn criterion_path(c: &mut Criterion) {
    let r = ring("(truncpoly 2 2 3)");
    c.bench_function("gauss criterion R63", |b| b.iter(|| gauss_criterion(black_box(&r), &B).unwrap()));
}

criterion_group!(benches, classification, criterion_path);
criterion_main!(benches);
