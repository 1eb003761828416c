use std::hint::black_box;

use amalgam_core::amalg::{duplication, spectrum_transfer, AmalgamatedRing};
use amalgam_core::catalog::{build_expr, Value};
use amalgam_core::{Budget, Ideal};
use criterion::{criterion_group, criterion_main, Criterion};

const B: Budget = Budget::DEFAULT;

fn amalg(expr: &str) -> AmalgamatedRing {
    match build_expr(expr, &B).unwrap() {
        Value::Amalgamation(a) => (*a).clone(),
        _ => unreachable!(),
    }
}

fn construction(c: &mut Criterion) {
    let z12 = build_expr("(zmod 12)", &B).unwrap().ring().unwrap().clone();
    let i = Ideal::generate(&z12, &[2]).unwrap();
    c.bench_function("duplication Z12 (2)", |b| b.iter(|| duplication(black_box(&i), &B).unwrap()));
}

fn transfer(c: &mut Criterion) {
    let am = amalg("(dup (zmod 12) (ideal (zmod 12) 2))");
    c.bench_function("spectrum transfer dup Z12 (2)", |b| {
        b.iter(|| spectrum_transfer(black_box(&am), &B).unwrap())
    });
}

criterion_group!(benches, construction, transfer);
criterion_main!(benches);
