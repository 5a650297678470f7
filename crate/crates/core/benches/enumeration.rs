//! Benchmarks for the enumeration paths.
//!
//! `oracle/parallel` vs `oracle/sequential` measures the rayon fan-out
//! against the plain loop on the same search; with
//! `--no-default-features` the two coincide. Run with `cargo bench -p
//! crepant-core`.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use crepant_core::{
    classify_stage_j, classify_stage_j_tilde, oracle_enumerate, oracle_enumerate_sequential,
};

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for r_max in [12i64, 16] {
        group.bench_function(format!("parallel/r_max={r_max}"), |b| {
            b.iter(|| oracle_enumerate(black_box(r_max)).unwrap())
        });
        group.bench_function(format!("sequential/r_max={r_max}"), |b| {
            b.iter(|| oracle_enumerate_sequential(black_box(r_max)).unwrap())
        });
    }
    group.finish();
}

fn bench_classify(c: &mut Criterion) {
    c.bench_function("classify/stage_j", |b| b.iter(classify_stage_j));
    c.bench_function("classify/stage_j_tilde", |b| b.iter(classify_stage_j_tilde));
}

criterion_group!(benches, bench_oracle, bench_classify);
criterion_main!(benches);
