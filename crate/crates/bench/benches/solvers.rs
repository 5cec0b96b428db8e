use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cseval::{recover, SolverConfig, SolverKind};
use cseval_bench::planted;

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("recover");
    for &(n, m, k) in &[(64, 32, 4), (256, 100, 10)] {
        let (a, y) = planted(n, m, k);
        for solver in [SolverKind::Omp, SolverKind::Iht, SolverKind::BasisPursuit] {
            let spec = SolverConfig::from(solver).spec_for(k, m, 0.0);
            group.bench_with_input(BenchmarkId::new(solver.as_str(), format!("{n}x{m}k{k}")), &spec, |b, spec| {
                b.iter(|| recover(black_box(&a), black_box(&y), spec).unwrap())
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let (a, y) = planted(20, 10, 2);
    let spec = SolverConfig::from(SolverKind::ExhaustiveOracle).spec_for(2, 10, 0.0);
    c.bench_function("recover/exhaustive_oracle/20x10k2", |b| {
        b.iter(|| recover(black_box(&a), black_box(&y), &spec).unwrap())
    });
}

criterion_group!(benches, solvers, oracle);
criterion_main!(benches);
