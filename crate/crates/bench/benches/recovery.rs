use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use std::hint::black_box;

use faultyalign::analysis::{brute_force_mle, tail_probability_exact, TailSpec};
use faultyalign::{run_algorithm1, NoiseParams, QueryPlan, SeedConfig};
use faultyalign_bench::oracle;

fn bench_algorithm(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_algorithm1");
    for &n in &[200usize, 800, 3200] {
        let params = NoiseParams::new(4, 0.45).unwrap();
        let cfg = SeedConfig::with_constant(2.0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter_batched(
                || oracle(n, 4, 0.45, 1).1,
                |mut o| black_box(run_algorithm1(n, &params, &cfg, &mut o).unwrap()),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn bench_tail(c: &mut Criterion) {
    let mut group = c.benchmark_group("tail_probability_exact");
    let params = NoiseParams::new(4, 0.02).unwrap();
    for &n in &[200usize, 2000] {
        let spec = TailSpec::new(n, params).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &spec, |b, spec| {
            b.iter(|| black_box(tail_probability_exact(spec).unwrap()))
        });
    }
    group.finish();
}

fn bench_mle(c: &mut Criterion) {
    let (_, mut o) = oracle(8, 3, 0.4, 3);
    let transcript = o.execute_plan(&QueryPlan::complete(8)).unwrap();
    let params = *o.params();
    c.bench_function("brute_force_mle/n8_k3", |b| {
        b.iter(|| black_box(brute_force_mle(&transcript, 8, &params).unwrap()))
    });
}

criterion_group!(benches, bench_algorithm, bench_tail, bench_mle);
criterion_main!(benches);
