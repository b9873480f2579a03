use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lq_bench::{nested_choices, product, walk};
use lq_core::{evaluate, exact_distribution, gamma_normalize, EvalConfig};

fn bench_evaluate(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_walk");
    for n in [2u32, 3, 4, 5] {
        let t = walk(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| {
            b.iter(|| evaluate(t, &EvalConfig::default()).unwrap())
        });
    }
    group.finish();
}

fn bench_gamma(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_normalize");
    for w in [2usize, 4, 8] {
        let t = product(w);
        group.bench_with_input(BenchmarkId::from_parameter(w), &t, |b, t| b.iter(|| gamma_normalize(t)));
    }
    group.finish();
}

fn bench_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_distribution");
    for d in [2usize, 4, 6] {
        let t = nested_choices(d);
        group.bench_with_input(BenchmarkId::from_parameter(d), &t, |b, t| {
            b.iter(|| exact_distribution(t).unwrap())
        });
    }
    let w3 = evaluate(&walk(3), &EvalConfig::default()).unwrap();
    group.bench_function("walk3", |b| b.iter(|| exact_distribution(&w3).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_evaluate, bench_gamma, bench_exact);
criterion_main!(benches);
