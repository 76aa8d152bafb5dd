//! Bottom-up normality search: shared worker pool against forced
//! single-worker execution, on both verdict polarities.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pbent::{fixture, test_normality, Mode, PAryFunction, SearchOptions};

fn opts(workers: Option<usize>) -> SearchOptions {
    SearchOptions {
        workers,
        ..SearchOptions::default()
    }
}

fn run(f: &PAryFunction, k: usize, workers: Option<usize>) {
    test_normality(f, k, Mode::Constant, &opts(workers)).unwrap();
}

fn bench_search(c: &mut Criterion) {
    let f = fixture("example-I").unwrap();
    let mut group = c.benchmark_group("normality-search");
    group.sample_size(20);
    for k in [2usize, 3] {
        group.bench_with_input(BenchmarkId::new("pool", format!("3^6/k={k}")), &k, |b, &k| {
            b.iter(|| run(&f, k, None))
        });
        group.bench_with_input(
            BenchmarkId::new("single-worker", format!("3^6/k={k}")),
            &k,
            |b, &k| b.iter(|| run(&f, k, Some(1))),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_search);
criterion_main!(benches);
