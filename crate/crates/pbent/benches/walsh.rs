//! Exact spectrum transform: data-parallel path against the sequential one.
//!
//! The parallel path is compiled in by the default `parallel` feature; when
//! the feature is off, both benchmarks measure the same sequential code.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pbent::{fixture, walsh_spectrum, walsh_spectrum_seq, PAryFunction};

fn inputs() -> Vec<(&'static str, PAryFunction)> {
    vec![
        ("3^6", fixture("example-V").unwrap()),
        ("3^7", fixture("example-III").unwrap()),
        ("5^4", fixture("example-II").unwrap()),
    ]
}

fn bench_transform(c: &mut Criterion) {
    let mut group = c.benchmark_group("walsh-spectrum");
    for (label, f) in inputs() {
        group.bench_with_input(BenchmarkId::new("parallel", label), &f, |b, f| {
            b.iter(|| walsh_spectrum(f))
        });
        group.bench_with_input(BenchmarkId::new("sequential", label), &f, |b, f| {
            b.iter(|| walsh_spectrum_seq(f))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_transform);
criterion_main!(benches);
