use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use torfold_bench::dense_poly;

fn arithmetic(c: &mut Criterion) {
    let mut group = c.benchmark_group("laurent");
    for e in [2u64, 4, 6] {
        let a = dense_poly(3, e);
        let b = dense_poly(3, 2);
        group.bench_with_input(BenchmarkId::new("mul", e), &e, |bench, _| {
            bench.iter(|| black_box(&a) * black_box(&b))
        });
        let product = &a * &b;
        group.bench_with_input(BenchmarkId::new("exact_div", e), &e, |bench, _| {
            bench.iter(|| black_box(&product).exact_div(black_box(&b)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, arithmetic);
criterion_main!(benches);
