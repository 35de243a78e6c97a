use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use torfold::periodic::build_aq_from_orientation;
use torfold::{foldability_search, CycleOrientation};
use torfold_bench::{gamma_seed, zigzag};

fn orbit_mutation(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit_seed");
    group.sample_size(20);
    for n in [1usize, 2, 3] {
        let seed = gamma_seed(n);
        let seq = zigzag(n, 5);
        group.bench_with_input(BenchmarkId::new("mutate_depth5", n), &n, |b, _| {
            b.iter(|| seed.mutate_sequence(black_box(&seq)).unwrap())
        });
        let reached = seed.mutate_sequence(&seq).unwrap();
        group.bench_with_input(BenchmarkId::new("fold", n), &n, |b, _| {
            b.iter(|| black_box(&reached).fold().unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("foldability_search");
    for n in [3usize, 4, 5, 6] {
        let pq = build_aq_from_orientation(&CycleOrientation::cyclic(n));
        group.bench_with_input(BenchmarkId::new("cyclic", n), &n, |b, _| {
            b.iter(|| foldability_search(black_box(&pq), 6).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, orbit_mutation, search);
criterion_main!(benches);
