//! Criterion benchmarks over the main pipeline stages on the graphs that
//! dominate corpus runtime.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use matchrank::{
    enumerate_facets, enumerate_matchings, maximum_matching, proper_odd_ear_decomposition,
    verify_rank_at_most_one, Graph,
};

fn petersen() -> Graph {
    let outer = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
    let inner = [(5, 7), (7, 9), (6, 9), (6, 8), (5, 8)];
    let spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)];
    Graph::from_edges(10, outer.into_iter().chain(inner).chain(spokes)).unwrap()
}

fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    Graph::from_edges(n, e).unwrap()
}

fn bench_matching(c: &mut Criterion) {
    let p = petersen();
    c.bench_function("maximum_matching/petersen", |b| {
        b.iter(|| maximum_matching(black_box(&p)))
    });
    c.bench_function("enumerate_matchings/petersen", |b| {
        b.iter(|| enumerate_matchings(black_box(&p)).unwrap())
    });
}

fn bench_facets(c: &mut Criterion) {
    let p = petersen();
    c.bench_function("enumerate_facets/petersen", |b| {
        b.iter(|| enumerate_facets(black_box(&p)).unwrap())
    });
}

fn bench_ears(c: &mut Criterion) {
    let k9 = complete(9);
    c.bench_function("proper_odd_ear_decomposition/k9", |b| {
        b.iter(|| proper_odd_ear_decomposition(black_box(&k9)).unwrap())
    });
}

fn bench_verify(c: &mut Criterion) {
    let k5 = complete(5);
    c.bench_function("verify_rank_at_most_one/k5", |b| {
        b.iter(|| verify_rank_at_most_one(black_box(&k5)).unwrap())
    });
    let p = petersen();
    let mut slow = c.benchmark_group("verify");
    slow.sample_size(10);
    slow.bench_function("verify_rank_at_most_one/petersen", |b| {
        b.iter(|| verify_rank_at_most_one(black_box(&p)).unwrap())
    });
    slow.finish();
}

criterion_group!(
    benches,
    bench_matching,
    bench_facets,
    bench_ears,
    bench_verify
);
criterion_main!(benches);
