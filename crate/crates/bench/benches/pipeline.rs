use criterion::{criterion_group, criterion_main, Criterion};
use hyperminor::{
    canonical_key, classify, enumerate_hypergraphs, minor_search_forbidden, normalize, reduce,
    SearchBudget,
};
use hyperminor_bench::{five_vertex, ladder};
use std::hint::black_box;

fn bench_normalize(c: &mut Criterion) {
    let h = five_vertex();
    c.bench_function("normalize five-vertex", |b| {
        b.iter(|| normalize(black_box(&h)))
    });
}

fn bench_reduce(c: &mut Criterion) {
    let h = ladder(6);
    c.bench_function("reduce ladder-6", |b| b.iter(|| reduce(black_box(&h))));
}

fn bench_classify(c: &mut Criterion) {
    let h = hyperminor::Hypergraph::from_parts(&[], &[("e", &["v", "w"], &["v", "w"])]);
    c.bench_function("classify loop example", |b| {
        b.iter(|| classify(black_box(&h)))
    });
}

fn bench_canonical_key(c: &mut Criterion) {
    let h = ladder(4);
    c.bench_function("canonical key ladder-4", |b| {
        b.iter(|| canonical_key(black_box(&h)))
    });
}

fn bench_minor_search(c: &mut Criterion) {
    let g4_padded = hyperminor::Hypergraph::from_parts(
        &["z"],
        &[("e", &["v1", "v2"], &["w"]), ("f", &["v1", "v2"], &["w"])],
    );
    let budget = SearchBudget::default();
    c.bench_function("minor search padded g4", |b| {
        b.iter(|| minor_search_forbidden(black_box(&g4_padded), &budget))
    });
}

fn bench_enumerate(c: &mut Criterion) {
    c.bench_function("enumerate 2v2e", |b| {
        b.iter(|| enumerate_hypergraphs(2, 2, true).count())
    });
}

criterion_group!(
    benches,
    bench_normalize,
    bench_reduce,
    bench_classify,
    bench_canonical_key,
    bench_minor_search,
    bench_enumerate
);
criterion_main!(benches);
