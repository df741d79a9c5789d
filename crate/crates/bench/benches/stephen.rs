use adian::rword_subgraph::all_deltas_finite;
use adian::{classify, decide_equal, schutzenberger, Budget};
use adian_bench::corpus;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn bench_schutzenberger(c: &mut Criterion) {
    let mut group = c.benchmark_group("schutzenberger");
    for case in corpus() {
        group.bench_function(case.name, |b| {
            b.iter(|| schutzenberger(black_box(&case.word), &case.presentation, Budget::default()).is_ok())
        });
    }
    group.finish();
}

fn bench_deltas(c: &mut Criterion) {
    let mut group = c.benchmark_group("deltas");
    for case in corpus().into_iter().filter(|c| !c.presentation.relations().is_empty()) {
        group.bench_function(case.name, |b| {
            b.iter(|| all_deltas_finite(black_box(&case.word), &case.presentation, Budget::default()))
        });
    }
    group.finish();
}

fn bench_decide(c: &mut Criterion) {
    let case = &corpus()[0];
    let v = case.presentation.word("bbbbaaaa").unwrap();
    c.bench_function("decide/commutation", |b| {
        b.iter(|| decide_equal(black_box(&case.word), &v, &case.presentation, Budget::default()).verdict)
    });
    c.bench_function("classify/commutation", |b| b.iter(|| classify(black_box(&case.presentation))));
}

criterion_group!(benches, bench_schutzenberger, bench_deltas, bench_decide);
criterion_main!(benches);
