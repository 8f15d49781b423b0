use criterion::{criterion_group, criterion_main, Criterion};
use qpp_core::{brute_force_search, make_sector, CoeffRange, SearchBounds, SearchMode, SearchOptions};
use std::hint::black_box;

fn bench_restricted(c: &mut Criterion) {
    let bounds = SearchBounds::restricted(
        CoeffRange::new(-10, 10),
        CoeffRange::new(-10, 10),
        CoeffRange::new(0, 10),
    );
    let mut group = c.benchmark_group("restricted_search");
    group.sample_size(10);
    for (n, m) in [(4, 3), (12, 7), (1, 0)] {
        let s = make_sector(n, m).unwrap();
        group.bench_function(format!("{n}_{m}"), |b| {
            b.iter(|| brute_force_search(black_box(s), &bounds, SearchMode::Restricted, &SearchOptions::default()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_restricted);
criterion_main!(benches);
