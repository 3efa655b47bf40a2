use std::hint::black_box;

use cdspec_core::verify::{class_representatives, enumerate_diam_gt3, scan_extremal};
use criterion::{criterion_group, criterion_main, Criterion};

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    group.bench_function("enumerate_n6", |b| {
        b.iter(|| enumerate_diam_gt3(black_box(6), |_| {}).unwrap())
    });
    group.bench_function("scan_n6", |b| {
        b.iter(|| scan_extremal(black_box(6), 1, false).unwrap())
    });
    group.bench_function("scan_n7_all_workers", |b| {
        let workers = std::thread::available_parallelism().map_or(1, |w| w.get());
        b.iter(|| scan_extremal(black_box(7), workers, false).unwrap())
    });
    group.bench_function("representatives_n6", |b| {
        b.iter(|| class_representatives(black_box(6), 1).unwrap())
    });
    group.finish();
}

criterion_group!(benches, scans);
criterion_main!(benches);
