use std::hint::black_box;

use cdspec_core::spectra::{char_poly_exact, sturm_real_roots, sym_eigenvalues, tol};
use cdspec_core::Family;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn jacobi(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi_complement_distance");
    for n in [7, 12, 20, 32] {
        let g = Family::LPrime { n }.build().unwrap();
        let d = g.complement_distance_matrix().unwrap().to_sym_matrix();
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| sym_eigenvalues(black_box(d), tol::SOLVER).unwrap())
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_poly_exact");
    for n in [7, 12, 20] {
        let g = Family::LPrime { n }.build().unwrap();
        let d = g.complement_distance_matrix().unwrap().to_int_matrix();
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| char_poly_exact(black_box(d)))
        });
    }
    group.finish();

    let g = Family::L { p: 10, q: 10 }.build().unwrap();
    let p = char_poly_exact(&g.complement_distance_matrix().unwrap().to_int_matrix());
    c.bench_function("sturm_roots_order_20", |b| {
        b.iter(|| sturm_real_roots(black_box(&p), -200.0, 200.0, tol::ROOT))
    });
}

criterion_group!(benches, jacobi, exact);
criterion_main!(benches);
