use caaa::{arrowhead_pencil_eigenvalues, min_singular_vector};
use caaa_bench::{random_arrowhead, random_matrix};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn svd(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_singular_vector");
    for m in [10, 40, 100] {
        // shape of a Loewner matrix with three samples per gap
        let a = random_matrix(3 * m, m, m as u64);
        group.bench_with_input(BenchmarkId::from_parameter(m), &a, |b, a| b.iter(|| min_singular_vector(a).unwrap()));
    }
    group.finish();
}

fn pencil(c: &mut Criterion) {
    let mut group = c.benchmark_group("arrowhead_pencil_eigenvalues");
    for m in [10, 40, 100] {
        let (diag, top) = random_arrowhead(m, m as u64);
        group.bench_with_input(BenchmarkId::from_parameter(m), &(diag, top), |b, (d, t)| {
            b.iter(|| arrowhead_pencil_eigenvalues(d, t).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, svd, pencil);
criterion_main!(benches);
