use caaa::{run, AaaOptions, Domain};
use caaa_bench::catalog_fn;
use criterion::{criterion_group, criterion_main, Criterion};

fn end_to_end(c: &mut Criterion) {
    let mut group = c.benchmark_group("run");
    group.sample_size(10);
    let defaults = AaaOptions::default();
    for (name, domain) in [
        ("runge-exp", Domain::interval()),
        ("tanh-100x", Domain::interval()),
        ("abs-x", Domain::interval()),
        ("circle-branch", Domain::circle(true)),
        ("sqrt-branch", Domain::circle(false)),
        ("two-branch-axis", Domain::imaginary_axis(false)),
    ] {
        let f = catalog_fn(name);
        group.bench_function(name, |b| b.iter(|| run(&f, domain, &defaults).unwrap()));
    }
    group.finish();
}

fn lawson(c: &mut Criterion) {
    let f = catalog_fn("cmv");
    let opts = AaaOptions {
        max_degree: 12,
        lawson_steps: 20,
        ..AaaOptions::default()
    };
    c.bench_function("cmv degree 12 + 20 Lawson steps", |b| {
        b.iter(|| run(&f, Domain::interval(), &opts).unwrap())
    });
}

criterion_group!(benches, end_to_end, lawson);
criterion_main!(benches);
