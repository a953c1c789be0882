use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use realize_core::geom::lie_bracket;
use realize_core::suites::charts::tr3;
use realize_core::suites::instant_form::{build_instant_realization, opaque_of_speed, Accel};
use realize_core::suites::{run_suite, Options};
use realize_core::Q;

fn normalize(c: &mut Criterion) {
    let chart = tr3();
    let text = "(x1*xd2 - x2*xd1)^3/(1 + xd1^2) + w^3*(xd1 - xd2)/(w + 2) - f(1 - w^2)";
    c.bench_function("normalize", |b| b.iter(|| chart.parse(black_box(text)).unwrap()));
}

fn boost_bracket(c: &mut Criterion) {
    let chart = tr3();
    let r = build_instant_realization(Accel::Radial(opaque_of_speed(&chart, "f", 0))).unwrap();
    c.bench_function("lie_bracket K1 K2 (opaque f)", |b| {
        b.iter(|| lie_bracket(black_box(&r.k[0]), black_box(&r.k[1])).unwrap())
    });
}

fn jacobi_suite(c: &mut Criterion) {
    let opts = Options {
        masses: vec![Q::from_integer(1.into())],
        ..Options::default()
    };
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    g.bench_function("jacobi m=1", |b| b.iter(|| run_suite("jacobi", black_box(&opts)).unwrap()));
    g.finish();
}

criterion_group!(benches, normalize, boost_bracket, jacobi_suite);
criterion_main!(benches);
