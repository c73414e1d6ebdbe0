use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use siltlab::algebra::load_algebra;
use siltlab::catalog::{build_catalog, Strategy};
use siltlab::hereditary::{build_epi_lattice, triangle_check};
use siltlab::scenario::algebra_file;
use siltlab::{par, Config};

fn modes() -> [(&'static str, bool); 2] {
    [("sequential", false), ("parallel", true)]
}

fn catalog(c: &mut Criterion) {
    let cfg = Config::default();
    let a = load_algebra(algebra_file("five_vertex.alg").unwrap(), None, 64).unwrap();
    let mut g = c.benchmark_group("five_vertex_catalog");
    g.sample_size(20);
    for (name, on) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            par::set_parallel(on);
            b.iter(|| build_catalog(&a, Strategy::Closure, &cfg).unwrap().len())
        });
    }
    g.finish();
}

fn a3(c: &mut Criterion) {
    let cfg = Config::default();
    let a = load_algebra(algebra_file("a3.alg").unwrap(), None, 64).unwrap();
    let cat = build_catalog(&a, Strategy::Knitting, &cfg).unwrap();
    let mut g = c.benchmark_group("a3");
    g.sample_size(10);
    for (name, on) in modes() {
        g.bench_function(BenchmarkId::new("triangle", name), |b| {
            par::set_parallel(on);
            b.iter(|| triangle_check(&a, &cat, &cfg).unwrap().epis)
        });
        g.bench_function(BenchmarkId::new("lattice", name), |b| {
            par::set_parallel(on);
            b.iter(|| build_epi_lattice(&a, &cat, &cfg).unwrap().nodes.len())
        });
    }
    g.finish();
    par::set_parallel(true);
}

criterion_group!(benches, catalog, a3);
criterion_main!(benches);
