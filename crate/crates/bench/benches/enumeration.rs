use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nestoq::bintree::h_associahedron_via_binary;
use nestoq::families::snk_closed_form;
use nestoq::{enumerate_btrees, h_polynomial, Graph, Vars};
use nestoq_bench::workloads;

fn stream(c: &mut Criterion) {
    let mut group = c.benchmark_group("stream");
    for (name, b) in workloads() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &b, |bench, b| {
            bench.iter(|| enumerate_btrees(black_box(b)).unwrap().count())
        });
    }
    group.finish();
}

fn h_tqu(c: &mut Criterion) {
    let mut group = c.benchmark_group("h_tqu");
    for (name, b) in workloads() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &b, |bench, b| {
            bench.iter(|| h_polynomial(black_box(b), Vars::TQU).unwrap())
        });
    }
    group.finish();
}

fn closed_forms(c: &mut Criterion) {
    c.bench_function("snk_closed_form_8_4", |b| {
        b.iter(|| snk_closed_form(black_box(8), 4).unwrap())
    });
    c.bench_function("binary_trees_10", |b| {
        b.iter(|| h_associahedron_via_binary(black_box(10)))
    });
    let g = Graph::path(8).unwrap();
    c.bench_function("h_graph_path_8", |b| {
        b.iter(|| nestoq::graph::h_graph(black_box(&g), Vars::TQ).unwrap())
    });
}

criterion_group!(benches, stream, h_tqu, closed_forms);
criterion_main!(benches);
