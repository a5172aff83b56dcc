use criterion::{criterion_group, criterion_main, Criterion};
use properad_kit::gamma::{hom_set, reedy_factorize};
use properad_kit::graph::{canonical_form, Color};
use properad_kit::properad::{graded_properad, monoid_catalog, nerve, GradedSpec};
use properad_kit::samples;
use properad_kit::substitution::{enumerate_cofaces_into, substitute, SubstitutionAssignment};
use properad_kit::WiringGraph;
use std::collections::BTreeMap;
use std::hint::black_box;

fn graph_ops(c: &mut Criterion) {
    let tree = samples::four_vertex_tree();
    c.bench_function("canonical_form/tree", |b| {
        b.iter(|| canonical_form(black_box(&tree)))
    });

    let host = samples::wide_host();
    let pgc = samples::wide_pgc();
    c.bench_function("substitute/widen", |b| {
        b.iter(|| {
            substitute(
                black_box(&host),
                &SubstitutionAssignment::aligned("x", pgc.clone()),
            )
            .unwrap()
        })
    });

    let widened = substitute(&host, &SubstitutionAssignment::aligned("x", pgc)).unwrap();
    c.bench_function("cofaces/widened_host", |b| {
        b.iter(|| enumerate_cofaces_into(black_box(&widened)))
    });
}

fn category_ops(c: &mut Criterion) {
    let l2 = WiringGraph::linear(2);
    let l3 = WiringGraph::linear(3);
    c.bench_function("hom_set/L2_L3", |b| {
        b.iter(|| hom_set(black_box(&l2), black_box(&l3)))
    });

    let f = samples::factor_morphism();
    c.bench_function("reedy_factorize/walkthrough", |b| {
        b.iter(|| reedy_factorize(black_box(&f)).unwrap())
    });
}

fn properad_ops(c: &mut Criterion) {
    let catalog = monoid_catalog();
    let p = graded_properad(&GradedSpec {
        colors: vec![Color::from("a")],
        max_in: 2,
        max_out: 2,
        monoid: catalog[1].clone(),
        twist: 0,
        modulus: 1,
        weights: BTreeMap::new(),
    });
    let l2 = WiringGraph::linear(2);
    c.bench_function("nerve/two_vertex_chain", |b| {
        b.iter(|| nerve(black_box(&p), black_box(&l2)).unwrap())
    });
}

criterion_group!(benches, graph_ops, category_ops, properad_ops);
criterion_main!(benches);
