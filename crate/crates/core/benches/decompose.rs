use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use crn_core::{
    brute_force_decompositions_with, find_independent_decomposition, parse_network, Execution,
    Network,
};

fn load(name: &str) -> Network {
    let path = format!("{}/data/{name}.crn", env!("CARGO_MANIFEST_DIR"));
    parse_network(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn brute_force(c: &mut Criterion) {
    let immune = load("influenza-immune");
    let cases = [
        (
            "immune-r10",
            immune.subnetwork(&(0..10).collect::<Vec<_>>()).unwrap(),
        ),
        (
            "immune-r11",
            immune.subnetwork(&(0..11).collect::<Vec<_>>()).unwrap(),
        ),
        ("immune-r12", immune),
    ];
    let mut group = c.benchmark_group("brute_force");
    group.sample_size(10);
    for (name, net) in &cases {
        let r = net.reaction_count();
        for (label, exec) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(label, name), net, |b, net| {
                b.iter(|| brute_force_decompositions_with(black_box(net), r, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn finder(c: &mut Criterion) {
    let mut group = c.benchmark_group("coordinate_graph");
    for name in ["yeast", "influenza-immune", "purine"] {
        let net = load(name);
        group.bench_function(name, |b| {
            b.iter(|| find_independent_decomposition(black_box(&net)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, brute_force, finder);
criterion_main!(benches);
