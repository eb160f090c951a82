use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use graphprod::bnsr::{kernel_finiteness_with, Character};
use graphprod::exec::Execution;
use graphprod::graph::{Order, SimplicialGraph};
use graphprod::homology::reduced_homology_with;
use graphprod::quotient::{verify_normality_with, Budget, NormalSubgroupGens};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

/// Rank-`r` character with linearly independent values on the first `r` vertices,
/// so the family of dead sets is as large as the graph allows.
fn generic_character(g: &SimplicialGraph, rank: usize) -> Character {
    let values = (0..g.vertex_count())
        .map(|v| {
            (0..rank)
                .map(|j| {
                    if v < rank {
                        i64::from(v == j)
                    } else {
                        ((v * 7 + j * 3) % 5) as i64 - 2
                    }
                })
                .collect()
        })
        .collect();
    Character::new(g, values, rank).unwrap()
}

fn bench_dead_sets(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_finiteness");
    group.sample_size(20);
    let graphs = [
        (
            "octahedral_4",
            SimplicialGraph::join_of_edgeless_pairs(4, Order::Infinite),
        ),
        ("cycle_10", SimplicialGraph::cycle(10, Order::Infinite)),
    ];
    for (name, g) in &graphs {
        let chi = generic_character(g, 4);
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(*name, mode), &chi, |b, chi| {
                b.iter(|| black_box(kernel_finiteness_with(chi, 3, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduced_homology");
    group.sample_size(20);
    let k = SimplicialGraph::join_of_edgeless_pairs(6, Order::Infinite).flag_complex();
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new("octahedral_6", mode), |b| {
            b.iter(|| black_box(reduced_homology_with(&k, 5, exec).unwrap()))
        });
    }
    group.finish();
}

fn bench_normality(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_normality");
    group.sample_size(10);
    let g = SimplicialGraph::cycle(6, Order::Infinite);
    let n =
        NormalSubgroupGens::from_strings(&g, &["a b^-1", "b c^-1", "c d^-1", "d e^-1", "e f^-1"])
            .unwrap();
    let budget = Budget {
        depth: 6,
        slack: 4,
        max_states: 100_000,
    };
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new("cycle_6", mode), |b| {
            b.iter(|| black_box(verify_normality_with(&n, &budget, exec)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_dead_sets, bench_homology, bench_normality);
criterion_main!(benches);
