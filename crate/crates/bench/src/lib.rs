//! Seeded inputs shared by the benchmarks.

use dualgraph_core::gen::{random_digraph, random_entrance_exit, seeded};
use dualgraph_core::Digraph;

pub fn random_graphs(n: usize, count: usize, p: f64, seed: u64) -> Vec<Digraph> {
    let mut rng = seeded(seed);
    (0..count).map(|_| random_digraph(&mut rng, n, p)).collect()
}

pub fn entrance_exit_graphs(n: usize, count: usize, p: f64, seed: u64) -> Vec<Digraph> {
    let mut rng = seeded(seed);
    (0..count)
        .map(|_| random_entrance_exit(&mut rng, n, p))
        .collect()
}
