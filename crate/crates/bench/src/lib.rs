//! Seeded fixtures shared by the criterion benches.

use hyperalpha::Hypergraph;

/// Connected `k`-uniform hypergraph with `2n` edges.
pub fn sparse(n: usize, k: usize, seed: u64) -> Hypergraph {
    Hypergraph::random_connected(n, k, 2 * n, seed).expect("feasible fixture")
}

/// `(label, graph)` pairs of growing size.
pub fn ladder(k: usize) -> Vec<(String, Hypergraph)> {
    [8, 16, 32, 64]
        .into_iter()
        .map(|n| (format!("n{n}_k{k}"), sparse(n, k, n as u64)))
        .collect()
}
