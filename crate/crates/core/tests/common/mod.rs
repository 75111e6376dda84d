#![allow(dead_code)]

pub mod oracle;

use hyperalpha::Hypergraph;
use itertools::Itertools;
use proptest::prelude::*;

pub fn g1() -> Hypergraph {
    Hypergraph::build(4, 3, [[1, 2, 3], [1, 2, 4]]).unwrap()
}

/// Arbitrary simple k-uniform hypergraph with `k` in `ks`, at most
/// `n_max` vertices and at most `m_max` edges.
pub fn hypergraph(
    ks: std::ops::RangeInclusive<usize>,
    n_max: usize,
    m_max: usize,
) -> impl Strategy<Value = Hypergraph> {
    ks.prop_flat_map(move |k| (Just(k), k..=n_max))
        .prop_flat_map(move |(k, n)| {
            let all: Vec<Vec<usize>> = (0..n).combinations(k).collect();
            let cap = m_max.min(all.len());
            (Just(n), Just(k), proptest::sample::subsequence(all, 0..=cap))
        })
        .prop_map(|(n, k, edges)| Hypergraph::from_zero_based(n, k, edges).unwrap())
}

/// Connected hypergraph drawn through the seeded generator.
pub fn connected_hypergraph(
    ks: std::ops::RangeInclusive<usize>,
    n_max: usize,
    m_max: usize,
) -> impl Strategy<Value = Hypergraph> {
    ks.prop_flat_map(move |k| (Just(k), (k + 1).max(3)..=n_max))
        .prop_flat_map(move |(k, n)| {
            let total = hyperalpha::numeric::binomial(n, k) as usize;
            let lo = (n - 1).div_ceil(k - 1);
            let hi = m_max.min(total).max(lo);
            (Just(n), Just(k), lo..=hi, any::<u64>())
        })
        .prop_map(|(n, k, m, seed)| seeded(n, k, m, seed))
}

/// Seeded connected hypergraph; same construction as the CLI generator.
pub fn seeded(n: usize, k: usize, m: usize, seed: u64) -> Hypergraph {
    Hypergraph::random_connected(n, k, m, seed).unwrap()
}
