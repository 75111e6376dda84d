//! Immutable k-uniform hypergraphs.
//!
//! Vertices are `0..n` in the Rust API. The `.uhg` text format, the CLI and
//! the JSON reports use 1-based labels; conversion happens at those edges.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial, Rational};

/// A simple k-uniform hypergraph.
///
/// Edges are stored flat with stride `k`, each edge sorted ascending and the
/// edge list sorted lexicographically. Every constructor funnels through
/// [`Hypergraph::from_zero_based`], so the invariants (arity, range,
/// no duplicates) hold for every value of this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<usize>,
    incidence: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    pub min_degree: usize,
    /// `k·m/n`, exact.
    pub average_degree: Rational,
}

impl DegreeProfile {
    pub fn is_regular(&self) -> bool {
        self.max_degree == self.min_degree
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connectivity {
    pub connected: bool,
    /// Vertex partition, each part sorted, parts ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph from 1-based vertex tuples.
    pub fn build<E, I>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut zero_based = Vec::new();
        for (idx, e) in edges.into_iter().enumerate() {
            let e = e.as_ref();
            if e.len() != k {
                return Err(Error::EdgeWrongArity { edge: idx, k });
            }
            let mut shifted = Vec::with_capacity(k);
            for &v in e {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                shifted.push(v - 1);
            }
            zero_based.push(shifted);
        }
        Self::from_zero_based(n, k, zero_based)
    }

    /// Builds a hypergraph from 0-based vertex tuples.
    pub fn from_zero_based<E, I>(n: usize, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if n == 0 {
            return Err(Error::InvalidDimensions("n must be at least 1".into()));
        }
        if k < 2 {
            return Err(Error::InvalidDimensions("k must be at least 2".into()));
        }
        let mut list: Vec<Vec<usize>> = Vec::new();
        for (idx, e) in edges.into_iter().enumerate() {
            let mut e = e.as_ref().to_vec();
            if e.len() != k {
                return Err(Error::EdgeWrongArity { edge: idx, k });
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v + 1, n });
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::EdgeWrongArity { edge: idx, k });
            }
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge {
                edge: w[0].iter().map(|v| v + 1).collect(),
            });
        }
        let mut incidence = vec![Vec::new(); n];
        for (idx, e) in list.iter().enumerate() {
            for &v in e {
                incidence[v].push(idx);
            }
        }
        Ok(Hypergraph {
            n,
            k,
            edges: list.into_iter().flatten().collect(),
            incidence,
        })
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        Self::from_zero_based(n, k, std::iter::empty::<Vec<usize>>())
    }

    /// The complete k-uniform hypergraph `K_n^k`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if n < k {
            return Err(Error::InvalidDimensions(format!(
                "complete hypergraph needs n >= k (n = {n}, k = {k})"
            )));
        }
        Self::from_zero_based(n, k, (0..n).combinations(k))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len() / self.k
    }

    pub fn edge(&self, idx: usize) -> &[usize] {
        &self.edges[idx * self.k..(idx + 1) * self.k]
    }

    pub fn edges(&self) -> std::slice::ChunksExact<'_, usize> {
        self.edges.chunks_exact(self.k)
    }

    /// Indices of the edges containing `v`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        let Some(&first) = e.first() else {
            return false;
        };
        first < self.n
            && self.incidence[first]
                .iter()
                .any(|&idx| self.edge(idx) == e.as_slice())
    }

    /// True when some edge contains both `u` and `v`.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && self.incidence[u].iter().any(|&idx| self.edge(idx).contains(&v))
    }

    pub fn is_complete(&self) -> bool {
        self.m() as u64 == binomial(self.n, self.k)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees = self.degrees();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let min_degree = degrees.iter().copied().min().unwrap_or(0);
        DegreeProfile {
            average_degree: Rational::new((self.k * self.m()) as u64, self.n as u64),
            degrees,
            max_degree,
            min_degree,
        }
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let p = self.degree_profile();
        p.is_regular().then_some(p.max_degree)
    }

    pub fn complement(&self) -> Hypergraph {
        let present: BTreeSet<&[usize]> = self.edges().collect();
        let edges: Vec<Vec<usize>> = (0..self.n)
            .combinations(self.k)
            .filter(|e| !present.contains(e.as_slice()))
            .collect();
        Self::from_zero_based(self.n, self.k, edges).expect("complement preserves invariants")
    }

    pub fn connectivity(&self) -> Connectivity {
        let mut dsu = DisjointSets::new(self.n);
        for e in self.edges() {
            for w in e.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        let components = dsu.groups();
        Connectivity {
            connected: components.len() == 1,
            components,
        }
    }

    /// A single-vertex hypergraph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.connectivity().connected
    }

    /// Sub-hypergraph induced on `vertices` (sorted, 0-based), relabelled to
    /// `0..vertices.len()` in order. Only edges fully inside are kept.
    pub fn induced(&self, vertices: &[usize]) -> Hypergraph {
        let mut relabel = vec![usize::MAX; self.n];
        for (new, &old) in vertices.iter().enumerate() {
            relabel[old] = new;
        }
        let edges: Vec<Vec<usize>> = self
            .edges()
            .filter(|e| e.iter().all(|&v| relabel[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| relabel[v]).collect())
            .collect();
        Self::from_zero_based(vertices.len().max(1), self.k, edges)
            .expect("induced sub-hypergraph preserves invariants")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.k != other.k {
            return Err(Error::ArityMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let shift = self.n;
        let edges = self
            .edges()
            .map(<[usize]>::to_vec)
            .chain(other.edges().map(|e| e.iter().map(|v| v + shift).collect()));
        Self::from_zero_based(self.n + other.n, self.k, edges.collect::<Vec<_>>())
    }

    /// Direct product `G × H`.
    ///
    /// Product vertex `(i, j)` gets index `j·n_G + i`. For edges `e` of `G`
    /// and `f` of `H` (both sorted), every bijection between them yields one
    /// product edge, so `m = k!·m_G·m_H` and `d(i,j) = (k-1)!·d_i·d_j`.
    pub fn direct_product(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.k != other.k {
            return Err(Error::ArityMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let k = self.k;
        let n_g = self.n;
        let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
        let mut edges = Vec::with_capacity(self.m() * other.m() * perms.len());
        for e in self.edges() {
            for f in other.edges() {
                for p in &perms {
                    let edge: Vec<usize> = (0..k).map(|t| f[t] * n_g + e[p[t]]).collect();
                    edges.push(edge);
                }
            }
        }
        edges.iter_mut().for_each(|e| e.sort_unstable());
        edges.sort_unstable();
        edges.dedup();
        Self::from_zero_based(n_g * other.n, k, edges)
    }

    /// Seeded random connected hypergraph with exactly `m` distinct edges.
    ///
    /// Draws `m` distinct k-sets uniformly and rejects until the sample is
    /// connected, so the result is uniform over connected simple
    /// hypergraphs with these parameters.
    pub fn random_connected(n: usize, k: usize, m: usize, seed: u64) -> Result<Hypergraph> {
        if k < 2 || n < k {
            return Err(Error::InfeasibleRequest(format!(
                "need 2 <= k <= n (n = {n}, k = {k})"
            )));
        }
        let total = binomial(n, k);
        let min_edges = (n - 1).div_ceil(k - 1);
        if m < min_edges {
            return Err(Error::InfeasibleRequest(format!(
                "{m} edges cannot connect {n} vertices with k = {k} (need at least {min_edges})"
            )));
        }
        if m as u64 > total {
            return Err(Error::InfeasibleRequest(format!(
                "only {total} distinct {k}-sets exist on {n} vertices, asked for {m}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all: Option<Vec<Vec<usize>>> = (total <= 200_000).then(|| (0..n).combinations(k).collect());
        const MAX_ATTEMPTS: usize = 1_000_000;
        for _ in 0..MAX_ATTEMPTS {
            let edges: Vec<Vec<usize>> = match &all {
                Some(all) => index::sample(&mut rng, all.len(), m)
                    .into_iter()
                    .map(|i| all[i].clone())
                    .collect(),
                None => {
                    let mut set = BTreeSet::new();
                    while set.len() < m {
                        let mut e = index::sample(&mut rng, n, k).into_vec();
                        e.sort_unstable();
                        set.insert(e);
                    }
                    set.into_iter().collect()
                }
            };
            let g = Self::from_zero_based(n, k, edges)?;
            if g.is_connected() {
                return Ok(g);
            }
        }
        Err(Error::InfeasibleRequest(format!(
            "no connected sample found in {MAX_ATTEMPTS} attempts"
        )))
    }

    /// Seeded random connected `d`-regular hypergraph.
    ///
    /// Randomised backtracking over the k-sets: repeatedly takes the
    /// lowest vertex still short of degree `d` and tries the candidate edges
    /// through it in shuffled order. Restarts with a fresh shuffle when the
    /// search budget runs out or the result is disconnected.
    pub fn random_regular(n: usize, k: usize, d: usize, seed: u64) -> Result<Hypergraph> {
        if k < 2 || n < k {
            return Err(Error::InfeasibleRequest(format!(
                "need 2 <= k <= n (n = {n}, k = {k})"
            )));
        }
        if d == 0 || (n * d).rem_euclid(k) != 0 || d as u64 > binomial(n - 1, k - 1) {
            return Err(Error::InfeasibleRequest(format!(
                "no {d}-regular {k}-uniform hypergraph on {n} vertices"
            )));
        }
        if n > 16 {
            return Err(Error::TooLarge { n, cap: 16 });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all: Vec<Vec<usize>> = (0..n).combinations(k).collect();
        for _ in 0..10_000 {
            let mut order: Vec<usize> = (0..all.len()).collect();
            for i in (1..order.len()).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
            for &i in &order {
                for &v in &all[i] {
                    by_vertex[v].push(i);
                }
            }
            let mut search = RegularSearch {
                all: &all,
                by_vertex: &by_vertex,
                deficit: vec![d; n],
                used: vec![false; all.len()],
                chosen: Vec::new(),
                budget: 200_000,
            };
            if search.run() {
                let g = Self::from_zero_based(
                    n,
                    k,
                    search.chosen.iter().map(|&i| all[i].clone()).collect::<Vec<_>>(),
                )?;
                if g.is_connected() {
                    return Ok(g);
                }
            }
        }
        Err(Error::InfeasibleRequest(
            "random regular search exhausted its restarts".into(),
        ))
    }
}

struct RegularSearch<'a> {
    all: &'a [Vec<usize>],
    by_vertex: &'a [Vec<usize>],
    deficit: Vec<usize>,
    used: Vec<bool>,
    chosen: Vec<usize>,
    budget: usize,
}

impl RegularSearch<'_> {
    fn run(&mut self) -> bool {
        let Some(v) = self.deficit.iter().position(|&d| d > 0) else {
            return true;
        };
        for &cand in &self.by_vertex[v] {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            let e = &self.all[cand];
            // would overshoot a saturated vertex
            if self.used[cand] || e.iter().any(|&u| self.deficit[u] == 0) {
                continue;
            }
            self.used[cand] = true;
            e.iter().for_each(|&u| self.deficit[u] -= 1);
            self.chosen.push(cand);
            if self.run() {
                return true;
            }
            self.chosen.pop();
            e.iter().for_each(|&u| self.deficit[u] += 1);
            self.used[cand] = false;
        }
        false
    }
}

/// Union-find with path halving.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Groups ordered by smallest member.
    pub(crate) fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let r = self.find(v);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(v);
        }
        out
    }
}

/// Number of edges in `G × H`, for callers that want to size a product
/// before building it.
pub fn product_edge_count(g: &Hypergraph, h: &Hypergraph) -> u64 {
    factorial(g.k()) * g.m() as u64 * h.m() as u64
}
