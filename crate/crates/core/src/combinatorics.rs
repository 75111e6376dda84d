//! Exact small-instance solvers: strong and weak independent sets, cliques,
//! vertex cuts and the weak chromatic number.
//!
//! Everything works on `u32` vertex bitmasks. Whenever several optimal sets
//! exist, the lexicographically smallest (as a sorted vertex list) is
//! returned, which the include-first search order yields for free.

use itertools::Itertools;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Largest `n` accepted by the independent-set searches.
pub const INDEPENDENCE_CAP: usize = 24;
/// Largest `n` accepted by vertex-cut and coloring searches.
pub const SEARCH_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetKind {
    Arbitrary,
    StrongIndependent,
    WeakIndependent,
    /// Every k-subset is an edge of the hypergraph it was checked against.
    Clique,
    VertexCut,
}

/// A nonempty vertex set whose kind predicate was checked on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSubset {
    members: Vec<usize>,
    kind: SubsetKind,
}

impl VertexSubset {
    /// `members` are 0-based; order and repeats do not matter.
    pub fn new(g: &Hypergraph, members: impl IntoIterator<Item = usize>, kind: SubsetKind) -> Result<Self> {
        let members: Vec<usize> = members.into_iter().sorted_unstable().dedup().collect();
        if members.is_empty() {
            return Err(Error::PreconditionViolated("vertex subset is empty".into()));
        }
        if let Some(&v) = members.iter().find(|&&v| v >= g.n()) {
            return Err(Error::VertexOutOfRange {
                vertex: v + 1,
                n: g.n(),
            });
        }
        let ok = match kind {
            SubsetKind::Arbitrary => true,
            SubsetKind::StrongIndependent => is_strong_independent(g, &members),
            SubsetKind::WeakIndependent => is_weak_independent(g, &members),
            SubsetKind::Clique => is_clique(g, &members),
            SubsetKind::VertexCut => is_vertex_cut(g, &members),
        };
        if !ok {
            return Err(Error::PreconditionViolated(format!(
                "{:?} is not a {kind:?} set",
                members.iter().map(|v| v + 1).collect::<Vec<_>>()
            )));
        }
        Ok(VertexSubset { members, kind })
    }

    /// Same as [`VertexSubset::new`] with 1-based labels.
    pub fn from_one_based(g: &Hypergraph, members: &[usize], kind: SubsetKind) -> Result<Self> {
        if let Some(&v) = members.iter().find(|&&v| v == 0) {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        Self::new(g, members.iter().map(|v| v - 1), kind)
    }

    fn from_mask(mask: u32, kind: SubsetKind) -> Self {
        VertexSubset {
            members: bits(mask).collect(),
            kind,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.members.iter().map(|v| v + 1).collect()
    }

    pub fn kind(&self) -> SubsetKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl Serialize for VertexSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VertexSubset", 2)?;
        st.serialize_field("members", &self.one_based())?;
        st.serialize_field("kind", &self.kind)?;
        st.end()
    }
}

fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

fn mask_of(vertices: &[usize]) -> u32 {
    vertices.iter().fold(0, |m, &v| m | 1 << v)
}

fn full_mask(n: usize) -> u32 {
    ((1u64 << n) - 1) as u32
}

fn edge_masks(g: &Hypergraph) -> Vec<u32> {
    g.edges().map(mask_of).collect()
}

fn check_cap(g: &Hypergraph, cap: usize) -> Result<()> {
    if g.n() > cap {
        Err(Error::TooLarge { n: g.n(), cap })
    } else {
        Ok(())
    }
}

/// `|e ∩ S| <= 1` for every edge.
pub fn is_strong_independent(g: &Hypergraph, set: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    set.iter().for_each(|&v| inside[v] = true);
    g.edges().all(|e| e.iter().filter(|&&v| inside[v]).count() <= 1)
}

/// No edge lies entirely inside `set`.
pub fn is_weak_independent(g: &Hypergraph, set: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    set.iter().for_each(|&v| inside[v] = true);
    !g.edges().any(|e| e.iter().all(|&v| inside[v]))
}

/// Every k-subset of `set` is an edge. Sets with fewer than `k` vertices
/// are cliques vacuously.
pub fn is_clique(g: &Hypergraph, set: &[usize]) -> bool {
    set.iter()
        .copied()
        .combinations(g.k())
        .all(|e| g.contains_edge(&e))
}

/// Include-first branch and bound for a maximum set closed under a
/// forbidding rule. `forbid(chosen, v)` returns the vertices that may no
/// longer join once `v` has joined `chosen`.
struct MaxSetSearch<F> {
    forbid: F,
    best: u32,
    best_len: u32,
}

impl<F: Fn(u32, usize) -> u32> MaxSetSearch<F> {
    fn run(n: usize, forbid: F) -> u32 {
        let mut s = MaxSetSearch {
            forbid,
            best: 0,
            best_len: 0,
        };
        s.go(0, full_mask(n));
        s.best
    }

    fn go(&mut self, chosen: u32, candidates: u32) {
        if chosen.count_ones() + candidates.count_ones() <= self.best_len {
            return;
        }
        if candidates == 0 {
            self.best = chosen;
            self.best_len = chosen.count_ones();
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        let rest = candidates & !(1 << v);
        let with = chosen | 1 << v;
        self.go(with, rest & !(self.forbid)(with, v));
        self.go(chosen, rest);
    }
}

/// Maximum strong independent set, exact for `n <= INDEPENDENCE_CAP`.
///
/// Two vertices conflict iff some edge contains both, so this is a maximum
/// independent set of that conflict graph.
pub fn max_strong_independent(g: &Hypergraph) -> Result<VertexSubset> {
    check_cap(g, INDEPENDENCE_CAP)?;
    let mut conflict = vec![0u32; g.n()];
    for e in edge_masks(g) {
        for v in bits(e) {
            conflict[v] |= e;
        }
    }
    let best = MaxSetSearch::run(g.n(), |_, v| conflict[v]);
    Ok(VertexSubset::from_mask(best, SubsetKind::StrongIndependent))
}

/// Maximum weak independent set, exact for `n <= INDEPENDENCE_CAP`.
pub fn max_weak_independent(g: &Hypergraph) -> Result<VertexSubset> {
    check_cap(g, INDEPENDENCE_CAP)?;
    let masks = edge_masks(g);
    let by_vertex: Vec<Vec<u32>> = (0..g.n())
        .map(|v| g.incident_edges(v).iter().map(|&i| masks[i]).collect())
        .collect();
    let best = MaxSetSearch::run(g.n(), |chosen, v| {
        by_vertex[v]
            .iter()
            .map(|&e| e & !chosen)
            .filter(|open| open.count_ones() == 1)
            .fold(0, |acc, open| acc | open)
    });
    Ok(VertexSubset::from_mask(best, SubsetKind::WeakIndependent))
}

/// Maximum clique of `g` itself (every k-subset an edge).
pub fn max_clique(g: &Hypergraph) -> Result<VertexSubset> {
    let set = max_weak_independent(&g.complement())?;
    Ok(VertexSubset::from_mask(
        mask_of(set.members()),
        SubsetKind::Clique,
    ))
}

/// `ω(Ḡ)`, computed as the weak independence number of `G`.
pub fn clique_number_of_complement(g: &Hypergraph) -> Result<usize> {
    Ok(max_weak_independent(g)?.len())
}

fn by_ascending_degree(g: &Hypergraph) -> Vec<usize> {
    (0..g.n()).sorted_by_key(|&v| (g.degree(v), v)).collect()
}

/// Greedy strong independent set by ascending degree. Not necessarily
/// maximum; works for any `n`.
pub fn greedy_strong_independent(g: &Hypergraph) -> VertexSubset {
    let mut blocked = vec![false; g.n()];
    let mut members = Vec::new();
    for v in by_ascending_degree(g) {
        if blocked[v] {
            continue;
        }
        members.push(v);
        for &idx in g.incident_edges(v) {
            g.edge(idx).iter().for_each(|&u| blocked[u] = true);
        }
    }
    members.sort_unstable();
    VertexSubset {
        members,
        kind: SubsetKind::StrongIndependent,
    }
}

/// Greedy weak independent set by ascending degree. Not necessarily
/// maximum; works for any `n`.
pub fn greedy_weak_independent(g: &Hypergraph) -> VertexSubset {
    let mut inside = vec![false; g.n()];
    for v in by_ascending_degree(g) {
        inside[v] = true;
        let closes_edge = g
            .incident_edges(v)
            .iter()
            .any(|&idx| g.edge(idx).iter().all(|&u| inside[u]));
        if closes_edge {
            inside[v] = false;
        }
    }
    VertexSubset {
        members: (0..g.n()).filter(|&v| inside[v]).collect(),
        kind: SubsetKind::WeakIndependent,
    }
}

/// Is the hypergraph left after deleting `removed` (and every edge touching
/// it) disconnected? One or zero remaining vertices count as connected.
fn disconnects(n: usize, masks: &[u32], removed: u32) -> bool {
    let rest = full_mask(n) & !removed;
    if rest.count_ones() < 2 {
        return false;
    }
    let alive: Vec<u32> = masks.iter().copied().filter(|e| e & removed == 0).collect();
    let mut reached = 1u32 << rest.trailing_zeros();
    loop {
        let next = alive
            .iter()
            .filter(|&&e| e & reached != 0)
            .fold(reached, |acc, &e| acc | e);
        if next == reached {
            return reached != rest;
        }
        reached = next;
    }
}

pub fn is_vertex_cut(g: &Hypergraph, set: &[usize]) -> bool {
    if set.is_empty() || g.n() > 32 {
        return false;
    }
    disconnects(g.n(), &edge_masks(g), mask_of(set))
}

/// `ν(G)` with the lexicographically smallest minimum cut.
///
/// Requires a connected, non-complete `G` with `n <= SEARCH_CAP`.
pub fn vertex_connectivity(g: &Hypergraph) -> Result<(usize, VertexSubset)> {
    check_cap(g, SEARCH_CAP)?;
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.is_complete() {
        return Err(Error::NoCutExists);
    }
    let masks = edge_masks(g);
    for size in 1..g.n() {
        for cut in (0..g.n()).combinations(size) {
            let mask = mask_of(&cut);
            if disconnects(g.n(), &masks, mask) {
                return Ok((size, VertexSubset::from_mask(mask, SubsetKind::VertexCut)));
            }
        }
    }
    // a non-edge k-set T is isolated by removing V \ T, so this is unreachable
    Err(Error::NoCutExists)
}

struct Coloring<'a> {
    /// Edges indexed by their largest vertex.
    closing: Vec<Vec<&'a [usize]>>,
    colors: Vec<usize>,
    limit: usize,
}

impl Coloring<'_> {
    fn go(&mut self, v: usize, used: usize) -> bool {
        if v == self.colors.len() {
            return true;
        }
        for c in 0..(used + 1).min(self.limit) {
            self.colors[v] = c;
            let mono = self.closing[v]
                .iter()
                .any(|e| e.iter().all(|&u| self.colors[u] == c));
            if !mono && self.go(v + 1, used.max(c + 1)) {
                return true;
            }
        }
        false
    }
}

/// A weak coloring with the fewest colors; `colors[v]` is in `0..χ`.
///
/// Iterative deepening over the number of colors, with vertex `v` only
/// allowed colors up to one more than those already used. An edgeless
/// hypergraph needs one color.
pub fn weak_coloring(g: &Hypergraph) -> Result<Vec<usize>> {
    check_cap(g, SEARCH_CAP)?;
    let mut closing = vec![Vec::new(); g.n()];
    for e in g.edges() {
        closing[e[e.len() - 1]].push(e);
    }
    let mut search = Coloring {
        closing,
        colors: vec![0; g.n()],
        limit: 1,
    };
    while !search.go(0, 0) {
        search.limit += 1;
    }
    Ok(search.colors)
}

pub fn weak_chromatic_number(g: &Hypergraph) -> Result<usize> {
    Ok(weak_coloring(g)?.into_iter().max().map_or(1, |c| c + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> Hypergraph {
        Hypergraph::build(4, 3, [[1, 2, 3], [1, 2, 4]]).unwrap()
    }

    #[test]
    fn predicates_on_g1() {
        let g = g1();
        assert!(is_strong_independent(&g, &[2, 3]));
        assert!(!is_strong_independent(&g, &[0, 2]));
        assert!((0..4).all(|v| is_strong_independent(&g, &[v])));
        assert!(is_weak_independent(&g, &[1, 2, 3]));
        assert!(!is_weak_independent(&g, &[0, 1, 2]));
    }

    #[test]
    fn g1_goldens() {
        let g = g1();
        assert_eq!(max_strong_independent(&g).unwrap().members(), &[2, 3]);
        assert_eq!(max_weak_independent(&g).unwrap().members(), &[0, 2, 3]);
        assert_eq!(clique_number_of_complement(&g).unwrap(), 3);
        let (nu, cut) = vertex_connectivity(&g).unwrap();
        assert_eq!((nu, cut.members()), (1, &[0][..]));
        assert_eq!(weak_chromatic_number(&g).unwrap(), 2);
    }

    #[test]
    fn complete_cases() {
        let k53 = Hypergraph::complete(5, 3).unwrap();
        assert_eq!(max_strong_independent(&k53).unwrap().len(), 1);
        assert_eq!(max_weak_independent(&k53).unwrap().members(), &[0, 1]);
        assert_eq!(clique_number_of_complement(&k53).unwrap(), 2);
        assert_eq!(max_clique(&k53).unwrap().len(), 5);
        assert!(matches!(
            vertex_connectivity(&Hypergraph::complete(4, 3).unwrap()),
            Err(Error::NoCutExists)
        ));
        let empty = Hypergraph::empty(5, 3).unwrap();
        assert_eq!(max_weak_independent(&empty).unwrap().len(), 5);
        assert_eq!(clique_number_of_complement(&empty).unwrap(), 5);
        assert_eq!(weak_chromatic_number(&empty).unwrap(), 1);
    }

    #[test]
    fn two_disjoint_edges() {
        let g = Hypergraph::build(6, 3, [[1, 2, 3], [4, 5, 6]]).unwrap();
        assert_eq!(max_strong_independent(&g).unwrap().members(), &[0, 3]);
        assert!(matches!(vertex_connectivity(&g), Err(Error::NotConnected)));
    }

    #[test]
    fn shared_cut_vertex() {
        let g = Hypergraph::build(
            7,
            3,
            [
                [1, 2, 3],
                [1, 2, 4],
                [1, 3, 4],
                [2, 3, 4],
                [4, 5, 6],
                [4, 5, 7],
                [4, 6, 7],
                [5, 6, 7],
            ],
        )
        .unwrap();
        let (nu, cut) = vertex_connectivity(&g).unwrap();
        assert_eq!((nu, cut.one_based()), (1, vec![4]));
    }

    #[test]
    fn single_vertex_remainder_is_not_a_cut() {
        // deleting {1,2,3} leaves the lone vertex 4
        let g = g1();
        assert!(!is_vertex_cut(&g, &[0, 1, 2]));
        assert!(is_vertex_cut(&g, &[0, 1]));
    }

    #[test]
    fn subset_construction_checks_kind() {
        let g = g1();
        assert!(VertexSubset::new(&g, [2, 3], SubsetKind::StrongIndependent).is_ok());
        assert!(VertexSubset::new(&g, [0, 2], SubsetKind::StrongIndependent).is_err());
        assert!(VertexSubset::new(&g, [], SubsetKind::Arbitrary).is_err());
        assert!(matches!(
            VertexSubset::new(&g, [4], SubsetKind::Arbitrary),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
        let s = VertexSubset::from_one_based(&g, &[4, 3, 3], SubsetKind::Arbitrary).unwrap();
        assert_eq!(s.members(), &[2, 3]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"members":[3,4],"kind":"arbitrary"}"#);
    }

    #[test]
    fn greedy_sets_satisfy_predicates() {
        let g = Hypergraph::random_connected(12, 3, 15, 4).unwrap();
        let s = greedy_strong_independent(&g);
        assert!(is_strong_independent(&g, s.members()));
        let w = greedy_weak_independent(&g);
        assert!(is_weak_independent(&g, w.members()));
        assert!(w.len() <= max_weak_independent(&g).unwrap().len());
    }

    #[test]
    fn caps() {
        let big = Hypergraph::empty(25, 3).unwrap();
        assert!(matches!(max_weak_independent(&big), Err(Error::TooLarge { .. })));
        let mid = Hypergraph::empty(17, 3).unwrap();
        assert!(matches!(weak_chromatic_number(&mid), Err(Error::TooLarge { .. })));
        assert_eq!(
            max_weak_independent(&Hypergraph::empty(24, 3).unwrap())
                .unwrap()
                .len(),
            24
        );
    }
}
