// Brute-force reference implementations. Deliberately naive: bitmask
// enumeration and plain loops, sharing nothing with the library beyond
// the edge list accessors.

#![allow(dead_code)]

use hyperalpha::Hypergraph;

pub fn edge_masks(g: &Hypergraph) -> Vec<u32> {
    g.edges()
        .map(|e| e.iter().fold(0u32, |acc, &v| acc | (1 << v)))
        .collect()
}

pub fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|v| mask & (1 << v) != 0).collect()
}

/// Number of connected components of `G - removed`, where deleting a
/// vertex also deletes every edge through it.
pub fn components_after(g: &Hypergraph, removed: u32) -> usize {
    let n = g.n();
    let alive: Vec<u32> = edge_masks(g).into_iter().filter(|e| e & removed == 0).collect();
    let mut seen = removed;
    let mut count = 0;
    for start in 0..n {
        if seen & (1 << start) != 0 {
            continue;
        }
        count += 1;
        let mut reach = 1u32 << start;
        loop {
            let grown = alive
                .iter()
                .filter(|&&e| e & reach != 0)
                .fold(reach, |acc, &e| acc | e);
            if grown == reach {
                break;
            }
            reach = grown;
        }
        seen |= reach;
    }
    count
}

pub fn connected(g: &Hypergraph) -> bool {
    components_after(g, 0) == 1
}

pub fn strong(g: &Hypergraph, mask: u32) -> bool {
    edge_masks(g).iter().all(|e| (e & mask).count_ones() <= 1)
}

pub fn weak(g: &Hypergraph, mask: u32) -> bool {
    edge_masks(g).iter().all(|&e| e & mask != e)
}

/// Largest set satisfying `pred`, ties broken by the lexicographically
/// smallest sorted member list.
pub fn max_set(g: &Hypergraph, pred: impl Fn(&Hypergraph, u32) -> bool) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for mask in 1..(1u32 << g.n()) {
        if !pred(g, mask) {
            continue;
        }
        let set = members(mask);
        best = match best {
            Some(b) if b.len() > set.len() || (b.len() == set.len() && b <= set) => Some(b),
            _ => Some(set),
        };
    }
    best.unwrap_or_default()
}

/// Minimum vertex cut, smallest lexicographic among the minimum ones.
/// `None` when no subset disconnects what is left.
pub fn min_cut(g: &Hypergraph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut best: Option<Vec<usize>> = None;
    for mask in 1..(1u32 << n) {
        if n - (mask.count_ones() as usize) < 2 || components_after(g, mask) < 2 {
            continue;
        }
        let set = members(mask);
        best = match best {
            Some(b) if b.len() < set.len() || (b.len() == set.len() && b <= set) => Some(b),
            _ => Some(set),
        };
    }
    best
}

/// Weak chromatic number as a minimum cover of V by weak independent
/// sets, by dynamic programming over subsets.
pub fn chromatic(g: &Hypergraph) -> usize {
    let n = g.n();
    let full = (1u32 << n) - 1;
    let indep: Vec<bool> = (0..=full).map(|m| weak(g, m)).collect();
    let mut f = vec![usize::MAX; full as usize + 1];
    f[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let part = sub | low;
            if indep[part as usize] {
                let prev = f[(mask ^ part) as usize];
                if prev != usize::MAX {
                    f[mask as usize] = f[mask as usize].min(prev + 1);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    f[full as usize]
}

/// `α·Σ d_i x_i^k + (1-α)·k·Σ_e Π_{v∈e} x_v`.
pub fn form(g: &Hypergraph, alpha: f64, x: &[f64]) -> f64 {
    let k = g.k() as i32;
    let diag: f64 = (0..g.n()).map(|i| g.degree(i) as f64 * x[i].powi(k)).sum();
    let off: f64 = g.edges().map(|e| e.iter().map(|&v| x[v]).product::<f64>()).sum();
    alpha * diag + (1.0 - alpha) * k as f64 * off
}

fn gradient(g: &Hypergraph, alpha: f64, x: &[f64]) -> Vec<f64> {
    let k = g.k();
    let mut grad: Vec<f64> = (0..g.n())
        .map(|i| alpha * k as f64 * g.degree(i) as f64 * x[i].powi(k as i32 - 1))
        .collect();
    for e in g.edges() {
        for (pos, &v) in e.iter().enumerate() {
            let rest: f64 = e
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != pos)
                .map(|(_, &u)| x[u])
                .product();
            grad[v] += (1.0 - alpha) * k as f64 * rest;
        }
    }
    grad
}

fn project(x: &mut [f64], k: usize) -> bool {
    x.iter_mut().for_each(|v| *v = v.max(0.0));
    let norm = x
        .iter()
        .map(|v| v.powi(k as i32))
        .sum::<f64>()
        .powf(1.0 / k as f64);
    if norm == 0.0 || !norm.is_finite() {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= norm);
    true
}

/// Multi-start projected gradient ascent of the form above over the
/// nonnegative unit k-norm shell. Steps grow on success and halve on
/// non-improvement.
pub fn max_form(g: &Hypergraph, alpha: f64, starts: usize, seed: u64) -> f64 {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let k = g.k();
    let mut best = f64::NEG_INFINITY;
    for _ in 0..starts {
        let mut x: Vec<f64> = (0..g.n()).map(|_| rng.gen_range(0.05..1.0)).collect();
        project(&mut x, k);
        let mut val = form(g, alpha, &x);
        let mut step = 0.1;
        for _ in 0..20_000 {
            let mut grad = gradient(g, alpha, &x);
            // drop the component along the shell normal x^{k-1}
            let normal: Vec<f64> = x.iter().map(|v| v.powi(k as i32 - 1)).collect();
            let nn: f64 = normal.iter().map(|v| v * v).sum();
            let gn: f64 = grad.iter().zip(&normal).map(|(a, b)| a * b).sum();
            grad.iter_mut().zip(&normal).for_each(|(a, b)| *a -= gn / nn * b);
            let mut trial: Vec<f64> = x.iter().zip(&grad).map(|(a, b)| a + step * b).collect();
            if project(&mut trial, k) {
                let v = form(g, alpha, &trial);
                if v > val {
                    x = trial;
                    val = v;
                    step *= 1.5;
                    continue;
                }
            }
            step *= 0.5;
            if step < 1e-15 {
                break;
            }
        }
        best = best.max(val);
    }
    best
}
