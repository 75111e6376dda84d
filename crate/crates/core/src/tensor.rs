//! Tensor-times-vector contractions for the adjacency, degree, Laplacian,
//! signless Laplacian and `A_α` tensors of a uniform hypergraph.
//!
//! Nothing here materialises an order-k tensor. The adjacency tensor has
//! entry `1/(k-1)!` on every permutation of an edge, and the `(k-1)!`
//! orderings of `e \ {i}` cancel that factor, so
//!
//! ```text
//! (A x)_i = Σ_{e ∋ i} Π_{j ∈ e, j ≠ i} x_j
//! (D x)_i = d_i x_i^{k-1}
//! A_α = α D + (1 - α) A,   L = D - A,   Q = D + A
//! ```
//!
//! Every apply is one pass over the edge list, `O(k·m)`.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::numeric::CompensatedSum;

/// Mixing parameter `α ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Alpha(f64);

impl Alpha {
    pub const ZERO: Alpha = Alpha(0.0);
    pub const HALF: Alpha = Alpha(0.5);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..1.0).contains(&value) {
            Ok(Alpha(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Alpha::new(v)
    }
}

/// A real vector paired with the tensor order `k` it is measured against.
/// The k-norm `(Σ |x_i|^k)^(1/k)` is computed once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct KVector {
    entries: Vec<f64>,
    order: usize,
    k_norm: f64,
}

const UNIT_TOL: f64 = 1e-12;

impl KVector {
    pub fn new(entries: Vec<f64>, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidDimensions("vector order must be at least 2".into()));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let k_norm = power_sum(&entries, order).powf(1.0 / order as f64);
        Ok(KVector {
            entries,
            order,
            k_norm,
        })
    }

    pub fn ones(n: usize, order: usize) -> Self {
        Self::new(vec![1.0; n], order).expect("ones are finite")
    }

    /// `x_i = n^(-1/k)`, the uniform vector on the unit k-sphere.
    pub fn uniform_unit(n: usize, order: usize) -> Self {
        let v = (n as f64).powf(-1.0 / order as f64);
        Self::new(vec![v; n], order).expect("uniform entries are finite")
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn k_norm(&self) -> f64 {
        self.k_norm
    }

    /// `|Σ x_i^k - 1| <= 1e-12`.
    pub fn is_unit(&self) -> bool {
        (power_sum(&self.entries, self.order) - 1.0).abs() <= UNIT_TOL
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|&v| v > 0.0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&v| v >= 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Scaled to unit k-norm.
    pub fn normalized(&self) -> Result<Self> {
        if self.k_norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        let s = self.k_norm;
        Self::new(self.entries.iter().map(|v| v / s).collect(), self.order)
    }

    /// Kronecker product `u ⊗ v` with the index of `(i, j)` at `j·len(u) + i`.
    pub fn kron(&self, other: &KVector) -> KVector {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for &vj in &other.entries {
            out.extend(self.entries.iter().map(|&ui| ui * vj));
        }
        Self::new(out, self.order).expect("product of finite entries")
    }
}

impl Serialize for KVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

fn power_sum(x: &[f64], k: usize) -> f64 {
    x.iter().map(|v| v.abs().powi(k as i32)).sum()
}

/// Which tensor of the hypergraph to contract against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TensorKind {
    Adjacency,
    Laplacian,
    SignlessLaplacian,
    AAlpha(Alpha),
}

fn check_len(g: &Hypergraph, x: &[f64]) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    Ok(())
}

fn check_vector(g: &Hypergraph, x: &KVector) -> Result<()> {
    check_len(g, x.entries())?;
    if x.order() != g.k() {
        return Err(Error::InvalidDimensions(format!(
            "vector order {} does not match k = {}",
            x.order(),
            g.k()
        )));
    }
    Ok(())
}

/// `out = A x` (accumulating into a zeroed buffer).
pub fn adjacency_apply_into(g: &Hypergraph, x: &[f64], out: &mut [f64]) {
    debug_assert_eq!(x.len(), g.n());
    debug_assert_eq!(out.len(), g.n());
    out.fill(0.0);
    for e in g.edges() {
        if e.iter().all(|&v| x[v] != 0.0) {
            let full: f64 = e.iter().map(|&v| x[v]).product();
            for &i in e {
                out[i] += full / x[i];
            }
        } else {
            for &i in e {
                let partial: f64 = e.iter().filter(|&&j| j != i).map(|&j| x[j]).product();
                out[i] += partial;
            }
        }
    }
}

/// `out = T x` for any supported tensor kind.
pub fn apply_into(g: &Hypergraph, kind: TensorKind, x: &[f64], out: &mut [f64]) {
    adjacency_apply_into(g, x, out);
    let (diag, adj) = match kind {
        TensorKind::Adjacency => return,
        TensorKind::Laplacian => (1.0, -1.0),
        TensorKind::SignlessLaplacian => (1.0, 1.0),
        TensorKind::AAlpha(a) => (a.value(), 1.0 - a.value()),
    };
    let km1 = g.k() as i32 - 1;
    for (i, o) in out.iter_mut().enumerate() {
        *o = diag * g.degree(i) as f64 * x[i].powi(km1) + adj * *o;
    }
}

pub fn apply(g: &Hypergraph, kind: TensorKind, x: &KVector) -> Result<KVector> {
    check_vector(g, x)?;
    let mut out = vec![0.0; g.n()];
    apply_into(g, kind, x.entries(), &mut out);
    KVector::new(out, g.k())
}

pub fn apply_adjacency(g: &Hypergraph, x: &KVector) -> Result<KVector> {
    apply(g, TensorKind::Adjacency, x)
}

pub fn apply_a_alpha(g: &Hypergraph, alpha: Alpha, x: &KVector) -> Result<KVector> {
    apply(g, TensorKind::AAlpha(alpha), x)
}

pub fn apply_laplacian(g: &Hypergraph, x: &KVector) -> Result<KVector> {
    apply(g, TensorKind::Laplacian, x)
}

pub fn apply_signless_laplacian(g: &Hypergraph, x: &KVector) -> Result<KVector> {
    apply(g, TensorKind::SignlessLaplacian, x)
}

/// `(D x)_i = d_i x_i^{k-1}`.
pub fn apply_degree(g: &Hypergraph, x: &KVector) -> Result<KVector> {
    check_vector(g, x)?;
    let km1 = g.k() as i32 - 1;
    let out = x
        .entries()
        .iter()
        .enumerate()
        .map(|(i, v)| g.degree(i) as f64 * v.powi(km1))
        .collect();
    KVector::new(out, g.k())
}

/// `x^T (A_α x) = α Σ_i d_i x_i^k + (1 - α) Σ_e k·x^e`.
pub fn rayleigh(g: &Hypergraph, alpha: Alpha, x: &KVector) -> Result<f64> {
    check_vector(g, x)?;
    let (diag, edge) = rayleigh_terms(g, x.entries(), |it| it.sum());
    Ok(alpha.value() * diag + (1.0 - alpha.value()) * edge)
}

/// Same quantity as [`rayleigh`], with compensated summation.
pub fn rayleigh_compensated(g: &Hypergraph, alpha: Alpha, x: &KVector) -> Result<f64> {
    check_vector(g, x)?;
    let (diag, edge) = rayleigh_terms(g, x.entries(), |it| it.collect::<CompensatedSum>().value());
    Ok(alpha.value() * diag + (1.0 - alpha.value()) * edge)
}

fn rayleigh_terms<F>(g: &Hypergraph, x: &[f64], sum: F) -> (f64, f64)
where
    F: Fn(&mut dyn Iterator<Item = f64>) -> f64,
{
    let k = g.k();
    let diag = sum(&mut x
        .iter()
        .enumerate()
        .map(|(i, v)| g.degree(i) as f64 * v.powi(k as i32)));
    let edge = sum(&mut g
        .edges()
        .map(|e| k as f64 * e.iter().map(|&v| x[v]).product::<f64>()));
    (diag, edge)
}

/// `max_i |(T x)_i - λ x_i^{k-1}| / max(1, ‖x‖_∞^{k-1})`.
pub fn eig_residual(g: &Hypergraph, kind: TensorKind, lambda: f64, x: &KVector) -> Result<f64> {
    check_vector(g, x)?;
    let scale = x.max_abs();
    if scale == 0.0 {
        return Err(Error::ZeroVector);
    }
    let tx = apply(g, kind, x)?;
    let km1 = g.k() as i32 - 1;
    let worst = tx
        .entries()
        .iter()
        .zip(x.entries())
        .map(|(t, v)| (t - lambda * v.powi(km1)).abs())
        .fold(0.0, f64::max);
    Ok(worst / scale.powi(km1).max(1.0))
}
