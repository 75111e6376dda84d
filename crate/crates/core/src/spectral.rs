//! `A_α` spectral radius by shifted power iteration, plus checks of the
//! direct-product eigenpair transport identities.
//!
//! For a connected hypergraph `A_α(G)` is weakly irreducible, so its
//! spectral radius has a strictly positive eigenvector and, for every
//! positive `x`, the Collatz–Wielandt ratios bracket it:
//!
//! ```text
//! min_i (A_α x)_i / x_i^{k-1}  <=  ρ_α(G)  <=  max_i (A_α x)_i / x_i^{k-1}
//! ```
//!
//! The iteration maps `x ↦ normalise((A_α x + s·x^{[k-1]})^{[1/(k-1)]})`
//! with shift `s = 1`. The shift leaves eigenvectors unchanged and moves
//! every eigenvalue by `s`, and it makes the iteration converge even when
//! `A_α` is not primitive (e.g. `α = 0` on a k-partite hypergraph). The
//! bracket of the shifted tensor, less `s`, is the bracket of `A_α` itself.
//!
//! Close to `α = 1` the tensor is nearly diagonal and that map contracts
//! very slowly. Once the bracket is narrow, each iteration therefore also
//! tries a Newton step on `A_α x = λ x^{[k-1]}, ‖x‖_k = 1` and keeps it only
//! if the new vector stays positive and its bracket is narrower. Since the
//! bracket is valid for every positive vector, this never weakens the
//! certificate.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::numeric::factorial;
use crate::tensor::{apply_into, eig_residual, Alpha, KVector, TensorKind};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;
const SHIFT: f64 = 1.0;
/// Newton attempts start once the bracket is this narrow, relative to `1 + upper`.
const NEWTON_WIDTH: f64 = 1e-3;
/// Dense Newton solves are skipped above this many vertices.
const NEWTON_MAX_N: usize = 512;

#[derive(Debug, Clone, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    pub lower: f64,
    pub upper: f64,
    /// Unit in k-norm; strictly positive when the hypergraph is connected.
    pub eigvec: KVector,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl SpectralResult {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    fn trivial(n: usize, k: usize) -> Self {
        SpectralResult {
            rho: 0.0,
            lower: 0.0,
            upper: 0.0,
            eigvec: KVector::uniform_unit(n, k),
            residual: 0.0,
            iterations: 0,
            converged: true,
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

/// `ρ_α(G)` for a connected hypergraph.
///
/// Stops once the Collatz–Wielandt bracket of the current iterate is at
/// most `tol` wide. The reported `[lower, upper]` is the intersection of
/// every bracket seen, `rho` its midpoint, and `eigvec` the iterate that
/// produced the final bracket. Hitting `max_iter` returns
/// [`Error::NoConvergence`] carrying the best result so far.
pub fn spectral_radius(g: &Hypergraph, alpha: Alpha, tol: f64, max_iter: usize) -> Result<SpectralResult> {
    check_tol(tol)?;
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let (n, k) = (g.n(), g.k());
    if g.m() == 0 {
        return Ok(SpectralResult::trivial(n, k));
    }
    let km1 = k as i32 - 1;
    let inv_km1 = 1.0 / (k - 1) as f64;
    let kind = TensorKind::AAlpha(alpha);

    let mut x = KVector::uniform_unit(n, k).into_entries();
    let mut y = vec![0.0; n];
    let mut best_lo = f64::NEG_INFINITY;
    let mut best_hi = f64::INFINITY;
    let mut iterations = 0;
    let mut converged = false;

    let mut next_newton = 0;
    let mut newton_gap = 1;
    while iterations < max_iter {
        iterations += 1;
        apply_into(g, kind, &x, &mut y);
        let (lo, hi) = bracket(&x, &y, km1);
        best_lo = best_lo.max(lo);
        best_hi = best_hi.min(hi);
        if hi - lo <= tol {
            converged = true;
            break;
        }
        if n <= NEWTON_MAX_N && iterations >= next_newton && hi - lo <= NEWTON_WIDTH * (1.0 + hi.abs()) {
            let accepted = newton_step(g, alpha, &x, 0.5 * (lo + hi)).filter(|z| {
                let mut yz = vec![0.0; n];
                apply_into(g, kind, z, &mut yz);
                let (zlo, zhi) = bracket(z, &yz, km1);
                zhi - zlo < hi - lo
            });
            match accepted {
                Some(z) => {
                    x = z;
                    newton_gap = 1;
                    next_newton = iterations + 1;
                    continue;
                }
                None => {
                    newton_gap = (newton_gap * 2).min(1024);
                    next_newton = iterations + newton_gap;
                }
            }
        }
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi = (*yi + SHIFT * xi.powi(km1)).powf(inv_km1);
        }
        let norm = y
            .iter()
            .map(|v| v.powi(k as i32))
            .sum::<f64>()
            .powf(1.0 / k as f64);
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
    }

    if best_lo > best_hi {
        // brackets from different iterates can cross by a rounding error
        let mid = 0.5 * (best_lo + best_hi);
        (best_lo, best_hi) = (mid, mid);
    }
    let eigvec = KVector::new(x, k)?;
    let rho = 0.5 * (best_lo + best_hi);
    let residual = eig_residual(g, kind, rho, &eigvec)?;
    let result = SpectralResult {
        rho,
        lower: best_lo,
        upper: best_hi,
        eigvec,
        residual,
        iterations,
        converged,
    };
    if converged {
        Ok(result)
    } else {
        Err(Error::NoConvergence(Box::new(result)))
    }
}

/// Collatz–Wielandt ratios `min_i, max_i y_i / x_i^{k-1}`.
fn bracket(x: &[f64], y: &[f64], km1: i32) -> (f64, f64) {
    y.iter()
        .zip(x)
        .map(|(yi, xi)| yi / xi.powi(km1))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r), hi.max(r))
        })
}

/// One Newton step on `F(x, λ) = (A_α x - λ x^{[k-1]}, (Σ x_i^k - 1)/k)`.
/// Returns the normalised new vector when it is strictly positive.
fn newton_step(g: &Hypergraph, alpha: Alpha, x: &[f64], lambda: f64) -> Option<Vec<f64>> {
    let (n, k) = (g.n(), g.k());
    let a = alpha.value();
    let km1 = k as i32 - 1;
    let mut jac = DMatrix::<f64>::zeros(n + 1, n + 1);
    let mut rhs = DVector::<f64>::zeros(n + 1);

    let mut ax = vec![0.0; n];
    apply_into(g, TensorKind::AAlpha(alpha), x, &mut ax);
    for i in 0..n {
        let xk2 = x[i].powi(km1 - 1);
        rhs[i] = -(ax[i] - lambda * xk2 * x[i]);
        jac[(i, i)] = (k - 1) as f64 * (a * g.degree(i) as f64 - lambda) * xk2;
        jac[(i, n)] = -xk2 * x[i];
        jac[(n, i)] = xk2 * x[i];
    }
    rhs[n] = -(x.iter().map(|v| v.powi(k as i32)).sum::<f64>() - 1.0) / k as f64;
    for e in g.edges() {
        for (p, &i) in e.iter().enumerate() {
            for (q, &j) in e.iter().enumerate() {
                if p != q {
                    let prod: f64 = e
                        .iter()
                        .enumerate()
                        .filter(|&(r, _)| r != p && r != q)
                        .map(|(_, &l)| x[l])
                        .product();
                    jac[(i, j)] += (1.0 - a) * prod;
                }
            }
        }
    }

    let step = jac.lu().solve(&rhs)?;
    let z: Vec<f64> = x.iter().zip(step.iter()).map(|(xi, di)| xi + di).collect();
    if !z.iter().all(|v| v.is_finite() && *v > 0.0) {
        return None;
    }
    let norm = z
        .iter()
        .map(|v| v.powi(k as i32))
        .sum::<f64>()
        .powf(1.0 / k as f64);
    Some(z.into_iter().map(|v| v / norm).collect())
}

/// One connected component and its spectral result.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentSpectrum {
    /// 0-based vertices of the component, sorted.
    pub vertices: Vec<usize>,
    pub edges: usize,
    pub result: SpectralResult,
}

/// Spectral results for every connected component. Isolated vertices get
/// the trivial result `ρ = 0`.
pub fn component_spectra(
    g: &Hypergraph,
    alpha: Alpha,
    tol: f64,
    max_iter: usize,
) -> Result<Vec<ComponentSpectrum>> {
    check_tol(tol)?;
    g.connectivity()
        .components
        .into_iter()
        .map(|vertices| {
            let sub = g.induced(&vertices);
            let result = if sub.m() == 0 {
                SpectralResult::trivial(vertices.len(), g.k())
            } else {
                spectral_radius(&sub, alpha, tol, max_iter)?
            };
            Ok(ComponentSpectrum {
                edges: sub.m(),
                vertices,
                result,
            })
        })
        .collect()
}

/// `ρ_α(G)` for any hypergraph: the maximum over its components.
pub fn spectral_radius_any(
    g: &Hypergraph,
    alpha: Alpha,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralResult> {
    check_tol(tol)?;
    if g.is_connected() {
        return spectral_radius(g, alpha, tol, max_iter);
    }
    let mut parts = Vec::new();
    let mut failed = false;
    for vertices in g.connectivity().components {
        let sub = g.induced(&vertices);
        let result = if sub.m() == 0 {
            SpectralResult::trivial(vertices.len(), g.k())
        } else {
            match spectral_radius(&sub, alpha, tol, max_iter) {
                Ok(r) => r,
                Err(Error::NoConvergence(r)) => {
                    failed = true;
                    *r
                }
                Err(e) => return Err(e),
            }
        };
        parts.push((vertices, result));
    }
    let (best_vertices, best) = parts
        .iter()
        .max_by(|a, b| a.1.rho.total_cmp(&b.1.rho))
        .expect("at least one component");
    let mut embedded = vec![0.0; g.n()];
    for (&v, &x) in best_vertices.iter().zip(best.eigvec.entries()) {
        embedded[v] = x;
    }
    let eigvec = KVector::new(embedded, g.k())?;
    let rho = best.rho;
    let result = SpectralResult {
        rho,
        lower: parts.iter().map(|p| p.1.lower).fold(f64::MIN, f64::max),
        upper: parts.iter().map(|p| p.1.upper).fold(f64::MIN, f64::max),
        residual: eig_residual(g, TensorKind::AAlpha(alpha), rho, &eigvec)?,
        eigvec,
        iterations: parts.iter().map(|p| p.1.iterations).sum(),
        converged: !failed,
    };
    if failed {
        Err(Error::NoConvergence(Box::new(result)))
    } else {
        Ok(result)
    }
}

/// Outcome of checking `ρ_α(G × H) = (k-1)!·d·ρ_α(G)` for `d`-regular `H`.
#[derive(Debug, Clone, Serialize)]
pub struct ProductCheck {
    pub alpha: Alpha,
    pub k: usize,
    /// Regular degree of `H`.
    pub d: usize,
    /// `(k-1)!·d`.
    pub factor: f64,
    pub rho_g: f64,
    pub rho_product: f64,
    pub predicted: f64,
    pub abs_diff: f64,
    /// `1 + ρ_α(G × H)`; the eigenvalue check is relative to this.
    pub scale: f64,
    /// Residual of `(predicted, u ⊗ e)` as an eigenpair of `A_α(G × H)`.
    pub residual: f64,
    pub tol: f64,
    pub rho_ok: bool,
    pub residual_ok: bool,
    pub passed: bool,
}

fn inner_tol(tol: f64) -> f64 {
    DEFAULT_TOL.min(tol * 1e-2)
}

fn regular_connected_factor(g: &Hypergraph, h: &Hypergraph, need_connected_h: bool) -> Result<usize> {
    if g.k() != h.k() {
        return Err(Error::ArityMismatch {
            left: g.k(),
            right: h.k(),
        });
    }
    let d = h
        .regular_degree()
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::PreconditionViolated("H must be regular with positive degree".into()))?;
    if need_connected_h && !h.is_connected() {
        return Err(Error::PreconditionViolated("H must be connected".into()));
    }
    Ok(d)
}

/// Checks the `A_α` spectral radius of a direct product against `G`.
///
/// Requires `k >= 3`, `G` connected, and `H` connected and `d`-regular.
/// Passes when `|ρ(G×H) - (k-1)!·d·ρ(G)| <= tol·(1 + ρ(G×H))` and the
/// transported pair `((k-1)!·d·ρ(G), u ⊗ e)` has residual at most
/// `tol·(1 + ρ(G×H))`.
pub fn check_product_rho(g: &Hypergraph, h: &Hypergraph, alpha: Alpha, tol: f64) -> Result<ProductCheck> {
    check_tol(tol)?;
    if g.k() < 3 {
        return Err(Error::KTooSmall {
            k: g.k(),
            required: 3,
        });
    }
    let d = regular_connected_factor(g, h, true)?;
    if !g.is_connected() {
        return Err(Error::PreconditionViolated("G must be connected".into()));
    }
    let k = g.k();
    let inner = inner_tol(tol);
    let base = spectral_radius(g, alpha, inner, DEFAULT_MAX_ITER)?;
    let product = g.direct_product(h)?;
    let prod = spectral_radius(&product, alpha, inner, DEFAULT_MAX_ITER)?;

    let factor = (factorial(k - 1) * d as u64) as f64;
    let predicted = factor * base.rho;
    let transported = base.eigvec.kron(&KVector::ones(h.n(), k));
    let residual = eig_residual(&product, TensorKind::AAlpha(alpha), predicted, &transported)?;
    let abs_diff = (prod.rho - predicted).abs();
    let scale = 1.0 + prod.rho;
    let rho_ok = abs_diff <= tol * scale;
    let residual_ok = residual <= tol * scale;
    Ok(ProductCheck {
        alpha,
        k,
        d,
        factor,
        rho_g: base.rho,
        rho_product: prod.rho,
        predicted,
        abs_diff,
        scale,
        residual,
        tol,
        rho_ok,
        residual_ok,
        passed: rho_ok && residual_ok,
    })
}

/// Outcome of transporting a Laplacian eigenpair of `G` to `G × H`.
#[derive(Debug, Clone, Serialize)]
pub struct LaplacianTransport {
    pub k: usize,
    pub d: usize,
    pub lambda: f64,
    /// `(k-1)!·d·λ`.
    pub transported_lambda: f64,
    pub base_residual: f64,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Checks that `((k-1)!·d·λ, u ⊗ e)` is an eigenpair of `L(G × H)` whenever
/// `(λ, u)` is one of `L(G)` and `H` is `d`-regular. Only the eigen-equation
/// of `L(G)` is used, so any certified eigenpair may be supplied.
pub fn check_laplacian_transport(
    g: &Hypergraph,
    h: &Hypergraph,
    lambda: f64,
    u: &KVector,
    tol: f64,
) -> Result<LaplacianTransport> {
    check_tol(tol)?;
    let d = regular_connected_factor(g, h, false)?;
    let base_residual = eig_residual(g, TensorKind::Laplacian, lambda, u)?;
    if base_residual > tol {
        return Err(Error::PreconditionViolated(format!(
            "(λ, u) is not an L(G) eigenpair: residual {base_residual:e} > {tol:e}"
        )));
    }
    let k = g.k();
    let product = g.direct_product(h)?;
    let transported_lambda = (factorial(k - 1) * d as u64) as f64 * lambda;
    let transported = u.kron(&KVector::ones(h.n(), k));
    let residual = eig_residual(&product, TensorKind::Laplacian, transported_lambda, &transported)?;
    Ok(LaplacianTransport {
        k,
        d,
        lambda,
        transported_lambda,
        base_residual,
        residual,
        tol,
        passed: residual <= 10.0 * tol,
    })
}

/// For a connected `d'`-regular `G`: the Laplacian eigenpair `(d' - μ, u)`
/// obtained from the adjacency Perron pair `(μ, u)`.
pub fn laplacian_pair_from_adjacency(g: &Hypergraph, tol: f64) -> Result<(f64, KVector)> {
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::PreconditionViolated("G must be regular".into()))?;
    let r = spectral_radius(g, Alpha::ZERO, tol, DEFAULT_MAX_ITER)?;
    Ok((d as f64 - r.rho, r.eigvec))
}
