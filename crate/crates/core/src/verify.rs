//! Seeded verification campaigns over random hypergraphs.
//!
//! Each trial draws one connected hypergraph and one regular hypergraph
//! from a stream derived from `(seed, trial)` and runs four suites:
//! bound soundness, bound ordering, product transport and regular
//! equality. Trials may run in parallel; results are collected in trial
//! order, so the JSON for a given config is byte-identical across runs and
//! thread counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{closed_form, BoundEvaluator, BoundKind, BoundReport, HOLDS_TOL};
use crate::combinatorics;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::numeric::binomial;
use crate::spectral::{
    check_laplacian_transport, check_product_rho, laplacian_pair_from_adjacency, spectral_radius,
    DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use crate::tensor::{Alpha, KVector};

pub const SCHEMA: &str = "hyperalpha/1";
/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "HYPERALPHA_THREADS";

#[derive(Debug, Clone, Serialize)]
pub struct Family {
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// `None` means "from the connectivity minimum".
    pub m_min: Option<usize>,
    /// `None` means `min(C(n,k), 2n)`.
    pub m_max: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub spectral: f64,
    pub bound: f64,
    pub improvement: f64,
    pub product: f64,
    pub regular: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            spectral: DEFAULT_TOL,
            bound: HOLDS_TOL,
            improvement: 1e-12,
            product: 1e-6,
            regular: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub family: Family,
    pub alphas: Vec<f64>,
    pub tolerances: Tolerances,
    /// Test hook: added to every bound value before the soundness check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corrupt_bound: Option<f64>,
}

impl VerifyConfig {
    pub fn new(seed: u64, trials: usize, k: usize) -> Self {
        VerifyConfig {
            seed,
            trials,
            family: Family {
                k,
                n_min: k + 1,
                n_max: (k + 5).max(8),
                m_min: None,
                m_max: None,
            },
            alphas: vec![0.0, 0.25, 0.5, 0.75, 0.99],
            tolerances: Tolerances::default(),
            corrupt_bound: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialSummary {
    pub trial: usize,
    pub graph_seed: u64,
    pub n: usize,
    pub m: usize,
    pub regular_n: usize,
    pub regular_degree: usize,
    /// `ρ_α` midpoint per configured `α`.
    pub rho: Vec<f64>,
    pub checks: usize,
    pub failures: usize,
    /// Smallest `rho_upper - value` over all bounds in this trial.
    pub min_margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureRecord {
    pub trial: usize,
    pub suite: &'static str,
    pub check: String,
    pub alpha: Option<f64>,
    pub value: f64,
    pub reference: f64,
    /// Signed distance to violation; negative here means the check failed.
    pub slack: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRun {
    pub schema: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub family: Family,
    pub alphas: Vec<f64>,
    pub tolerances: Tolerances,
    pub checks: usize,
    pub passed: bool,
    pub results: Vec<TrialSummary>,
    pub failures: Vec<FailureRecord>,
}

impl VerifyRun {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("VerifyRun serializes");
        s.push('\n');
        s
    }
}

fn record(
    trial: usize,
    suite: &'static str,
    check: impl Into<String>,
    alpha: f64,
    value: f64,
    reference: f64,
    slack: f64,
) -> FailureRecord {
    FailureRecord {
        trial,
        suite,
        check: check.into(),
        alpha: Some(alpha),
        value,
        reference,
        slack,
        detail: String::new(),
    }
}

struct Trial<'c> {
    cfg: &'c VerifyConfig,
    index: usize,
    checks: usize,
    failures: Vec<FailureRecord>,
    min_margin: f64,
}

impl Trial<'_> {
    fn check(&mut self, ok: bool, fail: impl FnOnce(usize) -> FailureRecord) {
        self.checks += 1;
        if !ok {
            self.failures.push(fail(self.index));
        }
    }

    fn error(&mut self, suite: &'static str, alpha: Option<f64>, e: &Error) {
        self.checks += 1;
        self.failures.push(FailureRecord {
            trial: self.index,
            suite,
            check: "error".into(),
            alpha,
            value: f64::NAN,
            reference: f64::NAN,
            slack: f64::NAN,
            detail: e.to_string(),
        });
    }

    fn soundness(&mut self, alpha: f64, reports: &[BoundReport]) {
        let tol = self.cfg.tolerances.bound;
        let shift = self.cfg.corrupt_bound.unwrap_or(0.0);
        for r in reports {
            let value = r.value + shift;
            let margin = r.rho_upper + tol - value;
            self.min_margin = self.min_margin.min(r.rho_upper - value);
            self.check(margin >= 0.0, |trial| {
                record(
                    trial,
                    "soundness",
                    r.bound.name(),
                    alpha,
                    value,
                    r.rho_upper,
                    r.rho_lower - value,
                )
            });
        }
    }

    fn ordering(
        &mut self,
        g: &Hypergraph,
        alpha: f64,
        eval: &BoundEvaluator<'_>,
        reports: &[BoundReport],
    ) -> Result<()> {
        let tol = self.cfg.tolerances.improvement;
        let base = eval.average_degree().value;
        for r in reports {
            if matches!(r.bound, BoundKind::AverageDegree | BoundKind::Chromatic) {
                continue;
            }
            self.check(r.value >= base - tol, |trial| {
                record(
                    trial,
                    "ordering",
                    format!("{}>=average_degree", r.bound),
                    alpha,
                    r.value,
                    base,
                    r.value - base,
                )
            });
        }

        let all: Vec<usize> = (0..g.n()).collect();
        let weak = combinatorics::max_weak_independent(g)?;
        for (label, set) in [("V", all.as_slice()), ("max_weak", weak.members())] {
            let subset = eval.subset(set)?.value;
            for other in [eval.square_subset(set)?, eval.kpower_subset(set)?] {
                let scale = 1.0 + subset.abs();
                self.check(subset >= other.value - tol * scale, |trial| {
                    record(
                        trial,
                        "ordering",
                        format!("subset>={}[{label}]", other.bound),
                        alpha,
                        other.value,
                        subset,
                        subset - other.value,
                    )
                });
            }
        }

        let (i, j) = eval.extreme_pair();
        let degrees = g.degrees();
        let c = if g.adjacent(i, j) { g.k() as f64 } else { 1.0 };
        let (first, second) = closed_form::pair_forms(
            g.k(),
            g.n(),
            g.m(),
            degrees[i] as u64,
            degrees[j] as u64,
            c,
            alpha,
        );
        self.check(first >= second - tol * (1.0 + first.abs()), |trial| {
            record(
                trial,
                "ordering",
                "pair_forms",
                alpha,
                second,
                first,
                first - second,
            )
        });
        Ok(())
    }

    fn product(&mut self, g: &Hypergraph, h: &Hypergraph, alpha: Alpha) -> Result<()> {
        let c = check_product_rho(g, h, alpha, self.cfg.tolerances.product)?;
        self.check(c.passed, |trial| {
            let mut f = record(
                trial,
                "product",
                format!("rho_product[H n={}]", h.n()),
                alpha.value(),
                c.rho_product,
                c.predicted,
                c.tol * c.scale - c.abs_diff.max(c.residual),
            );
            f.detail = format!("abs_diff {:e}, residual {:e}", c.abs_diff, c.residual);
            f
        });
        Ok(())
    }

    fn regular(&mut self, g: &Hypergraph, alpha: Alpha) -> Result<()> {
        let d = g.regular_degree().expect("regular instance") as f64;
        let r = spectral_radius(g, alpha, self.cfg.tolerances.spectral, DEFAULT_MAX_ITER)?;
        let tol = self.cfg.tolerances.regular;
        self.check((r.rho - d).abs() <= tol, |trial| {
            record(
                trial,
                "regular",
                "rho=degree",
                alpha.value(),
                r.rho,
                d,
                tol - (r.rho - d).abs(),
            )
        });
        Ok(())
    }

    fn laplacian(&mut self, g: &Hypergraph, h: &Hypergraph) -> Result<()> {
        let tol = self.cfg.tolerances.product;
        let ones = KVector::ones(g.n(), g.k());
        let (lambda, u) = laplacian_pair_from_adjacency(g, self.cfg.tolerances.spectral)?;
        for (label, lambda, u) in [("zero_pair", 0.0, &ones), ("adjacency_pair", lambda, &u)] {
            let t = check_laplacian_transport(g, h, lambda, u, tol)?;
            self.check(t.passed, |trial| {
                record(
                    trial,
                    "regular",
                    format!("laplacian_transport[{label}]"),
                    0.0,
                    t.residual,
                    10.0 * tol,
                    10.0 * tol - t.residual,
                )
            });
        }
        Ok(())
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn draw_connected(fam: &Family, rng: &mut ChaCha8Rng) -> Result<(Hypergraph, u64)> {
    let k = fam.k;
    let n = rng.gen_range(fam.n_min..=fam.n_max);
    let total = binomial(n, k).min(usize::MAX as u64) as usize;
    let lo = fam.m_min.unwrap_or(0).max((n - 1).div_ceil(k - 1));
    let hi = fam.m_max.unwrap_or(2 * n).min(total).max(lo);
    let m = rng.gen_range(lo..=hi);
    let seed = rng.gen();
    Ok((Hypergraph::random_connected(n, k, m, seed)?, seed))
}

/// A connected regular hypergraph with `n` in the family range, falling
/// back to the complete hypergraph when no smaller degree is realisable.
fn draw_regular(fam: &Family, rng: &mut ChaCha8Rng) -> Result<Hypergraph> {
    let k = fam.k;
    let n = rng.gen_range(fam.n_min..=fam.n_max.min(combinatorics::SEARCH_CAP));
    let seed = rng.gen();
    let full = binomial(n - 1, k - 1) as usize;
    let degrees: Vec<usize> = (2..full).filter(|d| (n * d) % k == 0).collect();
    if degrees.is_empty() {
        return Hypergraph::complete(n, k);
    }
    let d = degrees[rng.gen_range(0..degrees.len())];
    match Hypergraph::random_regular(n, k, d, seed) {
        Ok(g) => Ok(g),
        Err(Error::InfeasibleRequest(_)) => Hypergraph::complete(n, k),
        Err(e) => Err(e),
    }
}

fn run_trial(cfg: &VerifyConfig, index: usize) -> (TrialSummary, Vec<FailureRecord>, usize) {
    let mut t = Trial {
        cfg,
        index,
        checks: 0,
        failures: Vec::new(),
        min_margin: f64::INFINITY,
    };
    let mut rng = trial_rng(cfg.seed, index);
    let mut summary = TrialSummary {
        trial: index,
        graph_seed: 0,
        n: 0,
        m: 0,
        regular_n: 0,
        regular_degree: 0,
        rho: Vec::new(),
        checks: 0,
        failures: 0,
        min_margin: f64::INFINITY,
    };
    let k = cfg.family.k;

    match draw_connected(&cfg.family, &mut rng) {
        Ok((g, seed)) => {
            summary.graph_seed = seed;
            summary.n = g.n();
            summary.m = g.m();
            let single_edge = Hypergraph::complete(k, k).expect("k >= 2");
            for &a in &cfg.alphas {
                let alpha = match Alpha::new(a) {
                    Ok(alpha) => alpha,
                    Err(e) => {
                        t.error("config", Some(a), &e);
                        continue;
                    }
                };
                let eval = match BoundEvaluator::new(&g, alpha) {
                    Ok(e) => e,
                    Err(e) => {
                        t.error("spectral", Some(a), &e);
                        continue;
                    }
                };
                let (lo, hi) = eval.rho_bracket();
                summary.rho.push(0.5 * (lo + hi));
                let reports = match sound_reports(&g, &eval) {
                    Ok(r) => r,
                    Err(e) => {
                        t.error("soundness", Some(a), &e);
                        continue;
                    }
                };
                t.soundness(a, &reports);
                if k >= 3 {
                    if let Err(e) = t.ordering(&g, a, &eval, &reports) {
                        t.error("ordering", Some(a), &e);
                    }
                    if let Err(e) = t.product(&g, &single_edge, alpha) {
                        t.error("product", Some(a), &e);
                    }
                }
            }
        }
        Err(e) => t.error("generator", None, &e),
    }

    match draw_regular(&cfg.family, &mut rng) {
        Ok(h) => {
            summary.regular_n = h.n();
            summary.regular_degree = h.regular_degree().unwrap_or(0);
            for &a in &cfg.alphas {
                if let Ok(alpha) = Alpha::new(a) {
                    if let Err(e) = t.regular(&h, alpha) {
                        t.error("regular", Some(a), &e);
                    }
                }
            }
            if k >= 3 {
                let single_edge = Hypergraph::complete(k, k).expect("k >= 2");
                if let Err(e) = t.laplacian(&h, &single_edge) {
                    t.error("regular", None, &e);
                }
            }
        }
        Err(e) => t.error("generator", None, &e),
    }

    summary.checks = t.checks;
    summary.failures = t.failures.len();
    summary.min_margin = t.min_margin;
    (summary, t.failures, t.checks)
}

/// All bounds applicable to `(G, α)`: the curated list plus the subset
/// forms on every maximum-set choice and the vertex-pair bound on every
/// pair with distinct degrees.
pub fn sound_reports(g: &Hypergraph, eval: &BoundEvaluator<'_>) -> Result<Vec<BoundReport>> {
    let mut out = eval.applicable()?;
    if g.k() < 3 || !g.is_connected() {
        return Ok(out);
    }
    let weak = combinatorics::max_weak_independent(g)?;
    let strong = combinatorics::max_strong_independent(g)?;
    for set in [weak.members(), strong.members()] {
        out.push(eval.subset(set)?);
        out.push(eval.square_subset(set)?);
        out.push(eval.kpower_subset(set)?);
    }
    let degrees = g.degrees();
    for i in 0..g.n() {
        for j in 0..g.n() {
            if degrees[i] > degrees[j] {
                out.push(eval.vertex_pair(i, j)?);
            }
        }
    }
    Ok(out)
}

fn pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::PreconditionViolated(format!("thread pool: {e}")))
}

fn validate(cfg: &VerifyConfig) -> Result<()> {
    let f = &cfg.family;
    if f.k < 2 {
        return Err(Error::KTooSmall { k: f.k, required: 2 });
    }
    if f.n_min < f.k || f.n_min > f.n_max {
        return Err(Error::InvalidDimensions(format!(
            "n range {}..={} must satisfy k <= n_min <= n_max",
            f.n_min, f.n_max
        )));
    }
    if f.n_max > combinatorics::INDEPENDENCE_CAP {
        return Err(Error::TooLarge {
            n: f.n_max,
            cap: combinatorics::INDEPENDENCE_CAP,
        });
    }
    if let (Some(lo), Some(hi)) = (f.m_min, f.m_max) {
        if lo > hi {
            return Err(Error::InvalidDimensions(format!("m range {lo}..={hi} is empty")));
        }
    }
    for &a in &cfg.alphas {
        Alpha::new(a)?;
    }
    Ok(())
}

/// Runs the campaign. Errors only on an invalid config; every
/// mathematical or numerical problem becomes a [`FailureRecord`].
pub fn run(cfg: &VerifyConfig) -> Result<VerifyRun> {
    validate(cfg)?;
    let outcomes: Vec<_> = pool()?.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| run_trial(cfg, i))
            .collect()
    });
    let mut results = Vec::with_capacity(outcomes.len());
    let mut failures = Vec::new();
    let mut checks = 0;
    for (summary, fails, c) in outcomes {
        results.push(summary);
        failures.extend(fails);
        checks += c;
    }
    Ok(VerifyRun {
        schema: SCHEMA,
        seed: cfg.seed,
        trials: cfg.trials,
        family: cfg.family.clone(),
        alphas: cfg.alphas.clone(),
        tolerances: cfg.tolerances.clone(),
        checks,
        passed: failures.is_empty(),
        results,
        failures,
    })
}
