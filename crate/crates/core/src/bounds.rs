//! Degree-based lower bounds on `ρ_α(G)`.
//!
//! Most bounds share the shape
//!
//! ```text
//! km/n + 1/(c·n) · [ α·T1(S) + (1-α)·k·T2(S) ]
//! T1(S) = s·Σ_S d^{(2k-1)/(k-1)} / Σ_S d^{k/(k-1)} - Σ_S d
//! T2(S) = s^{1/k} · (Σ_S d^{k/(k-1)})^{(k-1)/k} - Σ_S d
//! ```
//!
//! with `c = 1` for strong independent `S` and `c = k` for an arbitrary `S`.
//! [`closed_form`] holds the bare formulas; [`BoundEvaluator`] wraps them
//! with preconditions, subset selection and a `ρ_α` bracket.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::combinatorics::{self, is_strong_independent, SubsetKind, VertexSubset};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::spectral::{spectral_radius_any, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::tensor::Alpha;

/// Slack allowed between a bound and the upper end of the `ρ_α` bracket.
pub const HOLDS_TOL: f64 = 1e-8;

pub mod closed_form {
    //! Formula layer over degree multisets. `degrees` always lists the
    //! degrees of the vertices of `S`; `s` is the cardinality actually
    //! plugged in, which some variants replace.

    use crate::numeric::{int_pow_frac, CompensatedSum};

    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct PowerSums {
        /// `Σ d`
        pub d: f64,
        /// `Σ d^{k/(k-1)}`
        pub w: f64,
        /// `Σ d^{(2k-1)/(k-1)}`
        pub p: f64,
    }

    pub fn w(k: usize, d: u64) -> f64 {
        int_pow_frac(d, k as u32, k as u32 - 1)
    }

    pub fn p(k: usize, d: u64) -> f64 {
        int_pow_frac(d, 2 * k as u32 - 1, k as u32 - 1)
    }

    pub fn power_sums(k: usize, degrees: &[u64]) -> PowerSums {
        let sum = |f: &dyn Fn(u64) -> f64| -> f64 {
            degrees.iter().map(|&d| f(d)).collect::<CompensatedSum>().value()
        };
        PowerSums {
            d: sum(&|d| d as f64),
            w: sum(&|d| w(k, d)),
            p: sum(&|d| p(k, d)),
        }
    }

    pub fn t1(s: f64, sums: PowerSums) -> f64 {
        if sums.w == 0.0 {
            return 0.0;
        }
        s * sums.p / sums.w - sums.d
    }

    pub fn t2(k: usize, s: f64, sums: PowerSums) -> f64 {
        let kf = k as f64;
        s.powf(1.0 / kf) * sums.w.powf((kf - 1.0) / kf) - sums.d
    }

    pub fn average_degree(k: usize, n: usize, m: usize) -> f64 {
        (k * m) as f64 / n as f64
    }

    /// `km/n + 1/(c·n)·[α·T1 + (1-α)·k·T2]`.
    pub fn subset_form(k: usize, n: usize, m: usize, degrees: &[u64], s: f64, c: f64, alpha: f64) -> f64 {
        let sums = power_sums(k, degrees);
        let bracket = alpha * t1(s, sums) + (1.0 - alpha) * k as f64 * t2(k, s, sums);
        average_degree(k, n, m) + bracket / (c * n as f64)
    }

    /// `S = V` written out directly.
    pub fn full_vertex_set(k: usize, n: usize, m: usize, degrees: &[u64], alpha: f64) -> f64 {
        let sums = power_sums(k, degrees);
        let kf = k as f64;
        let ratio = if sums.w == 0.0 { 0.0 } else { sums.p / sums.w };
        alpha / kf * ratio
            + (1.0 - alpha) * power_mean(k, n, degrees)
            + alpha * (kf - 1.0) * m as f64 / n as f64
    }

    /// `((1/n)·Σ d^{k/(k-1)})^{(k-1)/k}`.
    pub fn power_mean(k: usize, n: usize, degrees: &[u64]) -> f64 {
        let kf = k as f64;
        (power_sums(k, degrees).w / n as f64).powf((kf - 1.0) / kf)
    }

    fn ratios(k: usize, degrees: &[u64], s: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let total = power_sums(k, degrees).w;
        degrees.iter().map(move |&d| {
            let r = if total == 0.0 { 1.0 } else { s * w(k, d) / total };
            (d as f64, r)
        })
    }

    /// `km/n + 1/(kn)·[α·Σ d_i·(r_i^{1/2} - 1)² + k·T2]` with
    /// `r_i = s·d_i^{k/(k-1)} / Σ_S d^{k/(k-1)}`.
    pub fn square_subset(k: usize, n: usize, m: usize, degrees: &[u64], alpha: f64) -> f64 {
        let s = degrees.len() as f64;
        let sq: CompensatedSum = ratios(k, degrees, s)
            .map(|(d, r)| d * (r.sqrt() - 1.0).powi(2))
            .collect();
        let kf = k as f64;
        let t2 = t2(k, s, power_sums(k, degrees));
        average_degree(k, n, m) + (alpha * sq.value() + kf * t2) / (kf * n as f64)
    }

    /// `km/n + α/(k^k·n)·Σ d_i·((r_i^{1/k} + k - 1)^k - k^k) + (1-α)/n·T2`.
    pub fn kpower_subset(k: usize, n: usize, m: usize, degrees: &[u64], alpha: f64) -> f64 {
        let s = degrees.len() as f64;
        let kf = k as f64;
        let kk = kf.powi(k as i32);
        let acc: CompensatedSum = ratios(k, degrees, s)
            .map(|(d, r)| d * ((r.powf(1.0 / kf) + kf - 1.0).powi(k as i32) - kk))
            .collect();
        let t2 = t2(k, s, power_sums(k, degrees));
        average_degree(k, n, m) + alpha * acc.value() / (kk * n as f64) + (1.0 - alpha) * t2 / n as f64
    }

    /// The two `Δ/δ` pair expressions, before and after replacing the
    /// denominator `Δ^{k/(k-1)} + δ^{k/(k-1)}` by `Δ^{k/(k-1)}` (and
    /// dropping the factor 2). The first is never smaller.
    pub fn pair_forms(
        k: usize,
        n: usize,
        m: usize,
        max_d: u64,
        min_d: u64,
        c: f64,
        alpha: f64,
    ) -> (f64, f64) {
        let kf = k as f64;
        let (wa, wb) = (w(k, max_d), w(k, min_d));
        let (pa, pb) = (p(k, max_d), p(k, min_d));
        let dsum = (max_d + min_d) as f64;
        let scale = n as f64 * c;
        let holder =
            (1.0 - alpha) * kf / scale * (2f64.powf(1.0 / kf) * (wa + wb).powf((kf - 1.0) / kf) - dsum);
        let base = average_degree(k, n, m);
        let first = base + alpha / scale * (2.0 * (pa + pb) / (wa + wb) - dsum) + holder;
        let second = base + alpha / scale * ((pa + pb) / wa - dsum) + holder;
        (first, second)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    AverageDegree,
    StrongSet,
    Subset,
    FullVertexSet,
    VertexPair,
    WeakIndependence,
    Chromatic,
    CliqueComplement,
    VertexCut,
    SquareSubset,
    KpowerSubset,
    MaxMinPair,
    PowerMean,
}

impl BoundKind {
    pub const ALL: [BoundKind; 13] = [
        BoundKind::AverageDegree,
        BoundKind::StrongSet,
        BoundKind::Subset,
        BoundKind::FullVertexSet,
        BoundKind::VertexPair,
        BoundKind::WeakIndependence,
        BoundKind::Chromatic,
        BoundKind::CliqueComplement,
        BoundKind::VertexCut,
        BoundKind::SquareSubset,
        BoundKind::KpowerSubset,
        BoundKind::MaxMinPair,
        BoundKind::PowerMean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::AverageDegree => "average_degree",
            BoundKind::StrongSet => "strong_set",
            BoundKind::Subset => "subset",
            BoundKind::FullVertexSet => "full_vertex_set",
            BoundKind::VertexPair => "vertex_pair",
            BoundKind::WeakIndependence => "weak_independence",
            BoundKind::Chromatic => "chromatic",
            BoundKind::CliqueComplement => "clique_complement",
            BoundKind::VertexCut => "vertex_cut",
            BoundKind::SquareSubset => "square_subset",
            BoundKind::KpowerSubset => "kpower_subset",
            BoundKind::MaxMinPair => "max_min_pair",
            BoundKind::PowerMean => "power_mean",
        }
    }
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub bound: BoundKind,
    pub alpha: Alpha,
    pub subset: Option<VertexSubset>,
    pub params: BTreeMap<&'static str, f64>,
    pub value: f64,
    pub rho_lower: f64,
    pub rho_upper: f64,
    /// `rho_lower - value`; negative slack is kept, never clipped.
    pub slack: f64,
    /// `value <= rho_upper + HOLDS_TOL`.
    pub holds: bool,
}

/// Evaluates bounds for one `(G, α)` against a fixed `ρ_α` bracket.
#[derive(Debug, Clone)]
pub struct BoundEvaluator<'g> {
    g: &'g Hypergraph,
    alpha: Alpha,
    degrees: Vec<u64>,
    rho_lower: f64,
    rho_upper: f64,
}

impl<'g> BoundEvaluator<'g> {
    /// Computes the bracket with [`spectral_radius_any`] at the default
    /// tolerance.
    pub fn new(g: &'g Hypergraph, alpha: Alpha) -> Result<Self> {
        let r = spectral_radius_any(g, alpha, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        Ok(Self::with_bracket(g, alpha, r.lower, r.upper))
    }

    pub fn with_bracket(g: &'g Hypergraph, alpha: Alpha, rho_lower: f64, rho_upper: f64) -> Self {
        BoundEvaluator {
            g,
            alpha,
            degrees: g.degrees().into_iter().map(|d| d as u64).collect(),
            rho_lower,
            rho_upper,
        }
    }

    pub fn rho_bracket(&self) -> (f64, f64) {
        (self.rho_lower, self.rho_upper)
    }

    fn a(&self) -> f64 {
        self.alpha.value()
    }

    fn shape(&self) -> (usize, usize, usize) {
        (self.g.k(), self.g.n(), self.g.m())
    }

    fn degrees_of(&self, set: &[usize]) -> Vec<u64> {
        set.iter().map(|&v| self.degrees[v]).collect()
    }

    fn report(
        &self,
        bound: BoundKind,
        subset: Option<VertexSubset>,
        params: impl IntoIterator<Item = (&'static str, f64)>,
        value: f64,
    ) -> BoundReport {
        BoundReport {
            bound,
            alpha: self.alpha,
            subset,
            params: params.into_iter().collect(),
            value,
            rho_lower: self.rho_lower,
            rho_upper: self.rho_upper,
            slack: self.rho_lower - value,
            holds: value <= self.rho_upper + HOLDS_TOL,
        }
    }

    /// Connected and `k >= 3`, needed by every bound routed through the
    /// direct product with a single edge.
    fn require_product_route(&self) -> Result<()> {
        if self.g.k() < 3 {
            return Err(Error::KTooSmall {
                k: self.g.k(),
                required: 3,
            });
        }
        if !self.g.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(())
    }

    fn subset_form(&self, set: &VertexSubset, s: f64, c: f64) -> f64 {
        let (k, n, m) = self.shape();
        closed_form::subset_form(k, n, m, &self.degrees_of(set.members()), s, c, self.a())
    }

    pub fn average_degree(&self) -> BoundReport {
        let (k, n, m) = self.shape();
        self.report(
            BoundKind::AverageDegree,
            None,
            [],
            closed_form::average_degree(k, n, m),
        )
    }

    /// `S` must be strong independent. No connectivity needed.
    pub fn strong_set(&self, members: &[usize]) -> Result<BoundReport> {
        let set = VertexSubset::new(self.g, members.iter().copied(), SubsetKind::StrongIndependent)?;
        let s = set.len() as f64;
        let value = self.subset_form(&set, s, 1.0);
        Ok(self.report(BoundKind::StrongSet, Some(set), [("s", s), ("c", 1.0)], value))
    }

    pub fn subset(&self, members: &[usize]) -> Result<BoundReport> {
        self.require_product_route()?;
        let set = VertexSubset::new(self.g, members.iter().copied(), SubsetKind::Arbitrary)?;
        let s = set.len() as f64;
        let k = self.g.k() as f64;
        let value = self.subset_form(&set, s, k);
        Ok(self.report(BoundKind::Subset, Some(set), [("s", s), ("c", k)], value))
    }

    pub fn full_vertex_set(&self) -> Result<BoundReport> {
        self.require_product_route()?;
        let (k, n, m) = self.shape();
        let value = closed_form::full_vertex_set(k, n, m, &self.degrees, self.a());
        Ok(self.report(BoundKind::FullVertexSet, None, [("s", n as f64)], value))
    }

    /// Requires `d_i > d_j` strictly. `c = k` when `i` and `j` share an
    /// edge, else `c = 1`.
    pub fn vertex_pair(&self, i: usize, j: usize) -> Result<BoundReport> {
        self.require_product_route()?;
        let set = VertexSubset::new(self.g, [i, j], SubsetKind::Arbitrary)?;
        if self.degrees[i] <= self.degrees[j] {
            return Err(Error::PreconditionViolated(format!(
                "vertex pair needs d_i > d_j, got d_{} = {} and d_{} = {}",
                i + 1,
                self.degrees[i],
                j + 1,
                self.degrees[j]
            )));
        }
        let c = if self.g.adjacent(i, j) {
            self.g.k() as f64
        } else {
            1.0
        };
        let value = self.subset_form(&set, 2.0, c);
        let params = [("i", (i + 1) as f64), ("j", (j + 1) as f64), ("c", c)];
        Ok(self.report(BoundKind::VertexPair, Some(set), params, value))
    }

    fn max_weak(&self) -> Result<VertexSubset> {
        combinatorics::max_weak_independent(self.g)
    }

    /// Subset form on a maximum weak independent set.
    pub fn weak_independence(&self) -> Result<BoundReport> {
        self.require_product_route()?;
        let set = self.max_weak()?;
        let s = set.len() as f64;
        let k = self.g.k() as f64;
        let value = self.subset_form(&set, s, k);
        Ok(self.report(
            BoundKind::WeakIndependence,
            Some(set),
            [("s", s), ("c", k)],
            value,
        ))
    }

    /// Subset form on a maximum weak independent set with `s` replaced by
    /// `n/χ(G)`.
    pub fn chromatic(&self) -> Result<BoundReport> {
        self.require_product_route()?;
        let set = self.max_weak()?;
        let chi = combinatorics::weak_chromatic_number(self.g)? as f64;
        let s = self.g.n() as f64 / chi;
        let k = self.g.k() as f64;
        let value = self.subset_form(&set, s, k);
        Ok(self.report(
            BoundKind::Chromatic,
            Some(set),
            [("chi", chi), ("s", s), ("c", k)],
            value,
        ))
    }

    /// Subset form on a maximum clique of the complement, `s = ω(Ḡ)`.
    pub fn clique_complement(&self) -> Result<BoundReport> {
        self.require_product_route()?;
        let members = self.max_weak()?.members().to_vec();
        let set = VertexSubset::new(&self.g.complement(), members, SubsetKind::Clique)?;
        let s = set.len() as f64;
        let k = self.g.k() as f64;
        let value = self.subset_form(&set, s, k);
        Ok(self.report(
            BoundKind::CliqueComplement,
            Some(set),
            [("s", s), ("c", k)],
            value,
        ))
    }

    /// Subset form on a minimum vertex cut; `c = 1` when the cut is strong
    /// independent, else `c = k`.
    pub fn vertex_cut(&self) -> Result<BoundReport> {
        self.require_product_route()?;
        let (nu, set) = combinatorics::vertex_connectivity(self.g)?;
        let c = if is_strong_independent(self.g, set.members()) {
            1.0
        } else {
            self.g.k() as f64
        };
        let s = nu as f64;
        let value = self.subset_form(&set, s, c);
        Ok(self.report(BoundKind::VertexCut, Some(set), [("s", s), ("c", c)], value))
    }

    pub fn square_subset(&self, members: &[usize]) -> Result<BoundReport> {
        self.require_product_route()?;
        let set = VertexSubset::new(self.g, members.iter().copied(), SubsetKind::Arbitrary)?;
        let (k, n, m) = self.shape();
        let value = closed_form::square_subset(k, n, m, &self.degrees_of(set.members()), self.a());
        let s = set.len() as f64;
        Ok(self.report(BoundKind::SquareSubset, Some(set), [("s", s)], value))
    }

    pub fn kpower_subset(&self, members: &[usize]) -> Result<BoundReport> {
        self.require_product_route()?;
        let set = VertexSubset::new(self.g, members.iter().copied(), SubsetKind::Arbitrary)?;
        let (k, n, m) = self.shape();
        let value = closed_form::kpower_subset(k, n, m, &self.degrees_of(set.members()), self.a());
        let s = set.len() as f64;
        Ok(self.report(BoundKind::KpowerSubset, Some(set), [("s", s)], value))
    }

    /// `Δ/δ` bound with the universal factor `1/(2n)`; needs only `m >= 1`.
    pub fn max_min_pair(&self) -> Result<BoundReport> {
        if self.g.m() == 0 {
            return Err(Error::PreconditionViolated(
                "max/min pair bound needs at least one edge".into(),
            ));
        }
        let (k, n, m) = self.shape();
        let max_d = *self.degrees.iter().max().expect("n >= 1");
        let min_d = *self.degrees.iter().min().expect("n >= 1");
        let value = closed_form::subset_form(k, n, m, &[max_d, min_d], 2.0, 2.0, self.a());
        let params = [("max_degree", max_d as f64), ("min_degree", min_d as f64)];
        Ok(self.report(BoundKind::MaxMinPair, None, params, value))
    }

    /// Power-mean bound on the adjacency spectral radius; `α = 0` only.
    pub fn power_mean(&self) -> Result<BoundReport> {
        if self.a() != 0.0 {
            return Err(Error::PreconditionViolated(
                "power-mean bound is stated for alpha = 0".into(),
            ));
        }
        self.require_product_route()?;
        let (k, n, _) = self.shape();
        let value = closed_form::power_mean(k, n, &self.degrees);
        Ok(self.report(BoundKind::PowerMean, None, [], value))
    }

    /// Lexicographically smallest vertices of maximum and minimum degree.
    pub fn extreme_pair(&self) -> (usize, usize) {
        let max_d = self.degrees.iter().max().copied().unwrap_or(0);
        let min_d = self.degrees.iter().min().copied().unwrap_or(0);
        let i = self.degrees.iter().position(|&d| d == max_d).unwrap_or(0);
        let j = self.degrees.iter().position(|&d| d == min_d).unwrap_or(0);
        (i, j)
    }

    /// Every applicable bound, sorted by value (descending).
    ///
    /// Subset-parameterised bounds use `S = V`, the vertex-pair bound uses
    /// [`Self::extreme_pair`], and the strong-set bound a maximum strong
    /// independent set. Bounds whose hypotheses fail for this `(G, α)` are
    /// left out: the pair bound when `G` is regular, the cut bound when `G`
    /// is complete, the power mean when `α > 0`.
    pub fn best_bound(&self) -> Result<Vec<BoundReport>> {
        self.require_product_route()?;
        let all: Vec<usize> = (0..self.g.n()).collect();
        let strong = combinatorics::max_strong_independent(self.g)?;
        let mut out = vec![
            self.average_degree(),
            self.strong_set(strong.members())?,
            self.subset(&all)?,
            self.full_vertex_set()?,
            self.weak_independence()?,
            self.chromatic()?,
            self.clique_complement()?,
            self.square_subset(&all)?,
            self.kpower_subset(&all)?,
            self.max_min_pair()?,
        ];
        let (i, j) = self.extreme_pair();
        if self.degrees[i] > self.degrees[j] {
            out.push(self.vertex_pair(i, j)?);
        }
        match self.vertex_cut() {
            Ok(r) => out.push(r),
            Err(Error::NoCutExists) => {}
            Err(e) => return Err(e),
        }
        if self.a() == 0.0 {
            out.push(self.power_mean()?);
        }
        sort_reports(&mut out);
        Ok(out)
    }

    /// [`Self::best_bound`] when its hypotheses hold; otherwise only the
    /// bounds that need neither connectivity nor `k >= 3`.
    pub fn applicable(&self) -> Result<Vec<BoundReport>> {
        if self.g.k() >= 3 && self.g.is_connected() {
            return self.best_bound();
        }
        let strong = combinatorics::max_strong_independent(self.g)?;
        let mut out = vec![self.average_degree(), self.strong_set(strong.members())?];
        if self.g.m() > 0 {
            out.push(self.max_min_pair()?);
        }
        sort_reports(&mut out);
        Ok(out)
    }
}

fn sort_reports(out: &mut [BoundReport]) {
    out.sort_by(|a, b| b.value.total_cmp(&a.value).then(a.bound.cmp(&b.bound)));
}

/// Lower bound on `ρ(Q(G)) = 2ρ_{1/2}(G)`: twice the square form at
/// `S = V`, `α = 1/2`.
pub fn signless_laplacian_bound(g: &Hypergraph) -> Result<f64> {
    if g.k() < 3 {
        return Err(Error::KTooSmall {
            k: g.k(),
            required: 3,
        });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let degrees: Vec<u64> = g.degrees().into_iter().map(|d| d as u64).collect();
    Ok(2.0 * closed_form::square_subset(g.k(), g.n(), g.m(), &degrees, 0.5))
}
