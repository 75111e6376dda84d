use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperalpha::bounds::BoundEvaluator;
use hyperalpha::combinatorics::is_strong_independent;
use hyperalpha::spectral::{component_spectra, laplacian_pair_from_adjacency, spectral_radius_any};
use hyperalpha::verify::{self, VerifyConfig, SCHEMA};
use hyperalpha::{
    check_laplacian_transport, check_product_rho, uhg, Alpha, BoundReport, Error, Hypergraph, KVector,
    DEFAULT_MAX_ITER, DEFAULT_TOL,
};

#[derive(Parser)]
#[command(
    name = "hyperalpha",
    version,
    about = "A_α spectral radius and degree bounds for k-uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size, degree profile and connectivity of a .uhg file.
    Info {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Spectral radius of A_α with its certified bracket.
    Spectral {
        path: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long)]
        json: bool,
    },
    /// Degree-based lower bounds, checked against the spectral bracket.
    Bounds {
        path: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Comma-separated 1-based vertices, e.g. "3,4".
        #[arg(long, conflicts_with = "all")]
        subset: Option<String>,
        /// Every applicable bound (the default).
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// Seeded random campaign over the bound and transport properties.
    Verify {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Vertex count or inclusive range, e.g. "4-9".
        #[arg(long, default_value = "4-9")]
        n: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Edge count or inclusive range; defaults to [connectivity minimum, 2n].
        #[arg(long)]
        m: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,0.99")]
        alphas: Vec<f64>,
        #[arg(long)]
        json: bool,
        /// Adds this amount to every bound before checking (harness self-test).
        #[arg(long, hide = true)]
        corrupt_bound: Option<f64>,
    },
    /// Checks the spectral radius of G × H against G for a regular H.
    Product {
        g: PathBuf,
        h: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Transport Laplacian eigenpairs of a regular G instead.
        #[arg(long)]
        laplacian: bool,
        #[arg(long)]
        json: bool,
    },
    /// Writes a generated hypergraph in .uhg format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: Option<usize>,
        /// Degree for the regular family.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = Family::Random)]
        family: Family,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Random,
    Regular,
    Complete,
}

/// A mathematical property did not hold; maps to exit code 1.
#[derive(Debug)]
struct PropertyFailed;

impl std::fmt::Display for PropertyFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("property check failed")
    }
}

impl std::error::Error for PropertyFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<PropertyFailed>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::NoConvergence(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cmd: Command) -> anyhow::Result<()> {
    match cmd {
        Command::Info { path, json } => info(&path, json),
        Command::Spectral {
            path,
            alpha,
            tol,
            max_iter,
            json,
        } => spectral(&path, Alpha::new(alpha)?, tol, max_iter, json),
        Command::Bounds {
            path,
            alpha,
            subset,
            all: _,
            json,
        } => bounds(&path, Alpha::new(alpha)?, subset.as_deref(), json),
        Command::Verify {
            seed,
            trials,
            n,
            k,
            m,
            alphas,
            json,
            corrupt_bound,
        } => {
            let mut cfg = VerifyConfig::new(seed, trials, k);
            (cfg.family.n_min, cfg.family.n_max) = parse_range(&n).context("--n")?;
            if let Some(m) = m {
                let (lo, hi) = parse_range(&m).context("--m")?;
                cfg.family.m_min = Some(lo);
                cfg.family.m_max = Some(hi);
            }
            cfg.alphas = alphas;
            cfg.corrupt_bound = corrupt_bound;
            verify_cmd(&cfg, json)
        }
        Command::Product {
            g,
            h,
            alpha,
            tol,
            laplacian,
            json,
        } => product(&g, &h, Alpha::new(alpha)?, tol, laplacian, json),
        Command::Gen {
            n,
            k,
            m,
            d,
            seed,
            family,
            out,
        } => gen(n, k, m, d, seed, family, out.as_deref()),
    }
}

fn read(path: &Path) -> anyhow::Result<Hypergraph> {
    uhg::read_file(path).with_context(|| path.display().to_string())
}

fn one_based(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|c| c.iter().map(|v| v + 1).collect()).collect()
}

fn print_json(v: &Value) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn parse_range(s: &str) -> anyhow::Result<(usize, usize)> {
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (a.trim().parse()?, b.trim().parse()?),
        None => {
            let v = s.trim().parse()?;
            (v, v)
        }
    };
    if lo > hi {
        bail!("empty range {s}");
    }
    Ok((lo, hi))
}

fn info(path: &Path, json: bool) -> anyhow::Result<()> {
    let g = read(path)?;
    let profile = g.degree_profile();
    let conn = g.connectivity();
    if json {
        return print_json(&json!({
            "schema": SCHEMA,
            "k": g.k(),
            "n": g.n(),
            "m": g.m(),
            "degree_profile": profile,
            "connected": conn.connected,
            "components": one_based(&conn.components),
        }));
    }
    println!(
        "k={} n={} m={} Δ={} δ={} connected={}",
        g.k(),
        g.n(),
        g.m(),
        profile.max_degree,
        profile.min_degree,
        conn.connected
    );
    println!("degrees: {:?}", profile.degrees);
    println!("average degree: {}", profile.average_degree);
    println!("components: {:?}", one_based(&conn.components));
    Ok(())
}

fn spectral(path: &Path, alpha: Alpha, tol: f64, max_iter: usize, json: bool) -> anyhow::Result<()> {
    let g = read(path)?;
    let result = spectral_radius_any(&g, alpha, tol, max_iter)?;
    let parts = if g.is_connected() {
        Vec::new()
    } else {
        component_spectra(&g, alpha, tol, max_iter)?
    };
    if json {
        let components: Vec<Value> = parts
            .iter()
            .map(|c| {
                json!({
                    "vertices": c.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "edges": c.edges,
                    "rho": c.result.rho,
                    "lower": c.result.lower,
                    "upper": c.result.upper,
                })
            })
            .collect();
        let mut v = json!({ "schema": SCHEMA, "alpha": alpha, "result": result });
        if !parts.is_empty() {
            v["components"] = Value::Array(components);
        }
        return print_json(&v);
    }
    if !parts.is_empty() {
        println!("{:>4}  {:>8}  {:>6}  {:>20}  vertices", "#", "n", "m", "rho");
        for (i, c) in parts.iter().enumerate() {
            println!(
                "{:>4}  {:>8}  {:>6}  {:>20.12}  {:?}",
                i + 1,
                c.vertices.len(),
                c.edges,
                c.result.rho,
                c.vertices.iter().map(|v| v + 1).collect::<Vec<_>>()
            );
        }
        println!("max over components:");
    }
    println!("alpha      {alpha}");
    println!("rho        {:.12}", result.rho);
    println!("bracket    [{:.12}, {:.12}]", result.lower, result.upper);
    println!("residual   {:e}", result.residual);
    println!("iterations {}", result.iterations);
    Ok(())
}

fn parse_subset(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .with_context(|| format!("bad vertex '{t}'"))
        })
        .collect()
}

fn bounds(path: &Path, alpha: Alpha, subset: Option<&str>, json: bool) -> anyhow::Result<()> {
    let g = read(path)?;
    let eval = BoundEvaluator::new(&g, alpha)?;
    let reports: Vec<BoundReport> = match subset {
        Some(s) => {
            let members = parse_subset(s)?;
            if let Some(&v) = members.iter().find(|&&v| v == 0 || v > g.n()) {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() }.into());
            }
            let zero: Vec<usize> = members.iter().map(|v| v - 1).collect();
            if is_strong_independent(&g, &zero) {
                vec![eval.strong_set(&zero)?]
            } else {
                vec![eval.subset(&zero)?]
            }
        }
        None => eval.applicable()?,
    };
    let (lo, hi) = eval.rho_bracket();
    if json {
        print_json(&json!({
            "schema": SCHEMA,
            "alpha": alpha,
            "rho_lower": lo,
            "rho_upper": hi,
            "bounds": reports,
        }))?;
    } else {
        println!("rho in [{lo:.12}, {hi:.12}]  (alpha = {alpha})");
        println!(
            "{:<18} {:>16} {:>14} {:>6}  subset",
            "bound", "value", "slack", "holds"
        );
        for r in &reports {
            let subset = r
                .subset
                .as_ref()
                .map(|s| format!("{:?}", s.one_based()))
                .unwrap_or_default();
            println!(
                "{:<18} {:>16.12} {:>14.3e} {:>6}  {}",
                r.bound.name(),
                r.value,
                r.slack,
                if r.holds { "✓" } else { "✗" },
                subset
            );
        }
    }
    if reports.iter().all(|r| r.holds) {
        Ok(())
    } else {
        Err(PropertyFailed.into())
    }
}

fn verify_cmd(cfg: &VerifyConfig, json: bool) -> anyhow::Result<()> {
    let run = verify::run(cfg)?;
    if json {
        print!("{}", run.to_json());
    } else {
        println!(
            "seed={} trials={} k={} n={}-{} checks={} failures={}",
            run.seed,
            run.trials,
            run.family.k,
            run.family.n_min,
            run.family.n_max,
            run.checks,
            run.failures.len()
        );
        for f in &run.failures {
            println!(
                "FAIL trial={} suite={} check={} alpha={:?} value={} reference={} slack={:e} {}",
                f.trial, f.suite, f.check, f.alpha, f.value, f.reference, f.slack, f.detail
            );
        }
    }
    if run.passed {
        Ok(())
    } else {
        Err(PropertyFailed.into())
    }
}

fn product(
    g_path: &Path,
    h_path: &Path,
    alpha: Alpha,
    tol: f64,
    laplacian: bool,
    json: bool,
) -> anyhow::Result<()> {
    let g = read(g_path)?;
    let h = read(h_path)?;
    if laplacian {
        let (lambda, u) = laplacian_pair_from_adjacency(&g, DEFAULT_TOL)?;
        let ones = KVector::ones(g.n(), g.k());
        let zero = check_laplacian_transport(&g, &h, 0.0, &ones, tol)?;
        let adj = check_laplacian_transport(&g, &h, lambda, &u, tol)?;
        let passed = zero.passed && adj.passed;
        if json {
            print_json(&json!({
                "schema": SCHEMA,
                "zero_pair": zero,
                "adjacency_pair": adj,
                "passed": passed,
            }))?;
        } else {
            for (label, t) in [("(0, ones)", &zero), ("(d - mu, u)", &adj)] {
                println!(
                    "{label:<12} lambda={:.12} -> {:.12}  residual={:e}  {}",
                    t.lambda,
                    t.transported_lambda,
                    t.residual,
                    if t.passed { "ok" } else { "FAILED" }
                );
            }
        }
        return if passed {
            Ok(())
        } else {
            Err(PropertyFailed.into())
        };
    }
    let c = check_product_rho(&g, &h, alpha, tol)?;
    if json {
        print_json(&json!({ "schema": SCHEMA, "check": c }))?;
    } else {
        println!("rho(G)        {:.12}", c.rho_g);
        println!("rho(G x H)    {:.12}", c.rho_product);
        println!("{}·rho(G)      {:.12}", c.factor, c.predicted);
        println!("difference    {:e}  (allowed {:e})", c.abs_diff, c.tol * c.scale);
        println!("u⊗e residual  {:e}", c.residual);
        println!("{}", if c.passed { "ok" } else { "FAILED" });
    }
    if c.passed {
        Ok(())
    } else {
        Err(PropertyFailed.into())
    }
}

fn gen(
    n: usize,
    k: usize,
    m: Option<usize>,
    d: Option<usize>,
    seed: Option<u64>,
    family: Family,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let g = match family {
        Family::Complete => Hypergraph::complete(n, k)?,
        Family::Random => {
            let m = m.context("--m is required for the random family")?;
            let seed = seed.context("--seed is required for the random family")?;
            Hypergraph::random_connected(n, k, m, seed)?
        }
        Family::Regular => {
            let d = d.context("--d is required for the regular family")?;
            let seed = seed.context("--seed is required for the regular family")?;
            Hypergraph::random_regular(n, k, d, seed)?
        }
    };
    let text = uhg::write(&g);
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| path.display().to_string())?,
        None => print!("{text}"),
    }
    Ok(())
}
