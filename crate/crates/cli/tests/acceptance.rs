//! Acceptance gate: eight criteria, one PASS/FAIL line each. Runs as a
//! plain binary so the lines always reach the test output.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hyperalpha::bounds::closed_form;
use hyperalpha::combinatorics;
use hyperalpha::numeric::binomial;
use hyperalpha::spectral::laplacian_pair_from_adjacency;
use hyperalpha::tensor::rayleigh;
use hyperalpha::verify::sound_reports;
use hyperalpha::{
    check_laplacian_transport, check_product_rho, spectral_radius, uhg, Alpha, BoundEvaluator, BoundKind,
    Error, Hypergraph, KVector, DEFAULT_MAX_ITER,
};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ALPHAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 0.99];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn alpha(a: f64) -> Alpha {
    Alpha::new(a).expect("alpha in range")
}

fn within(limit: Duration, started: Instant, detail: String) -> Outcome {
    let took = started.elapsed();
    if took > limit {
        return Err(format!("{detail}; took {took:.2?}, limit {limit:?}"));
    }
    Ok(detail)
}

/// Connected k-uniform hypergraph with `m` in `[min to connect, min(2n, C(n,k))]`.
fn random_connected(n: usize, k: usize, r: &mut ChaCha8Rng) -> Hypergraph {
    let lo = (n - 1).div_ceil(k - 1);
    let hi = (2 * n).min(binomial(n, k) as usize).max(lo);
    let m = r.gen_range(lo..=hi);
    Hypergraph::random_connected(n, k, m, r.gen()).expect("feasible parameters")
}

/// The 200-instance corpus shared by criteria 4 and 5.
fn corpus() -> Vec<Hypergraph> {
    (0..200u64)
        .map(|i| {
            let k = if i % 2 == 0 { 3 } else { 4 };
            let n = 4 + (i as usize / 2) % 6;
            random_connected(n, k, &mut rng(0xC0DE + i))
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let graphs = [(5, 3), (6, 3), (6, 4), (3, 3)];
    let mut worst: f64 = 0.0;
    for (n, k) in graphs {
        let g = Hypergraph::complete(n, k).unwrap();
        let want = binomial(n - 1, k - 1) as f64;
        for a in [0.0, 0.3, 0.5, 0.7] {
            let r = spectral_radius(&g, alpha(a), 1e-10, DEFAULT_MAX_ITER).map_err(|e| e.to_string())?;
            let err = (r.rho - want).abs();
            if err > 1e-8 {
                return Err(format!("complete({n},{k}) α={a}: ρ = {} vs {want}", r.rho));
            }
            worst = worst.max(err);
        }
    }
    within(
        Duration::from_secs(5),
        start,
        format!("16 cases, max |ρ - C(n-1,k-1)| = {worst:.1e}"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let hs = [
        Hypergraph::complete(3, 3).unwrap(),
        Hypergraph::complete(4, 3).unwrap(),
    ];
    let mut checks = 0;
    let mut worst: f64 = 0.0;
    for i in 0..20u64 {
        let g = random_connected(4 + i as usize % 3, 3, &mut rng(0x2000 + i));
        for h in &hs {
            for a in ALPHAS {
                let c = check_product_rho(&g, h, alpha(a), 1e-6).map_err(|e| format!("G#{i}: {e}"))?;
                checks += 1;
                worst = worst.max(c.abs_diff / c.scale).max(c.residual);
                if !c.passed || c.residual > 1e-6 {
                    return Err(format!(
                        "G#{i} H n={} α={a}: |Δρ| = {:e}, residual = {:e}",
                        h.n(),
                        c.abs_diff,
                        c.residual
                    ));
                }
            }
        }
    }
    within(
        Duration::from_secs(60),
        start,
        format!("{checks} products, worst relative error {worst:.1e}"),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let hs = [
        Hypergraph::complete(3, 3).unwrap(),
        Hypergraph::complete(4, 3).unwrap(),
    ];
    let mut graphs = Vec::new();
    let mut seed = 0x3000u64;
    while graphs.len() < 10 {
        seed += 1;
        let mut r = rng(seed);
        let n = r.gen_range(5..=9);
        let full = binomial(n - 1, 2) as usize;
        let ds: Vec<usize> = (2..full).filter(|d| n * d % 3 == 0).collect();
        if ds.is_empty() {
            continue;
        }
        let d = ds[r.gen_range(0..ds.len())];
        if let Ok(g) = Hypergraph::random_regular(n, 3, d, r.gen()) {
            if g.is_connected() {
                graphs.push(g);
            }
        }
    }
    let mut worst: f64 = 0.0;
    for (i, g) in graphs.iter().enumerate() {
        let ones = KVector::uniform_unit(g.n(), 3);
        let derived = laplacian_pair_from_adjacency(g, 1e-12).map_err(|e| e.to_string())?;
        for h in &hs {
            for (label, lambda, u) in [("zero", 0.0, &ones), ("adjacency", derived.0, &derived.1)] {
                let t = check_laplacian_transport(g, h, lambda, u, 1e-7)
                    .map_err(|e| format!("G#{i} {label}: {e}"))?;
                worst = worst.max(t.residual);
                if t.residual > 1e-6 {
                    return Err(format!("G#{i} {label} H n={}: residual {:e}", h.n(), t.residual));
                }
            }
        }
    }
    within(
        Duration::from_secs(30),
        start,
        format!("40 transports, worst residual {worst:.1e}"),
    )
}

fn criterion_4(corpus: &[Hypergraph]) -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    let mut min_slack = f64::INFINITY;
    for (i, g) in corpus.iter().enumerate() {
        for a in ALPHAS {
            let eval = BoundEvaluator::new(g, alpha(a)).map_err(|e| format!("instance {i}: {e}"))?;
            let (_, upper) = eval.rho_bracket();
            for r in sound_reports(g, &eval).map_err(|e| format!("instance {i}: {e}"))? {
                checks += 1;
                min_slack = min_slack.min(upper - r.value);
                if r.value > upper + 1e-8 || !r.holds {
                    return Err(format!(
                        "instance {i} α={a}: {} = {} > ρ ≤ {}",
                        r.bound, r.value, upper
                    ));
                }
            }
        }
    }
    within(
        Duration::from_secs(600),
        start,
        format!("{checks} bound evaluations, min slack {min_slack:.1e}"),
    )
}

fn criterion_5(corpus: &[Hypergraph]) -> Outcome {
    let mut checks = 0;
    for (i, g) in corpus.iter().enumerate() {
        let (k, n, m) = (g.k(), g.n(), g.m());
        let base = closed_form::average_degree(k, n, m);
        let degrees = g.degrees();
        let strong = combinatorics::max_strong_independent(g).unwrap();
        let weak = combinatorics::max_weak_independent(g).unwrap();
        let mut r = rng(0x5000 + i as u64);
        let mut sets = vec![
            (0..n).collect::<Vec<_>>(),
            strong.members().to_vec(),
            weak.members().to_vec(),
        ];
        for _ in 0..3 {
            let size = r.gen_range(1..=n);
            let mut s = sample(&mut r, n, size).into_vec();
            s.sort_unstable();
            sets.push(s);
        }
        for a in ALPHAS {
            let eval = BoundEvaluator::new(g, alpha(a)).unwrap();
            for rep in sound_reports(g, &eval).unwrap() {
                if matches!(rep.bound, BoundKind::AverageDegree | BoundKind::Chromatic) {
                    continue;
                }
                checks += 1;
                if rep.value < base - 1e-12 {
                    return Err(format!(
                        "(a) instance {i} α={a}: {} = {} < km/n = {base}",
                        rep.bound, rep.value
                    ));
                }
            }
            for s in &sets {
                let subset = eval.subset(s).unwrap().value;
                for other in [eval.square_subset(s).unwrap(), eval.kpower_subset(s).unwrap()] {
                    checks += 1;
                    if subset < other.value - 1e-12 * (1.0 + subset.abs()) {
                        return Err(format!(
                            "(b) instance {i} α={a} S={s:?}: subset {subset} < {} {}",
                            other.bound, other.value
                        ));
                    }
                }
            }
            for x in 0..n {
                for y in 0..n {
                    if degrees[x] <= degrees[y] {
                        continue;
                    }
                    let c = if g.adjacent(x, y) { k as f64 } else { 1.0 };
                    let (first, second) =
                        closed_form::pair_forms(k, n, m, degrees[x] as u64, degrees[y] as u64, c, a);
                    checks += 1;
                    if first < second - 1e-12 * (1.0 + first.abs()) {
                        return Err(format!(
                            "(c) instance {i} α={a} pair ({x},{y}): {first} < {second}"
                        ));
                    }
                }
            }
        }
    }
    Ok(format!("{checks} comparisons, zero violations"))
}

fn random_small(r: &mut ChaCha8Rng) -> Hypergraph {
    let k = r.gen_range(2..=4);
    let n = r.gen_range(k..=8);
    let total = binomial(n, k) as usize;
    let all: Vec<Vec<usize>> = combos(n, k);
    let m = r.gen_range(0..=total.min(14));
    let edges: Vec<Vec<usize>> = sample(r, total, m).into_iter().map(|i| all[i].clone()).collect();
    Hypergraph::from_zero_based(n, k, edges).unwrap()
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(oracle::members)
        .collect()
}

fn criterion_6() -> Outcome {
    let mut r = rng(0x6000);
    let mut cuts = 0;
    for i in 0..100 {
        let g = random_small(&mut r);
        let label = format!("instance {i} (n={} k={} m={})", g.n(), g.k(), g.m());
        let strong = combinatorics::max_strong_independent(&g).map_err(|e| e.to_string())?;
        if strong.members() != oracle::max_set(&g, oracle::strong) {
            return Err(format!("{label}: α_s set {:?}", strong.one_based()));
        }
        let weak = combinatorics::max_weak_independent(&g).map_err(|e| e.to_string())?;
        if weak.members() != oracle::max_set(&g, oracle::weak) {
            return Err(format!("{label}: α set {:?}", weak.one_based()));
        }
        let chi = combinatorics::weak_chromatic_number(&g).map_err(|e| e.to_string())?;
        if chi != oracle::chromatic(&g) {
            return Err(format!("{label}: χ = {chi} vs {}", oracle::chromatic(&g)));
        }
        let nu = combinatorics::vertex_connectivity(&g);
        match nu {
            Err(Error::NotConnected) if !oracle::connected(&g) => {}
            Err(Error::NoCutExists) if g.is_complete() => {}
            Ok((size, cut))
                if oracle::connected(&g) && Some(cut.members().to_vec()) == oracle::min_cut(&g) =>
            {
                debug_assert_eq!(size, cut.len());
                cuts += 1;
            }
            other => return Err(format!("{label}: ν = {other:?} vs {:?}", oracle::min_cut(&g))),
        }
    }
    let g1 = Hypergraph::build(4, 3, [[1, 2, 3], [1, 2, 4]]).unwrap();
    let goldens = (
        combinatorics::max_strong_independent(&g1).unwrap().len(),
        combinatorics::max_weak_independent(&g1).unwrap().len(),
        combinatorics::vertex_connectivity(&g1).unwrap().0,
        combinatorics::weak_chromatic_number(&g1).unwrap(),
    );
    if goldens != (2, 3, 1, 2) {
        return Err(format!("G1 goldens (α_s, α, ν, χ) = {goldens:?}"));
    }
    Ok(format!("100 instances ({cuts} with a cut), G1 goldens 2/3/1/2"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut worst = f64::NEG_INFINITY;
    for i in 0..10u64 {
        let mut r = rng(0x7000 + i);
        let k = if i % 2 == 0 { 3 } else { 4 };
        let n = r.gen_range(5..=9);
        let g = random_connected(n, k, &mut r);
        let a = alpha(ALPHAS[i as usize % ALPHAS.len()]);
        let res = spectral_radius(&g, a, 1e-10, DEFAULT_MAX_ITER).map_err(|e| e.to_string())?;
        let perron = res.eigvec.entries().to_vec();
        for t in 0..1000 {
            let x: Vec<f64> = match t % 3 {
                // near the maximiser
                0 => perron
                    .iter()
                    .map(|p| p * (1.0 + 1e-3 * r.gen_range(-1.0..1.0)))
                    .collect(),
                1 => (0..n)
                    .map(|_| if r.gen_bool(0.3) { 0.0 } else { r.gen::<f64>() })
                    .collect(),
                _ => (0..n).map(|_| r.gen::<f64>()).collect(),
            };
            let Ok(x) = KVector::new(x, k).and_then(|v| v.normalized()) else {
                continue;
            };
            let q = rayleigh(&g, a, &x).map_err(|e| e.to_string())?;
            worst = worst.max(q - res.upper);
            if q > res.upper + 1e-10 {
                return Err(format!("instance {i}: rayleigh {q} > upper {}", res.upper));
            }
        }
    }
    within(
        Duration::from_secs(30),
        start,
        format!("10000 vectors, max rayleigh - upper = {worst:.1e}"),
    )
}

fn cli(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperalpha"))
        .args(args)
        .env("HYPERALPHA_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "hyperalpha {} exited with {}: {}",
            args.join(" "),
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn criterion_8(corpus: &[Hypergraph]) -> Outcome {
    let args = ["verify", "--seed", "7", "--trials", "20", "--json"];
    let first = cli(&args, "1")?;
    let second = cli(&args, "4")?;
    if first != second {
        return Err("verify JSON differs between runs".into());
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("g.uhg");
    let path_s = path.to_str().unwrap();
    cli(
        &[
            "gen", "--n", "9", "--k", "3", "--m", "12", "--seed", "5", "--out", path_s,
        ],
        "1",
    )?;
    let written = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let g = uhg::read_file(&path).map_err(|e| e.to_string())?;
    if uhg::write(&g) != written {
        return Err("generated .uhg file does not round-trip".into());
    }
    for (i, g) in corpus.iter().enumerate() {
        let text = uhg::write(g);
        let back = uhg::parse(&text).map_err(|e| format!("instance {i}: {e}"))?;
        if uhg::write(&back) != text || &back != g {
            return Err(format!("instance {i} does not round-trip"));
        }
    }
    Ok(format!(
        "verify JSON byte-identical ({} bytes), {} .uhg files round-trip",
        first.len(),
        corpus.len() + 1
    ))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion<'_>> = vec![
        ("regular equality", Box::new(criterion_1)),
        ("product transport", Box::new(criterion_2)),
        ("laplacian transport", Box::new(criterion_3)),
        ("bound soundness", Box::new(|| criterion_4(&corpus))),
        ("improvement and ordering", Box::new(|| criterion_5(&corpus))),
        ("combinatorial oracle equivalence", Box::new(criterion_6)),
        ("variational lower-bound fuzz", Box::new(criterion_7)),
        ("determinism", Box::new(|| criterion_8(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
