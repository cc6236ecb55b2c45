//! Acceptance suite: eleven numbered criteria covering parameterization
//! equivalence, the area oracles, fit optimality, restriction dominance,
//! planted-shape recovery, degenerate special cases, the alternating
//! optimizer, performance budgets, and CLI determinism. Every tolerance and
//! time budget is pinned inline. Each test prints a single
//! `criterion NN (...): PASS|FAIL` line (visible under `--nocapture`); the
//! tests share a process-wide lock so timed criteria never overlap.

use std::collections::HashSet;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::sync::{Mutex, PoisonError};
use std::time::{Duration, Instant};

use hyperfit_core::{
    area_closed_form, area_integral, block_df, community_counts, community_view,
    community_view_with_order, feasible_gamma_range, fit_community, fit_graph, fit_view, hycom_df,
    is_feasible, ll_single, lrt, sample_graph, Cell, FitConfig, FitMode, FixedParams, Graph,
    ModelParams, PlantedCommunity, SampleSpec,
};

static LOCK: Mutex<()> = Mutex::new(());

/// Runs one criterion body under the shared lock and prints its verdict.
fn criterion(num: u32, label: &str, body: impl FnOnce()) {
    let _guard = LOCK.lock().unwrap_or_else(PoisonError::into_inner);
    match panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {num:02} ({label}): PASS"),
        Err(cause) => {
            println!("criterion {num:02} ({label}): FAIL");
            panic::resume_unwind(cause);
        }
    }
}

fn within(start: Instant, budget: Duration, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?} (budget {budget:?})"
    );
}

/// Pinned xorshift64 stream: the randomized criteria must check the same
/// cases on every run, so the generator is part of the test fixture.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }
}

/// Draws a feasible `(γ, H, n_c)` triple with `n_c ∈ [lo_nc, hi_nc]`: pick
/// `n_c`, pick a height and walk it down to the nearest feasible one, then
/// pick γ uniformly from its feasible range.
fn feasible_triple(rng: &mut XorShift, lo_nc: u32, hi_nc: u32) -> (u32, u32, u32) {
    let n_c = lo_nc + (rng.next() % u64::from(hi_nc - lo_nc + 1)) as u32;
    let mut h = (rng.next() % u64::from(n_c)) as u32;
    let (lo, hi) = loop {
        if let Some(range) = feasible_gamma_range(h, n_c) {
            break range;
        }
        h -= 1;
    };
    let gamma = lo + (rng.next() % u64::from(hi - lo + 1)) as u32;
    (gamma, h, n_c)
}

#[test]
fn acceptance_01_parameterization_equivalence() {
    criterion(1, "fixed, hyperbolic, and mixture grids agree", || {
        const TRIPLES: usize = 1000;
        const BUDGET: Duration = Duration::from_secs(60);
        let start = Instant::now();
        let mut rng = XorShift(42);
        for _ in 0..TRIPLES {
            let (gamma, h, n_c) = feasible_triple(&mut rng, 2, 300);
            let params = ModelParams::from_fixed(FixedParams::new(gamma, h, n_c)).unwrap();
            // Boundary cells can tie exactly — (γ, H, n_c) = (24, 0, 166)
            // puts cell (0, 165) on the curve with p = 64/13 — so the grids
            // are compared through the integer-exact predicate of each
            // parameterization: `contains` clears (i + p)(j + p) ≤ θ to
            // integers, `contains_via_mixture` does the same for
            // (1 − |x|)·ij + x·(i + j) ≤ σ, and `col_count` is the
            // anchor-derived column profile. Rounded f64 views cannot decide
            // such ties.
            let mut diagonal = 0u32;
            for i in 0..n_c {
                for j in 0..n_c {
                    let inside = params.contains(i, j);
                    let at = format!("(γ={gamma}, H={h}, n_c={n_c}) cell ({i}, {j})");
                    assert_eq!(inside, params.contains_via_mixture(i, j), "{at} mixture");
                    assert_eq!(inside, i < params.col_count(j), "{at} column profile");
                    assert_eq!(inside, params.contains(j, i), "{at} symmetry");
                    if i == j && inside {
                        diagonal += 1;
                    }
                }
            }
            // Anchor semantics: the diagonal holds γ + 1 cells (it crosses
            // the boundary after rank γ) and the exit column holds H + 1
            // (its boundary cell lies exactly on the curve; membership is ≤).
            assert_eq!(diagonal, gamma + 1, "(γ={gamma}, H={h}, n_c={n_c}) diagonal");
            assert_eq!(
                params.col_count(n_c - 1),
                h + 1,
                "(γ={gamma}, H={h}, n_c={n_c}) exit column"
            );
        }
        within(start, BUDGET, "equivalence sweep");
    });
}

#[test]
fn acceptance_02_exact_area_oracle() {
    criterion(2, "area_exact equals brute-force cell enumeration", || {
        const BUDGET: Duration = Duration::from_secs(60);
        let start = Instant::now();
        let mut shapes = 0u64;
        for n_c in 2..=40u32 {
            for h in 0..n_c {
                let Some((lo, hi)) = feasible_gamma_range(h, n_c) else {
                    continue;
                };
                for gamma in lo..=hi {
                    let params = ModelParams::from_fixed(FixedParams::new(gamma, h, n_c)).unwrap();
                    let mut brute = 0u64;
                    for i in 0..n_c {
                        for j in 0..n_c {
                            if params.contains(i, j) {
                                brute += 1;
                            }
                        }
                    }
                    assert_eq!(params.area_exact(), brute, "(γ={gamma}, H={h}, n_c={n_c})");
                    shapes += 1;
                }
            }
        }
        // Every feasible shape with n_c ≤ 40; the count is pinned so a
        // feasibility regression cannot silently shrink the sweep.
        assert_eq!(shapes, 3287, "feasible shape count changed");
        within(start, BUDGET, "exact area sweep");
    });
}

#[test]
fn acceptance_03_integral_approximation() {
    criterion(3, "area_integral within n_c + 2 of area_exact", || {
        const BUDGET: Duration = Duration::from_secs(60);
        let start = Instant::now();
        for n_c in 2..=40u32 {
            for h in 0..n_c {
                let Some((lo, hi)) = feasible_gamma_range(h, n_c) else {
                    continue;
                };
                for gamma in lo..=hi {
                    let params = ModelParams::from_fixed(FixedParams::new(gamma, h, n_c)).unwrap();
                    // Degenerate-linear shapes have no finite hyperbolic view;
                    // the integral approximation applies to the rest.
                    let Some(hp) = params.hyperbolic() else {
                        continue;
                    };
                    let diff = (area_integral(&hp, n_c) - params.area_exact() as f64).abs();
                    assert!(
                        diff <= f64::from(n_c + 2),
                        "(γ={gamma}, H={h}, n_c={n_c}): |integral − exact| = {diff}"
                    );
                }
            }
        }
        within(start, BUDGET, "integral sweep");
    });
}

#[test]
fn acceptance_04_closed_form_growth_rate() {
    criterion(4, "closed-form area growth approaches its limit ratio", || {
        // The closed form grows like A(γ) = 2γ²·ln(n_c/γ) − γ² + O(1/n_c),
        // so its unit step is Δ(γ) = A(γ+1) − A(γ) = (4γ + 2)·ln n_c − c(γ)
        // with c(γ) = 2((γ+1)²ln(γ+1) − γ²ln γ) + 2γ + 1, and the ratio
        // γ·ln(n_c)/Δ(γ) descends toward its limit 1/(2/γ + 4) ∈ (0, 1/4)
        // at rate c(γ)/ln n_c. That rate is slow: at n_c = 10⁷ the remaining
        // gap is 0.046 (γ=5) to 0.081 (γ=20), and shrinking it to 10% of the
        // limit would need ln n_c ≈ 40 — beyond any u32 grid. The criterion
        // therefore pins the absolute gap at 0.10 and requires it to shrink
        // as n_c grows.
        const GAP: f64 = 0.10;
        for gamma in [5.0f64, 10.0, 20.0] {
            let target = 1.0 / (2.0 / gamma + 4.0);
            assert!(
                target > 0.0 && target < 0.25,
                "γ={gamma}: limit {target} outside (0, 1/4)"
            );
            let ratio_at = |n_c: u32| {
                let step = area_closed_form(gamma + 1.0, n_c).unwrap()
                    - area_closed_form(gamma, n_c).unwrap();
                gamma * f64::from(n_c).ln() / step
            };
            let fine = ratio_at(10_000_000);
            assert!(fine > target, "γ={gamma}: ratio {fine} fell past its limit");
            let gap = fine - target;
            assert!(gap <= GAP, "γ={gamma}: |{fine} − {target}| = {gap}");
            let coarse_gap = ratio_at(10_000) - target;
            assert!(
                gap < coarse_gap,
                "γ={gamma}: gap {gap} did not shrink from {coarse_gap}"
            );
        }
    });
}

/// The pinned synthetic corpus shared by criteria 5 and 6: fifty seeded
/// single-community graphs with 8 ≤ n_c ≤ 60 and varied shape and densities.
fn synthetic_corpus() -> Vec<(u64, Graph, u32)> {
    let mut rng = XorShift(0x9E37_79B9_7F4A_7C15);
    (0..50u64)
        .map(|case| {
            let (gamma, h, n_c) = feasible_triple(&mut rng, 8, 60);
            let d_in = 0.7 + (rng.next() % 26) as f64 / 100.0;
            let d_out = 0.02 + (rng.next() % 9) as f64 / 100.0;
            let spec = SampleSpec {
                n: n_c,
                communities: vec![PlantedCommunity {
                    nodes: (0..n_c).collect(),
                    gamma,
                    h,
                    d_in,
                }],
                d_out,
                seed: case,
            };
            (case, sample_graph(&spec).unwrap(), n_c)
        })
        .collect()
}

#[test]
fn acceptance_05_fit_matches_brute_force() {
    criterion(5, "full fit equals an unpruned brute-force search", || {
        const BUDGET: Duration = Duration::from_secs(120);
        let start = Instant::now();
        for (case, g, n_c) in synthetic_corpus() {
            let comm = community_view(&g, &(0..n_c).collect::<Vec<_>>()).unwrap();
            let fit = fit_view(&comm, FitMode::Full, &[], None).unwrap();

            let score = |params: ModelParams| {
                ll_single(&community_counts(&comm.induced, &comm.order, &params, &[]))
            };
            // Unpruned enumeration of everything the full search may return:
            // every feasible integer anchor, every distinct hycom threshold
            // (i + 1)(j + 1), and the block. The integer family alone is a
            // lower bound — strict whenever a hycom threshold wins.
            let mut best_integer = f64::NEG_INFINITY;
            for bh in 0..n_c {
                for bg in 0..n_c {
                    if is_feasible(bg, bh, n_c) {
                        let params =
                            ModelParams::from_fixed(FixedParams::new(bg, bh, n_c)).unwrap();
                        best_integer = best_integer.max(score(params));
                    }
                }
            }
            let mut best = best_integer.max(score(ModelParams::block(n_c).unwrap()));
            let mut thetas: Vec<u64> = (1..=u64::from(n_c))
                .flat_map(|a| (1..=u64::from(n_c)).map(move |b| a * b))
                .collect();
            thetas.sort_unstable();
            thetas.dedup();
            for theta in thetas {
                best = best.max(score(ModelParams::hycom(theta, n_c).unwrap()));
            }

            assert_eq!(fit.ll, best, "case {case} (n_c={n_c}): fit vs brute force");
            assert!(fit.ll >= best_integer, "case {case}: integer lower bound");
        }
        within(start, BUDGET, "brute-force comparison");
    });
}

#[test]
fn acceptance_06_dominance_and_lrt() {
    criterion(6, "full fit dominates restrictions and λ ≥ 0", || {
        for (case, g, n_c) in synthetic_corpus() {
            let comm = community_view(&g, &(0..n_c).collect::<Vec<_>>()).unwrap();
            let full = fit_view(&comm, FitMode::Full, &[], None).unwrap();
            let block = fit_view(&comm, FitMode::Block, &[], None).unwrap();
            let hycom = fit_view(&comm, FitMode::Hycom, &[], None).unwrap();
            assert!(full.ll >= block.ll, "case {case}: full < block");
            assert!(full.ll >= hycom.ll, "case {case}: full < hycom");
            for (restricted, df) in [(&block, block_df(1)), (&hycom, hycom_df(1))] {
                let test = lrt(full.ll, restricted.ll, df);
                assert!(test.lambda >= 0.0, "case {case}: λ = {}", test.lambda);
                assert_eq!(test.df, df);
                assert!(
                    (0.0..=1.0).contains(&test.p_value),
                    "case {case}: p = {}",
                    test.p_value
                );
            }
        }
    });
}

#[test]
fn acceptance_07_planted_recovery() {
    criterion(7, "planted shape recovered within the target bound", || {
        const SEEDS: u64 = 20;
        const BOUND: f64 = 3.0;
        const BUDGET: Duration = Duration::from_secs(120);
        let start = Instant::now();
        let mut gamma_err = Vec::new();
        let mut h_err = Vec::new();
        for seed in 0..SEEDS {
            let spec = SampleSpec {
                n: 200,
                communities: vec![PlantedCommunity {
                    nodes: (0..200).collect(),
                    gamma: 30,
                    h: 10,
                    d_in: 0.9,
                }],
                d_out: 0.02,
                seed,
            };
            let g = sample_graph(&spec).unwrap();
            // The generator plants its shape in rank order 0..200, so fitting
            // against that order isolates shape recovery from order
            // estimation.
            let comm = community_view_with_order(&g, &(0..200).collect::<Vec<_>>()).unwrap();
            let fit = fit_view(&comm, FitMode::Full, &[], None).unwrap();
            gamma_err.push((fit.params.gamma() - 30.0).abs());
            h_err.push((fit.params.h() - 10.0).abs());
        }
        // Median of 20 = mean of the two middle order statistics. The current
        // search recovers every seed exactly (both medians are 0); the
        // asserted bound is the acceptance target.
        let median = |errs: &mut [f64]| {
            errs.sort_by(f64::total_cmp);
            (errs[9] + errs[10]) / 2.0
        };
        let med_gamma = median(&mut gamma_err);
        let med_h = median(&mut h_err);
        assert!(med_gamma <= BOUND, "median |γ̂ − 30| = {med_gamma}");
        assert!(med_h <= BOUND, "median |Ĥ − 10| = {med_h}");
        within(start, BUDGET, "recovery sweep");
    });
}

#[test]
fn acceptance_08_clique_and_star() {
    criterion(8, "clique takes block anchors; star fits γ = H = 0", || {
        const N: u32 = 30;
        let nodes: Vec<u32> = (0..N).collect();

        // Complete graph. Because every area includes its diagonal cells and
        // those are never edges, an unrestricted search on a clique prefers
        // to clip a corner of the grid around trailing diagonal cells rather
        // than keep the full square — so the clique convention is the block
        // restriction itself: set γ = H = n_c − 1 and verify it covers the
        // whole grid with nothing left outside.
        let clique = Graph::from_edges(
            N as usize,
            (0..N).flat_map(|u| ((u + 1)..N).map(move |v| (u, v))),
        );
        let fit = fit_community(&clique, &nodes, FitMode::Block, &[], None)
            .unwrap()
            .fit;
        assert_eq!(fit.params.fixed(), Some(FixedParams::new(N - 1, N - 1, N)));
        assert_eq!(fit.counts.area_cells, u64::from(N) * u64::from(N));
        assert_eq!(fit.counts.in_edge_cells, u64::from(N) * u64::from(N - 1));
        assert_eq!(fit.counts.complement_cells, 0);

        // Perfect star: the hub ranks 0 and every edge cell lies in row or
        // column 0 — exactly the (γ, H) = (0, 0) area of 2n − 1 cells.
        let star = Graph::from_edges(N as usize, (1..N).map(|v| (0, v)));
        let fit = fit_community(&star, &nodes, FitMode::Full, &[], None)
            .unwrap()
            .fit;
        assert_eq!(fit.params.fixed(), Some(FixedParams::new(0, 0, N)));
        assert_eq!(fit.counts.area_cells, 2 * u64::from(N) - 1);
        assert_eq!(fit.counts.in_edge_cells, 2 * u64::from(N - 1));
    });
}

#[test]
fn acceptance_09_alternating_optimization() {
    criterion(9, "alternating fit converges and partitions attribution", || {
        // Three 7-cliques chained through shared nodes 6 and 12 (n = 19): the
        // overlaps force the attribution machinery to arbitrate contested
        // cells between neighboring communities.
        let mut edges = Vec::new();
        for block in [0u32, 6, 12] {
            for u in block..block + 7 {
                for v in (u + 1)..block + 7 {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(19, edges);
        let sets: Vec<Vec<u32>> = vec![(0..7).collect(), (6..13).collect(), (12..19).collect()];
        let model = fit_graph(&g, &sets, &FitConfig::default()).unwrap();

        assert!(model.converged, "toy graph must converge");
        assert!(model.rounds <= FitConfig::default().max_rounds);
        assert!(
            model.total_ll >= model.initial_ll,
            "updates lost likelihood: {} < {}",
            model.total_ll,
            model.initial_ll
        );

        // Materialize every kept cell of every community into global ordered
        // pairs: no pair may be claimed twice, per-community tallies must
        // match the counts the fit reported, and claimed + outside must tile
        // the full n × n grid.
        let mut claimed: HashSet<(u32, u32)> = HashSet::new();
        for (k, fc) in model.communities.iter().enumerate() {
            let n_c = fc.community.n_c();
            let excluded: HashSet<Cell> = model.exclusions[k].iter().copied().collect();
            let mut kept = 0u64;
            let mut kept_edges = 0u64;
            for i in 0..n_c {
                for j in 0..n_c {
                    if !fc.fit.params.contains(i, j) || excluded.contains(&(i, j)) {
                        continue;
                    }
                    kept += 1;
                    let pair = (
                        fc.community.global_of_rank(i),
                        fc.community.global_of_rank(j),
                    );
                    assert!(claimed.insert(pair), "cell {pair:?} attributed twice");
                    if g.has_edge(pair.0, pair.1) {
                        kept_edges += 1;
                    }
                }
            }
            assert_eq!(kept, fc.fit.counts.area_cells, "community {k} area");
            assert_eq!(kept_edges, fc.fit.counts.in_edge_cells, "community {k} edges");
        }
        let gc = model.graph_counts(&g);
        assert_eq!(claimed.len() as u64, gc.covered_cells);
        assert_eq!(
            gc.covered_cells + gc.outside_cells(),
            19 * 19,
            "attribution must sum to n²"
        );
        let in_edges: u64 = gc.communities.iter().map(|c| c.in_edge_cells).sum();
        assert_eq!(in_edges + gc.outside_edge_cells, 2 * g.m() as u64);
    });
}

#[test]
fn acceptance_10_performance_budgets() {
    criterion(10, "large single fit ≤ 5 s; 100k-node graph fit ≤ 10 min", || {
        // One community with n_c = 1000 and ≈ 50k induced edges.
        let spec = SampleSpec {
            n: 1000,
            communities: vec![PlantedCommunity {
                nodes: (0..1000).collect(),
                gamma: 120,
                h: 30,
                d_in: 0.9,
            }],
            d_out: 0.01,
            seed: 5,
        };
        let g = sample_graph(&spec).unwrap();
        let m = g.m();
        assert!((40_000..60_000).contains(&m), "edge count {m} drifted from ≈ 50k");
        let start = Instant::now();
        let fit = fit_community(&g, &(0..1000).collect::<Vec<_>>(), FitMode::Full, &[], None)
            .unwrap()
            .fit;
        within(start, Duration::from_secs(5), "n_c = 1000 fit");
        assert!(fit.ll.is_finite());

        // 100 disjoint communities of 600 nodes on a 100k-node graph with
        // ≈ 1.06M edges.
        let communities: Vec<PlantedCommunity> = (0..100u32)
            .map(|c| PlantedCommunity {
                nodes: (c * 600..(c + 1) * 600).collect(),
                gamma: 40,
                h: 12,
                d_in: 0.9,
            })
            .collect();
        let spec = SampleSpec {
            n: 100_000,
            communities,
            d_out: 4.0e-5,
            seed: 9,
        };
        let g = sample_graph(&spec).unwrap();
        let m = g.m();
        assert!(
            (900_000..1_200_000).contains(&m),
            "edge count {m} drifted from ≈ 1M"
        );
        let sets: Vec<Vec<u32>> = (0..100u32).map(|c| (c * 600..(c + 1) * 600).collect()).collect();
        let start = Instant::now();
        let model = fit_graph(&g, &sets, &FitConfig::default()).unwrap();
        within(start, Duration::from_secs(600), "100-community graph fit");
        assert!(model.converged);
        assert_eq!(model.communities.len(), 100);
    });
}

fn hyperfit(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperfit"))
        .args(args)
        .output()
        .expect("spawn hyperfit");
    assert!(
        out.status.success(),
        "hyperfit {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn assert_same_bytes(a: &Path, b: &Path) {
    let left = fs::read(a).unwrap();
    let right = fs::read(b).unwrap();
    assert!(
        left == right,
        "{} and {} differ ({} vs {} bytes)",
        a.display(),
        b.display(),
        left.len(),
        right.len()
    );
}

#[test]
fn acceptance_11_cli_determinism() {
    criterion(11, "every CLI subcommand is byte-deterministic", || {
        let dir = tempfile::tempdir().unwrap();

        // A seeded spec with an overlap and isolated nodes, exercising the
        // full sample → fit → test → report pipeline.
        let nodes_a: Vec<u32> = (0..12).collect();
        let nodes_b: Vec<u32> = (8..20).collect();
        let spec = serde_json::json!({
            "n": 24,
            "communities": [
                {"nodes": nodes_a, "gamma": 5, "h": 2, "d_in": 0.9},
                {"nodes": nodes_b, "gamma": 5, "h": 2, "d_in": 0.85},
            ],
            "d_out": 0.05,
            "seed": 3,
        });
        let spec_path = dir.path().join("spec.json");
        fs::write(&spec_path, spec.to_string()).unwrap();
        let spec_arg = spec_path.to_str().unwrap();

        // Two full passes over every subcommand, each into its own directory.
        for run in 1..=2 {
            let sub = dir.path().join(format!("run{run}"));
            fs::create_dir(&sub).unwrap();
            let p = |name: &str| sub.join(name).to_str().unwrap().to_owned();
            hyperfit(&["sample", "--spec", spec_arg, "--out-prefix", &p("s")]);
            hyperfit(&[
                "fit-graph",
                "--graph",
                &p("s.edges"),
                "--communities",
                &p("s.communities"),
                "--out",
                &p("full.jsonl"),
            ]);
            hyperfit(&[
                "fit-graph",
                "--graph",
                &p("s.edges"),
                "--communities",
                &p("s.communities"),
                "--mode",
                "block",
                "--out",
                &p("block.jsonl"),
            ]);
            hyperfit(&[
                "fit-community",
                "--graph",
                &p("s.edges"),
                "--communities",
                &p("s.communities"),
                "--community-index",
                "1",
                "--out",
                &p("one.jsonl"),
            ]);
            hyperfit(&[
                "lrt",
                "--full",
                &p("full.jsonl"),
                "--restricted",
                &p("block.jsonl"),
                "--restriction",
                "block",
                "--out",
                &p("lrt.jsonl"),
            ]);
            hyperfit(&[
                "render",
                "--graph",
                &p("s.edges"),
                "--communities",
                &p("s.communities"),
                "--out",
                &p("grid.csv"),
            ]);
            hyperfit(&[
                "summarize",
                "--models",
                &p("full.jsonl"),
                "--out",
                &p("summary.tsv"),
            ]);
            let convert = hyperfit(&["convert", "--gamma", "9", "--h", "3", "--n", "25"]);
            fs::write(sub.join("convert.txt"), convert.stdout).unwrap();
        }

        for name in [
            "s.edges",
            "s.communities",
            "s.manifest.json",
            "full.jsonl",
            "block.jsonl",
            "one.jsonl",
            "lrt.jsonl",
            "grid.csv",
            "summary.tsv",
            "convert.txt",
        ] {
            assert_same_bytes(
                &dir.path().join("run1").join(name),
                &dir.path().join("run2").join(name),
            );
        }
    });
}
