//! One function per subcommand. All file writing funnels through
//! [`out_writer`] so every command accepts `--out` and defaults to stdout.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hyperfit_core::{
    block_df, fit_community as core_fit_community, fit_graph as core_fit_graph, hycom_df,
    lrt as core_lrt, parse_communities, parse_edge_list, sample_graph, summarize_values,
    FitConfig, FittedCommunity, ModelParams, ParsedGraph, Quartiles, SampleSpec,
};
use serde::Serialize;

use crate::records::{
    community_record, read_fit_file, write_line, CommunityRecord, FitTrailer, LrtRecord,
    LrtTrailer,
};
use crate::{
    ConvertArgs, FitCommunityArgs, FitGraphArgs, LrtArgs, RenderArgs, RestrictionArg, SampleArgs,
    SummarizeArgs,
};

pub fn fit_community(args: FitCommunityArgs) -> Result<()> {
    let parsed = load_graph(&args.graph)?;
    let sets = load_communities(&args.communities, &parsed)?;
    let nodes = pick_community(&sets, args.community_index, &args.communities)?;
    let d_out = check_density(args.d_out)?;
    let fc = core_fit_community(&parsed.graph, nodes, args.mode.into(), &[], d_out)
        .context("fit failed")?;
    let mut w = out_writer(&args.out)?;
    write_line(&mut w, &community_record(args.community_index, &fc))?;
    let trailer = FitTrailer {
        d_out: d_out.unwrap_or_else(|| fc.fit.counts.d_out()),
        total_ll: fc.fit.ll,
        initial_ll: None,
        rounds: None,
        converged: None,
    };
    write_line(&mut w, &trailer)?;
    w.flush().context("failed to flush output")
}

pub fn fit_graph(args: FitGraphArgs) -> Result<()> {
    let parsed = load_graph(&args.graph)?;
    let sets = load_communities(&args.communities, &parsed)?;
    if sets.is_empty() {
        bail!("no communities in {}", args.communities.display());
    }
    let config = FitConfig {
        mode: args.mode.into(),
        max_rounds: args.max_rounds,
        epsilon: args.epsilon,
    };
    let model = core_fit_graph(&parsed.graph, &sets, &config).context("fit failed")?;

    // The model orders communities by likelihood; emit them by input index.
    let mut slots: Vec<Option<&FittedCommunity>> = vec![None; sets.len()];
    for (pos, &input) in model.input_index.iter().enumerate() {
        slots[input] = Some(&model.communities[pos]);
    }
    let mut w = out_writer(&args.out)?;
    for (input, slot) in slots.iter().enumerate() {
        let fc = slot.expect("input_index is a permutation");
        write_line(&mut w, &community_record(input, fc))?;
    }
    let trailer = FitTrailer {
        d_out: model.d_out,
        total_ll: model.total_ll,
        initial_ll: Some(model.initial_ll),
        rounds: Some(model.rounds),
        converged: Some(model.converged),
    };
    write_line(&mut w, &trailer)?;
    w.flush().context("failed to flush output")
}

pub fn lrt(args: LrtArgs) -> Result<()> {
    let full = read_fit_file(&args.full)?;
    let restricted = read_fit_file(&args.restricted)?;
    if full.records.len() != restricted.records.len() {
        bail!(
            "community counts differ: {} records in {}, {} in {}",
            full.records.len(),
            args.full.display(),
            restricted.records.len(),
            args.restricted.display()
        );
    }
    if full.records.is_empty() {
        bail!("no community records in {}", args.full.display());
    }
    let (restriction_name, per_df, total_df) = match args.restriction {
        RestrictionArg::Block => ("block", block_df(1), block_df(full.records.len())),
        RestrictionArg::Hycom => ("hycom", hycom_df(1), hycom_df(full.records.len())),
    };

    let mut w = out_writer(&args.out)?;
    for (f, r) in full.records.iter().zip(&restricted.records) {
        if f.community != r.community {
            bail!(
                "record order differs: community {} in {} vs {} in {}",
                f.community,
                args.full.display(),
                r.community,
                args.restricted.display()
            );
        }
        if f.n_c != r.n_c {
            bail!(
                "community {} has {} nodes in {} but {} in {} — fits over different inputs?",
                f.community,
                f.n_c,
                args.full.display(),
                r.n_c,
                args.restricted.display()
            );
        }
        if r.mode != restriction_name {
            bail!(
                "community {} in {} was fitted with mode {:?}, expected {:?} per --restriction",
                r.community,
                args.restricted.display(),
                r.mode,
                restriction_name
            );
        }
        let test = core_lrt(f.ll, r.ll, per_df);
        write_line(
            &mut w,
            &LrtRecord {
                community: f.community,
                lambda: test.lambda,
                df: test.df,
                p_value: test.p_value,
            },
        )?;
    }

    let full_trailer = full
        .trailer
        .with_context(|| format!("{} has no trailer line", args.full.display()))?;
    let restricted_trailer = restricted
        .trailer
        .with_context(|| format!("{} has no trailer line", args.restricted.display()))?;
    let total = core_lrt(full_trailer.total_ll, restricted_trailer.total_ll, total_df);
    write_line(
        &mut w,
        &LrtTrailer {
            communities: full.records.len(),
            lambda: total.lambda,
            df: total.df,
            p_value: total.p_value,
        },
    )?;
    w.flush().context("failed to flush output")
}

pub fn convert(args: ConvertArgs) -> Result<()> {
    let params = ModelParams::from_fixed(hyperfit_core::FixedParams::new(
        args.gamma, args.h, args.n,
    ))
    .with_context(|| {
        format!(
            "cannot convert gamma={} h={} n={}",
            args.gamma, args.h, args.n
        )
    })?;
    let m = params.mixture();
    let mut w = out_writer(&args.out)?;
    // The degenerate line i + j <= 2*gamma is the p -> infinity limit.
    match params.hyperbolic() {
        Some(hp) => writeln!(w, "p={} theta={} x={} sigma={}", hp.p, hp.theta, m.x, m.sigma)?,
        None => writeln!(w, "p=inf theta=inf x={} sigma={}", m.x, m.sigma)?,
    }
    w.flush().context("failed to flush output")
}

/// Sidecar manifest written next to the sampled graph.
#[derive(Serialize)]
struct Manifest<'a> {
    nodes: u32,
    edges: u64,
    spec: &'a SampleSpec,
}

pub fn sample(args: SampleArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.spec)
        .with_context(|| format!("cannot open {}", args.spec.display()))?;
    let mut spec: SampleSpec = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a valid sample spec", args.spec.display()))?;
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    let g = sample_graph(&spec).context("sampling failed")?;

    // Isolated nodes are registered with a self-loop line, which the parser
    // drops while keeping the node, so round-trips preserve the id space.
    let edges_path = with_suffix(&args.out_prefix, ".edges");
    let mut w = file_writer(&edges_path)?;
    for (u, v) in g.edges() {
        writeln!(w, "{u}\t{v}")?;
    }
    for v in 0..g.n() as u32 {
        if g.degree(v) == 0 {
            writeln!(w, "{v}\t{v}")?;
        }
    }
    w.flush().context("failed to flush edge list")?;

    let comm_path = with_suffix(&args.out_prefix, ".communities");
    let mut w = file_writer(&comm_path)?;
    for c in &spec.communities {
        let line: Vec<String> = c.nodes.iter().map(|v| v.to_string()).collect();
        writeln!(w, "{}", line.join("\t"))?;
    }
    w.flush().context("failed to flush communities")?;

    let manifest_path = with_suffix(&args.out_prefix, ".manifest.json");
    let manifest = Manifest {
        nodes: g.n() as u32,
        edges: g.m() as u64,
        spec: &spec,
    };
    let mut w = file_writer(&manifest_path)?;
    serde_json::to_writer_pretty(&mut w, &manifest).context("failed to encode manifest")?;
    w.write_all(b"\n")?;
    w.flush().context("failed to flush manifest")
}

pub fn render(args: RenderArgs) -> Result<()> {
    let parsed = load_graph(&args.graph)?;
    let sets = load_communities(&args.communities, &parsed)?;
    let nodes = pick_community(&sets, args.community_index, &args.communities)?;
    let d_out = check_density(args.d_out)?;
    let fc = core_fit_community(&parsed.graph, nodes, args.mode.into(), &[], d_out)
        .context("fit failed")?;
    let n_c = fc.community.n_c();
    let by_rank = &fc.community.order.by_rank;

    let mut w = out_writer(&args.out)?;
    writeln!(w, "rank_i,rank_j,is_edge")?;
    for i in 0..n_c {
        for j in 0..n_c {
            let u = by_rank[i as usize];
            let v = by_rank[j as usize];
            writeln!(w, "{i},{j},{}", u8::from(fc.community.induced.has_edge(u, v)))?;
        }
    }
    writeln!(w)?;
    writeln!(w, "j,boundary_i")?;
    // Quarter-step samples across the grid; `inf` marks columns the
    // boundary never crosses.
    for s in 0..=4 * (n_c - 1) {
        let j = f64::from(s) * 0.25;
        writeln!(w, "{j},{}", fc.fit.params.boundary_i(j))?;
    }
    w.flush().context("failed to flush output")
}

pub fn summarize(args: SummarizeArgs) -> Result<()> {
    let fit = read_fit_file(&args.models)?;
    if fit.records.is_empty() {
        bail!("no community records in {}", args.models.display());
    }
    let quartiles = |f: fn(&CommunityRecord) -> f64| -> Result<Quartiles> {
        let mut values: Vec<f64> = fit.records.iter().map(f).collect();
        summarize_values(&mut values).context("summary failed")
    };
    let g = quartiles(|r| r.gamma / f64::from(r.n_c))?;
    let h = quartiles(|r| r.h / f64::from(r.n_c))?;
    let x = quartiles(|r| r.x)?;

    let mut w = out_writer(&args.out)?;
    writeln!(w, "stat\tq25\tmedian\tq75")?;
    writeln!(w, "gamma_over_nc\t{}\t{}\t{}", g.q25, g.median, g.q75)?;
    writeln!(w, "h_over_nc\t{}\t{}\t{}", h.q25, h.median, h.q75)?;
    writeln!(w, "x\t{}\t{}\t{}", x.q25, x.median, x.q75)?;
    w.flush().context("failed to flush output")
}

fn load_graph(path: &Path) -> Result<ParsedGraph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    parse_edge_list(BufReader::new(file))
        .with_context(|| format!("cannot parse edge list {}", path.display()))
}

fn load_communities(path: &Path, parsed: &ParsedGraph) -> Result<Vec<Vec<u32>>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    parse_communities(BufReader::new(file), parsed)
        .with_context(|| format!("cannot parse communities {}", path.display()))
}

fn pick_community<'a>(
    sets: &'a [Vec<u32>],
    index: usize,
    path: &Path,
) -> Result<&'a Vec<u32>> {
    sets.get(index).with_context(|| {
        format!(
            "community index {index} out of range: {} has {} communities",
            path.display(),
            sets.len()
        )
    })
}

fn check_density(d: Option<f64>) -> Result<Option<f64>> {
    if let Some(v) = d {
        if !(0.0..=1.0).contains(&v) {
            bail!("outside density must be in [0, 1], got {v}");
        }
    }
    Ok(d)
}

fn out_writer(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match out {
        Some(path) => Ok(Box::new(file_writer(path)?)),
        None => Ok(Box::new(BufWriter::new(std::io::stdout()))),
    }
}

fn file_writer(path: &Path) -> Result<BufWriter<File>> {
    let file =
        File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut os = prefix.as_os_str().to_os_string();
    os.push(suffix);
    PathBuf::from(os)
}
