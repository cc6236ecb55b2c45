//! The JSONL schema shared by `fit-community`, `fit-graph`, `lrt`, and
//! `summarize`: community records, one JSON object per line, followed by one
//! graph-level trailer (the only line without a `community` key).

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use hyperfit_core::FittedCommunity;
use serde::{Deserialize, Serialize};

/// One fitted community. `p` and `theta` are `null` for the degenerate
/// linear shape `i + j <= 2*gamma`, whose hyperbola view does not exist.
#[derive(Debug, Serialize, Deserialize)]
pub struct CommunityRecord {
    /// Zero-based index of the community in the input communities file.
    pub community: usize,
    pub n_c: u32,
    pub gamma: f64,
    pub h: f64,
    pub p: Option<f64>,
    pub theta: Option<f64>,
    pub x: f64,
    pub sigma: f64,
    pub d_in: f64,
    pub area_cells: u64,
    pub edge_cells: u64,
    pub ll: f64,
    pub mode: String,
}

/// Graph-level trailer. `fit-community` emits only the density and total;
/// `fit-graph` adds its convergence report.
#[derive(Debug, Serialize, Deserialize)]
pub struct FitTrailer {
    pub d_out: f64,
    pub total_ll: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_ll: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounds: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
}

/// One likelihood-ratio test, emitted by `lrt` per community.
#[derive(Debug, Serialize, Deserialize)]
pub struct LrtRecord {
    pub community: usize,
    pub lambda: f64,
    pub df: u32,
    pub p_value: f64,
}

/// Graph-level likelihood-ratio test over the trailer totals.
#[derive(Debug, Serialize, Deserialize)]
pub struct LrtTrailer {
    pub communities: usize,
    pub lambda: f64,
    pub df: u32,
    pub p_value: f64,
}

/// Builds the record for one fitted community at its input-file index.
pub fn community_record(index: usize, fc: &FittedCommunity) -> CommunityRecord {
    let params = &fc.fit.params;
    let hp = params.hyperbolic();
    let m = params.mixture();
    CommunityRecord {
        community: index,
        n_c: params.n_c(),
        gamma: params.gamma(),
        h: params.h(),
        p: hp.map(|v| v.p),
        theta: hp.map(|v| v.theta),
        x: m.x,
        sigma: m.sigma,
        d_in: fc.fit.counts.d_in(),
        area_cells: fc.fit.counts.area_cells,
        edge_cells: fc.fit.counts.in_edge_cells,
        ll: fc.fit.ll,
        mode: fc.fit.mode.as_str().to_string(),
    }
}

/// Writes one JSONL line.
pub fn write_line<W: Write, T: Serialize>(w: &mut W, record: &T) -> Result<()> {
    serde_json::to_writer(&mut *w, record).context("failed to encode record")?;
    w.write_all(b"\n").context("failed to write record")?;
    Ok(())
}

/// A parsed fit output: records in file order plus the trailer.
pub struct FitFile {
    pub records: Vec<CommunityRecord>,
    pub trailer: Option<FitTrailer>,
}

/// Reads a `fit-community`/`fit-graph` JSONL file back. Blank lines are
/// skipped; the trailer must be the last line.
pub fn read_fit_file(path: &Path) -> Result<FitFile> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut records = Vec::new();
    let mut trailer: Option<FitTrailer> = None;
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.with_context(|| format!("cannot read {}", path.display()))?;
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(&line)
            .with_context(|| format!("{}:{line_no}: not valid JSON", path.display()))?;
        if trailer.is_some() {
            bail!(
                "{}:{line_no}: content after the trailer line",
                path.display()
            );
        }
        if value.get("community").is_some() {
            let record = serde_json::from_value(value)
                .with_context(|| format!("{}:{line_no}: not a community record", path.display()))?;
            records.push(record);
        } else {
            let t = serde_json::from_value(value)
                .with_context(|| format!("{}:{line_no}: not a fit trailer", path.display()))?;
            trailer = Some(t);
        }
    }
    Ok(FitFile { records, trailer })
}
