//! Seeded sampling of graphs from planted hyperbolic community models.
//!
//! Every unordered node pair gets exactly one Bernoulli draw. A pair inside
//! the area of one or more planted communities is governed by the first such
//! community in list order and drawn at its inside density; all remaining
//! pairs are background, drawn at the global outside density. The background
//! is sampled by geometric gap skipping over the linearized pair index, so
//! sparse graphs cost time proportional to the edges drawn, not to `n²`.
//!
//! The spec carries each community's node list in planted rank order, which
//! doubles as the emitted node ordering: recovery tests can fit against the
//! exact ranks the generator used instead of re-deriving ranks from sampled
//! degrees.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::model::{FixedParams, ModelError, ModelParams};

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("community {index}: {source}")]
    BadCommunity {
        index: usize,
        #[source]
        source: ModelError,
    },
    #[error("community {index}: node {node} is outside 0..{n}")]
    NodeOutOfRange { index: usize, node: u32, n: u32 },
    #[error("community {index}: node {node} listed twice")]
    DuplicateNode { index: usize, node: u32 },
    #[error("density {value} is outside [0, 1]")]
    BadDensity { value: f64 },
}

/// One planted community: members in rank order plus the shape and density
/// that generate its inside edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedCommunity {
    /// Member nodes in planted rank order: `nodes[r]` is the rank-`r` node.
    pub nodes: Vec<u32>,
    pub gamma: u32,
    pub h: u32,
    pub d_in: f64,
}

/// Full description of one sampled graph; serializable as the sidecar
/// manifest emitted next to generated edge lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    /// Total node count; nodes are `0..n`.
    pub n: u32,
    pub communities: Vec<PlantedCommunity>,
    pub d_out: f64,
    pub seed: u64,
}

/// Draws the graph described by `spec`. Deterministic: equal specs (seed
/// included) produce identical graphs.
pub fn sample_graph(spec: &SampleSpec) -> Result<Graph, SynthError> {
    if !(0.0..=1.0).contains(&spec.d_out) {
        return Err(SynthError::BadDensity { value: spec.d_out });
    }
    let mut shapes = Vec::with_capacity(spec.communities.len());
    for (index, c) in spec.communities.iter().enumerate() {
        if !(0.0..=1.0).contains(&c.d_in) {
            return Err(SynthError::BadDensity { value: c.d_in });
        }
        let mut seen = HashSet::with_capacity(c.nodes.len());
        for &node in &c.nodes {
            if node >= spec.n {
                return Err(SynthError::NodeOutOfRange {
                    index,
                    node,
                    n: spec.n,
                });
            }
            if !seen.insert(node) {
                return Err(SynthError::DuplicateNode { index, node });
            }
        }
        let anchors = FixedParams::new(c.gamma, c.h, c.nodes.len() as u32);
        let params = ModelParams::from_fixed(anchors)
            .map_err(|source| SynthError::BadCommunity { index, source })?;
        shapes.push(params);
    }

    let n = u64::from(spec.n);
    let total_pairs = n * (n - 1) / 2;
    let mut rng = ChaCha12Rng::seed_from_u64(spec.seed);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut governed: HashSet<u64> = HashSet::new();

    // Planted areas, first community in list order governing shared pairs.
    // Column-major over in-area cells with i < j enumerates each unordered
    // pair once: column j admits rows 0..t_j, of which 0..min(t_j, j) are
    // strictly above the diagonal.
    for (c, params) in spec.communities.iter().zip(&shapes) {
        let n_c = params.n_c();
        for j in 1..n_c {
            let t = params.col_count(j).min(j);
            for i in 0..t {
                let u = c.nodes[i as usize];
                let v = c.nodes[j as usize];
                let key = pair_index(n, u64::from(u.min(v)), u64::from(u.max(v)));
                if governed.insert(key) && rng.random::<f64>() < c.d_in {
                    edges.push((u, v));
                }
            }
        }
    }

    // Background pairs at d_out. Gap lengths are geometric, so the walk
    // touches only the hit positions; hits on governed pairs are discarded
    // (those pairs were already drawn above).
    if spec.d_out >= 1.0 {
        for k in 0..total_pairs {
            if !governed.contains(&k) {
                edges.push(pair_at(n, k));
            }
        }
    } else if spec.d_out > 0.0 {
        let ln_miss = (-spec.d_out).ln_1p();
        let mut pos = 0u64;
        loop {
            let u: f64 = rng.random();
            let gap = ((1.0 - u).ln() / ln_miss).floor();
            pos = pos.saturating_add(gap as u64);
            if pos >= total_pairs {
                break;
            }
            if !governed.contains(&pos) {
                edges.push(pair_at(n, pos));
            }
            pos += 1;
        }
    }

    Ok(Graph::from_edges(spec.n as usize, edges))
}

/// Linear index of the unordered pair `(u, v)`, `u < v`, in the sequence
/// sorted by `u` then `v`.
fn pair_index(n: u64, u: u64, v: u64) -> u64 {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Inverse of [`pair_index`].
fn pair_at(n: u64, k: u64) -> (u32, u32) {
    debug_assert!(k < n * (n - 1) / 2);
    let row_start = |u: u64| u * n - u * (u + 1) / 2;
    let (mut lo, mut hi) = (0, n - 1);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if row_start(mid) <= k {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let v = lo + 1 + (k - row_start(lo));
    (lo as u32, v as u32)
}
