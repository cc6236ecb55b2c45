//! Densities and Bernoulli log-likelihoods for single communities and for a
//! whole graph decomposed into communities plus a global outside.
//!
//! All counting is over *ordered* cells of a rank grid: an `n_c × n_c` square
//! per community (diagonal included), so each undirected edge contributes two
//! cells, which always fall on the same side of the symmetric boundary.
//! Log-likelihoods use the conventions `0·ln 0 = 0` and `density = 0` when
//! its denominator is zero; impossible observations yield `-inf`, never NaN.

use crate::graph::{Graph, NodeOrder};
use crate::model::ModelParams;

/// A local rank-grid cell `(i, j)` — ordered, so `(i, j)` and `(j, i)` are
/// distinct cells.
pub type Cell = (u32, u32);

/// Cell tallies for one community over its `n_c × n_c` rank grid, after any
/// exclusions: cells inside the model area, edge cells among them, cells in
/// the complement, and edge cells there. Without exclusions
/// `area_cells + complement_cells = n_c²`; each excluded cell is removed
/// from whichever side of the boundary it lies on, so with exclusions the
/// two sides sum to `n_c²` minus the number of excluded cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CommunityCounts {
    pub area_cells: u64,
    pub in_edge_cells: u64,
    pub complement_cells: u64,
    pub out_edge_cells: u64,
}

impl CommunityCounts {
    /// Maximum-likelihood inside density `|E_C| / |A_C|` (0 on empty area).
    pub fn d_in(&self) -> f64 {
        mle_density(self.in_edge_cells, self.area_cells)
    }

    /// Maximum-likelihood local outside density (0 on empty complement).
    pub fn d_out(&self) -> f64 {
        mle_density(self.out_edge_cells, self.complement_cells)
    }
}

/// Whole-graph tallies: per-community counts after overlap exclusion, the
/// number of grid cells covered by (attributed to) community areas, the edge
/// cells left outside every community, and the total `n²` cell count.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphCounts {
    pub communities: Vec<CommunityCounts>,
    pub covered_cells: u64,
    pub outside_edge_cells: u64,
    pub total_cells: u64,
}

impl GraphCounts {
    pub fn outside_cells(&self) -> u64 {
        self.total_cells - self.covered_cells
    }

    /// Maximum-likelihood global outside density.
    pub fn d_out(&self) -> f64 {
        mle_density(self.outside_edge_cells, self.outside_cells())
    }
}

/// `successes / trials`, defined as 0 when there are no trials.
pub fn mle_density(successes: u64, trials: u64) -> f64 {
    if trials == 0 {
        0.0
    } else {
        successes as f64 / trials as f64
    }
}

/// Log-likelihood of observing `successes` among `trials` independent
/// Bernoulli(`density`) cells:
/// `successes·ln d + (trials − successes)·ln(1 − d)`, with `0·ln 0 = 0`.
/// Requires `density ∈ [0, 1]`; an impossible observation (successes at
/// `d = 0`, or misses at `d = 1`) gives `-inf`.
pub fn bernoulli_ll(successes: u64, trials: u64, density: f64) -> f64 {
    debug_assert!(successes <= trials);
    debug_assert!((0.0..=1.0).contains(&density));
    let misses = trials - successes;
    let mut ll = 0.0;
    if successes > 0 {
        ll += successes as f64 * density.ln();
    }
    if misses > 0 {
        ll += misses as f64 * (-density).ln_1p();
    }
    ll
}

/// The single-community log-likelihood at maximum-likelihood densities on
/// both sides of the boundary.
pub fn ll_single(c: &CommunityCounts) -> f64 {
    ll_single_at(c, c.d_out())
}

/// The single-community log-likelihood with the inside density at its
/// maximum-likelihood value and the outside density fixed to `d_out` (the
/// global-density variant used during alternating optimization).
pub fn ll_single_at(c: &CommunityCounts, d_out: f64) -> f64 {
    bernoulli_ll(c.in_edge_cells, c.area_cells, c.d_in())
        + bernoulli_ll(c.out_edge_cells, c.complement_cells, d_out)
}

/// The whole-graph log-likelihood: each community's inside term at its own
/// maximum-likelihood density, plus one outside term over every cell not
/// attributed to any community, at the global density [`GraphCounts::d_out`].
pub fn ll_graph(gc: &GraphCounts) -> f64 {
    let inside: f64 = gc
        .communities
        .iter()
        .map(|c| bernoulli_ll(c.in_edge_cells, c.area_cells, c.d_in()))
        .sum();
    inside + bernoulli_ll(gc.outside_edge_cells, gc.outside_cells(), gc.d_out())
}

/// Tallies one community's grid against a model shape: the area comes from
/// the exact cell count, edge cells from one pass over the induced edges,
/// and each excluded cell is subtracted from its side of the boundary.
/// `excluded` holds ordered rank cells, deduplicated, within the grid.
/// Cost is `O(n_c + m_c + |excluded|·log)`.
pub fn community_counts(
    induced: &Graph,
    order: &NodeOrder,
    mp: &ModelParams,
    excluded: &[Cell],
) -> CommunityCounts {
    let n_c = order.n_c();
    debug_assert_eq!(induced.n() as u32, n_c);
    debug_assert_eq!(mp.n_c(), n_c);

    let area_raw = mp.area_exact();
    let mut in_raw = 0u64;
    for (u, v) in induced.edges() {
        let (ri, rj) = (order.rank_of[u as usize], order.rank_of[v as usize]);
        if mp.contains(ri, rj) {
            in_raw += 2;
        }
    }
    let total_edge_cells = 2 * induced.m() as u64;

    // Excluded-cell corrections, split by boundary side and edge status.
    let (mut x_in, mut x_edge, mut x_edge_in) = (0u64, 0u64, 0u64);
    for &(i, j) in excluded {
        debug_assert!(i < n_c && j < n_c);
        let inside = mp.contains(i, j);
        let is_edge = i != j
            && induced.has_edge(order.by_rank[i as usize], order.by_rank[j as usize]);
        if inside {
            x_in += 1;
        }
        if is_edge {
            x_edge += 1;
            if inside {
                x_edge_in += 1;
            }
        }
    }
    let x_total = excluded.len() as u64;

    let square = n_c as u64 * n_c as u64;
    CommunityCounts {
        area_cells: area_raw - x_in,
        in_edge_cells: in_raw - x_edge_in,
        complement_cells: (square - area_raw) - (x_total - x_in),
        out_edge_cells: (total_edge_cells - in_raw) - (x_edge - x_edge_in),
    }
}
