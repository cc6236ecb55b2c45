//! Best-fit search for a single community: the integer-anchored (γ, H) grid,
//! the HyCom restriction (`p = 1`, threshold free), and the block restriction
//! (full square), each maximizing the Bernoulli log-likelihood exactly.
//!
//! The integer sweep walks each H row with γ ascending. Area growth is
//! monotone cell-wise along a row, so per-column thresholds only advance;
//! edge and exclusion tallies are maintained by forward-moving pointers,
//! making a whole row cost `O(candidates·width + m_c)` instead of
//! `O(candidates·(n_c + m_c))`. Rows are independent and may run in
//! parallel; the final reduction is sequential in H order so ties resolve
//! deterministically. The HyCom sweep pops grid cells in increasing product
//! order from a heap, evaluating one candidate per distinct threshold.
//! The returned counts are always re-tallied from scratch for the winning
//! shape, so results never depend on the incremental bookkeeping.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{community_view, Community, Graph, GraphError};
use crate::likelihood::{community_counts, ll_single, ll_single_at, Cell, CommunityCounts};
use crate::model::{feasible_gamma_range, FixedParams, ModelParams};

/// Errors from single-community fitting.
#[derive(Debug, Error)]
pub enum FitError {
    #[error("a community needs at least 2 distinct nodes, got {0}")]
    EmptyCommunity(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which candidate family to search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FitMode {
    /// All feasible integer anchors, every HyCom threshold, and the block —
    /// so the full fit dominates both restrictions by construction.
    Full,
    /// The single full-square candidate `γ = H = n_c − 1`.
    Block,
    /// `p = 1` with the threshold swept over every distinct product
    /// `(i + 1)(j + 1)` of the grid.
    Hycom,
}

impl FitMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FitMode::Full => "full",
            FitMode::Block => "block",
            FitMode::Hycom => "hycom",
        }
    }
}

/// A fitted shape for one community: parameters, post-exclusion counts, and
/// the maximized log-likelihood (at the local MLE outside density, or at the
/// supplied global one).
#[derive(Debug, Clone)]
pub struct ModelFit {
    pub params: ModelParams,
    pub counts: CommunityCounts,
    pub ll: f64,
    pub mode: FitMode,
}

/// A community together with its fitted model.
#[derive(Debug, Clone)]
pub struct FittedCommunity {
    pub community: Community,
    pub fit: ModelFit,
}

/// Fits one community drawn from `g`. Nodes are deduplicated, the induced
/// subgraph and degree order are computed, and the requested candidate
/// family is searched exactly. `excluded` lists ordered rank cells (in the
/// degree order's coordinates) to drop from all counts; `d_out` fixes the
/// outside density instead of its local maximum-likelihood value.
pub fn fit_community(
    g: &Graph,
    nodes: &[u32],
    mode: FitMode,
    excluded: &[Cell],
    d_out: Option<f64>,
) -> Result<FittedCommunity, FitError> {
    let community = community_view(g, nodes)?;
    let fit = fit_view(&community, mode, excluded, d_out)?;
    Ok(FittedCommunity { community, fit })
}

/// Fits a prepared [`Community`] view — the entry point when the caller
/// controls the node order (planted-order experiments, alternating
/// optimization with cached views).
pub fn fit_view(
    comm: &Community,
    mode: FitMode,
    excluded: &[Cell],
    d_out: Option<f64>,
) -> Result<ModelFit, FitError> {
    if comm.members.len() < 2 {
        return Err(FitError::EmptyCommunity(comm.members.len()));
    }
    let ctx = SearchCtx::new(comm, excluded, d_out);

    let best = match mode {
        FitMode::Block => ctx.eval(ModelParams::block(ctx.n_c).expect("n_c ≥ 2")),
        FitMode::Hycom => ctx.best_hycom(),
        FitMode::Full => {
            let integer = ctx.best_integer();
            let hycom = ctx.best_hycom();
            if better(&hycom, &integer) {
                hycom
            } else {
                integer
            }
        }
    };

    // Canonical recount: the returned fit is always scored from scratch, and
    // in debug builds this cross-checks every incremental tally path.
    let counts = community_counts(&comm.induced, &comm.order, &best.params, excluded);
    debug_assert_eq!(counts, best.counts);
    let ll = ctx.score(&counts);
    debug_assert_eq!(ll.to_bits(), best.ll.to_bits());
    Ok(ModelFit {
        params: best.params,
        counts,
        ll,
        mode,
    })
}

struct Candidate {
    params: ModelParams,
    counts: CommunityCounts,
    ll: f64,
}

/// Strictly better under the deterministic fit order: higher log-likelihood,
/// then smaller γ, then smaller H (γ and H compared as reals so candidates
/// from different families are comparable).
fn better(a: &Candidate, b: &Candidate) -> bool {
    if a.ll != b.ll {
        return a.ll > b.ll;
    }
    let (ga, gb) = (a.params.gamma(), b.params.gamma());
    if ga != gb {
        return ga < gb;
    }
    a.params.h() < b.params.h()
}

/// Per-column exclusions: ascending excluded row indices and a prefix count
/// of how many of the first `k` are edge cells.
struct ExclCol {
    rows: Vec<u32>,
    edge_prefix: Vec<u32>,
}

struct SearchCtx<'a> {
    comm: &'a Community,
    n_c: u32,
    /// `nbr_ranks[j]` = ascending ranks of the neighbors of the rank-`j` node.
    nbr_ranks: Vec<Vec<u32>>,
    excl_cols: Vec<ExclCol>,
    total_edge_cells: u64,
    x_total: u64,
    x_edge: u64,
    d_out: Option<f64>,
}

impl<'a> SearchCtx<'a> {
    fn new(comm: &'a Community, excluded: &[Cell], d_out: Option<f64>) -> Self {
        let n = comm.members.len();
        let order = &comm.order;
        let mut nbr_ranks: Vec<Vec<u32>> = Vec::with_capacity(n);
        for j in 0..n as u32 {
            let node = order.by_rank[j as usize];
            let mut ranks: Vec<u32> = comm
                .induced
                .neighbors(node)
                .iter()
                .map(|&u| order.rank_of[u as usize])
                .collect();
            ranks.sort_unstable();
            nbr_ranks.push(ranks);
        }

        let mut excl_cols: Vec<ExclCol> = (0..n)
            .map(|_| ExclCol {
                rows: Vec::new(),
                edge_prefix: vec![0],
            })
            .collect();
        let mut by_col: Vec<Cell> = excluded.to_vec();
        by_col.sort_unstable_by_key(|&(i, j)| (j, i));
        let mut x_edge = 0u64;
        for (i, j) in by_col {
            debug_assert!(i < n as u32 && j < n as u32, "excluded cell out of grid");
            let col = &mut excl_cols[j as usize];
            debug_assert!(col.rows.last() != Some(&i), "excluded cells must be distinct");
            let is_edge = i != j && nbr_ranks[j as usize].binary_search(&i).is_ok();
            x_edge += is_edge as u64;
            let prev = *col.edge_prefix.last().unwrap();
            col.rows.push(i);
            col.edge_prefix.push(prev + is_edge as u32);
        }

        SearchCtx {
            comm,
            n_c: n as u32,
            nbr_ranks,
            excl_cols,
            total_edge_cells: 2 * comm.induced.m() as u64,
            x_total: excluded.len() as u64,
            x_edge,
            d_out,
        }
    }

    fn counts_from_raw(&self, area: u64, e_in: u64, x_in: u64, x_edge_in: u64) -> CommunityCounts {
        let square = self.n_c as u64 * self.n_c as u64;
        CommunityCounts {
            area_cells: area - x_in,
            in_edge_cells: e_in - x_edge_in,
            complement_cells: (square - area) - (self.x_total - x_in),
            out_edge_cells: (self.total_edge_cells - e_in) - (self.x_edge - x_edge_in),
        }
    }

    fn score(&self, counts: &CommunityCounts) -> f64 {
        match self.d_out {
            None => ll_single(counts),
            Some(d) => ll_single_at(counts, d),
        }
    }

    /// Scores a single shape from scratch.
    fn eval(&self, params: ModelParams) -> Candidate {
        let excluded = self.flat_excluded();
        let counts = community_counts(&self.comm.induced, &self.comm.order, &params, &excluded);
        let ll = self.score(&counts);
        Candidate { params, counts, ll }
    }

    fn flat_excluded(&self) -> Vec<Cell> {
        let mut cells = Vec::with_capacity(self.x_total as usize);
        for (j, col) in self.excl_cols.iter().enumerate() {
            for &i in &col.rows {
                cells.push((i, j as u32));
            }
        }
        cells
    }

    /// Best candidate over all feasible integer anchors.
    fn best_integer(&self) -> Candidate {
        #[cfg(feature = "parallel")]
        let rows: Vec<Candidate> = (0..self.n_c)
            .into_par_iter()
            .filter_map(|h| self.best_in_row(h))
            .collect();
        #[cfg(not(feature = "parallel"))]
        let rows: Vec<Candidate> = (0..self.n_c)
            .filter_map(|h| self.best_in_row(h))
            .collect();
        rows.into_iter()
            .reduce(|best, cand| if better(&cand, &best) { cand } else { best })
            .expect("the star anchor (0,0) is always feasible")
    }

    /// Best candidate in one H row, sweeping γ ascending with incremental
    /// per-column tallies.
    fn best_in_row(&self, h: u32) -> Option<Candidate> {
        let (lo, hi) = feasible_gamma_range(h, self.n_c)?;
        let n = self.n_c as usize;
        let mut t_prev = vec![0u32; n];
        let mut nbr_ptr = vec![0u32; n];
        let mut excl_ptr = vec![0u32; n];
        let (mut area, mut e_in, mut x_in, mut x_edge_in) = (0u64, 0u64, 0u64, 0u64);
        let mut best: Option<Candidate> = None;

        for gamma in lo..=hi {
            let params = ModelParams::from_fixed(FixedParams::new(gamma, h, self.n_c))
                .expect("feasible_gamma_range yields feasible anchors");
            for j in 0..n {
                let t = params.col_count(j as u32);
                if t == 0 {
                    // Column counts are non-increasing in j: the rest are 0.
                    break;
                }
                let old = t_prev[j];
                if t == old {
                    continue;
                }
                debug_assert!(t > old, "area must grow monotonically along a row");
                area += (t - old) as u64;

                let nbrs = &self.nbr_ranks[j];
                let mut p = nbr_ptr[j] as usize;
                while p < nbrs.len() && nbrs[p] < t {
                    p += 1;
                }
                e_in += p as u64 - nbr_ptr[j] as u64;
                nbr_ptr[j] = p as u32;

                let excl = &self.excl_cols[j];
                if !excl.rows.is_empty() {
                    let mut q = excl_ptr[j] as usize;
                    while q < excl.rows.len() && excl.rows[q] < t {
                        q += 1;
                    }
                    x_in += q as u64 - excl_ptr[j] as u64;
                    x_edge_in +=
                        (excl.edge_prefix[q] - excl.edge_prefix[excl_ptr[j] as usize]) as u64;
                    excl_ptr[j] = q as u32;
                }
                t_prev[j] = t;
            }
            let counts = self.counts_from_raw(area, e_in, x_in, x_edge_in);
            let ll = self.score(&counts);
            let cand = Candidate { params, counts, ll };
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best = Some(cand);
            }
        }
        best
    }

    /// Best HyCom candidate: thresholds are exactly the distinct products
    /// `(i + 1)(j + 1)`, visited ascending by popping cells off a per-column
    /// heap, so tallies grow one cell at a time.
    fn best_hycom(&self) -> Candidate {
        let n_c = self.n_c;
        let mut heap: BinaryHeap<Reverse<(u64, u32, u32)>> = (0..n_c)
            .map(|j| Reverse((j as u64 + 1, j, 0)))
            .collect();
        let (mut area, mut e_in, mut x_in, mut x_edge_in) = (0u64, 0u64, 0u64, 0u64);
        let mut best: Option<Candidate> = None;

        while let Some(&Reverse((theta, _, _))) = heap.peek() {
            while let Some(&Reverse((prod, j, i))) = heap.peek() {
                if prod != theta {
                    break;
                }
                heap.pop();
                area += 1;
                let is_edge = self.nbr_ranks[j as usize].binary_search(&i).is_ok();
                e_in += is_edge as u64;
                let excl = &self.excl_cols[j as usize];
                if !excl.rows.is_empty() && excl.rows.binary_search(&i).is_ok() {
                    x_in += 1;
                    x_edge_in += is_edge as u64;
                }
                if i + 1 < n_c {
                    heap.push(Reverse(((i as u64 + 2) * (j as u64 + 1), j, i + 1)));
                }
            }
            let params = ModelParams::hycom(theta, n_c).expect("products are ≥ 1");
            let counts = self.counts_from_raw(area, e_in, x_in, x_edge_in);
            let ll = self.score(&counts);
            let cand = Candidate { params, counts, ll };
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best = Some(cand);
            }
        }
        best.expect("n_c ≥ 2 yields at least one threshold")
    }
}
