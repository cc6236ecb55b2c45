//! Alternating optimization of multiple, possibly overlapping communities
//! against one global outside density, with every grid cell attributed to at
//! most one community.
//!
//! Cells can be contested only where two communities share both endpoints of
//! a node pair, so the claimed-cell map `M` is materialized just for those
//! pair ranges; everywhere else plain counts suffice. Each update round
//! rebuilds `M` from scratch in the current likelihood order, refits flagged
//! communities at the global density frozen at the round start (excluding
//! cells claimed earlier in the round), recounts unflagged ones so their
//! tallies track the exclusions they are subject to, and flags
//! node-overlapping neighbors of any community whose likelihood strictly
//! improved. The density is recomputed once per round, at the boundary where
//! the attribution is disjoint again. The loop stops when no flags remain or
//! after `max_rounds`.

use std::collections::HashMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::fit::{fit_view, FitError, FitMode, FittedCommunity, ModelFit};
use crate::graph::{community_view, Community, Graph};
use crate::likelihood::{
    community_counts, ll_graph, ll_single_at, mle_density, Cell, GraphCounts,
};

/// Safeguards and search family for [`fit_graph`].
#[derive(Debug, Clone, Copy)]
pub struct FitConfig {
    pub mode: FitMode,
    /// Hard cap on update rounds.
    pub max_rounds: u32,
    /// A community is considered improved (and its node-overlap neighborhood
    /// re-flagged) only when its log-likelihood gains more than this.
    pub epsilon: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            mode: FitMode::Full,
            max_rounds: 50,
            epsilon: 1e-9,
        }
    }
}

/// The fitted whole-graph model.
#[derive(Debug, Clone)]
pub struct GraphModel {
    /// Communities ordered by non-increasing log-likelihood, ties by input
    /// position.
    pub communities: Vec<FittedCommunity>,
    /// `input_index[k]` = position of `communities[k]` in the input list.
    pub input_index: Vec<usize>,
    /// Final excluded cells per entry (ordered local rank cells), parallel
    /// to `communities`.
    pub exclusions: Vec<Vec<Cell>>,
    /// Global outside density over all cells not attributed to a community.
    pub d_out: f64,
    /// Whole-graph log-likelihood at the final state.
    pub total_ll: f64,
    /// Whole-graph log-likelihood right after initialization.
    pub initial_ll: f64,
    /// Update rounds executed (0 when there was nothing to update).
    pub rounds: u32,
    /// False only when `max_rounds` elapsed with communities still flagged.
    pub converged: bool,
}

impl GraphModel {
    /// Whole-graph tallies at the final state.
    pub fn graph_counts(&self, g: &Graph) -> GraphCounts {
        let covered: u64 = self
            .communities
            .iter()
            .map(|c| c.fit.counts.area_cells)
            .sum();
        let covered_edges: u64 = self
            .communities
            .iter()
            .map(|c| c.fit.counts.in_edge_cells)
            .sum();
        let n = g.n() as u64;
        GraphCounts {
            communities: self.communities.iter().map(|c| c.fit.counts).collect(),
            covered_cells: covered,
            outside_edge_cells: 2 * g.m() as u64 - covered_edges,
            total_cells: n * n,
        }
    }
}

/// One contested cell of a community: its local rank cell and the global
/// node pair it stands for.
type ContestedCell = (Cell, (u32, u32));

pub fn fit_graph(
    g: &Graph,
    node_sets: &[Vec<u32>],
    config: &FitConfig,
) -> Result<GraphModel, FitError> {
    let views: Vec<Community> = node_sets
        .iter()
        .map(|ns| community_view(g, ns).map_err(FitError::from))
        .collect::<Result<_, _>>()?;
    for v in &views {
        if v.members.len() < 2 {
            return Err(FitError::EmptyCommunity(v.members.len()));
        }
    }
    let k = views.len();

    // Node-overlap structure and contested cells. A global pair (u, v) is
    // contested for every community that contains both endpoints whenever at
    // least one other community also does — diagonal pairs included, since
    // those grid cells are shared area too.
    let mut overlap_adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut contested_pairs: Vec<Vec<(u32, u32)>> = vec![Vec::new(); k];
    for a in 0..k {
        for b in (a + 1)..k {
            let shared = intersect_sorted(&views[a].members, &views[b].members);
            if shared.is_empty() {
                continue;
            }
            overlap_adj[a].push(b);
            overlap_adj[b].push(a);
            for &u in &shared {
                for &v in &shared {
                    contested_pairs[a].push((u, v));
                    contested_pairs[b].push((u, v));
                }
            }
        }
    }
    let contested: Vec<Vec<ContestedCell>> = views
        .iter()
        .zip(contested_pairs)
        .map(|(view, mut pairs)| {
            pairs.sort_unstable();
            pairs.dedup();
            let mut cells: Vec<ContestedCell> = pairs
                .into_iter()
                .map(|(u, v)| {
                    let rank = |w: u32| {
                        let local = view.members.binary_search(&w).expect("shared node");
                        view.order.rank_of[local]
                    };
                    ((rank(u), rank(v)), (u, v))
                })
                .collect();
            cells.sort_unstable();
            cells
        })
        .collect();

    // Initialization: communities in input order, each with its local
    // outside density, excluding cells claimed by earlier ones. Communities
    // in different node-overlap components can never contest each other's
    // cells, so components run independently (and in parallel).
    let components = connected_components(&overlap_adj);
    let init_component = |comp: &Vec<usize>| -> Result<Vec<(usize, ModelFit, Vec<Cell>)>, FitError> {
        let mut claimed: HashMap<(u32, u32), usize> = HashMap::new();
        let mut out = Vec::with_capacity(comp.len());
        for &i in comp {
            let excl = excluded_cells(&contested[i], &claimed);
            let fit = fit_view(&views[i], config.mode, &excl, None)?;
            claim(&contested[i], &fit, &mut claimed, i);
            out.push((i, fit, excl));
        }
        Ok(out)
    };
    #[cfg(feature = "parallel")]
    let init_results: Vec<Vec<(usize, ModelFit, Vec<Cell>)>> = components
        .par_iter()
        .map(init_component)
        .collect::<Result<_, _>>()?;
    #[cfg(not(feature = "parallel"))]
    let init_results: Vec<Vec<(usize, ModelFit, Vec<Cell>)>> = components
        .iter()
        .map(init_component)
        .collect::<Result<_, _>>()?;

    let mut fits: Vec<Option<ModelFit>> = vec![None; k];
    let mut exclusions: Vec<Vec<Cell>> = vec![Vec::new(); k];
    for (i, fit, excl) in init_results.into_iter().flatten() {
        fits[i] = Some(fit);
        exclusions[i] = excl;
    }
    let mut fits: Vec<ModelFit> = fits.into_iter().map(|f| f.expect("every index fit")).collect();

    // Global tallies (exact integers, so the density never drifts). They are
    // signed because mid-round a fresh refit can overlap cells still tallied
    // to a community processed later in the same round; only at round
    // boundaries, once every community has re-claimed under the rebuilt `M`,
    // is the attribution disjoint again — which is where the global density
    // is read.
    let n = g.n() as u64;
    let total_cells = n * n;
    let total_edge_cells = 2 * g.m() as u64;
    let mut covered: i64 = fits.iter().map(|f| f.counts.area_cells as i64).sum();
    let mut covered_edges: i64 = fits.iter().map(|f| f.counts.in_edge_cells as i64).sum();
    let mut d_out = mle_density(
        total_edge_cells - covered_edges as u64,
        total_cells - covered as u64,
    );

    let total_of = |fits: &[ModelFit], covered: u64, covered_edges: u64| {
        ll_graph(&GraphCounts {
            communities: fits.iter().map(|f| f.counts).collect(),
            covered_cells: covered,
            outside_edge_cells: total_edge_cells - covered_edges,
            total_cells,
        })
    };
    let initial_ll = total_of(&fits, covered as u64, covered_edges as u64);

    // Update rounds.
    let mut order: Vec<usize> = (0..k).collect();
    let sort_order = |order: &mut Vec<usize>, fits: &[ModelFit]| {
        order.sort_by(|&a, &b| {
            fits[b]
                .ll
                .partial_cmp(&fits[a].ll)
                .expect("likelihoods are never NaN")
                .then(a.cmp(&b))
        });
    };
    sort_order(&mut order, &fits);

    let mut flags = vec![true; k];
    let mut rounds = 0;
    for round in 1..=config.max_rounds {
        if !flags.iter().any(|&f| f) {
            break;
        }
        rounds = round;
        let mut next_flags = vec![false; k];
        let mut claimed: HashMap<(u32, u32), usize> = HashMap::new();
        for &i in &order {
            let excl = excluded_cells(&contested[i], &claimed);
            if flags[i] {
                let new_fit = fit_view(&views[i], config.mode, &excl, Some(d_out))?;
                if new_fit.ll - fits[i].ll > config.epsilon {
                    next_flags[i] = true;
                    for &j in &overlap_adj[i] {
                        next_flags[j] = true;
                    }
                }
                covered += new_fit.counts.area_cells as i64 - fits[i].counts.area_cells as i64;
                covered_edges +=
                    new_fit.counts.in_edge_cells as i64 - fits[i].counts.in_edge_cells as i64;
                fits[i] = new_fit;
            } else {
                // Not refit this round, but its exclusions may have changed:
                // keep the shape, retally the counts and likelihood. A gain
                // surfacing here (relaxed exclusions, shifted density) flags
                // the same neighborhood a refit gain would.
                let counts =
                    community_counts(&views[i].induced, &views[i].order, &fits[i].params, &excl);
                let ll = ll_single_at(&counts, d_out);
                if ll - fits[i].ll > config.epsilon {
                    next_flags[i] = true;
                    for &j in &overlap_adj[i] {
                        next_flags[j] = true;
                    }
                }
                covered += counts.area_cells as i64 - fits[i].counts.area_cells as i64;
                covered_edges +=
                    counts.in_edge_cells as i64 - fits[i].counts.in_edge_cells as i64;
                fits[i].counts = counts;
                fits[i].ll = ll;
            }
            exclusions[i] = excl;
            claim(&contested[i], &fits[i], &mut claimed, i);
        }
        debug_assert!(covered >= 0 && covered as u64 <= total_cells);
        debug_assert!(covered_edges >= 0 && covered_edges as u64 <= total_edge_cells);
        d_out = mle_density(
            total_edge_cells - covered_edges as u64,
            total_cells - covered as u64,
        );
        sort_order(&mut order, &fits);
        flags = next_flags;
    }
    let converged = !flags.iter().any(|&f| f);
    let total_ll = total_of(&fits, covered as u64, covered_edges as u64);

    // Assemble in final likelihood order.
    let mut communities = Vec::with_capacity(k);
    let mut final_exclusions = Vec::with_capacity(k);
    for &i in &order {
        communities.push(FittedCommunity {
            community: views[i].clone(),
            fit: fits[i].clone(),
        });
        final_exclusions.push(std::mem::take(&mut exclusions[i]));
    }
    Ok(GraphModel {
        communities,
        input_index: order,
        exclusions: final_exclusions,
        d_out,
        total_ll,
        initial_ll,
        rounds,
        converged,
    })
}

/// The contested cells of one community currently claimed by someone else —
/// its exclusion list, in ascending cell order.
fn excluded_cells(
    contested: &[ContestedCell],
    claimed: &HashMap<(u32, u32), usize>,
) -> Vec<Cell> {
    contested
        .iter()
        .filter(|(_, pair)| claimed.contains_key(pair))
        .map(|&(cell, _)| cell)
        .collect()
}

/// Claims every not-yet-owned contested cell that lies inside the fitted
/// area (already-claimed ones were excluded from the fit, so what remains
/// inside genuinely belongs to this community).
fn claim(
    contested: &[ContestedCell],
    fit: &ModelFit,
    claimed: &mut HashMap<(u32, u32), usize>,
    owner: usize,
) {
    for &((i, j), pair) in contested {
        if fit.params.contains(i, j) {
            claimed.entry(pair).or_insert(owner);
        }
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[x]);
                x += 1;
                y += 1;
            }
        }
    }
    out
}

/// Connected components of the node-overlap graph, each listed in ascending
/// input order, components ordered by smallest member.
fn connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut components = Vec::new();
    for start in 0..adj.len() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}
