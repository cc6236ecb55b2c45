//! Graph ingestion, induced subgraphs, and induced-degree node ordering.
//!
//! Graphs are undirected and simple, stored as CSR-style sorted adjacency
//! lists over dense node ids `0..n`. The parser accepts SNAP-style edge
//! lists (`#` comments, two whitespace-separated non-negative integers per
//! data line) and compacts arbitrary original ids to dense ones by ascending
//! original id — which makes "ties broken by ascending original node id"
//! equal to ties by ascending dense id everywhere downstream.

use std::io::BufRead;

use thiserror::Error;

/// Errors from parsing and graph construction.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: malformed edge entry {content:?} (expected two non-negative integers)")]
    Malformed { line: usize, content: String },
    #[error("line {line}: unknown node id {id}")]
    UnknownNode { line: usize, id: u64 },
    #[error("node id {0} out of range")]
    NodeOutOfRange(u32),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// An undirected simple graph over dense node ids `0..n`.
///
/// Adjacency lists are sorted, symmetric, self-loop-free, and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    adj: Vec<u32>,
}

impl Graph {
    /// Builds a graph from unordered node pairs. Self-loops and duplicate
    /// pairs (in either orientation) are dropped silently; use
    /// [`parse_edge_list`] when drop counts matter.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Graph {
        let mut pairs: Vec<(u32, u32)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        Self::from_normalized(n, &pairs)
    }

    /// `pairs` must be deduplicated `(u, v)` with `u < v < n`.
    fn from_normalized(n: usize, pairs: &[(u32, u32)]) -> Graph {
        let mut deg = vec![0usize; n];
        for &(u, v) in pairs {
            assert!((v as usize) < n, "node id {v} out of range");
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        offsets.push(0);
        for d in &deg {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets.clone();
        let mut adj = vec![0u32; acc];
        for &(u, v) in pairs {
            adj[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            adj[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        // Pairs were processed in sorted order, so each list is sorted except
        // possibly the mixed appends of smaller-endpoint entries; sort to be
        // safe and cheap (lists are short on average).
        for v in 0..n {
            adj[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph { offsets, adj }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.adj.len() / 2
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .skip_while(move |&v| v < u)
                .map(move |v| (u, v))
        })
    }
}

/// A parsed edge list: the graph over dense ids plus the mapping back to the
/// original ids and counts of dropped degenerate input lines.
#[derive(Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// `original_ids[dense] = original`; ascending, so dense order preserves
    /// original order.
    pub original_ids: Vec<u64>,
    pub self_loops_dropped: u64,
    pub duplicates_dropped: u64,
}

impl ParsedGraph {
    /// Dense id for an original id, if present.
    pub fn dense_id(&self, original: u64) -> Option<u32> {
        self.original_ids.binary_search(&original).ok().map(|i| i as u32)
    }
}

/// Parses a SNAP-style edge list: lines starting with `#` are comments, data
/// lines hold two whitespace-separated non-negative integers. Node ids are
/// compacted to dense `0..n`; every id on a well-formed data line registers a
/// node (so a node mentioned only in self-loops still exists, isolated).
/// Duplicate edges (in either orientation) and self-loops are dropped and
/// counted.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<ParsedGraph, GraphError> {
    let mut raw: Vec<(u64, u64)> = Vec::new();
    let mut self_loops = 0u64;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let (a, b) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(GraphError::Malformed {
                    line: line_no,
                    content: trimmed.to_string(),
                })
            }
        };
        let parse = |tok: &str| {
            tok.parse::<u64>().map_err(|_| GraphError::Malformed {
                line: line_no,
                content: trimmed.to_string(),
            })
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if u == v {
            self_loops += 1;
        }
        raw.push((u, v));
    }

    let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let dense = |orig: u64| ids.binary_search(&orig).unwrap() as u32;

    let mut pairs: Vec<(u32, u32)> = raw
        .iter()
        .filter(|&&(u, v)| u != v)
        .map(|&(u, v)| {
            let (du, dv) = (dense(u), dense(v));
            (du.min(dv), du.max(dv))
        })
        .collect();
    pairs.sort_unstable();
    let before = pairs.len();
    pairs.dedup();
    let duplicates = (before - pairs.len()) as u64;

    Ok(ParsedGraph {
        graph: Graph::from_normalized(ids.len(), &pairs),
        original_ids: ids,
        self_loops_dropped: self_loops,
        duplicates_dropped: duplicates,
    })
}

/// Parses a community file (one community per line, whitespace-separated
/// original node ids; `#` comments allowed) into dense-id node lists, in file
/// order with per-line order preserved. Unknown ids are errors.
pub fn parse_communities<R: BufRead>(
    reader: R,
    parsed: &ParsedGraph,
) -> Result<Vec<Vec<u32>>, GraphError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut comm = Vec::new();
        for tok in trimmed.split_whitespace() {
            let id = tok.parse::<u64>().map_err(|_| GraphError::Malformed {
                line: line_no,
                content: trimmed.to_string(),
            })?;
            let dense = parsed
                .dense_id(id)
                .ok_or(GraphError::UnknownNode { line: line_no, id })?;
            comm.push(dense);
        }
        out.push(comm);
    }
    Ok(out)
}

/// The subgraph induced by `nodes`: a graph over local ids `0..k` (local id =
/// index into the returned sorted member list) containing exactly the edges
/// with both endpoints in the set. Input order and duplicates are irrelevant.
pub fn induced_subgraph(g: &Graph, nodes: &[u32]) -> Result<(Graph, Vec<u32>), GraphError> {
    let mut members: Vec<u32> = nodes.to_vec();
    for &v in &members {
        if v as usize >= g.n() {
            return Err(GraphError::NodeOutOfRange(v));
        }
    }
    members.sort_unstable();
    members.dedup();
    let local_of = |v: u32| members.binary_search(&v).ok().map(|i| i as u32);

    let mut pairs = Vec::new();
    for (lu, &u) in members.iter().enumerate() {
        for &v in g.neighbors(u) {
            if v > u {
                if let Some(lv) = local_of(v) {
                    pairs.push((lu as u32, lv));
                }
            }
        }
    }
    pairs.sort_unstable();
    Ok((Graph::from_normalized(members.len(), &pairs), members))
}

/// A community's node ordering: a bijection between local node ids and ranks
/// `0..n_c`, ranks sorted by non-increasing induced degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeOrder {
    /// `by_rank[r]` = local node id holding rank `r`.
    pub by_rank: Vec<u32>,
    /// `rank_of[local]` = rank of that local node.
    pub rank_of: Vec<u32>,
}

impl NodeOrder {
    fn from_by_rank(by_rank: Vec<u32>) -> NodeOrder {
        let mut rank_of = vec![0u32; by_rank.len()];
        for (r, &v) in by_rank.iter().enumerate() {
            rank_of[v as usize] = r as u32;
        }
        NodeOrder { by_rank, rank_of }
    }

    pub fn n_c(&self) -> u32 {
        self.by_rank.len() as u32
    }
}

/// Ranks the nodes of an induced subgraph by non-increasing degree, ties
/// broken by ascending node id (local ids index the sorted member list, so
/// this equals ascending original id).
pub fn degree_order(induced: &Graph) -> NodeOrder {
    let mut by_rank: Vec<u32> = (0..induced.n() as u32).collect();
    by_rank.sort_by_key(|&v| (std::cmp::Reverse(induced.degree(v)), v));
    NodeOrder::from_by_rank(by_rank)
}

/// A community ready for fitting: sorted global members, the induced
/// subgraph over local ids, and the rank order.
#[derive(Debug, Clone)]
pub struct Community {
    /// Sorted global node ids; local id `k` is `members[k]`.
    pub members: Vec<u32>,
    pub induced: Graph,
    pub order: NodeOrder,
}

impl Community {
    pub fn n_c(&self) -> u32 {
        self.members.len() as u32
    }

    /// Global node id holding rank `r`.
    pub fn global_of_rank(&self, r: u32) -> u32 {
        self.members[self.order.by_rank[r as usize] as usize]
    }
}

/// Builds a [`Community`] with the degree order.
pub fn community_view(g: &Graph, nodes: &[u32]) -> Result<Community, GraphError> {
    let (induced, members) = induced_subgraph(g, nodes)?;
    let order = degree_order(&induced);
    Ok(Community {
        members,
        induced,
        order,
    })
}

/// Builds a [`Community`] whose rank order is the given node sequence
/// (rank `r` = `nodes_in_rank_order[r]`), bypassing the degree order. Used to
/// fit against a generator's planted order. Nodes must be distinct.
pub fn community_view_with_order(
    g: &Graph,
    nodes_in_rank_order: &[u32],
) -> Result<Community, GraphError> {
    let (induced, members) = induced_subgraph(g, nodes_in_rank_order)?;
    assert_eq!(
        members.len(),
        nodes_in_rank_order.len(),
        "planted order must list distinct nodes"
    );
    let by_rank: Vec<u32> = nodes_in_rank_order
        .iter()
        .map(|&v| members.binary_search(&v).unwrap() as u32)
        .collect();
    Ok(Community {
        members,
        induced,
        order: NodeOrder::from_by_rank(by_rank),
    })
}
