//! Hyperbolic community models for undirected graphs.
//!
//! A community of `n_c` nodes, ranked `0..n_c` by non-increasing induced
//! degree, is modeled by a region of the rank grid bounded by a hyperbola:
//! cell `(i, j)` lies inside when `(i + p)(j + q) ≤ θ` with `q = p`. Edges
//! inside the region appear with density `d_in`, edges outside with a global
//! density `d_out`, and the model is scored by Bernoulli log-likelihood over
//! all ordered cells of the grid. Fitting searches the integer-anchored
//! family plus two restricted families (block and hycom) exactly, using
//! integer arithmetic for every membership test so boundary ties never
//! depend on rounding.
//!
//! Modules:
//! - [`model`]: parameterizations, feasibility, exact membership, areas.
//! - [`graph`]: edge-list parsing, induced subgraphs, degree ranking.
//! - [`likelihood`]: Bernoulli log-likelihood over rank-grid cells.
//! - [`fit`]: exact single-community search over the candidate families.
//! - [`graph_fit`]: alternating optimization across overlapping communities.
//! - [`stats`]: likelihood-ratio tests and chi-square tail probabilities.
//! - [`synth`]: seeded synthetic graph generation from planted models.

pub mod fit;
pub mod graph;
pub mod graph_fit;
pub mod likelihood;
pub mod model;
pub mod stats;
pub mod synth;

pub use fit::{fit_community, fit_view, FitError, FitMode, FittedCommunity, ModelFit};
pub use graph_fit::{fit_graph, FitConfig, GraphModel};
pub use graph::{
    community_view, community_view_with_order, degree_order, induced_subgraph, parse_communities,
    parse_edge_list, Community, Graph, GraphError, NodeOrder, ParsedGraph,
};
pub use likelihood::{
    bernoulli_ll, community_counts, ll_graph, ll_single, ll_single_at, mle_density, Cell,
    CommunityCounts, GraphCounts,
};
pub use model::{
    area_closed_form, area_integral, feasible_gamma_range, fixed_to_hyperbolic,
    hyperbolic_to_mixture, is_feasible, mixture_to_hyperbolic, FixedParams, HyperbolicParams,
    MixtureParams, ModelError, ModelParams, MAX_EXACT_NC,
};
pub use stats::{
    block_df, chi_square_sf, hycom_df, lrt, summarize, summarize_values, LrtResult, Quartiles,
    ShapeSummary, StatsError,
};
pub use synth::{sample_graph, PlantedCommunity, SampleSpec, SynthError};
