//! Exact Steiner Wiener indices and Steiner betweenness centrality.
//!
//! Everything here is exact: counts are arbitrary-precision integers and
//! centralities are reduced rationals. The library covers
//!
//! - graphs, the edge-list format and seeded family generators ([`graph`]);
//! - geodesic distances, the Wiener index and geodesic betweenness ([`distance`]);
//! - the Steiner diversity `δ(S)` and the Steiner k-Wiener / total indices ([`steiner`]);
//! - minimum Steiner tree counting and k-Steiner / total Steiner betweenness ([`counting`]);
//! - the `N_k` forest functional and tree decompositions ([`tree`]);
//! - modular / median recognition and their closed forms ([`modular`]).

pub mod arith;
pub mod catalog;
pub mod counting;
pub mod distance;
pub mod error;
pub mod graph;
pub mod limits;
pub mod modular;
pub mod rng;
pub mod steiner;
pub mod subsets;
pub mod tree;

pub use arith::{binomial, BigCount, ExactRatio};
pub use counting::{
    average_k_steiner_betweenness, average_total_steiner_betweenness, count_steiner_trees,
    enumerate_min_steiner_trees, k_steiner_betweenness, spanning_tree_count, total_steiner_betweenness,
    CentralityReport, SteinerCounter, SteinerTreeCount,
};
pub use distance::{all_pairs_distances, geodesic_betweenness, wiener_index, DistanceMatrix};
pub use error::{GraphError, Result, SteinerError};
pub use graph::{generate_family, parse_edge_list, Family, Graph};
pub use limits::Limits;
pub use modular::{average_b3_modular, classify_modularity, hypercube_b3, sw3_via_wiener, ModularityWitness};
pub use steiner::{
    steiner_distance, steiner_distance_bruteforce, steiner_wiener_k, total_steiner_wiener, IndexOrder,
    SteinerIndexSummary,
};
pub use subsets::TerminalSet;
pub use tree::{n_k, sw_k_edge_decomposition, sw_k_vertex_decomposition, ForestPartition};
