//! Multi-packing and multi-cover problems on hypergraphs, encoded as
//! integer programs and solved with the counting-based solver.
//!
//! Vertex-based problems put one variable on each vertex and bound every
//! hyperedge: `c_E <= sum_{v in E} x_v <= p_E`. Edge-based problems put
//! one variable on each hyperedge and bound every vertex:
//! `c_v <= sum_{E ∋ v} x_E <= p_v`. All variables are nonnegative
//! integers, optionally capped by multiplicities.

mod encode;
mod graph;

pub use encode::{
    dominating_multiset, encode_dominating, encode_edge_based, encode_edge_based_standard, encode_vertex_based,
    glue_duplicate_edges, solve_encoded, solve_encoded_standard, EdgeMode, Encoded,
    EncodedStandard, Neighborhood, Sense, VertexMode,
};
pub use graph::{Bounds, Hypergraph, HypergraphInstance};
