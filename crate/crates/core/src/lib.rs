//! Minimum dynamic monopolies in interval graphs with bounded thresholds.

pub mod dp;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod interval;
pub mod oracle;
pub mod reduction;

pub use dp::{solve, DynValue, HelpCap, LocalCascade, Solution};
pub use error::{Error, Result};
pub use graph::{
    activation_order, find_cascade, hull, induced_subgraph, is_dynamic_monopoly, verify_cascade,
    Cascade, Graph, ThresholdedInstance, VertexId, VertexSet,
};
pub use interval::{
    compute_cut_structure, compute_decomposition, normalize, realize_graph, CutStructure,
    Decomposition, EndKind, Interval, IntervalRepresentation, Layer, NormalizedRepresentation,
};
