//! Bucket elimination, elimination orderings and width analysis.

mod bucket;
mod line_graph;
mod ordering;
mod width;

pub use bucket::{
    bucket_eliminate, process_bucket, Bucket, Elimination, EliminationConfig, EliminationStats, DEFAULT_MEMORY_BUDGET,
};
pub use line_graph::{build_line_graph, LineGraph, TensorNode, Wire};
pub use ordering::{
    greedy_model_ordering, greedy_ordering, greedy_ordering_with, vertical_ordering, GreedyConfig, Heuristic, Ordering,
    OrderingKind,
};
pub use width::{simulate_elimination, WidthReport};
