use serde::{Deserialize, Serialize};

use super::ordering::{Ordering, OrderingKind};
use crate::graph::Graph;

/// Cliques created by vertex elimination under an ordering.
///
/// `max_clique` is the size of the largest clique (the eliminated vertex plus
/// its neighbours at that moment), which equals the rank of the largest
/// broadcast product formed by bucket elimination. `width = max_clique - 1`
/// is the usual induced width / treewidth upper bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WidthReport {
    pub ordering: OrderingKind,
    pub width: usize,
    pub max_clique: usize,
    /// Clique size at each elimination step.
    pub clique_sizes: Vec<usize>,
    /// Largest summed-out tensor in bytes, assuming complex doubles.
    pub peak_tensor_bytes: f64,
    /// Multiply-add estimate: sum over steps of `2^clique`.
    pub flops: f64,
}

pub fn simulate_elimination(graph: &Graph, ordering: &Ordering) -> WidthReport {
    let mut g = graph.clone();
    let mut clique_sizes = Vec::with_capacity(ordering.len());
    for &v in ordering.as_slice() {
        clique_sizes.push(g.eliminate(v).len() + 1);
    }
    let max_clique = clique_sizes.iter().copied().max().unwrap_or(0);
    let flops = clique_sizes.iter().map(|&c| 2f64.powi(c as i32)).sum();
    WidthReport {
        ordering: ordering.kind(),
        width: max_clique.saturating_sub(1),
        max_clique,
        clique_sizes,
        peak_tensor_bytes: 16.0 * 2f64.powi(max_clique.saturating_sub(1) as i32),
        flops,
    }
}
