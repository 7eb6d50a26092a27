use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::width::{simulate_elimination, WidthReport};
use crate::error::{Error, Result};
use crate::exec::{derive_seed, rng};
use crate::graph::Graph;
use crate::model::{GraphicalModel, VariableId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingKind {
    Vertical,
    MinFill,
    MinDegree,
    External,
}

impl fmt::Display for OrderingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderingKind::Vertical => "vertical",
            OrderingKind::MinFill => "min_fill",
            OrderingKind::MinDegree => "min_degree",
            OrderingKind::External => "external",
        })
    }
}

/// A permutation of variable labels, eliminated front to back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ordering {
    order: Vec<usize>,
    kind: OrderingKind,
}

impl Ordering {
    pub fn new(order: Vec<usize>, kind: OrderingKind, num_vars: usize) -> Result<Self> {
        if order.len() != num_vars {
            return Err(Error::InvalidOrdering(format!(
                "ordering has {} entries for {num_vars} variables",
                order.len()
            )));
        }
        let mut seen = vec![false; num_vars];
        for &v in &order {
            if v >= num_vars || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidOrdering(format!(
                    "variable {v} missing, repeated or out of range"
                )));
            }
        }
        Ok(Ordering { order, kind })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `positions()[label]` is the label's elimination step.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (p, &v) in self.order.iter().enumerate() {
            pos[v] = p;
        }
        pos
    }

    /// One `j:k` id per line.
    pub fn to_text(&self, model: &GraphicalModel) -> String {
        self.order.iter().map(|&l| format!("{}\n", model.variable(l))).collect()
    }

    /// Parse an exported ordering against `model`.
    pub fn from_text(text: &str, model: &GraphicalModel) -> Result<Self> {
        let mut order = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let id = VariableId::from_str(line)?;
            let label = model
                .label_of(id)
                .ok_or_else(|| Error::InvalidOrdering(format!("unknown variable {id}")))?;
            order.push(label);
        }
        Ordering::new(order, OrderingKind::External, model.num_variables())
    }
}

fn move_open_last(mut order: Vec<usize>, open: &[usize]) -> Vec<usize> {
    order.retain(|v| open.binary_search(v).is_err());
    order.extend_from_slice(open);
    order
}

/// Lexicographic `(j, k)` order, with qubits ranked along the shorter grid
/// dimension first. Open variables go last.
pub fn vertical_ordering(model: &GraphicalModel) -> Ordering {
    let grid = model.grid();
    let mut order: Vec<usize> = (0..model.num_variables()).collect();
    order.sort_by_key(|&l| {
        let v = model.variable(l);
        let q = grid.map_or(v.qubit, |g| g.vertical_rank(v.qubit));
        (q, v.step)
    });
    let order = move_open_last(order, model.open());
    Ordering {
        order,
        kind: OrderingKind::Vertical,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Heuristic {
    MinFill,
    MinDegree,
}

impl Heuristic {
    fn kind(self) -> OrderingKind {
        match self {
            Heuristic::MinFill => OrderingKind::MinFill,
            Heuristic::MinDegree => OrderingKind::MinDegree,
        }
    }

    fn score(self, g: &Graph, v: usize) -> usize {
        match self {
            Heuristic::MinFill => g.fill_in(v),
            Heuristic::MinDegree => g.degree(v),
        }
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min_fill" | "minfill" => Ok(Heuristic::MinFill),
            "min_degree" | "mindegree" => Ok(Heuristic::MinDegree),
            _ => Err(Error::InvalidOrdering(format!("unknown heuristic {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct GreedyConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Stop starting new restarts once this much time has passed.
    pub time_budget: Option<Duration>,
    /// Vertices forced to the end of the ordering, in the given order.
    pub last: Vec<usize>,
}

/// Best of `restarts` greedy runs (at least one).
pub fn greedy_ordering(graph: &Graph, heuristic: Heuristic, restarts: usize, seed: u64) -> (Ordering, WidthReport) {
    greedy_ordering_with(
        graph,
        heuristic,
        &GreedyConfig {
            restarts,
            seed,
            ..GreedyConfig::default()
        },
    )
}

/// Greedy ordering of a model's graph with open variables placed last.
pub fn greedy_model_ordering(
    model: &GraphicalModel,
    heuristic: Heuristic,
    restarts: usize,
    seed: u64,
) -> (Ordering, WidthReport) {
    greedy_ordering_with(
        model.graph(),
        heuristic,
        &GreedyConfig {
            restarts,
            seed,
            last: model.open().to_vec(),
            ..GreedyConfig::default()
        },
    )
}

pub fn greedy_ordering_with(graph: &Graph, heuristic: Heuristic, config: &GreedyConfig) -> (Ordering, WidthReport) {
    let start = Instant::now();
    let mut best: Option<(Ordering, WidthReport)> = None;
    for r in 0..config.restarts.max(1) {
        if r > 0 && config.time_budget.is_some_and(|b| start.elapsed() >= b) {
            break;
        }
        let seed = derive_seed(config.seed, &format!("greedy/{r}"));
        let order = greedy_once(graph, heuristic, seed, &config.last);
        let ordering = Ordering {
            order,
            kind: heuristic.kind(),
        };
        let report = simulate_elimination(graph, &ordering);
        let better = best
            .as_ref()
            .is_none_or(|(_, b)| (report.max_clique, report.flops) < (b.max_clique, b.flops));
        if better {
            best = Some((ordering, report));
        }
    }
    best.expect("at least one restart")
}

fn greedy_once(graph: &Graph, heuristic: Heuristic, seed: u64, last: &[usize]) -> Vec<usize> {
    let n = graph.num_vertices();
    let mut g = graph.clone();
    let mut rng = rng(seed);
    let mut forced = vec![false; n];
    for &v in last {
        forced[v] = true;
    }
    let mut alive: Vec<bool> = (0..n).map(|v| !forced[v]).collect();
    let mut score: Vec<usize> = (0..n).map(|v| heuristic.score(&g, v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut ties = Vec::new();
    for _ in 0..n - last.len() {
        let mut min = usize::MAX;
        ties.clear();
        for v in (0..n).filter(|&v| alive[v]) {
            match score[v].cmp(&min) {
                std::cmp::Ordering::Less => {
                    min = score[v];
                    ties.clear();
                    ties.push(v);
                }
                std::cmp::Ordering::Equal => ties.push(v),
                std::cmp::Ordering::Greater => {}
            }
        }
        let v = ties[rng.random_range(0..ties.len())];
        alive[v] = false;
        order.push(v);
        let ns = g.eliminate(v);
        // fill-in can change for neighbours and their neighbours
        let mut touched: Vec<usize> = ns.clone();
        if heuristic == Heuristic::MinFill {
            for &u in &ns {
                touched.extend(g.neighbors(u).iter().copied());
            }
            touched.sort_unstable();
            touched.dedup();
        }
        for u in touched {
            score[u] = heuristic.score(&g, u);
        }
    }
    order.extend_from_slice(last);
    order
}
