//! Amplitude and probability API on top of bucket elimination.

mod sampling;
mod statevector;

pub use sampling::{sample_outputs, sample_outputs_with, SampleSet};
pub use statevector::{statevector_oracle, statevector_oracle_with, StateVector, DEFAULT_STATEVECTOR_CAP};

use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::circuit::Circuit;
use crate::elimination::{
    bucket_eliminate, greedy_model_ordering, simulate_elimination, vertical_ordering, EliminationConfig, Heuristic,
    Ordering, WidthReport, DEFAULT_MEMORY_BUDGET,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::{amplitude_model, GraphicalModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Single,
    #[default]
    Double,
}

impl FromStr for Precision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" | "f32" => Ok(Precision::Single),
            "double" | "f64" => Ok(Precision::Double),
            _ => Err(Error::Degenerate(format!("unknown precision {s:?}"))),
        }
    }
}

/// How to order variables before elimination.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum OrderingStrategy {
    Vertical,
    Greedy {
        heuristic: Heuristic,
        restarts: usize,
        seed: u64,
    },
    /// Vertical when `depth * ell` is below the threshold; otherwise the
    /// cheaper of vertical and min-fill by predicted cost.
    #[default]
    Auto,
    /// Labels in elimination order.
    Fixed(Vec<usize>),
}

/// `depth * ell` at which [`OrderingStrategy::Auto`] starts trying min-fill.
pub const AUTO_GREEDY_THRESHOLD: usize = 24;
const AUTO_RESTARTS: usize = 8;

impl OrderingStrategy {
    pub fn min_fill(restarts: usize, seed: u64) -> Self {
        OrderingStrategy::Greedy {
            heuristic: Heuristic::MinFill,
            restarts,
            seed,
        }
    }

    pub fn min_degree(restarts: usize, seed: u64) -> Self {
        OrderingStrategy::Greedy {
            heuristic: Heuristic::MinDegree,
            restarts,
            seed,
        }
    }

    /// Resolve to a concrete ordering with its predicted width.
    pub fn resolve(&self, model: &GraphicalModel, depth: usize) -> Result<(Ordering, WidthReport)> {
        let with_report = |o: Ordering| {
            let r = simulate_elimination(model.graph(), &o);
            (o, r)
        };
        match self {
            OrderingStrategy::Vertical => Ok(with_report(vertical_ordering(model))),
            OrderingStrategy::Greedy {
                heuristic,
                restarts,
                seed,
            } => Ok(greedy_model_ordering(model, *heuristic, *restarts, *seed)),
            OrderingStrategy::Fixed(order) => Ok(with_report(Ordering::new(
                order.clone(),
                crate::elimination::OrderingKind::External,
                model.num_variables(),
            )?)),
            OrderingStrategy::Auto => {
                let vertical = with_report(vertical_ordering(model));
                let ell = model.grid().map_or(1, |g| g.ell());
                if depth * ell < AUTO_GREEDY_THRESHOLD {
                    return Ok(vertical);
                }
                let greedy = greedy_model_ordering(model, Heuristic::MinFill, AUTO_RESTARTS, 0);
                if (greedy.1.max_clique, greedy.1.flops) < (vertical.1.max_clique, vertical.1.flops) {
                    Ok(greedy)
                } else {
                    Ok(vertical)
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct AmplitudeOptions {
    pub strategy: OrderingStrategy,
    pub precision: Precision,
    pub memory_budget: u64,
    pub exec: Execution,
}

impl Default for AmplitudeOptions {
    fn default() -> Self {
        AmplitudeOptions {
            strategy: OrderingStrategy::default(),
            precision: Precision::default(),
            memory_budget: DEFAULT_MEMORY_BUDGET,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeResult {
    pub bitstring: String,
    pub amplitude: Complex64,
    pub probability: f64,
    pub seconds: f64,
    /// Largest broadcast-product rank minus one.
    pub width: usize,
    pub max_rank: usize,
    pub peak_bytes: u64,
}

/// Exact `<x| U |0...0>` by bucket elimination.
pub fn amplitude(circuit: &Circuit, x: &BitString, options: &AmplitudeOptions) -> Result<AmplitudeResult> {
    let start = Instant::now();
    let model = amplitude_model(circuit, x)?;
    let (ordering, _) = options.strategy.resolve(&model, circuit.depth())?;
    evaluate(&model, &ordering, x, options, start)
}

fn evaluate(
    model: &GraphicalModel,
    ordering: &Ordering,
    x: &BitString,
    options: &AmplitudeOptions,
    start: Instant,
) -> Result<AmplitudeResult> {
    let config = EliminationConfig {
        memory_budget: options.memory_budget,
        exec: options.exec,
    };
    let (amp, stats) = match options.precision {
        Precision::Double => {
            let e = bucket_eliminate::<f64>(model, ordering, &config)?;
            (e.scalar().expect("closed model"), e.stats)
        }
        Precision::Single => {
            let e = bucket_eliminate::<f32>(model, ordering, &config)?;
            let s = e.scalar().expect("closed model");
            (Complex64::new(s.re as f64, s.im as f64), e.stats)
        }
    };
    Ok(AmplitudeResult {
        bitstring: x.to_string(),
        amplitude: amp,
        probability: amp.norm_sqr(),
        seconds: start.elapsed().as_secs_f64(),
        width: stats.max_rank.saturating_sub(1),
        max_rank: stats.max_rank,
        peak_bytes: stats.peak_bytes,
    })
}

/// Amplitudes for many outputs, in input order. The ordering is resolved once:
/// every output shares the same interaction graph. Items fail independently.
///
/// `workers == 0` uses the global pool; otherwise a dedicated pool of that
/// size. Results do not depend on the worker count.
pub fn batch_probabilities(
    circuit: &Circuit,
    xs: &[BitString],
    options: &AmplitudeOptions,
    workers: usize,
) -> Vec<Result<AmplitudeResult>> {
    let Some(first) = xs.first() else {
        return Vec::new();
    };
    let ordering = match amplitude_model(circuit, first).and_then(|m| options.strategy.resolve(&m, circuit.depth())) {
        Ok((o, _)) => o,
        Err(e) => return xs.iter().map(|_| Err(e.clone())).collect(),
    };
    // with several items, parallelism is across items rather than inside tensors
    let item_options = AmplitudeOptions {
        exec: if xs.len() > 1 {
            Execution::Sequential
        } else {
            options.exec
        },
        ..options.clone()
    };
    let run = |i: usize| {
        let start = Instant::now();
        amplitude_model(circuit, &xs[i]).and_then(|m| evaluate(&m, &ordering, &xs[i], &item_options, start))
    };
    run_with_workers(options.exec, workers, xs.len(), run)
}

fn run_with_workers<R, F>(exec: Execution, workers: usize, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() && workers != 1 {
        if workers == 0 {
            return crate::exec::map_range(exec, len, f);
        }
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            return pool.install(|| crate::exec::map_range(exec, len, f));
        }
    }
    let _ = (exec, workers);
    (0..len).map(f).collect()
}
