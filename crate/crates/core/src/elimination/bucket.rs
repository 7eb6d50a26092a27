use num_complex::Complex;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::ordering::Ordering;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::GraphicalModel;
use crate::tensor::{Factor, Real};

/// 8 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 8 << 30;

#[derive(Debug, Clone, Copy)]
pub struct EliminationConfig {
    /// Cap on bytes held in live tensors.
    pub memory_budget: u64,
    pub exec: Execution,
}

impl Default for EliminationConfig {
    fn default() -> Self {
        EliminationConfig {
            memory_budget: DEFAULT_MEMORY_BUDGET,
            exec: Execution::default(),
        }
    }
}

/// Factors whose lowest variable (by elimination position) is `var`.
#[derive(Debug, Clone)]
pub struct Bucket<T> {
    pub var: usize,
    pub factors: Vec<Factor<T>>,
}

impl<T: Real> Bucket<T> {
    /// Broadcast product of the bucket's factors, summed over `var`.
    pub fn process(&self, exec: Execution) -> Factor<T> {
        debug_assert!(self.factors.iter().all(|f| f.vars().first() == Some(&self.var)));
        let refs: Vec<&Factor<T>> = self.factors.iter().collect();
        Factor::product_sum_first(&refs, exec)
    }

    /// Variables of the broadcast product before summation.
    pub fn product_rank(&self) -> usize {
        let mut vars: Vec<usize> = self.factors.iter().flat_map(|f| f.vars().iter().copied()).collect();
        vars.sort_unstable();
        vars.dedup();
        vars.len()
    }
}

/// Free-function form of [`Bucket::process`].
pub fn process_bucket<T: Real>(bucket: &Bucket<T>, exec: Execution) -> Factor<T> {
    bucket.process(exec)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EliminationStats {
    /// Largest broadcast-product rank over processed buckets.
    pub max_rank: usize,
    /// Product rank per processed bucket, in elimination order.
    pub step_ranks: Vec<usize>,
    /// Rank of the joint tensor over open variables (0 if none).
    pub open_rank: usize,
    pub multiply_adds: u64,
    pub peak_bytes: u64,
}

#[derive(Debug, Clone)]
pub struct Elimination<T> {
    /// Scalar, or joint tensor over the model's open labels.
    pub result: Factor<T>,
    pub stats: EliminationStats,
}

impl<T: Real> Elimination<T> {
    pub fn scalar(&self) -> Option<Complex<T>> {
        self.result.as_scalar()
    }
}

fn lift<T: Real>(c: num_complex::Complex64) -> Complex<T> {
    Complex::new(T::from_f64(c.re).unwrap(), T::from_f64(c.im).unwrap())
}

/// Sum out every non-open variable of `model` in `ordering` order.
///
/// Open variables must occupy the tail of the ordering; they are kept as
/// indices of the returned tensor. Scalars from disconnected components are
/// multiplied together.
pub fn bucket_eliminate<T: Real>(
    model: &GraphicalModel,
    ordering: &Ordering,
    config: &EliminationConfig,
) -> Result<Elimination<T>> {
    let n = model.num_variables();
    if ordering.len() != n {
        return Err(Error::InvalidOrdering(format!(
            "ordering covers {} of {n} variables",
            ordering.len()
        )));
    }
    let open = model.open();
    let closed = n - open.len();
    if ordering.as_slice()[closed..]
        .iter()
        .any(|v| open.binary_search(v).is_err())
    {
        return Err(Error::InvalidOrdering("open variables must be ordered last".into()));
    }

    let pos = ordering.positions();
    let elem = std::mem::size_of::<Complex<T>>() as u64;
    let mut buckets: Vec<Vec<Factor<T>>> = vec![Vec::new(); n];
    let mut live: u64 = 0;
    for f in model.factors() {
        let g: Factor<T> = f.cast::<T>().relabel(|v| pos[v]);
        live += g.size_bytes();
        buckets[g.vars()[0]].push(g);
    }
    let mut stats = EliminationStats {
        peak_bytes: live,
        ..Default::default()
    };
    let two = Complex::new(T::from_f64(2.0).unwrap(), T::zero());
    let mut scalar: Complex<T> = lift(model.scalar());

    for p in 0..closed {
        let factors = std::mem::take(&mut buckets[p]);
        if factors.is_empty() {
            // variable without factors sums to 2
            scalar = scalar * two;
            continue;
        }
        let bucket = Bucket { var: p, factors };
        let rank = bucket.product_rank();
        let out_bytes = elem << (rank - 1);
        let required = live + out_bytes;
        if required > config.memory_budget {
            return Err(Error::BudgetExceeded {
                step: p,
                rank,
                required,
                budget: config.memory_budget,
            });
        }
        let tensor = bucket.process(config.exec);
        stats.peak_bytes = stats.peak_bytes.max(required);
        stats.max_rank = stats.max_rank.max(rank);
        stats.step_ranks.push(rank);
        stats.multiply_adds += (bucket.factors.len() as u64) << rank;
        live = live + out_bytes - bucket.factors.iter().map(Factor::size_bytes).sum::<u64>();
        match tensor.as_scalar() {
            Some(s) => {
                live -= tensor.size_bytes();
                scalar = scalar * s;
            }
            None => buckets[tensor.vars()[0]].push(tensor),
        }
    }

    let result = if open.is_empty() {
        Factor::scalar(scalar)
    } else {
        let mut rest: Vec<Factor<T>> = buckets.into_iter().flatten().collect();
        // broadcast over every open position, even ones no factor touches
        let ones = vec![Complex::<T>::one(); 1 << open.len()];
        let full: Vec<usize> = (closed..n).collect();
        rest.push(Factor::new(full, ones));
        let required = live + (elem << open.len());
        if required > config.memory_budget {
            return Err(Error::BudgetExceeded {
                step: closed,
                rank: open.len(),
                required,
                budget: config.memory_budget,
            });
        }
        stats.peak_bytes = stats.peak_bytes.max(required);
        stats.open_rank = open.len();
        let refs: Vec<&Factor<T>> = rest.iter().collect();
        let joint = Factor::product(&refs);
        let order = ordering.as_slice();
        let joint = joint.relabel(|p| order[p]);
        let values = joint.values().iter().map(|v| *v * scalar).collect();
        Factor::new(joint.vars().to_vec(), values)
    };
    Ok(Elimination { result, stats })
}
