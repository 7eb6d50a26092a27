use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::simulator::{sample_outputs, SampleSet};

/// Monte Carlo estimate of a diagonal observable `sum_x p(x) O(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    /// Ratio estimate `sum_T p O / sum_T p`.
    pub value: f64,
    /// Delta-method standard error of `value`, with a finite-population
    /// correction so an exhaustive `T` gives zero.
    pub error: f64,
    /// Mean of `O` over the drawn sample `S`.
    pub sampled_value: f64,
    pub sampled_error: f64,
    pub t: usize,
    pub m: usize,
}

pub fn expectation_mc<F>(circuit: &Circuit, observable: F, t: usize, m: usize, seed: u64) -> Result<McEstimate>
where
    F: Fn(&BitString) -> f64,
{
    let set = sample_outputs(circuit, t, m, seed)?;
    expectation_from_set(&set, observable)
}

pub fn expectation_from_set<F>(set: &SampleSet, observable: F) -> Result<McEstimate>
where
    F: Fn(&BitString) -> f64,
{
    let t = set.set.len();
    let m = set.samples.len();
    if t == 0 || m == 0 {
        return Err(Error::Empty);
    }
    let o: Vec<f64> = set.set.iter().map(&observable).collect();
    if o.iter().any(|v| !v.is_finite()) {
        return Err(Error::Degenerate("observable is not finite".into()));
    }
    let p = &set.probabilities;
    let mean_p = set.total / t as f64;
    let value = p.iter().zip(&o).map(|(p, o)| p * o).sum::<f64>() / set.total;

    let error = if t > 1 {
        let resid: f64 = p.iter().zip(&o).map(|(p, o)| (p * (o - value)).powi(2)).sum();
        let var = resid / (t - 1) as f64 / (mean_p * mean_p) / t as f64;
        let space = 2f64.powi(set.num_qubits as i32);
        (var * (1.0 - t as f64 / space).max(0.0)).sqrt()
    } else {
        0.0
    };

    let s: Vec<f64> = set.samples.iter().map(|&i| o[i]).collect();
    let sampled_value = s.iter().sum::<f64>() / m as f64;
    let sampled_error = if m > 1 {
        (s.iter().map(|v| (v - sampled_value).powi(2)).sum::<f64>() / (m - 1) as f64 / m as f64).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        value,
        error,
        sampled_value,
        sampled_error,
        t,
        m,
    })
}
