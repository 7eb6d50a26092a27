use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use super::{batch_probabilities, AmplitudeOptions};
use crate::bitstring::BitString;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::exec::{derive_seed, rng};

/// Set `T` of distinct uniformly drawn outputs with their exact
/// probabilities, and a sample `S` drawn from `T` under the normalised
/// probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub num_qubits: usize,
    pub set: Vec<BitString>,
    /// `p_U(x)` for each member of `set`.
    pub probabilities: Vec<f64>,
    /// Sum of `probabilities`.
    pub total: f64,
    /// Indices into `set`.
    pub samples: Vec<usize>,
}

impl SampleSet {
    /// Draw `T` and `S` with probabilities supplied by `probs`.
    pub fn draw<F>(n: usize, t: usize, m: usize, seed: u64, probs: F) -> Result<Self>
    where
        F: FnOnce(&[BitString]) -> Result<Vec<f64>>,
    {
        if m == 0 || t < m {
            return Err(Error::Degenerate(format!("need t >= m >= 1, got t={t}, m={m}")));
        }
        let set = uniform_distinct(n, t, derive_seed(seed, "sample/set"))?;
        let probabilities = probs(&set)?;
        let total: f64 = probabilities.iter().sum();
        if total <= 0.0 {
            return Err(Error::Degenerate("all probabilities in T are zero".into()));
        }
        let dist = WeightedIndex::new(&probabilities).map_err(|e| Error::Degenerate(e.to_string()))?;
        let mut r = rng(derive_seed(seed, "sample/draw"));
        let samples = (0..m).map(|_| dist.sample(&mut r)).collect();
        Ok(SampleSet {
            num_qubits: n,
            set,
            probabilities,
            total,
            samples,
        })
    }

    /// `p~(x_j) = p_U(x_j) / sum_T p_U`.
    pub fn normalized(&self) -> Vec<f64> {
        self.probabilities.iter().map(|p| p / self.total).collect()
    }

    pub fn sample_probabilities(&self) -> Vec<f64> {
        self.samples.iter().map(|&i| self.probabilities[i]).collect()
    }

    pub fn sample_bitstrings(&self) -> Vec<&BitString> {
        self.samples.iter().map(|&i| &self.set[i]).collect()
    }

    /// `-sum_T p~ log p_U`, the entropy estimate taken directly from `T`.
    pub fn entropy_estimate(&self) -> f64 {
        self.probabilities
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -(p / self.total) * p.ln())
            .sum()
    }
}

/// `t` distinct uniform bit-strings of length `n`.
pub(crate) fn uniform_distinct(n: usize, t: usize, seed: u64) -> Result<Vec<BitString>> {
    let mut r = rng(seed);
    if n < usize::BITS as usize - 1 {
        let space = 1usize << n;
        if t > space {
            return Err(Error::Degenerate(format!("t={t} exceeds 2^{n} outputs")));
        }
        if n <= 63 {
            return Ok(index::sample(&mut r, space, t)
                .into_iter()
                .map(|i| BitString::from_index(i as u64, n))
                .collect());
        }
    }
    let mut seen = HashSet::with_capacity(t);
    let mut out = Vec::with_capacity(t);
    while out.len() < t {
        let b = BitString::from_bits((0..n).map(|_| r.random::<bool>()).collect());
        if seen.insert(b.clone()) {
            out.push(b);
        }
    }
    Ok(out)
}

/// Sample with probabilities computed by bucket elimination.
pub fn sample_outputs(circuit: &Circuit, t: usize, m: usize, seed: u64) -> Result<SampleSet> {
    sample_outputs_with(circuit, t, m, seed, &AmplitudeOptions::default(), 0)
}

pub fn sample_outputs_with(
    circuit: &Circuit,
    t: usize,
    m: usize,
    seed: u64,
    options: &AmplitudeOptions,
    workers: usize,
) -> Result<SampleSet> {
    SampleSet::draw(circuit.num_qubits(), t, m, seed, |xs| {
        batch_probabilities(circuit, xs, options, workers)
            .into_iter()
            .map(|r| r.map(|a| a.probability))
            .collect()
    })
}
