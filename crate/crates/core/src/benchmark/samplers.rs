use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exec::rng;

/// Synthetic experiment over a full output distribution: each draw comes
/// from `p` with probability `alpha`, otherwise uniformly.
#[derive(Debug, Clone)]
pub struct MixtureSampler {
    size: usize,
    alpha: f64,
    dist: Option<WeightedIndex<f64>>,
}

impl MixtureSampler {
    pub fn new(probs: &[f64], alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Degenerate(format!("mixing weight {alpha} outside [0, 1]")));
        }
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        let dist = if alpha > 0.0 {
            Some(WeightedIndex::new(probs).map_err(|e| Error::Degenerate(e.to_string()))?)
        } else {
            None
        };
        Ok(MixtureSampler {
            size: probs.len(),
            alpha,
            dist,
        })
    }

    pub fn exact(probs: &[f64]) -> Result<Self> {
        Self::new(probs, 1.0)
    }

    pub fn uniform(size: usize) -> Self {
        MixtureSampler {
            size,
            alpha: 0.0,
            dist: None,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `m` output indices.
    pub fn sample(&self, m: usize, seed: u64) -> Vec<usize> {
        let mut r = rng(seed);
        (0..m)
            .map(|_| match &self.dist {
                Some(d) if self.alpha >= 1.0 || r.random::<f64>() < self.alpha => d.sample(&mut r),
                _ => r.random_range(0..self.size),
            })
            .collect()
    }
}
