use rand::Rng;

use crate::error::{Error, Result};
use crate::exec::{derive_seed, map_range, rng, splitmix64, Execution};

/// Standard deviation of `statistic` over with-replacement resamples.
///
/// Each resample has its own seed derived from `seed`, so the result does not
/// depend on the execution mode.
pub fn bootstrap_error<F>(values: &[f64], statistic: F, resamples: usize, seed: u64) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    bootstrap_error_with(values, statistic, resamples, seed, Execution::default())
}

pub fn bootstrap_error_with<F>(
    values: &[f64],
    statistic: F,
    resamples: usize,
    seed: u64,
    exec: Execution,
) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    if values.is_empty() {
        return Err(Error::Empty);
    }
    if resamples < 100 {
        return Err(Error::Degenerate(format!(
            "bootstrap needs at least 100 resamples, got {resamples}"
        )));
    }
    let base = derive_seed(seed, "bootstrap");
    let n = values.len();
    let stats = map_range(exec, resamples, |i| {
        let mut r = rng(splitmix64(base.wrapping_add(i as u64)));
        let resample: Vec<f64> = (0..n).map(|_| values[r.random_range(0..n)]).collect();
        statistic(&resample)
    });
    let mean = stats.iter().sum::<f64>() / resamples as f64;
    let var = stats.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (resamples - 1) as f64;
    Ok(var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mean(v: &[f64]) -> f64 {
        v.iter().sum::<f64>() / v.len() as f64
    }

    #[test]
    fn constant_values_have_zero_error() {
        assert_eq!(bootstrap_error(&[3.0; 50], mean, 100, 1).unwrap(), 0.0);
    }

    #[test]
    fn deterministic_and_mode_independent() {
        let v: Vec<f64> = (0..200).map(|i| (i as f64).sin()).collect();
        let a = bootstrap_error_with(&v, mean, 150, 9, Execution::Sequential).unwrap();
        let b = bootstrap_error_with(&v, mean, 150, 9, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(bootstrap_error(&[], mean, 100, 0), Err(Error::Empty));
        assert!(bootstrap_error(&[1.0], mean, 99, 0).is_err());
    }
}
