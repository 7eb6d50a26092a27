use serde::{Deserialize, Serialize};
use std::fmt::Write;

use super::bootstrap::bootstrap_error;
use super::xeb::{porter_thomas_constants, EULER_GAMMA};
use crate::error::{Error, Result};

/// KS distance below which a sample is reported as Porter-Thomas.
pub const PT_KS_THRESHOLD: f64 = 0.01;
/// Smallest sample for which a verdict is given.
pub const PT_KS_MIN_SAMPLES: usize = 100_000;

const DEFAULT_RESAMPLES: usize = 200;

/// One histogram bin over the scaled probability `N p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
    /// Mean of `exp(-x)` over the bin.
    pub reference_density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PtStats {
    pub num_qubits: usize,
    pub t: usize,
    pub histogram: Vec<HistogramBin>,
    pub ks: f64,
    pub entropy: f64,
    pub entropy_error: f64,
    /// `n log 2 - 1 + gamma`.
    pub reference_entropy: f64,
    pub euler_gamma: f64,
    /// `Some(ks < PT_KS_THRESHOLD)` once `t >= PT_KS_MIN_SAMPLES`.
    pub verdict: Option<bool>,
}

impl PtStats {
    /// `bin_lo,bin_hi,count,reference_density` with a header row.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("bin_lo,bin_hi,count,reference_density\n");
        for b in &self.histogram {
            let _ = writeln!(out, "{:e},{:e},{},{:e}", b.lo, b.hi, b.count, b.reference_density);
        }
        out
    }
}

/// `-(2^n / t) sum p log p`.
pub fn entropy_estimate(probs: &[f64], n: usize) -> f64 {
    let scale = 2f64.powi(n as i32) / probs.len() as f64;
    -scale * probs.iter().filter(|&&p| p > 0.0).map(|&p| p * p.ln()).sum::<f64>()
}

/// Kolmogorov-Smirnov distance of `values` to the unit exponential law.
pub fn ks_exponential(values: &[f64]) -> f64 {
    let mut x = values.to_vec();
    x.sort_by(f64::total_cmp);
    let t = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = 1.0 - (-v.max(0.0)).exp();
            (f - i as f64 / t).max((i + 1) as f64 / t - f)
        })
        .fold(0.0, f64::max)
}

pub fn pt_check(probs: &[f64], n: usize, bins: usize) -> Result<PtStats> {
    pt_check_with(probs, n, bins, DEFAULT_RESAMPLES, 0)
}

pub fn pt_check_with(probs: &[f64], n: usize, bins: usize, resamples: usize, seed: u64) -> Result<PtStats> {
    if probs.is_empty() {
        return Err(Error::Empty);
    }
    if let Some((index, &value)) = probs
        .iter()
        .enumerate()
        .find(|(_, p)| p.is_nan() || **p < 0.0 || !p.is_finite())
    {
        return Err(Error::NonPositiveProbability { index, value });
    }
    let big_n = 2f64.powi(n as i32);
    let scaled: Vec<f64> = probs.iter().map(|p| p * big_n).collect();
    let t = probs.len();
    let entropy = entropy_estimate(probs, n);
    let entropy_error = bootstrap_error(probs, |v| entropy_estimate(v, n), resamples, seed)?;
    let ks = ks_exponential(&scaled);
    Ok(PtStats {
        num_qubits: n,
        t,
        histogram: log_histogram(&scaled, bins.max(1)),
        ks,
        entropy,
        entropy_error,
        reference_entropy: porter_thomas_constants(n).h_pt,
        euler_gamma: EULER_GAMMA,
        verdict: (t >= PT_KS_MIN_SAMPLES).then_some(ks < PT_KS_THRESHOLD),
    })
}

/// Log-spaced bins between the smallest positive and the largest value; the
/// first bin starts at 0 so zeros are counted.
fn log_histogram(x: &[f64], bins: usize) -> Vec<HistogramBin> {
    let positive = x.iter().copied().filter(|&v| v > 0.0);
    let lo = positive.clone().fold(f64::INFINITY, f64::min);
    let hi = positive.fold(0.0, f64::max);
    let (lo, hi) = if !lo.is_finite() {
        (0.5, 1.0)
    } else if hi <= lo {
        (lo / 2.0, lo * 2.0)
    } else {
        (lo, hi)
    };
    let ratio = (hi / lo).powf(1.0 / bins as f64);
    let mut edges: Vec<f64> = (0..=bins).map(|i| lo * ratio.powi(i as i32)).collect();
    edges[0] = 0.0;
    edges[bins] = hi;
    let mut counts = vec![0u64; bins];
    for &v in x {
        let k = edges[1..bins].partition_point(|&e| e <= v);
        counts[k] += 1;
    }
    (0..bins)
        .map(|k| {
            let (a, b) = (edges[k], edges[k + 1]);
            HistogramBin {
                lo: a,
                hi: b,
                count: counts[k],
                reference_density: ((-a).exp() - (-b).exp()) / (b - a),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_distribution_ks() {
        let n = 6;
        let p = vec![2f64.powi(-n); 1 << n];
        let s = pt_check(&p, n as usize, 10).unwrap();
        assert!((s.ks - (1.0 - (-1f64).exp())).abs() < 1e-12);
        assert!((s.entropy - n as f64 * std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(s.histogram.iter().map(|b| b.count).sum::<u64>(), 1 << n);
        assert_eq!(s.verdict, None);
    }

    #[test]
    fn histogram_counts_every_value() {
        let x = [0.0, 0.1, 0.5, 1.0, 3.0, 3.0, 7.5];
        let h = log_histogram(&x, 4);
        assert_eq!(h.iter().map(|b| b.count).sum::<u64>(), x.len() as u64);
        assert_eq!(h[0].lo, 0.0);
        assert_eq!(h[3].hi, 7.5);
        for w in h.windows(2) {
            assert_eq!(w[0].hi, w[1].lo);
        }
    }

    #[test]
    fn ks_of_quantiles_is_small() {
        let t = 1000;
        let x: Vec<f64> = (0..t).map(|i| -(1.0 - (i as f64 + 0.5) / t as f64).ln()).collect();
        assert!(ks_exponential(&x) <= 0.5 / t as f64 + 1e-12);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = pt_check(&[0.1, 0.2, 0.3, 0.4], 2, 3).unwrap();
        let csv = s.histogram_csv();
        assert!(csv.starts_with("bin_lo,bin_hi,count,reference_density\n"));
        assert_eq!(csv.lines().count(), 4);
    }
}
