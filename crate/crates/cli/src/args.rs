use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use circgraph::elimination::DEFAULT_MEMORY_BUDGET;
use circgraph::{Execution, OrderingStrategy, Precision};

use crate::UsageError;

/// Either a circuit file or generator parameters.
#[derive(Debug, Clone, Args, Serialize)]
pub struct CircuitSource {
    /// Circuit file in the text format.
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl CircuitSource {
    pub fn is_given(&self) -> bool {
        self.circuit.is_some() || self.rows.is_some() || self.cols.is_some() || self.depth.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingArg {
    Vertical,
    #[value(alias = "min-fill", alias = "min_fill")]
    Minfill,
    #[value(alias = "min-degree", alias = "min_degree")]
    Mindegree,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrecisionArg {
    Single,
    Double,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

/// Elimination settings shared by the commands that compute amplitudes.
#[derive(Debug, Clone, Args, Serialize)]
pub struct SimOptions {
    #[arg(long, value_enum, default_value_t = OrderingArg::Auto)]
    pub ordering: OrderingArg,
    /// Exported ordering, one `j:k` per line; overrides --ordering.
    #[arg(long)]
    pub ordering_file: Option<PathBuf>,
    /// Greedy restarts for min-fill and min-degree.
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub ordering_seed: u64,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
    pub precision: PrecisionArg,
    /// Bytes of live tensors allowed; accepts K, M, G suffixes (binary).
    #[arg(long, env = "CIRCGRAPH_MEMORY_BUDGET", value_parser = parse_bytes, default_value_t = DEFAULT_MEMORY_BUDGET)]
    pub memory_budget: u64,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Run every kernel on the calling thread.
    #[arg(long)]
    pub sequential: bool,
}

impl SimOptions {
    pub fn strategy(&self) -> OrderingStrategy {
        match self.ordering {
            OrderingArg::Vertical => OrderingStrategy::Vertical,
            OrderingArg::Minfill => OrderingStrategy::min_fill(self.restarts, self.ordering_seed),
            OrderingArg::Mindegree => OrderingStrategy::min_degree(self.restarts, self.ordering_seed),
            OrderingArg::Auto => OrderingStrategy::Auto,
        }
    }

    pub fn precision(&self) -> Precision {
        match self.precision {
            PrecisionArg::Single => Precision::Single,
            PrecisionArg::Double => Precision::Double,
        }
    }

    pub fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

/// Plain integer or one with a K, M or G suffix (powers of 1024).
pub fn parse_bytes(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let lower = s.to_ascii_lowercase();
    let trimmed = lower.trim_end_matches("ib").trim_end_matches('b');
    let (digits, shift) = match trimmed.chars().last() {
        Some('k') => (&trimmed[..trimmed.len() - 1], 10),
        Some('m') => (&trimmed[..trimmed.len() - 1], 20),
        Some('g') => (&trimmed[..trimmed.len() - 1], 30),
        _ => (trimmed, 0),
    };
    let n: u64 = digits.trim().parse().map_err(|_| format!("invalid byte count {s:?}"))?;
    n.checked_mul(1 << shift)
        .ok_or_else(|| format!("byte count {s:?} overflows"))
}

/// `A-B` (inclusive) or a comma-separated list.
pub fn parse_depths(s: &str) -> Result<Vec<usize>, UsageError> {
    let bad = || UsageError(format!("invalid depth list {s:?}"));
    let depths: Vec<usize> = if let Some((a, b)) = s.split_once('-') {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        (a..=b).collect()
    } else {
        s.split(',')
            .map(|d| d.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if depths.is_empty() || depths.contains(&0) {
        return Err(UsageError("depths must be at least 1".into()));
    }
    Ok(depths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_suffixes() {
        assert_eq!(parse_bytes("1024").unwrap(), 1024);
        assert_eq!(parse_bytes("2K").unwrap(), 2048);
        assert_eq!(parse_bytes("8GiB").unwrap(), 8 << 30);
        assert_eq!(parse_bytes("3mb").unwrap(), 3 << 20);
        assert!(parse_bytes("lots").is_err());
    }

    #[test]
    fn depth_lists() {
        assert_eq!(parse_depths("3-5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_depths("2,7").unwrap(), vec![2, 7]);
        assert!(parse_depths("0-2").is_err());
        assert!(parse_depths("x").is_err());
    }
}
