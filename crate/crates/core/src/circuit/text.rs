//! Plain-text circuit files.
//!
//! ```text
//! 4
//! # grid 2 2
//! 0 h 0
//! 1 cz 0 1
//! ```
//!
//! The first data line is the qubit count. A `# grid R C` comment fixes the
//! lattice shape; without it the qubits form a `1 x n` chain unless the caller
//! supplies a grid. A `# depth D` comment keeps trailing empty cycles.

use std::fmt::Write;

use super::{Circuit, Gate, GateKind, Grid};
use crate::error::{Error, Result};

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    parse_circuit_with_grid(text, None)
}

/// Parse with an explicit grid, which takes precedence over a `# grid`
/// directive in the file.
pub fn parse_circuit_with_grid(text: &str, grid: Option<Grid>) -> Result<Circuit> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut n: Option<usize> = None;
    let mut file_grid: Option<(Grid, usize)> = None;
    let mut file_depth: Option<(usize, usize)> = None;
    let mut gates: Vec<(usize, Gate)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            let head = words.next();
            if head == Some("depth") {
                let d = words
                    .next()
                    .and_then(|w| w.parse::<usize>().ok())
                    .ok_or_else(|| err(lineno, "malformed depth directive".into()))?;
                file_depth = Some((d, lineno));
            } else if head == Some("grid") {
                let dims: Vec<usize> = words
                    .map(|w| w.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| err(lineno, "malformed grid directive".into()))?;
                let [rows, cols] = dims[..] else {
                    return Err(err(lineno, "grid directive needs rows and cols".into()));
                };
                let g = Grid::new(rows, cols).map_err(|e| err(lineno, e.to_string()))?;
                file_grid = Some((g, lineno));
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if n.is_none() {
            let [count] = fields[..] else {
                return Err(err(lineno, "expected qubit count".into()));
            };
            n = Some(
                count
                    .parse()
                    .map_err(|_| err(lineno, format!("invalid qubit count {count:?}")))?,
            );
            continue;
        }
        let parse_usize = |s: &str, what: &str| {
            s.parse::<usize>()
                .map_err(|_| err(lineno, format!("invalid {what} {s:?}")))
        };
        if fields.len() < 3 {
            return Err(err(lineno, format!("malformed gate line {line:?}")));
        }
        let cycle = parse_usize(fields[0], "cycle")?;
        let kind: GateKind = fields[1].parse().map_err(|e: Error| err(lineno, e.to_string()))?;
        if fields.len() != 2 + kind.arity() {
            return Err(err(
                lineno,
                format!(
                    "gate {kind} takes {} qubit(s), found {}",
                    kind.arity(),
                    fields.len() - 2
                ),
            ));
        }
        let qs = fields[2..]
            .iter()
            .map(|s| parse_usize(s, "qubit"))
            .collect::<Result<Vec<_>>>()?;
        let n = n.unwrap();
        if let Some(&q) = qs.iter().find(|&&q| q >= n) {
            return Err(err(lineno, format!("qubit {q} out of range for {n} qubits")));
        }
        let gate = match kind {
            GateKind::Cz => Gate::cz(cycle, qs[0], qs[1]),
            _ => Gate::single(kind, cycle, qs[0]),
        };
        gates.push((lineno, gate));
    }

    let n = n.ok_or_else(|| err(text.lines().count().max(1), "missing qubit count".into()))?;
    let grid = match (grid, file_grid) {
        (Some(g), _) => g,
        (None, Some((g, _))) => g,
        (None, None) => Grid::line(n),
    };
    if grid.num_qubits() != n {
        let line = file_grid.map(|(_, l)| l).unwrap_or(1);
        return Err(err(
            line,
            format!("grid {}x{} does not hold {n} qubits", grid.rows, grid.cols),
        ));
    }

    let used = gates.iter().map(|(_, g)| g.cycle + 1).max().unwrap_or(0);
    let depth = match file_depth {
        Some((d, line)) if d < used => {
            return Err(err(
                line,
                format!("depth {d} is below the last gate cycle {}", used - 1),
            ));
        }
        Some((d, _)) => d,
        None => used,
    };
    let all: Vec<Gate> = gates.iter().map(|(_, g)| *g).collect();
    match Circuit::new(grid, depth, all) {
        Ok(c) => Ok(c),
        Err(e) => {
            // Replay gate by gate to find the first offending line.
            for k in 1..=gates.len() {
                let prefix: Vec<Gate> = gates[..k].iter().map(|(_, g)| *g).collect();
                if let Err(e) = Circuit::new(grid, depth, prefix) {
                    return Err(err(gates[k - 1].0, e.to_string()));
                }
            }
            Err(e)
        }
    }
}

/// Canonical text: count line, grid and depth directives, gates by
/// `(cycle, lowest qubit)`.
pub fn serialize_circuit(circuit: &Circuit) -> String {
    let grid = circuit.grid();
    let mut out = String::new();
    writeln!(out, "{}", circuit.num_qubits()).unwrap();
    writeln!(out, "# grid {} {}", grid.rows, grid.cols).unwrap();
    writeln!(out, "# depth {}", circuit.depth()).unwrap();
    for g in circuit.gates() {
        match g.qubits() {
            [a, b] => writeln!(out, "{} {} {} {}", g.cycle, g.kind, a, b).unwrap(),
            [a] => writeln!(out, "{} {} {}", g.cycle, g.kind, a).unwrap(),
            _ => unreachable!(),
        }
    }
    out
}
