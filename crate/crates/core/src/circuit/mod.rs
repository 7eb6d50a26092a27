//! Gate set, grid circuits, the random-circuit generator and the text format.

mod gate;
mod generate;
mod text;

pub use gate::{Gate, GateKind, Matrix2, Matrix4};
pub use generate::{cz_pattern, generate_random_circuit, CZ_PATTERN_COUNT};
pub use text::{parse_circuit, parse_circuit_with_grid, serialize_circuit};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Qubit lattice. Qubit `q` sits at row `q / cols`, column `q % cols`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grid {
    pub rows: usize,
    pub cols: usize,
}

impl Grid {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimensions { rows, cols });
        }
        Ok(Grid { rows, cols })
    }

    /// A 1 x n chain.
    pub fn line(n: usize) -> Self {
        Grid {
            rows: 1,
            cols: n.max(1),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.rows * self.cols
    }

    /// Smaller lateral dimension.
    pub fn ell(&self) -> usize {
        self.rows.min(self.cols)
    }

    pub fn qubit(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    pub fn position(&self, q: usize) -> (usize, usize) {
        (q / self.cols, q % self.cols)
    }

    pub fn are_neighbors(&self, a: usize, b: usize) -> bool {
        let (ra, ca) = self.position(a);
        let (rb, cb) = self.position(b);
        ra.abs_diff(rb) + ca.abs_diff(cb) == 1
    }

    /// Rank of qubit `q` when sweeping along the shorter dimension first, so
    /// that consecutive ranks are neighbours along a line of length `ell`.
    pub fn vertical_rank(&self, q: usize) -> usize {
        let (r, c) = self.position(q);
        if self.rows <= self.cols {
            c * self.rows + r
        } else {
            r * self.cols + c
        }
    }
}

/// Gates on an `R x C` grid, sorted by `(cycle, lowest qubit)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    grid: Grid,
    depth: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Validates every circuit invariant. `depth` is raised to cover the last
    /// gate's cycle if needed.
    pub fn new(grid: Grid, depth: usize, mut gates: Vec<Gate>) -> Result<Self> {
        gates.sort_by_key(|g| (g.cycle, g.lowest_qubit()));
        let depth = gates.iter().map(|g| g.cycle + 1).max().unwrap_or(0).max(depth);
        let circuit = Circuit { grid, depth, gates };
        circuit.validate()?;
        Ok(circuit)
    }

    pub fn empty(grid: Grid) -> Self {
        Circuit {
            grid,
            depth: 0,
            gates: Vec::new(),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn num_qubits(&self) -> usize {
        self.grid.num_qubits()
    }

    /// Number of cycles, including cycle 0.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn cycle(&self, t: usize) -> &[Gate] {
        let lo = self.gates.partition_point(|g| g.cycle < t);
        let hi = self.gates.partition_point(|g| g.cycle <= t);
        &self.gates[lo..hi]
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_qubits();
        let mut used = vec![usize::MAX; n];
        for g in &self.gates {
            for &q in g.qubits() {
                if q >= n {
                    return Err(Error::InvalidCircuit(format!("qubit {q} out of range for {n} qubits")));
                }
            }
            if g.kind == GateKind::Cz {
                let [a, b] = [g.qubits()[0], g.qubits()[1]];
                if a == b {
                    return Err(Error::InvalidCircuit(format!("cz on repeated qubit {a}")));
                }
                if !self.grid.are_neighbors(a, b) {
                    return Err(Error::InvalidCircuit(format!(
                        "cz between non-neighbouring qubits {a} and {b}"
                    )));
                }
            }
            for &q in g.qubits() {
                if used[q] == g.cycle {
                    return Err(Error::InvalidCircuit(format!(
                        "qubit {q} used twice in cycle {}",
                        g.cycle
                    )));
                }
                used[q] = g.cycle;
            }
        }
        for t in 0..self.depth {
            let czs: Vec<&Gate> = self.cycle(t).iter().filter(|g| g.kind == GateKind::Cz).collect();
            for (i, a) in czs.iter().enumerate() {
                for b in &czs[i + 1..] {
                    let touching = a
                        .qubits()
                        .iter()
                        .any(|&p| b.qubits().iter().any(|&q| self.grid.are_neighbors(p, q)));
                    if touching {
                        return Err(Error::InvalidCircuit(format!(
                            "adjacent cz gates {:?} and {:?} in cycle {t}",
                            a.qubits(),
                            b.qubits()
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Two qubits: H on both, CZ, H on both. `<00|C|00> = 1/2`.
pub fn hadamard_cz_example() -> Circuit {
    Circuit::new(
        Grid::line(2),
        3,
        vec![
            Gate::single(GateKind::H, 0, 0),
            Gate::single(GateKind::H, 0, 1),
            Gate::cz(1, 0, 1),
            Gate::single(GateKind::H, 2, 0),
            Gate::single(GateKind::H, 2, 1),
        ],
    )
    .expect("valid example circuit")
}

/// Non-diagonal gate counts per qubit, in total and by cycle prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Worldlines {
    /// `per_qubit[j]` is `d_j`.
    pub per_qubit: Vec<usize>,
    /// `prefix[t][j]` counts non-diagonal gates on `j` in cycles `< t`;
    /// `prefix[depth] == per_qubit`.
    pub prefix: Vec<Vec<usize>>,
}

impl Worldlines {
    /// `d(j, t)`: non-diagonal gates on qubit `j` over the first `t` cycles.
    pub fn upto(&self, j: usize, t: usize) -> usize {
        self.prefix[t.min(self.prefix.len() - 1)][j]
    }

    pub fn total(&self) -> usize {
        self.per_qubit.iter().sum()
    }
}

pub fn worldline_lengths(circuit: &Circuit) -> Worldlines {
    let n = circuit.num_qubits();
    let mut counts = vec![0usize; n];
    let mut prefix = Vec::with_capacity(circuit.depth() + 1);
    prefix.push(counts.clone());
    for t in 0..circuit.depth() {
        for g in circuit.cycle(t) {
            if !g.kind.is_diagonal() {
                counts[g.qubits()[0]] += 1;
            }
        }
        prefix.push(counts.clone());
    }
    Worldlines {
        per_qubit: counts,
        prefix,
    }
}
