use rand::Rng;

use super::{Circuit, Gate, GateKind, Grid};
use crate::error::{Error, Result};
use crate::exec::rng;

pub const CZ_PATTERN_COUNT: usize = 8;

/// Pattern sequence: horizontal offsets 0, 2, vertical 0, 2, horizontal 1, 3,
/// vertical 1, 3.
const PATTERNS: [(bool, usize); CZ_PATTERN_COUNT] = [
    (true, 0),
    (true, 2),
    (false, 0),
    (false, 2),
    (true, 1),
    (true, 3),
    (false, 1),
    (false, 3),
];

/// Qubit pairs of CZ pattern `index` (mod 8). Together the eight patterns
/// cover every nearest-neighbour edge exactly once, and no two pairs within a
/// pattern touch neighbouring qubits.
pub fn cz_pattern(grid: Grid, index: usize) -> Vec<(usize, usize)> {
    let (horizontal, offset) = PATTERNS[index % CZ_PATTERN_COUNT];
    let mut pairs = Vec::new();
    for r in 0..grid.rows {
        for c in 0..grid.cols {
            if horizontal {
                if c + 1 < grid.cols && c % 4 == (offset + 2 * (r % 2)) % 4 {
                    pairs.push((grid.qubit(r, c), grid.qubit(r, c + 1)));
                }
            } else if r + 1 < grid.rows && r % 4 == (offset + 2 * (c % 2)) % 4 {
                pairs.push((grid.qubit(r, c), grid.qubit(r + 1, c)));
            }
        }
    }
    pairs
}

/// Random circuit of `depth` cycles (cycle 0 included).
///
/// Cycle 0 is H everywhere. Cycle `t >= 1` applies CZ pattern `t - 1`; a qubit
/// idle in cycle `t` that was in a CZ at `t - 1` gets a single-qubit gate: T if
/// it has had none since the initial H, otherwise X^1/2, Y^1/2 or T chosen
/// uniformly among those different from its previous single-qubit gate.
pub fn generate_random_circuit(rows: usize, cols: usize, depth: usize, seed: u64) -> Result<Circuit> {
    let grid = Grid::new(rows, cols)?;
    if depth == 0 {
        return Err(Error::InvalidDepth);
    }
    let n = grid.num_qubits();
    let mut rng = rng(seed);
    let mut gates: Vec<Gate> = (0..n).map(|q| Gate::single(GateKind::H, 0, q)).collect();
    let mut last_single: Vec<Option<GateKind>> = vec![None; n];
    let mut in_cz_prev = vec![false; n];

    for t in 1..depth {
        let mut in_cz = vec![false; n];
        for (a, b) in cz_pattern(grid, t - 1) {
            gates.push(Gate::cz(t, a, b));
            in_cz[a] = true;
            in_cz[b] = true;
        }
        for q in 0..n {
            if in_cz[q] || !in_cz_prev[q] {
                continue;
            }
            let kind = match last_single[q] {
                None => GateKind::T,
                Some(prev) => {
                    let choices: Vec<GateKind> = [GateKind::XHalf, GateKind::YHalf, GateKind::T]
                        .into_iter()
                        .filter(|&k| k != prev)
                        .collect();
                    choices[rng.random_range(0..choices.len())]
                }
            };
            gates.push(Gate::single(kind, t, q));
            last_single[q] = Some(kind);
        }
        in_cz_prev = in_cz;
    }
    Circuit::new(grid, depth, gates)
}
