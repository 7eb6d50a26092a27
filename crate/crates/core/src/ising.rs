//! Amplitudes as Ising partition functions at imaginary temperature.
//!
//! Every path through the worldline variables contributes a phase that is an
//! integer multiple of `pi/4` and a modulus `2^{-L/2}`, with `L = sum_j d_j`.
//! The spin of worldline variable `(j, k)` is `s = 1 - 2b`. Phase terms, in
//! `pi/4` units:
//!
//! | gate  | term                         |
//! |-------|------------------------------|
//! | XHALF | `2 (1 + s s') / 2`           |
//! | YHALF | `4 (1 - s') (1 + s) / 4`     |
//! | H     | `4 (1 - s) (1 - s') / 4`     |
//! | T     | `1 (1 - s) / 2`              |
//! | CZ    | `4 (1 - s_i) (1 - s_j) / 4`  |
//!
//! where `s` is the spin entering a gate and `s'` the spin leaving it. The
//! path-independent phases of XHALF (`-1` unit) and YHALF (`+1` unit) are
//! collected into one global phase.
//!
//! Spins `(j, 0)` are fixed by the all-zero input and spins `(j, d_j)` by the
//! output bit-string; only the remaining `sum_j max(d_j - 1, 0)` spins are
//! enumerated.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use std::f64::consts::FRAC_PI_4;
use std::fmt::Write;

use crate::bitstring::BitString;
use crate::circuit::{worldline_lengths, Circuit, GateKind, Worldlines};
use crate::error::{Error, Result};
use crate::exec::{map_range, rng, Execution};

/// Default limit on the number of enumerated spins.
pub const DEFAULT_SPIN_CAP: usize = 24;

/// One phase term. `step` fields index worldline variables of a qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsingTerm {
    X {
        qubit: usize,
        cycle: usize,
        step: usize,
    },
    Y {
        qubit: usize,
        cycle: usize,
        step: usize,
    },
    H {
        qubit: usize,
        cycle: usize,
        step: usize,
    },
    T {
        qubit: usize,
        cycle: usize,
        step: usize,
    },
    Cz {
        qubits: [usize; 2],
        cycle: usize,
        steps: [usize; 2],
    },
}

impl IsingTerm {
    pub fn name(&self) -> &'static str {
        match self {
            IsingTerm::X { .. } => "x",
            IsingTerm::Y { .. } => "y",
            IsingTerm::H { .. } => "h",
            IsingTerm::T { .. } => "t",
            IsingTerm::Cz { .. } => "cz",
        }
    }

    /// Coefficient of the term in `pi/4` units.
    pub fn coefficient(&self) -> u8 {
        match self {
            IsingTerm::X { .. } => 2,
            IsingTerm::T { .. } => 1,
            _ => 4,
        }
    }

    pub fn cycle(&self) -> usize {
        match *self {
            IsingTerm::X { cycle, .. }
            | IsingTerm::Y { cycle, .. }
            | IsingTerm::H { cycle, .. }
            | IsingTerm::T { cycle, .. }
            | IsingTerm::Cz { cycle, .. } => cycle,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            IsingTerm::X { qubit, .. }
            | IsingTerm::Y { qubit, .. }
            | IsingTerm::H { qubit, .. }
            | IsingTerm::T { qubit, .. } => vec![qubit],
            IsingTerm::Cz { qubits, .. } => qubits.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingPhaseModel {
    num_qubits: usize,
    depth: usize,
    lengths: Vec<usize>,
    prefix: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    terms: Vec<IsingTerm>,
    global_units: u8,
}

pub fn build_ising(circuit: &Circuit) -> IsingPhaseModel {
    let n = circuit.num_qubits();
    let mut step = vec![0usize; n];
    let mut terms = Vec::with_capacity(circuit.gates().len());
    let mut global: i64 = 0;
    for g in circuit.gates() {
        let q = g.qubits();
        let cycle = g.cycle;
        match g.kind {
            GateKind::H | GateKind::XHalf | GateKind::YHalf => {
                let j = q[0];
                step[j] += 1;
                let s = step[j];
                terms.push(match g.kind {
                    GateKind::H => IsingTerm::H {
                        qubit: j,
                        cycle,
                        step: s,
                    },
                    GateKind::XHalf => {
                        global -= 1;
                        IsingTerm::X {
                            qubit: j,
                            cycle,
                            step: s,
                        }
                    }
                    _ => {
                        global += 1;
                        IsingTerm::Y {
                            qubit: j,
                            cycle,
                            step: s,
                        }
                    }
                });
            }
            GateKind::T => terms.push(IsingTerm::T {
                qubit: q[0],
                cycle,
                step: step[q[0]],
            }),
            GateKind::Cz => terms.push(IsingTerm::Cz {
                qubits: [q[0], q[1]],
                cycle,
                steps: [step[q[0]], step[q[1]]],
            }),
        }
    }
    let Worldlines { per_qubit, prefix } = worldline_lengths(circuit);
    debug_assert_eq!(per_qubit, step);
    let mut offsets = Vec::with_capacity(n + 1);
    let mut acc = 0;
    for &d in &per_qubit {
        offsets.push(acc);
        acc += d + 1;
    }
    offsets.push(acc);
    IsingPhaseModel {
        num_qubits: n,
        depth: circuit.depth(),
        lengths: per_qubit,
        prefix,
        offsets,
        terms,
        global_units: global.rem_euclid(8) as u8,
    }
}

impl IsingPhaseModel {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// `L = sum_j d_j`.
    pub fn num_spins(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Spins left free once both boundaries are fixed.
    pub fn num_free_spins(&self) -> usize {
        self.lengths.iter().map(|d| d.saturating_sub(1)).sum()
    }

    pub fn worldline_lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// `d(j, t)`.
    pub fn prefix_length(&self, j: usize, t: usize) -> usize {
        self.prefix[t.min(self.depth)][j]
    }

    pub fn terms(&self) -> &[IsingTerm] {
        &self.terms
    }

    /// Length of a full spin assignment, `sum_j (d_j + 1)`.
    pub fn assignment_len(&self) -> usize {
        self.offsets[self.num_qubits]
    }

    /// Position of spin `(j, k)` in a full assignment.
    pub fn spin_index(&self, j: usize, k: usize) -> usize {
        assert!(k <= self.lengths[j], "spin {j}:{k} out of range");
        self.offsets[j] + k
    }

    /// `alpha_j^k`: `Some(true)` for XHALF, `Some(false)` for YHALF, `None`
    /// where spin `k` is not produced by an X/Y gate.
    pub fn alpha(&self, j: usize, k: usize) -> Option<bool> {
        self.terms.iter().find_map(|t| match *t {
            IsingTerm::X { qubit, step, .. } if qubit == j && step == k => Some(true),
            IsingTerm::Y { qubit, step, .. } if qubit == j && step == k => Some(false),
            _ => None,
        })
    }

    /// `tau_j^t`.
    pub fn tau(&self, j: usize, t: usize) -> bool {
        self.terms
            .iter()
            .any(|term| matches!(*term, IsingTerm::T { qubit, cycle, .. } if qubit == j && cycle == t))
    }

    /// `z_ij^t`, symmetric in `i` and `j`.
    pub fn z(&self, i: usize, j: usize, t: usize) -> bool {
        let key = [i.min(j), i.max(j)];
        self.terms
            .iter()
            .any(|term| matches!(*term, IsingTerm::Cz { qubits, cycle, .. } if qubits == key && cycle == t))
    }

    /// Path-independent phase in `pi/4` units, mod 8.
    pub fn global_phase_units(&self) -> u8 {
        self.global_units
    }

    pub fn global_phase(&self) -> Complex64 {
        Complex64::from_polar(1.0, FRAC_PI_4 * self.global_units as f64)
    }

    /// `2^{-L/2}`.
    pub fn path_modulus(&self) -> f64 {
        2f64.powf(-(self.num_spins() as f64) / 2.0)
    }

    /// Coupling list as CSV: `term,qubits,cycle,coefficient`, qubits joined
    /// by `;`, ending with the global phase row.
    pub fn coupling_csv(&self) -> String {
        let mut out = String::from("term,qubits,cycle,coefficient\n");
        for t in &self.terms {
            let qs: Vec<String> = t.qubits().iter().map(|q| q.to_string()).collect();
            let _ = writeln!(out, "{},{},{},{}", t.name(), qs.join(";"), t.cycle(), t.coefficient());
        }
        let _ = writeln!(out, "global,,,{}", self.global_units);
        out
    }

    fn check_boundary(&self, spins: &[bool], x: &BitString) -> Result<()> {
        x.check_len(self.num_qubits)?;
        if spins.len() != self.assignment_len() {
            return Err(Error::BoundaryViolation(format!(
                "assignment has {} spins, expected {}",
                spins.len(),
                self.assignment_len()
            )));
        }
        for j in 0..self.num_qubits {
            if spins[self.offsets[j]] {
                return Err(Error::BoundaryViolation(format!(
                    "spin {j}:0 must match the zero input"
                )));
            }
            let d = self.lengths[j];
            if spins[self.offsets[j] + d] != x.get(j) {
                return Err(Error::BoundaryViolation(format!(
                    "spin {j}:{d} must match output bit {j}"
                )));
            }
        }
        Ok(())
    }
}

/// `H_s(x)` mod 8 for a full spin assignment (`true` is spin -1, bit 1),
/// without the global phase.
pub fn path_phase(model: &IsingPhaseModel, spins: &[bool], x: &BitString) -> Result<u8> {
    model.check_boundary(spins, x)?;
    Ok(term_phase(model, spins))
}

fn term_phase(model: &IsingPhaseModel, spins: &[bool]) -> u8 {
    let b = |j: usize, k: usize| spins[model.offsets[j] + k] as u32;
    let mut units = 0u32;
    for t in &model.terms {
        units += match *t {
            IsingTerm::X { qubit, step, .. } => 2 * (b(qubit, step - 1) == b(qubit, step)) as u32,
            IsingTerm::Y { qubit, step, .. } => 4 * b(qubit, step - 1) * (1 - b(qubit, step)),
            IsingTerm::H { qubit, step, .. } => 4 * b(qubit, step - 1) * b(qubit, step),
            IsingTerm::T { qubit, step, .. } => b(qubit, step),
            IsingTerm::Cz { qubits, steps, .. } => 4 * b(qubits[0], steps[0]) * b(qubits[1], steps[1]),
        };
    }
    (units % 8) as u8
}

/// Quadratic phase polynomial over the free spins, mod 8.
struct Compiled {
    constant: u8,
    linear: Vec<u8>,
    couplings: Vec<Vec<(usize, u8)>>,
}

#[derive(Clone, Copy)]
enum Spin {
    Fixed(bool),
    Free(usize),
}

impl Compiled {
    /// Free spins are all of `k >= 1`, or only `1..d_j` when `x` is given.
    /// `None` when `x` conflicts with a qubit that has no non-diagonal gate.
    fn new(model: &IsingPhaseModel, x: Option<&BitString>) -> Option<Compiled> {
        let mut spin = Vec::with_capacity(model.assignment_len());
        let mut free = 0;
        for j in 0..model.num_qubits {
            let d = model.lengths[j];
            let out = x.map(|x| x.get(j));
            if d == 0 && out == Some(true) {
                return None;
            }
            spin.push(Spin::Fixed(false));
            for k in 1..=d {
                match out {
                    Some(bit) if k == d => spin.push(Spin::Fixed(bit)),
                    _ => {
                        spin.push(Spin::Free(free));
                        free += 1;
                    }
                }
            }
        }
        let mut c = Compiled {
            constant: 0,
            linear: vec![0; free],
            couplings: vec![Vec::new(); free],
        };
        let var = |j: usize, k: usize| spin[model.offsets[j] + k];
        for t in &model.terms {
            match *t {
                IsingTerm::X { qubit, step, .. } => {
                    let (a, b) = (var(qubit, step - 1), var(qubit, step));
                    c.add(2, &[]);
                    c.add(6, &[a]);
                    c.add(6, &[b]);
                    c.add(4, &[a, b]);
                }
                IsingTerm::Y { qubit, step, .. } => {
                    let (a, b) = (var(qubit, step - 1), var(qubit, step));
                    c.add(4, &[a]);
                    c.add(4, &[a, b]);
                }
                IsingTerm::H { qubit, step, .. } => c.add(4, &[var(qubit, step - 1), var(qubit, step)]),
                IsingTerm::T { qubit, step, .. } => c.add(1, &[var(qubit, step)]),
                IsingTerm::Cz { qubits, steps, .. } => c.add(4, &[var(qubits[0], steps[0]), var(qubits[1], steps[1])]),
            }
        }
        for adj in &mut c.couplings {
            adj.sort_unstable();
            adj.dedup_by(|a, b| {
                if a.0 == b.0 {
                    b.1 = (b.1 + a.1) % 8;
                    true
                } else {
                    false
                }
            });
            adj.retain(|&(_, w)| w != 0);
        }
        Some(c)
    }

    fn add(&mut self, coeff: u8, monomial: &[Spin]) {
        let mut free = [0usize; 2];
        let mut r = 0;
        for s in monomial {
            match *s {
                Spin::Fixed(false) => return,
                Spin::Fixed(true) => {}
                Spin::Free(i) => {
                    free[r] = i;
                    r += 1;
                }
            }
        }
        match r {
            0 => self.constant = (self.constant + coeff) % 8,
            1 => self.linear[free[0]] = (self.linear[free[0]] + coeff) % 8,
            _ => {
                let (a, b) = (free[0], free[1]);
                debug_assert_ne!(a, b);
                self.couplings[a].push((b, coeff));
                self.couplings[b].push((a, coeff));
            }
        }
    }

    fn num_free(&self) -> usize {
        self.linear.len()
    }

    fn evaluate(&self, bits: &[bool]) -> u8 {
        let mut units = self.constant as u32;
        for (i, &on) in bits.iter().enumerate() {
            if on {
                units += self.linear[i] as u32;
                for &(j, w) in &self.couplings[i] {
                    if j > i && bits[j] {
                        units += w as u32;
                    }
                }
            }
        }
        (units % 8) as u8
    }

    /// Number of assignments realising each phase unit.
    fn phase_counts(&self, exec: Execution) -> [u64; 8] {
        let free = self.num_free();
        let high = if exec.is_parallel() { free.min(10) } else { 0 };
        let low = free - high;
        let chunks = map_range(exec, 1usize << high, |c| self.gray_chunk(low, c));
        let mut total = [0u64; 8];
        for counts in chunks {
            for u in 0..8 {
                total[u] += counts[u];
            }
        }
        total
    }

    /// Walk the low `low` spins in Gray-code order with the high spins set
    /// to the bits of `chunk`.
    fn gray_chunk(&self, low: usize, chunk: usize) -> [u64; 8] {
        let free = self.num_free();
        let mut bits = vec![false; free];
        for (i, b) in bits.iter_mut().enumerate().skip(low) {
            *b = (chunk >> (i - low)) & 1 == 1;
        }
        let mut phase = self.evaluate(&bits);
        let mut field: Vec<u8> = (0..low)
            .map(|i| {
                let mut h = self.linear[i] as u32;
                for &(j, w) in &self.couplings[i] {
                    if bits[j] {
                        h += w as u32;
                    }
                }
                (h % 8) as u8
            })
            .collect();
        let mut counts = [0u64; 8];
        counts[phase as usize] += 1;
        for g in 1..(1usize << low) {
            let i = g.trailing_zeros() as usize;
            let on = !bits[i];
            bits[i] = on;
            let h = field[i];
            phase = if on { (phase + h) % 8 } else { (phase + 8 - h) % 8 };
            for &(j, w) in &self.couplings[i] {
                if j < low {
                    field[j] = if on { (field[j] + w) % 8 } else { (field[j] + 8 - w) % 8 };
                }
            }
            counts[phase as usize] += 1;
        }
        counts
    }
}

/// Sum of `omega^u` weighted by counts, `omega = e^{i pi/4}`.
fn weighted_sum(counts: &[u64; 8]) -> Complex64 {
    counts
        .iter()
        .enumerate()
        .map(|(u, &c)| Complex64::from_polar(c as f64, FRAC_PI_4 * u as f64))
        .sum()
}

/// Number of free-spin assignments with each path phase (global phase
/// excluded). All zero when `x` is unreachable.
pub fn phase_counts(model: &IsingPhaseModel, x: &BitString, cap: usize, exec: Execution) -> Result<[u64; 8]> {
    x.check_len(model.num_qubits)?;
    let free = model.num_free_spins();
    if free > cap {
        return Err(Error::CapExceeded {
            what: "free spins",
            got: free,
            cap,
        });
    }
    Ok(Compiled::new(model, Some(x)).map_or([0; 8], |c| c.phase_counts(exec)))
}

/// `<x|C|0>` as `global * 2^{-L/2} sum_s exp(i pi H_s(x) / 4)`.
pub fn partition_amplitude(model: &IsingPhaseModel, x: &BitString) -> Result<Complex64> {
    partition_amplitude_with(model, x, DEFAULT_SPIN_CAP, Execution::default())
}

pub fn partition_amplitude_with(
    model: &IsingPhaseModel,
    x: &BitString,
    cap: usize,
    exec: Execution,
) -> Result<Complex64> {
    let counts = phase_counts(model, x, cap, exec)?;
    Ok(model.global_phase() * model.path_modulus() * weighted_sum(&counts))
}

/// Path phases realised over all outputs and paths. Exhaustive when the
/// spins fit under `DEFAULT_SPIN_CAP`, otherwise `sample_paths` random paths.
pub fn clifford_phase_profile(circuit: &Circuit, sample_paths: usize, seed: u64) -> BTreeSet<u8> {
    clifford_phase_profile_with(circuit, sample_paths, seed, DEFAULT_SPIN_CAP, Execution::default())
}

pub fn clifford_phase_profile_with(
    circuit: &Circuit,
    sample_paths: usize,
    seed: u64,
    cap: usize,
    exec: Execution,
) -> BTreeSet<u8> {
    let model = build_ising(circuit);
    let c = Compiled::new(&model, None).expect("no output boundary to conflict with");
    if c.num_free() <= cap {
        let counts = c.phase_counts(exec);
        return (0..8u8).filter(|&u| counts[u as usize] > 0).collect();
    }
    let mut r = rng(seed);
    let mut seen = HashSet::new();
    for _ in 0..sample_paths {
        let bits: Vec<bool> = (0..c.num_free()).map(|_| r.random()).collect();
        seen.insert(c.evaluate(&bits));
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{hadamard_cz_example, Gate, Grid};

    fn full_assignment(model: &IsingPhaseModel, x: &BitString, free: &[bool]) -> Vec<bool> {
        let mut out = Vec::new();
        let mut it = free.iter();
        for j in 0..model.num_qubits() {
            let d = model.worldline_lengths()[j];
            out.push(false);
            for k in 1..=d {
                out.push(if k == d { x.get(j) } else { *it.next().unwrap() });
            }
        }
        out
    }

    #[test]
    fn example_amplitude_is_one_half() {
        let m = build_ising(&hadamard_cz_example());
        assert_eq!(m.num_spins(), 4);
        let a = partition_amplitude(&m, &"00".parse().unwrap()).unwrap();
        assert!((a - Complex64::new(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn placements() {
        let g = Grid::line(2);
        let c = Circuit::new(
            g,
            3,
            vec![
                Gate::single(GateKind::H, 0, 0),
                Gate::single(GateKind::H, 0, 1),
                Gate::cz(1, 1, 0),
                Gate::single(GateKind::T, 2, 1),
                Gate::single(GateKind::XHalf, 2, 0),
            ],
        )
        .unwrap();
        let m = build_ising(&c);
        assert!(m.z(0, 1, 1) && m.z(1, 0, 1));
        assert!(!m.z(0, 1, 2));
        assert!(m.tau(1, 2) && !m.tau(0, 2));
        assert_eq!(m.alpha(0, 2), Some(true));
        assert_eq!(m.alpha(0, 1), None);
        assert_eq!(m.global_phase_units(), 7);
        assert_eq!(m.prefix_length(0, 2), 1);
        let csv = m.coupling_csv();
        assert!(csv.contains("cz,0;1,1,4\n"));
        assert!(csv.ends_with("global,,,7\n"));
    }

    #[test]
    fn single_term_phases() {
        let g = Grid::line(2);
        let cz = Circuit::new(g, 1, vec![Gate::cz(0, 0, 1)]).unwrap();
        let m = build_ising(&cz);
        let x: BitString = "11".parse().unwrap();
        // no non-diagonal gates, so the assignment is the inputs only
        assert!(path_phase(&m, &[true, true], &x).is_err());

        let xh = Circuit::new(Grid::line(1), 1, vec![Gate::single(GateKind::XHalf, 0, 0)]).unwrap();
        let m = build_ising(&xh);
        let x: BitString = "0".parse().unwrap();
        assert_eq!(path_phase(&m, &[false, false], &x).unwrap(), 2);

        let t = Circuit::new(
            Grid::line(1),
            2,
            vec![Gate::single(GateKind::H, 0, 0), Gate::single(GateKind::T, 1, 0)],
        )
        .unwrap();
        let m = build_ising(&t);
        assert_eq!(path_phase(&m, &[false, false], &"0".parse().unwrap()).unwrap(), 0);
        assert_eq!(path_phase(&m, &[false, true], &"1".parse().unwrap()).unwrap(), 1);
    }

    #[test]
    fn compiled_matches_direct_phase() {
        let c = crate::circuit::generate_random_circuit(2, 2, 8, 5).unwrap();
        let m = build_ising(&c);
        for xi in 0..16 {
            let x = BitString::from_index(xi, 4);
            let comp = Compiled::new(&m, Some(&x)).unwrap();
            let mut counts = [0u64; 8];
            for f in 0..1usize << comp.num_free() {
                let free: Vec<bool> = (0..comp.num_free()).map(|i| (f >> i) & 1 == 1).collect();
                let full = full_assignment(&m, &x, &free);
                let p = path_phase(&m, &full, &x).unwrap();
                assert_eq!(p, comp.evaluate(&free));
                counts[p as usize] += 1;
            }
            assert_eq!(counts, comp.phase_counts(Execution::Sequential));
            assert_eq!(counts, comp.phase_counts(Execution::Parallel));
        }
    }

    #[test]
    fn unreachable_output_is_zero() {
        let c = Circuit::new(Grid::line(2), 1, vec![Gate::single(GateKind::H, 0, 0)]).unwrap();
        let m = build_ising(&c);
        assert_eq!(
            partition_amplitude(&m, &"01".parse().unwrap()).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let c = crate::circuit::generate_random_circuit(2, 2, 8, 1).unwrap();
        let m = build_ising(&c);
        let r = partition_amplitude_with(&m, &BitString::zeros(4), 0, Execution::Sequential);
        assert!(matches!(r, Err(Error::CapExceeded { .. })) || m.num_free_spins() == 0);
    }

    #[test]
    fn empty_circuit_profile() {
        let c = Circuit::empty(Grid::new(2, 2).unwrap());
        assert_eq!(clifford_phase_profile(&c, 10, 0), BTreeSet::from([0]));
    }
}
