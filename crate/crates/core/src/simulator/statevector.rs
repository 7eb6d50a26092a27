//! Dense statevector simulation, used as a reference oracle.

use num_complex::Complex64;

use crate::circuit::{Circuit, GateKind, Matrix2, Matrix4};
use crate::error::{Error, Result};
use crate::exec::{for_each_chunk_mut, Execution};

pub const DEFAULT_STATEVECTOR_CAP: usize = 26;

/// `2^n` amplitudes; qubit 0 is the most significant index bit.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
    exec: Execution,
}

impl StateVector {
    pub fn zero(n: usize, exec: Execution) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { n, amps, exec }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    fn stride(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    pub fn apply_single(&mut self, q: usize, m: &Matrix2) {
        let s = self.stride(q);
        let m = *m;
        // each chunk of 2s entries holds s independent pairs
        for_each_chunk_mut(self.exec, &mut self.amps, 2 * s, |_, chunk| {
            let (lo, hi) = chunk.split_at_mut(s);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = m[0][0] * x + m[0][1] * y;
                *b = m[1][0] * x + m[1][1] * y;
            }
        });
    }

    /// Multiply by a diagonal over the listed qubits (`diag` indexed with the
    /// first listed qubit most significant).
    pub fn apply_diagonal(&mut self, qubits: &[usize], diag: &[Complex64]) {
        let n = self.n;
        let shifts: Vec<usize> = qubits.iter().map(|&q| n - 1 - q).collect();
        let chunk = 1usize << 12.min(n);
        for_each_chunk_mut(self.exec, &mut self.amps, chunk, |ci, part| {
            for (i, a) in part.iter_mut().enumerate() {
                let idx = ci * chunk + i;
                let key = shifts.iter().fold(0usize, |k, &s| (k << 1) | ((idx >> s) & 1));
                *a *= diag[key];
            }
        });
    }

    /// Generic two-qubit gate; `m` indexed with `q0` as the high bit.
    pub fn apply_two_qubit(&mut self, q0: usize, q1: usize, m: &Matrix4) {
        let (s0, s1) = (self.stride(q0), self.stride(q1));
        let len = self.amps.len();
        for base in 0..len {
            if base & s0 != 0 || base & s1 != 0 {
                continue;
            }
            let idx = [base, base | s1, base | s0, base | s0 | s1];
            let v: Vec<Complex64> = idx.iter().map(|&i| self.amps[i]).collect();
            for (r, &i) in idx.iter().enumerate() {
                self.amps[i] = (0..4).map(|c| m[r][c] * v[c]).sum();
            }
        }
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) {
        for g in circuit.gates() {
            match g.kind {
                GateKind::T | GateKind::Cz => self.apply_diagonal(g.qubits(), &g.kind.diagonal().unwrap()),
                kind => self.apply_single(g.qubits()[0], &kind.matrix().unwrap()),
            }
        }
    }
}

/// All `2^n` output amplitudes of `circuit` on `|0...0>`.
pub fn statevector_oracle(circuit: &Circuit) -> Result<Vec<Complex64>> {
    statevector_oracle_with(circuit, DEFAULT_STATEVECTOR_CAP, Execution::default())
}

pub fn statevector_oracle_with(circuit: &Circuit, cap: usize, exec: Execution) -> Result<Vec<Complex64>> {
    let n = circuit.num_qubits();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "statevector qubit",
            got: n,
            cap,
        });
    }
    let mut sv = StateVector::zero(n, exec);
    sv.apply_circuit(circuit);
    Ok(sv.into_amplitudes())
}
