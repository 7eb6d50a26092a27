//! Test-side oracles, written without the library's simulators.
#![allow(dead_code)]

use circgraph::{Circuit, GateKind, GraphicalModel};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Single-qubit matrices as `[out][in]`, written out independently.
pub fn matrix(kind: GateKind) -> [[Complex64; 2]; 2] {
    let s = 0.5f64.sqrt();
    match kind {
        GateKind::H => [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]],
        GateKind::XHalf => [[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]],
        GateKind::YHalf => [[c(0.5, 0.5), c(-0.5, -0.5)], [c(0.5, 0.5), c(0.5, 0.5)]],
        GateKind::T => [
            [c(1.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)],
        ],
        GateKind::Cz => panic!("CZ has no single-qubit matrix"),
    }
}

/// Naive state vector, qubit 0 as the most significant index bit.
pub fn naive_state(circuit: &Circuit) -> Vec<Complex64> {
    let n = circuit.num_qubits();
    let dim = 1usize << n;
    let mut psi = vec![c(0.0, 0.0); dim];
    psi[0] = c(1.0, 0.0);
    let bit = |q: usize| 1usize << (n - 1 - q);
    for g in circuit.gates() {
        let q = g.qubits();
        if g.kind == GateKind::Cz {
            let mask = bit(q[0]) | bit(q[1]);
            for (i, a) in psi.iter_mut().enumerate() {
                if i & mask == mask {
                    *a = -*a;
                }
            }
            continue;
        }
        let m = matrix(g.kind);
        let b = bit(q[0]);
        let mut next = vec![c(0.0, 0.0); dim];
        for (i, &a) in psi.iter().enumerate() {
            let inb = (i & b != 0) as usize;
            for (out, row) in m.iter().enumerate() {
                let j = if out == 1 { i | b } else { i & !b };
                next[j] += row[inb] * a;
            }
        }
        psi = next;
    }
    psi
}

/// Sum over every assignment of the product of all factors, for closed
/// models with few variables.
pub fn brute_force(model: &GraphicalModel) -> Complex64 {
    let n = model.num_variables();
    assert!(n <= 22 && model.open().is_empty());
    let mut total = c(0.0, 0.0);
    for a in 0..1usize << n {
        let mut prod = model.scalar();
        for f in model.factors() {
            let idx = f.vars().iter().fold(0usize, |acc, &v| (acc << 1) | ((a >> v) & 1));
            prod *= f.values()[idx];
        }
        total += prod;
    }
    total
}

pub fn std_dev(v: &[f64]) -> f64 {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// `|a - e| / max(|e|, 2^{-n/2})`: relative error, measured against the
/// typical amplitude size when the exact value is atypically small.
pub fn amplitude_error(a: Complex64, e: Complex64, n: usize) -> f64 {
    (a - e).norm() / e.norm().max(2f64.powf(-(n as f64) / 2.0))
}
