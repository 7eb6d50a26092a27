use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// 2x2 matrix, row-major: `m[out][in]`.
pub type Matrix2 = [[Complex64; 2]; 2];
/// 4x4 matrix over two qubits `(q0, q1)` with `q0` the high bit of each index.
pub type Matrix4 = [[Complex64; 4]; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    XHalf,
    YHalf,
    T,
    Cz,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cz => 2,
            _ => 1,
        }
    }

    pub fn is_diagonal(self) -> bool {
        matches!(self, GateKind::T | GateKind::Cz)
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::XHalf => "x_1_2",
            GateKind::YHalf => "y_1_2",
            GateKind::T => "t",
            GateKind::Cz => "cz",
        }
    }

    /// Matrix of a single-qubit gate; `None` for CZ.
    pub fn matrix(self) -> Option<Matrix2> {
        let c = Complex64::new;
        let h = FRAC_1_SQRT_2;
        Some(match self {
            GateKind::H => [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]],
            // squares to X exactly
            GateKind::XHalf => [[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]],
            // squares to Y exactly
            GateKind::YHalf => [[c(0.5, 0.5), c(-0.5, -0.5)], [c(0.5, 0.5), c(0.5, 0.5)]],
            GateKind::T => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(h, h)]],
            GateKind::Cz => return None,
        })
    }

    /// Diagonal of a diagonal gate, indexed by the (joint) basis state.
    pub fn diagonal(self) -> Option<Vec<Complex64>> {
        let one = Complex64::new(1.0, 0.0);
        match self {
            GateKind::T => Some(vec![one, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]),
            GateKind::Cz => Some(vec![one, one, one, -one]),
            _ => None,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "h" => GateKind::H,
            "x_1_2" => GateKind::XHalf,
            "y_1_2" => GateKind::YHalf,
            "t" => GateKind::T,
            "cz" => GateKind::Cz,
            _ => return Err(Error::InvalidCircuit(format!("unknown gate {s:?}"))),
        })
    }
}

/// A gate applied at clock cycle `cycle`. For single-qubit gates `qubits[1]`
/// is unused and equal to `qubits[0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub cycle: usize,
    qubits: [usize; 2],
}

impl Gate {
    pub fn single(kind: GateKind, cycle: usize, qubit: usize) -> Self {
        debug_assert_eq!(kind.arity(), 1);
        Gate {
            kind,
            cycle,
            qubits: [qubit, qubit],
        }
    }

    /// CZ is symmetric; qubits are stored in ascending order.
    pub fn cz(cycle: usize, a: usize, b: usize) -> Self {
        Gate {
            kind: GateKind::Cz,
            cycle,
            qubits: [a.min(b), a.max(b)],
        }
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits[..self.kind.arity()]
    }

    pub fn lowest_qubit(&self) -> usize {
        self.qubits[0]
    }
}
