//! Circuit to graphical-model mapping.
//!
//! Each qubit `j` carries worldline variables `b_j^0 .. b_j^{d_j}`; every
//! non-diagonal gate opens a new one. Gates contribute complex factors, and
//! each factor induces a clique on the interaction graph.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::circuit::{Circuit, Gate, GateKind, Grid, Matrix2, Matrix4};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tensor::Factor;

/// Worldline variable `b_j^k`, written `j:k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VariableId {
    pub qubit: usize,
    pub step: usize,
}

impl VariableId {
    pub fn new(qubit: usize, step: usize) -> Self {
        VariableId { qubit, step }
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.qubit, self.step)
    }
}

impl FromStr for VariableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidOrdering(format!("bad variable id {s:?}"));
        let (j, k) = s.trim().split_once(':').ok_or_else(bad)?;
        Ok(VariableId {
            qubit: j.parse().map_err(|_| bad())?,
            step: k.parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Fixed(bool),
    Free,
}

/// Endpoint conditions on the first and last worldline variable of each qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    pub input: Vec<Endpoint>,
    pub output: Vec<Endpoint>,
}

impl Boundary {
    /// `<x| U |0...0>`.
    pub fn amplitude(x: &BitString) -> Self {
        Boundary {
            input: vec![Endpoint::Fixed(false); x.len()],
            output: x.bits().iter().map(|&b| Endpoint::Fixed(b)).collect(),
        }
    }

    /// Zero input, every output left open.
    pub fn free_outputs(n: usize) -> Self {
        Boundary {
            input: vec![Endpoint::Fixed(false); n],
            output: vec![Endpoint::Free; n],
        }
    }

    pub fn all_free(n: usize) -> Self {
        Boundary {
            input: vec![Endpoint::Free; n],
            output: vec![Endpoint::Free; n],
        }
    }
}

fn ascending_factor(vars: &[usize], values: Vec<Complex64>) -> Factor {
    // table given in `vars` order; reorder to ascending labels
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), vars.len(), "factor variables must be distinct");
    let identity: Vec<usize> = (0..vars.len()).collect();
    Factor::new(identity, values).relabel(|i| vars[i])
}

/// Factor of a circuit gate. Non-diagonal single-qubit gates take
/// `[current, next]` worldline variables, T takes `[current]`, CZ takes the
/// current variables of both qubits.
pub fn gate_factor(kind: GateKind, vars: &[usize]) -> Result<Factor> {
    let expected = match kind {
        GateKind::T => 1,
        _ => 2,
    };
    if vars.len() != expected {
        return Err(Error::InvalidCircuit(format!(
            "gate {kind} needs {expected} variables, got {}",
            vars.len()
        )));
    }
    Ok(match kind {
        GateKind::T | GateKind::Cz => ascending_factor(vars, kind.diagonal().unwrap()),
        _ => nondiagonal_factor(&kind.matrix().unwrap(), vars[0], vars[1]),
    })
}

/// `psi(b, b') = U[b'][b]`.
fn nondiagonal_factor(m: &Matrix2, from: usize, to: usize) -> Factor {
    let values = vec![m[0][0], m[1][0], m[0][1], m[1][1]];
    ascending_factor(&[from, to], values)
}

fn unitarity_deviation<const N: usize>(m: &[[Complex64; N]; N]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..N {
        for j in 0..N {
            let dot: Complex64 = (0..N).map(|k| m[k][i].conj() * m[k][j]).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - want).norm());
        }
    }
    worst
}

/// Rank-4 factor `psi(b0, b1, b0', b1') = U[(b0' b1')][(b0 b1)]` for a generic
/// two-qubit gate. `vars = [b0, b1, b0', b1']`.
pub fn nondiagonal_two_qubit_factor(m: &Matrix4, vars: [usize; 4]) -> Result<Factor> {
    let deviation = unitarity_deviation(m);
    if deviation > 1e-10 {
        return Err(Error::NotUnitary { deviation });
    }
    let values = (0..16)
        .map(|idx| {
            let input = idx >> 2;
            let output = idx & 3;
            m[output][input]
        })
        .collect();
    Ok(ascending_factor(&vars, values))
}

/// Incrementally maps gates to factors over raw worldline variables.
#[derive(Debug, Clone)]
pub struct ModelBuilder {
    grid: Grid,
    vars: Vec<VariableId>,
    current: Vec<usize>,
    factors: Vec<Factor>,
}

impl ModelBuilder {
    pub fn new(grid: Grid) -> Self {
        let n = grid.num_qubits();
        ModelBuilder {
            grid,
            vars: (0..n).map(|j| VariableId::new(j, 0)).collect(),
            current: (0..n).collect(),
            factors: Vec::new(),
        }
    }

    pub fn from_circuit(circuit: &Circuit) -> Self {
        let mut b = ModelBuilder::new(circuit.grid());
        for g in circuit.gates() {
            b.apply(g);
        }
        b
    }

    fn open_variable(&mut self, qubit: usize) -> usize {
        let step = self.vars[self.current[qubit]].step + 1;
        self.vars.push(VariableId::new(qubit, step));
        self.current[qubit] = self.vars.len() - 1;
        self.current[qubit]
    }

    pub fn apply(&mut self, gate: &Gate) {
        match gate.kind {
            GateKind::Cz => {
                let [a, b] = [gate.qubits()[0], gate.qubits()[1]];
                let vars = [self.current[a], self.current[b]];
                self.factors.push(gate_factor(GateKind::Cz, &vars).unwrap());
            }
            GateKind::T => {
                let q = gate.qubits()[0];
                self.factors.push(gate_factor(GateKind::T, &[self.current[q]]).unwrap());
            }
            kind => self.apply_single(gate.qubits()[0], &kind.matrix().unwrap()),
        }
    }

    /// Generic non-diagonal single-qubit gate.
    pub fn apply_single(&mut self, qubit: usize, m: &Matrix2) {
        let from = self.current[qubit];
        let to = self.open_variable(qubit);
        self.factors.push(nondiagonal_factor(m, from, to));
    }

    /// Generic two-qubit gate; always opens new variables on both qubits.
    pub fn apply_two_qubit(&mut self, q0: usize, q1: usize, m: &Matrix4) -> Result<()> {
        if q0 == q1 {
            return Err(Error::InvalidCircuit("two-qubit gate on one qubit".into()));
        }
        let (b0, b1) = (self.current[q0], self.current[q1]);
        let deviation = unitarity_deviation(m);
        if deviation > 1e-10 {
            return Err(Error::NotUnitary { deviation });
        }
        let n0 = self.open_variable(q0);
        let n1 = self.open_variable(q1);
        self.factors.push(nondiagonal_two_qubit_factor(m, [b0, b1, n0, n1])?);
        Ok(())
    }

    pub fn build(&self, boundary: &Boundary) -> Result<GraphicalModel> {
        let n = self.grid.num_qubits();
        if boundary.input.len() != n || boundary.output.len() != n {
            return Err(Error::InconsistentEndpoints(format!(
                "boundary covers {}/{} qubits, circuit has {n}",
                boundary.input.len(),
                boundary.output.len()
            )));
        }
        let raw = self.vars.len();
        let mut fixed: Vec<Option<bool>> = vec![None; raw];
        let mut open = vec![false; raw];
        let mut scalar = Complex64::new(1.0, 0.0);
        let mut extra: Vec<Factor> = Vec::new();

        for j in 0..n {
            let first = j;
            let last = self.current[j];
            match (boundary.input[j], boundary.output[j]) {
                (Endpoint::Fixed(a), Endpoint::Fixed(b)) if first == last => {
                    fixed[first] = Some(a);
                    if a != b {
                        scalar = Complex64::new(0.0, 0.0);
                    }
                }
                (Endpoint::Fixed(a), Endpoint::Free) | (Endpoint::Free, Endpoint::Fixed(a)) if first == last => {
                    // one variable, pinned at one end and open at the other
                    open[first] = true;
                    let mut delta = vec![Complex64::new(0.0, 0.0); 2];
                    delta[a as usize] = Complex64::new(1.0, 0.0);
                    extra.push(Factor::new(vec![first], delta));
                }
                (input, output) => {
                    match input {
                        Endpoint::Fixed(a) => fixed[first] = Some(a),
                        Endpoint::Free => open[first] = true,
                    }
                    match output {
                        Endpoint::Fixed(b) => fixed[last] = Some(b),
                        Endpoint::Free => open[last] = true,
                    }
                }
            }
        }

        let mut labels: Vec<usize> = (0..raw).filter(|&v| fixed[v].is_none()).collect();
        labels.sort_by_key(|&v| self.vars[v]);
        let mut label_of = vec![usize::MAX; raw];
        for (l, &v) in labels.iter().enumerate() {
            label_of[v] = l;
        }

        let mut factors = Vec::with_capacity(self.factors.len());
        for f in self.factors.iter().chain(&extra) {
            let mut g = f.clone();
            for &v in f.vars() {
                if let Some(bit) = fixed[v] {
                    g = g.fix(v, bit);
                }
            }
            match g.as_scalar() {
                Some(s) => scalar *= s,
                None => factors.push(g.relabel(|v| label_of[v])),
            }
        }

        let variables: Vec<VariableId> = labels.iter().map(|&v| self.vars[v]).collect();
        let open_labels: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|(_, &v)| open[v])
            .map(|(l, _)| l)
            .collect();
        let mut fixed_list: Vec<(VariableId, bool)> =
            (0..raw).filter_map(|v| fixed[v].map(|b| (self.vars[v], b))).collect();
        fixed_list.sort();

        let mut model = GraphicalModel::from_parts(Some(self.grid), variables, factors, open_labels, scalar);
        model.fixed = fixed_list;
        model.total_variables = raw;
        Ok(model)
    }
}

/// Variables, factors and interaction graph of a sum of products.
///
/// Variable labels `0..num_variables()` are ordered by `(qubit, step)`.
/// Fixed endpoint variables have been sliced out of every factor.
#[derive(Debug, Clone)]
pub struct GraphicalModel {
    grid: Option<Grid>,
    variables: Vec<VariableId>,
    factors: Vec<Factor>,
    graph: Graph,
    open: Vec<usize>,
    scalar: Complex64,
    fixed: Vec<(VariableId, bool)>,
    total_variables: usize,
}

impl GraphicalModel {
    /// Assemble a model from labelled factors. `open` lists variables that
    /// stay as indices of the result instead of being summed.
    pub fn from_parts(
        grid: Option<Grid>,
        variables: Vec<VariableId>,
        factors: Vec<Factor>,
        open: Vec<usize>,
        scalar: Complex64,
    ) -> Self {
        let mut graph = Graph::new(variables.len());
        for f in &factors {
            assert!(
                f.vars().iter().all(|&v| v < variables.len()),
                "factor references an unknown variable"
            );
            graph.add_clique(f.vars());
        }
        let total_variables = variables.len();
        GraphicalModel {
            grid,
            variables,
            factors,
            graph,
            open,
            scalar,
            fixed: Vec::new(),
            total_variables,
        }
    }

    pub fn grid(&self) -> Option<Grid> {
        self.grid
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[VariableId] {
        &self.variables
    }

    pub fn variable(&self, label: usize) -> VariableId {
        self.variables[label]
    }

    pub fn label_of(&self, id: VariableId) -> Option<usize> {
        self.variables.binary_search(&id).ok()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Labels left open (free endpoints), ascending.
    pub fn open(&self) -> &[usize] {
        &self.open
    }

    /// Product of factors that became constant after fixing endpoints.
    pub fn scalar(&self) -> Complex64 {
        self.scalar
    }

    pub fn fixed(&self) -> &[(VariableId, bool)] {
        &self.fixed
    }

    /// Variable count before endpoint simplification.
    pub fn total_variables(&self) -> usize {
        self.total_variables
    }

    /// Interaction graph as `j:k j:k` lines.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b) in self.graph.edges() {
            out.push_str(&format!("{} {}\n", self.variables[a], self.variables[b]));
        }
        out
    }
}

/// Model for the given endpoints.
pub fn build_model(circuit: &Circuit, boundary: &Boundary) -> Result<GraphicalModel> {
    ModelBuilder::from_circuit(circuit).build(boundary)
}

/// Model for `<x| U |0...0>`.
pub fn amplitude_model(circuit: &Circuit, x: &BitString) -> Result<GraphicalModel> {
    x.check_len(circuit.num_qubits())?;
    build_model(circuit, &Boundary::amplitude(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::hadamard_cz_example;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn hadamard_and_cz_tables() {
        let h = gate_factor(GateKind::H, &[0, 1]).unwrap();
        assert_eq!(
            h.values(),
            &[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2)]
        );
        let cz = gate_factor(GateKind::Cz, &[3, 1]).unwrap();
        assert_eq!(cz.vars(), &[1, 3]);
        assert_eq!(cz.values(), &[c(1.0), c(1.0), c(1.0), c(-1.0)]);
        let t = gate_factor(GateKind::T, &[0]).unwrap();
        assert_eq!(t.values()[0], c(1.0));
        assert!((t.values()[1] - Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)).norm() < 1e-15);
        assert!(gate_factor(GateKind::T, &[0, 1]).is_err());
    }

    #[test]
    fn nondiagonal_factor_uses_output_row() {
        // psi(b, b') = U[b'][b]; with from > to the table is transposed.
        let m = GateKind::YHalf.matrix().unwrap();
        let f = gate_factor(GateKind::YHalf, &[5, 2]).unwrap();
        assert_eq!(f.vars(), &[2, 5]);
        // f(b'=1, b=0) = U[1][0]
        assert_eq!(f.get(&[true, false]), m[1][0]);
        assert_eq!(f.get(&[false, true]), m[0][1]);
    }

    #[test]
    fn free_endpoints_graph() {
        let c = hadamard_cz_example();
        let m = build_model(&c, &Boundary::all_free(2)).unwrap();
        assert_eq!(m.num_variables(), 6);
        assert_eq!(m.graph().num_edges(), 5);
        assert_eq!(m.open().len(), 4);
    }

    #[test]
    fn fixed_endpoints_simplify() {
        let c = hadamard_cz_example();
        let m = amplitude_model(&c, &"00".parse().unwrap()).unwrap();
        assert_eq!(m.variables(), &[VariableId::new(0, 1), VariableId::new(1, 1)]);
        assert_eq!(m.graph().edges(), vec![(0, 1)]);
        assert_eq!(m.total_variables(), 6);
        assert_eq!(m.fixed().len(), 4);
        assert_eq!(m.edge_list(), "0:1 1:1\n");
    }

    #[test]
    fn boundary_length_mismatch_is_an_error() {
        let c = hadamard_cz_example();
        assert!(matches!(
            build_model(&c, &Boundary::free_outputs(3)),
            Err(Error::InconsistentEndpoints(_))
        ));
    }

    #[test]
    fn rejects_non_unitary_two_qubit_gate() {
        let mut m = [[c(0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = c(1.0);
        }
        m[3][3] = c(1.1);
        let mut b = ModelBuilder::new(Grid::line(2));
        assert!(matches!(b.apply_two_qubit(0, 1, &m), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn variable_id_text() {
        let v: VariableId = "3:7".parse().unwrap();
        assert_eq!(v, VariableId::new(3, 7));
        assert_eq!(v.to_string(), "3:7");
        assert!("3-7".parse::<VariableId>().is_err());
    }
}
