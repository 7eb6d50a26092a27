use crate::circuit::{Circuit, Gate};
use crate::graph::Graph;

/// Tensor of the circuit's tensor network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorNode {
    Input(usize),
    Gate(Gate),
    Output(usize),
}

/// Qubit wire between two tensors; a vertex of the line graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Wire {
    pub qubit: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone)]
pub struct LineGraph {
    pub nodes: Vec<TensorNode>,
    pub wires: Vec<Wire>,
    /// Vertices are wires; wires sharing a tensor form a clique.
    pub graph: Graph,
}

/// Tensor network with one node per gate plus input and output stubs, and
/// its line graph.
pub fn build_line_graph(circuit: &Circuit) -> LineGraph {
    let n = circuit.num_qubits();
    let mut nodes: Vec<TensorNode> = (0..n).map(TensorNode::Input).collect();
    let mut last: Vec<usize> = (0..n).collect();
    let mut wires = Vec::new();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];

    let mut connect = |nodes: &Vec<TensorNode>, last: &mut Vec<usize>, incident: &mut Vec<Vec<usize>>, q: usize| {
        let to = nodes.len() - 1;
        wires.push(Wire {
            qubit: q,
            from: last[q],
            to,
        });
        let w = wires.len() - 1;
        incident[last[q]].push(w);
        incident[to].push(w);
        last[q] = to;
    };

    for g in circuit.gates() {
        nodes.push(TensorNode::Gate(*g));
        incident.push(Vec::new());
        for &q in g.qubits() {
            connect(&nodes, &mut last, &mut incident, q);
        }
    }
    for q in 0..n {
        nodes.push(TensorNode::Output(q));
        incident.push(Vec::new());
        connect(&nodes, &mut last, &mut incident, q);
    }

    let mut graph = Graph::new(wires.len());
    for ws in &incident {
        graph.add_clique(ws);
    }
    LineGraph { nodes, wires, graph }
}
