//! Exact amplitudes of low-depth grid quantum circuits.
//!
//! A circuit is mapped to an undirected graphical model over worldline
//! variables, and amplitudes are computed by bucket elimination under a
//! chosen variable ordering. The crate also provides a state-vector oracle,
//! an Ising path-sum oracle, output sampling and cross-entropy benchmarking.
//!
//! ```
//! use circgraph::{amplitude, circuit::hadamard_cz_example, AmplitudeOptions, BitString};
//!
//! let c = hadamard_cz_example();
//! let r = amplitude(&c, &BitString::zeros(2), &AmplitudeOptions::default()).unwrap();
//! assert!((r.amplitude.re - 0.5).abs() < 1e-12);
//! ```

pub mod benchmark;
pub mod bitstring;
pub mod circuit;
pub mod elimination;
pub mod error;
pub mod exec;
pub mod graph;
pub mod ising;
pub mod model;
pub mod simulator;
pub mod tensor;

pub use bitstring::{parse_bitstrings, BitString};
pub use circuit::{generate_random_circuit, parse_circuit, serialize_circuit, Circuit, Gate, GateKind, Grid};
pub use error::{Error, Result};
pub use exec::{derive_seed, Execution, SEED_SCHEME};
pub use model::{amplitude_model, build_model, Boundary, Endpoint, GraphicalModel, VariableId};
pub use simulator::{
    amplitude, batch_probabilities, sample_outputs, statevector_oracle, AmplitudeOptions, AmplitudeResult,
    OrderingStrategy, Precision, SampleSet,
};
