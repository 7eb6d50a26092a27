//! Sequential vs rayon execution of the data-parallel kernels.

use circgraph::benchmark::{bootstrap_error_with, entropy_estimate};
use circgraph::elimination::{bucket_eliminate, greedy_model_ordering, EliminationConfig, Heuristic};
use circgraph::ising::{build_ising, partition_amplitude_with, DEFAULT_SPIN_CAP};
use circgraph::simulator::statevector_oracle_with;
use circgraph::{
    amplitude_model, batch_probabilities, generate_random_circuit, AmplitudeOptions, BitString, Execution,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn statevector(c: &mut Criterion) {
    let circuit = generate_random_circuit(4, 5, 20, 0).unwrap();
    let mut group = c.benchmark_group("statevector_4x5_d20");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| statevector_oracle_with(black_box(&circuit), 20, exec).unwrap())
        });
    }
    group.finish();
}

fn elimination(c: &mut Criterion) {
    let circuit = generate_random_circuit(6, 6, 25, 0).unwrap();
    let model = amplitude_model(&circuit, &BitString::zeros(36)).unwrap();
    let (ordering, _) = greedy_model_ordering(&model, Heuristic::MinFill, 8, 0);
    let mut group = c.benchmark_group("bucket_elimination_6x6_d25");
    group.sample_size(10);
    for (name, exec) in MODES {
        let config = EliminationConfig {
            exec,
            ..EliminationConfig::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| bucket_eliminate::<f64>(black_box(&model), &ordering, &config).unwrap())
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let circuit = generate_random_circuit(4, 4, 20, 0).unwrap();
    let xs: Vec<BitString> = (0..256u64).map(|i| BitString::from_index(i * 251, 16)).collect();
    let mut group = c.benchmark_group("batch_probabilities_4x4_d20_x256");
    group.sample_size(10);
    for (name, exec) in MODES {
        let options = AmplitudeOptions {
            exec,
            ..AmplitudeOptions::default()
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| batch_probabilities(black_box(&circuit), &xs, &options, 0))
        });
    }
    group.finish();
}

fn ising(c: &mut Criterion) {
    let circuit = generate_random_circuit(3, 3, 14, 0).unwrap();
    let model = build_ising(&circuit);
    let x = BitString::zeros(9);
    let mut group = c.benchmark_group("ising_enumeration_3x3_d14");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| partition_amplitude_with(black_box(&model), &x, DEFAULT_SPIN_CAP, exec).unwrap())
        });
    }
    group.finish();
}

fn bootstrap(c: &mut Criterion) {
    let probs: Vec<f64> = (1..=20_000).map(|i| (i as f64) / 2e8).collect();
    let mut group = c.benchmark_group("bootstrap_entropy_20k_x200");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| bootstrap_error_with(black_box(&probs), |v| entropy_estimate(v, 14), 200, 0, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, statevector, elimination, batch, ising, bootstrap);
criterion_main!(benches);
