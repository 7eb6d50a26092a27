mod common;

use approx::assert_abs_diff_eq;
use circgraph::benchmark::xeb_error_model;
use circgraph::circuit::hadamard_cz_example;
use circgraph::simulator::{sample_outputs_with, statevector_oracle_with};
use circgraph::{
    amplitude, batch_probabilities, generate_random_circuit, sample_outputs, statevector_oracle, AmplitudeOptions,
    BitString, Circuit, Error, Execution, Gate, GateKind, Grid, OrderingStrategy, Precision, SampleSet,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{amplitude_error, naive_state, std_dev};

fn opts() -> AmplitudeOptions {
    AmplitudeOptions::default()
}

#[test]
fn worked_example_amplitudes() {
    let c = hadamard_cz_example();
    let want = [0.5, 0.5, 0.5, -0.5];
    for (idx, w) in want.into_iter().enumerate() {
        let r = amplitude(&c, &BitString::from_index(idx as u64, 2), &opts()).unwrap();
        assert_abs_diff_eq!(r.amplitude.re, w, epsilon = 1e-12);
        assert_abs_diff_eq!(r.amplitude.im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.probability, 0.25, epsilon = 1e-12);
        assert_eq!(r.bitstring, BitString::from_index(idx as u64, 2).to_string());
    }
}

#[test]
fn matches_naive_state_on_three_by_three() {
    let c = generate_random_circuit(3, 3, 12, 7).unwrap();
    let psi = naive_state(&c);
    for strategy in [
        OrderingStrategy::Vertical,
        OrderingStrategy::min_fill(2, 0),
        OrderingStrategy::Auto,
    ] {
        let options = AmplitudeOptions {
            strategy: strategy.clone(),
            ..opts()
        };
        for idx in (0..512).step_by(37) {
            let r = amplitude(&c, &BitString::from_index(idx, 9), &options).unwrap();
            assert!(
                amplitude_error(r.amplitude, psi[idx as usize], 9) < 1e-12,
                "{strategy:?} {idx}"
            );
        }
    }
}

#[test]
fn statevector_matches_naive_state() {
    let c = generate_random_circuit(3, 4, 15, 1).unwrap();
    let sv = statevector_oracle(&c).unwrap();
    for (a, b) in sv.iter().zip(naive_state(&c)) {
        assert!((a - b).norm() < 1e-12);
    }
    let norm: f64 = sv.iter().map(|a| a.norm_sqr()).sum();
    assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
}

#[test]
fn all_hadamard_state_is_uniform() {
    let grid = Grid::new(2, 3).unwrap();
    let gates = (0..6).map(|q| Gate::single(GateKind::H, 0, q)).collect();
    let c = Circuit::new(grid, 1, gates).unwrap();
    let sv = statevector_oracle(&c).unwrap();
    let a = 2f64.powf(-3.0);
    assert!(sv.iter().all(|z| (z - Complex64::new(a, 0.0)).norm() < 1e-14));
}

#[test]
fn statevector_cap() {
    let c = generate_random_circuit(2, 3, 4, 0).unwrap();
    let e = statevector_oracle_with(&c, 5, Execution::default()).unwrap_err();
    assert!(matches!(e, Error::CapExceeded { got: 6, cap: 5, .. }));
}

#[test]
fn batch_handles_duplicates_and_order() {
    let c = generate_random_circuit(2, 3, 10, 2).unwrap();
    let x: BitString = "101100".parse().unwrap();
    let y: BitString = "000111".parse().unwrap();
    let r = batch_probabilities(&c, &[x.clone(), y.clone(), x.clone()], &opts(), 0);
    let r: Vec<_> = r.into_iter().map(Result::unwrap).collect();
    assert_eq!(r[0].amplitude, r[2].amplitude);
    assert_eq!(r[1].bitstring, "000111");
    assert!(batch_probabilities(&c, &[], &opts(), 0).is_empty());
}

#[test]
fn batch_items_fail_independently() {
    let c = generate_random_circuit(2, 2, 6, 0).unwrap();
    let xs = vec![
        "0000".parse().unwrap(),
        "00000".parse().unwrap(),
        "1111".parse().unwrap(),
    ];
    let r = batch_probabilities(&c, &xs, &opts(), 0);
    assert!(r[0].is_ok() && r[2].is_ok());
    assert!(matches!(r[1], Err(Error::BitStringLength { .. })));
}

#[test]
fn batch_of_a_thousand_matches_oracle() {
    let c = generate_random_circuit(4, 5, 20, 3).unwrap();
    let sv = statevector_oracle(&c).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let xs: Vec<BitString> = (0..1000)
        .map(|_| BitString::from_index(rng.random_range(0..1 << 20), 20))
        .collect();
    let r = batch_probabilities(&c, &xs, &opts(), 0);
    for (x, r) in xs.iter().zip(r) {
        let r = r.unwrap();
        assert!(amplitude_error(r.amplitude, sv[x.to_index() as usize], 20) < 1e-10);
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let c = generate_random_circuit(3, 3, 14, 4).unwrap();
    let xs: Vec<BitString> = (0..64).map(|i| BitString::from_index(i * 7, 9)).collect();
    let amps = |workers| -> Vec<Complex64> {
        batch_probabilities(&c, &xs, &opts(), workers)
            .into_iter()
            .map(|r| r.unwrap().amplitude)
            .collect()
    };
    assert_eq!(amps(1), amps(8));
    assert_eq!(amps(1), amps(0));
}

#[test]
fn probabilities_sum_to_one() {
    let c = generate_random_circuit(3, 3, 10, 5).unwrap();
    let xs: Vec<BitString> = (0..512).map(|i| BitString::from_index(i, 9)).collect();
    let total: f64 = batch_probabilities(&c, &xs, &opts(), 0)
        .into_iter()
        .map(|r| r.unwrap().probability)
        .sum();
    assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
}

#[test]
fn sampling_the_whole_cube_is_exact() {
    let c = generate_random_circuit(3, 3, 12, 0).unwrap();
    let s = sample_outputs(&c, 512, 100, 1).unwrap();
    assert_eq!(s.set.len(), 512);
    assert_abs_diff_eq!(s.total, 1.0, epsilon = 1e-10);
    let sv = statevector_oracle(&c).unwrap();
    let exact: f64 = -sv
        .iter()
        .map(|a| a.norm_sqr())
        .filter(|&p| p > 0.0)
        .map(|p| p * p.ln())
        .sum::<f64>();
    assert_abs_diff_eq!(s.entropy_estimate(), exact, epsilon = 1e-9);
}

#[test]
fn uniform_circuit_samples() {
    let grid = Grid::new(2, 2).unwrap();
    let c = Circuit::new(grid, 1, (0..4).map(|q| Gate::single(GateKind::H, 0, q)).collect()).unwrap();
    let s = sample_outputs(&c, 8, 8, 0).unwrap();
    assert!(s.probabilities.iter().all(|&p| (p - 1.0 / 16.0).abs() < 1e-14));
    assert_abs_diff_eq!(s.entropy_estimate(), 16f64.ln(), epsilon = 1e-12);
    assert!(s.samples.iter().all(|&i| i < 8));
}

#[test]
fn sampling_rejects_bad_sizes() {
    let c = hadamard_cz_example();
    assert!(sample_outputs(&c, 2, 3, 0).is_err());
    assert!(sample_outputs(&c, 5, 1, 0).is_err());
    assert!(sample_outputs(&c, 1, 0, 0).is_err());
}

#[test]
fn sampled_entropy_spread_within_error_model() {
    // repeated estimates of the entropy from T on a 4x4 circuit
    let c = generate_random_circuit(4, 4, 20, 1).unwrap();
    let sv = statevector_oracle(&c).unwrap();
    let probs: Vec<f64> = sv.iter().map(|a| a.norm_sqr()).collect();
    let h = -probs.iter().filter(|&&p| p > 0.0).map(|p| p * p.ln()).sum::<f64>();
    let (t, m) = (4096, 1000);
    // statevector lookups stand in for elimination to keep the repeats cheap
    let estimates: Vec<f64> = (0..20)
        .map(|seed| {
            SampleSet::draw(16, t, m, seed, |xs| {
                Ok(xs.iter().map(|x| probs[x.to_index() as usize]).collect())
            })
            .unwrap()
            .entropy_estimate()
        })
        .collect();
    let direct = sample_outputs_with(&c, 64, 16, 3, &opts(), 0).unwrap();
    let looked_up = SampleSet::draw(16, 64, 16, 3, |xs| {
        Ok(xs.iter().map(|x| probs[x.to_index() as usize]).collect())
    })
    .unwrap();
    assert_eq!(direct.set, looked_up.set);
    assert_eq!(direct.samples, looked_up.samples);
    for (a, b) in direct.probabilities.iter().zip(&looked_up.probabilities) {
        assert!((a - b).abs() < 1e-12 * b.max(1e-6));
    }
    let spread = std_dev(&estimates);
    let model = xeb_error_model(t, m, h, 16).spread();
    assert!(spread <= model, "spread {spread}, model {model}");
    let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
    assert!((mean - h).abs() < 4.0 * spread.max(1e-3));
}

#[test]
fn single_precision_error() {
    let c = generate_random_circuit(3, 4, 16, 8).unwrap();
    let sv = statevector_oracle(&c).unwrap();
    let options = AmplitudeOptions {
        precision: Precision::Single,
        ..opts()
    };
    for idx in (0..4096).step_by(97) {
        let r = amplitude(&c, &BitString::from_index(idx, 12), &options).unwrap();
        assert!(amplitude_error(r.amplitude, sv[idx as usize], 12) < 1e-4);
    }
    assert_eq!("f32".parse::<Precision>().unwrap(), Precision::Single);
    assert!("half".parse::<Precision>().is_err());
}

#[test]
fn sequential_matches_parallel() {
    let c = generate_random_circuit(4, 4, 16, 2).unwrap();
    let x = BitString::from_index(12345, 16);
    let run = |exec| {
        amplitude(&c, &x, &AmplitudeOptions { exec, ..opts() })
            .unwrap()
            .amplitude
    };
    assert_eq!(run(Execution::Sequential), run(Execution::Parallel));
    let sv = |exec| statevector_oracle_with(&c, 20, exec).unwrap();
    assert_eq!(sv(Execution::Sequential), sv(Execution::Parallel));
}

#[test]
fn memory_budget_surfaces_as_error() {
    let c = generate_random_circuit(5, 5, 20, 0).unwrap();
    let options = AmplitudeOptions {
        memory_budget: 1 << 10,
        ..opts()
    };
    let e = amplitude(&c, &BitString::zeros(25), &options).unwrap_err();
    assert!(matches!(e, Error::BudgetExceeded { .. }));
}

#[test]
fn fixed_ordering_strategy() {
    let c = hadamard_cz_example();
    let options = AmplitudeOptions {
        strategy: OrderingStrategy::Fixed(vec![1, 0]),
        ..opts()
    };
    let r = amplitude(&c, &BitString::zeros(2), &options).unwrap();
    assert_abs_diff_eq!(r.amplitude.re, 0.5, epsilon = 1e-12);
    assert_eq!(r.width, 1);
    let bad = AmplitudeOptions {
        strategy: OrderingStrategy::Fixed(vec![0]),
        ..opts()
    };
    assert!(amplitude(&c, &BitString::zeros(2), &bad).is_err());
}

#[test]
fn result_serializes() {
    let r = amplitude(&hadamard_cz_example(), &BitString::zeros(2), &opts()).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"bitstring\":\"00\""));
}
