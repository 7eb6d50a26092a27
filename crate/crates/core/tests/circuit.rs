use std::collections::HashMap;

use circgraph::circuit::{
    cz_pattern, hadamard_cz_example, parse_circuit_with_grid, worldline_lengths, CZ_PATTERN_COUNT,
};
use circgraph::{generate_random_circuit, parse_circuit, serialize_circuit, Circuit, Error, GateKind, Grid};
use proptest::prelude::*;

/// Independent check of every layout rule of the generator.
fn check_generated(c: &Circuit) -> Result<(), String> {
    let grid = c.grid();
    let n = grid.num_qubits();
    let mut last_single: Vec<Option<GateKind>> = vec![None; n];
    let mut in_cz_prev = vec![false; n];
    for t in 0..c.depth() {
        let gates = c.cycle(t);
        let mut used = vec![false; n];
        for g in gates {
            for &q in g.qubits() {
                if std::mem::replace(&mut used[q], true) {
                    return Err(format!("qubit {q} used twice in cycle {t}"));
                }
            }
        }
        let czs: Vec<_> = gates.iter().filter(|g| g.kind == GateKind::Cz).collect();
        for (i, a) in czs.iter().enumerate() {
            let qa = a.qubits();
            if !grid.are_neighbors(qa[0], qa[1]) {
                return Err(format!("CZ {qa:?} not neighbours"));
            }
            for b in &czs[i + 1..] {
                let qb = b.qubits();
                if qa.iter().any(|&x| qb.iter().any(|&y| grid.are_neighbors(x, y))) {
                    return Err(format!("adjacent CZs {qa:?} {qb:?} in cycle {t}"));
                }
            }
        }
        let mut in_cz = vec![false; n];
        for g in &czs {
            for &q in g.qubits() {
                in_cz[q] = true;
            }
        }
        if t == 0 {
            if gates.len() != n || gates.iter().any(|g| g.kind != GateKind::H) {
                return Err("cycle 0 is not all-H".into());
            }
            continue;
        }
        let singles: HashMap<usize, GateKind> = gates
            .iter()
            .filter(|g| g.kind != GateKind::Cz)
            .map(|g| (g.qubits()[0], g.kind))
            .collect();
        for q in 0..n {
            let expect = !in_cz[q] && in_cz_prev[q];
            match (expect, singles.get(&q)) {
                (false, None) => {}
                (true, Some(&k)) => {
                    match last_single[q] {
                        None if k != GateKind::T => return Err(format!("first gate on {q} is {k:?}")),
                        Some(prev) if prev == k => return Err(format!("repeated {k:?} on {q}")),
                        _ => {}
                    }
                    if k == GateKind::H {
                        return Err("H after cycle 0".into());
                    }
                    last_single[q] = Some(k);
                }
                (e, got) => return Err(format!("cycle {t} qubit {q}: expected gate {e}, got {got:?}")),
            }
        }
        in_cz_prev = in_cz;
    }
    Ok(())
}

#[test]
fn example_worldlines() {
    let w = worldline_lengths(&hadamard_cz_example());
    assert_eq!(w.per_qubit, vec![2, 2]);
}

#[test]
fn empty_circuit_worldlines() {
    let c = Circuit::empty(Grid::new(2, 3).unwrap());
    assert_eq!(worldline_lengths(&c).per_qubit, vec![0; 6]);
}

#[test]
fn worldlines_match_independent_scan() {
    let c = generate_random_circuit(4, 4, 10, 3).unwrap();
    let mut counts = vec![0; 16];
    for g in c.gates() {
        if matches!(g.kind, GateKind::H | GateKind::XHalf | GateKind::YHalf) {
            counts[g.qubits()[0]] += 1;
        }
    }
    let w = worldline_lengths(&c);
    assert_eq!(w.per_qubit, counts);
    for (j, &count) in counts.iter().enumerate() {
        assert_eq!(w.upto(j, c.depth()), count);
        let by_cycle = c
            .gates()
            .iter()
            .filter(|g| g.cycle < 5 && !g.kind.is_diagonal() && g.qubits()[0] == j)
            .count();
        assert_eq!(w.upto(j, 5), by_cycle);
    }
}

#[test]
fn depth_one_is_hadamards_only() {
    let c = generate_random_circuit(2, 2, 1, 7).unwrap();
    assert_eq!(c.gates().len(), 4);
    assert!(c.gates().iter().all(|g| g.kind == GateKind::H && g.cycle == 0));
    assert_eq!(c, generate_random_circuit(2, 2, 1, 8).unwrap());
}

#[test]
fn five_by_five_passes_invariant_checker() {
    let c = generate_random_circuit(5, 5, 15, 42).unwrap();
    check_generated(&c).unwrap();
}

#[test]
fn generated_circuits_use_t_and_both_square_roots() {
    let c = generate_random_circuit(4, 4, 30, 1).unwrap();
    for k in [GateKind::T, GateKind::XHalf, GateKind::YHalf] {
        assert!(c.gates().iter().any(|g| g.kind == k), "{k:?} missing");
    }
}

#[test]
fn patterns_cover_every_edge_once() {
    let grid = Grid::new(5, 6).unwrap();
    let mut all: Vec<_> = (0..CZ_PATTERN_COUNT).flat_map(|p| cz_pattern(grid, p)).collect();
    all.sort();
    let before = all.len();
    all.dedup();
    assert_eq!(before, all.len());
    assert_eq!(all.len(), 5 * 5 + 6 * 4);
}

#[test]
fn invalid_dimensions() {
    assert!(matches!(
        generate_random_circuit(0, 2, 3, 0),
        Err(Error::InvalidDimensions { .. })
    ));
    assert!(matches!(generate_random_circuit(2, 2, 0, 0), Err(Error::InvalidDepth)));
}

#[test]
fn parse_plain_hadamard_layer() {
    let c = parse_circuit("4\n0 h 0\n0 h 1\n0 h 2\n0 h 3\n").unwrap();
    assert_eq!(c.num_qubits(), 4);
    assert_eq!(c.depth(), 1);
    assert_eq!(c.cycle(0).len(), 4);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let grid = Some(Grid::new(2, 2).unwrap());
    let e = parse_circuit_with_grid("4\n0 h 0\n1 cz 0 5\n", grid).unwrap_err();
    assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
    let e = parse_circuit_with_grid("4\n1 cz 0 3\n", grid).unwrap_err();
    assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
    for (text, line) in [
        ("2\n0 q 0\n", 2),
        ("2\n0 h\n", 2),
        ("2\n0 h 0 1\n", 2),
        ("2\n0 h 0\n0 t 0\n", 3),
        ("x\n", 1),
    ] {
        match parse_circuit(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn depth_directive_keeps_empty_cycles() {
    let c = parse_circuit("1\n# depth 4\n0 h 0\n").unwrap();
    assert_eq!(c.depth(), 4);
    assert!(matches!(
        parse_circuit("1\n# depth 1\n2 h 0\n"),
        Err(Error::Parse { line: 2, .. })
    ));
}

#[test]
fn adjacent_czs_in_one_cycle_are_rejected() {
    // (0,1) and (2,3) on a 1x4 chain touch neighbouring qubits 1 and 2
    let e = parse_circuit("4\n0 cz 0 1\n0 cz 2 3\n").unwrap_err();
    assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
}

#[test]
fn serialize_is_canonical() {
    let messy = "2\n# a comment\n\n1 h 1\n0 h 1\n0 h 0\n2 cz 1 0\n";
    let c = parse_circuit(messy).unwrap();
    let text = serialize_circuit(&c);
    assert_eq!(text, "2\n# grid 1 2\n# depth 3\n0 h 0\n0 h 1\n1 h 1\n2 cz 0 1\n");
    assert_eq!(parse_circuit(&text).unwrap(), c);
}

#[test]
fn generator_is_byte_deterministic() {
    let a = serialize_circuit(&generate_random_circuit(3, 4, 20, 11).unwrap());
    let b = serialize_circuit(&generate_random_circuit(3, 4, 20, 11).unwrap());
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_circuits_satisfy_layout_rules(r in 1usize..6, c in 1usize..6, d in 1usize..30, seed: u64) {
        let circuit = generate_random_circuit(r, c, d, seed).unwrap();
        prop_assert_eq!(circuit.depth(), d);
        check_generated(&circuit).map_err(TestCaseError::fail)?;
        let w = worldline_lengths(&circuit);
        prop_assert_eq!(w.prefix.last().unwrap(), &w.per_qubit);
    }

    #[test]
    fn parse_serialize_round_trip(r in 1usize..5, c in 1usize..5, d in 1usize..20, seed: u64) {
        let circuit = generate_random_circuit(r, c, d, seed).unwrap();
        let text = serialize_circuit(&circuit);
        let back = parse_circuit(&text).unwrap();
        prop_assert_eq!(&back, &circuit);
        prop_assert_eq!(serialize_circuit(&back), text);
    }
}
