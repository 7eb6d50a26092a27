use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use circgraph::benchmark::{cross_entropy, fidelity_estimate, porter_thomas_constants, pt_check_with};
use circgraph::elimination::{
    build_line_graph, greedy_model_ordering, greedy_ordering, simulate_elimination, vertical_ordering, Heuristic,
    Ordering, OrderingKind, WidthReport,
};
use circgraph::ising::{build_ising, clifford_phase_profile, partition_amplitude_with, DEFAULT_SPIN_CAP};
use circgraph::simulator::{sample_outputs_with, statevector_oracle_with, DEFAULT_STATEVECTOR_CAP};
use circgraph::{
    amplitude_model, batch_probabilities, derive_seed, generate_random_circuit, parse_bitstrings, parse_circuit,
    serialize_circuit, AmplitudeOptions, AmplitudeResult, BitString, Circuit, GateKind, OrderingStrategy,
};

use crate::args::{parse_depths, CircuitSource, Format, OrderingArg, SimOptions};
use crate::output::{emit, to_json, with_suffix, write_metadata, Metadata};
use crate::{Mismatch, UsageError};

fn load_circuit(source: &CircuitSource) -> Result<Circuit> {
    match (&source.circuit, source.rows, source.cols, source.depth) {
        (Some(path), None, None, None) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(parse_circuit(&text).with_context(|| format!("parsing {}", path.display()))?)
        }
        (None, Some(r), Some(c), Some(d)) => Ok(generate_random_circuit(r, c, d, source.seed)?),
        (Some(_), ..) => Err(UsageError("--circuit cannot be combined with --rows/--cols/--depth".into()).into()),
        _ => Err(UsageError("give either --circuit or all of --rows, --cols and --depth".into()).into()),
    }
}

fn circuit_seeds(source: &CircuitSource) -> Vec<(&'static str, u64)> {
    if source.circuit.is_none() {
        vec![("circuit", source.seed)]
    } else {
        Vec::new()
    }
}

fn amplitude_options(circuit: &Circuit, sim: &SimOptions) -> Result<AmplitudeOptions> {
    let strategy = match &sim.ordering_file {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let model = amplitude_model(circuit, &BitString::zeros(circuit.num_qubits()))?;
            OrderingStrategy::Fixed(Ordering::from_text(&text, &model)?.as_slice().to_vec())
        }
        None => sim.strategy(),
    };
    Ok(AmplitudeOptions {
        strategy,
        precision: sim.precision(),
        memory_budget: sim.memory_budget,
        exec: sim.exec(),
    })
}

fn probabilities(circuit: &Circuit, xs: &[BitString], sim: &SimOptions) -> Result<Vec<AmplitudeResult>> {
    let options = amplitude_options(circuit, sim)?;
    Ok(batch_probabilities(circuit, xs, &options, sim.workers)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?)
}

fn finish<A: Serialize>(
    output: Option<&std::path::Path>,
    command: &'static str,
    args: &A,
    seeds: &[(&'static str, u64)],
) -> Result<()> {
    if let Some(path) = output {
        write_metadata(path, &Metadata::new(command, args, seeds))?;
    }
    Ok(())
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[arg(long)]
    pub rows: usize,
    #[arg(long)]
    pub cols: usize,
    /// Cycles, including the initial Hadamard layer.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Circuit file; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

pub fn generate(a: &GenerateArgs) -> Result<()> {
    let circuit = generate_random_circuit(a.rows, a.cols, a.depth as usize, a.seed)?;
    emit(a.output.as_deref(), &serialize_circuit(&circuit))?;
    finish(a.output.as_deref(), "generate", a, &[("circuit", a.seed)])
}

#[derive(Debug, Args, Serialize)]
pub struct AmplitudeArgs {
    #[command(flatten)]
    pub source: CircuitSource,
    /// Output bit-string, qubit 0 first; repeatable.
    #[arg(long = "bitstring", short = 'x')]
    pub bitstrings: Vec<String>,
    /// File with one bit-string per line.
    #[arg(long)]
    pub bitstring_file: Option<PathBuf>,
    #[command(flatten)]
    pub sim: SimOptions,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write 0 in the seconds column so reruns are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

pub fn amplitude(a: &AmplitudeArgs) -> Result<()> {
    let circuit = load_circuit(&a.source)?;
    let n = circuit.num_qubits();
    let mut xs: Vec<BitString> = a.bitstrings.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    for x in &xs {
        x.check_len(n)?;
    }
    if let Some(path) = &a.bitstring_file {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        xs.extend(parse_bitstrings(&text, n).with_context(|| format!("parsing {}", path.display()))?);
    }
    if xs.is_empty() {
        return Err(UsageError("no bit-strings given; use --bitstring or --bitstring-file".into()).into());
    }
    let mut results = probabilities(&circuit, &xs, &a.sim)?;
    if a.no_timing {
        for r in &mut results {
            r.seconds = 0.0;
        }
    }
    let text = match a.format {
        Format::Json => to_json(&results)?,
        Format::Csv => {
            let mut out = String::from("bitstring,re,im,prob,width,seconds\n");
            for r in &results {
                writeln!(
                    out,
                    "{},{:e},{:e},{:e},{},{}",
                    r.bitstring, r.amplitude.re, r.amplitude.im, r.probability, r.width, r.seconds
                )?;
            }
            out
        }
    };
    emit(a.output.as_deref(), &text)?;
    finish(a.output.as_deref(), "amplitude", a, &circuit_seeds(&a.source))
}

#[derive(Debug, Args, Serialize)]
pub struct WidthArgs {
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// Single depth for a generated circuit.
    #[arg(long, conflicts_with = "depths")]
    pub depth: Option<usize>,
    /// Depths for generated circuits: `A-B` inclusive or `a,b,c`.
    #[arg(long)]
    pub depths: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `auto` reports the better of vertical and min-fill.
    #[arg(long, value_enum, default_value_t = OrderingArg::Vertical)]
    pub ordering: OrderingArg,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub ordering_seed: u64,
    /// Use the line graph of the gate tensor network instead of the
    /// worldline model.
    #[arg(long)]
    pub line_graph: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct WidthRow {
    depth: usize,
    graph: &'static str,
    ordering: OrderingKind,
    vertices: usize,
    edges: usize,
    width: usize,
    max_clique: usize,
    flops: f64,
}

fn heuristic(o: OrderingArg) -> Option<Heuristic> {
    match o {
        OrderingArg::Minfill => Some(Heuristic::MinFill),
        OrderingArg::Mindegree => Some(Heuristic::MinDegree),
        _ => None,
    }
}

fn better(a: (Ordering, WidthReport), b: (Ordering, WidthReport)) -> WidthReport {
    if (b.1.max_clique, b.1.flops) < (a.1.max_clique, a.1.flops) {
        b.1
    } else {
        a.1
    }
}

fn width_row(circuit: &Circuit, a: &WidthArgs) -> Result<WidthRow> {
    let (graph_name, graph, report) = if a.line_graph {
        let lg = build_line_graph(circuit);
        let grid = circuit.grid();
        // wires in worldline order: qubit by vertical rank, then time
        let mut order: Vec<usize> = (0..lg.wires.len()).collect();
        order.sort_by_key(|&w| (grid.vertical_rank(lg.wires[w].qubit), lg.wires[w].from));
        let vertical = || {
            let o = Ordering::new(order.clone(), OrderingKind::Vertical, lg.wires.len()).expect("permutation");
            let r = simulate_elimination(&lg.graph, &o);
            (o, r)
        };
        let report = match (a.ordering, heuristic(a.ordering)) {
            (_, Some(h)) => greedy_ordering(&lg.graph, h, a.restarts, a.ordering_seed).1,
            (OrderingArg::Auto, _) => better(
                vertical(),
                greedy_ordering(&lg.graph, Heuristic::MinFill, a.restarts, a.ordering_seed),
            ),
            _ => vertical().1,
        };
        ("line", lg.graph, report)
    } else {
        let model = amplitude_model(circuit, &BitString::zeros(circuit.num_qubits()))?;
        let vertical = || {
            let o = vertical_ordering(&model);
            let r = simulate_elimination(model.graph(), &o);
            (o, r)
        };
        let report = match (a.ordering, heuristic(a.ordering)) {
            (_, Some(h)) => greedy_model_ordering(&model, h, a.restarts, a.ordering_seed).1,
            (OrderingArg::Auto, _) => better(
                vertical(),
                greedy_model_ordering(&model, Heuristic::MinFill, a.restarts, a.ordering_seed),
            ),
            _ => vertical().1,
        };
        ("direct", model.graph().clone(), report)
    };
    Ok(WidthRow {
        depth: circuit.depth(),
        graph: graph_name,
        ordering: report.ordering,
        vertices: graph.num_vertices(),
        edges: graph.num_edges(),
        width: report.width,
        max_clique: report.max_clique,
        flops: report.flops,
    })
}

pub fn width(a: &WidthArgs) -> Result<()> {
    let circuits: Vec<Circuit> = match (&a.circuit, a.rows, a.cols) {
        (Some(_), None, None) if a.depth.is_none() && a.depths.is_none() => load_circuit(&CircuitSource {
            circuit: a.circuit.clone(),
            rows: None,
            cols: None,
            depth: None,
            seed: a.seed,
        })
        .map(|c| vec![c])?,
        (None, Some(r), Some(c)) => {
            let depths = match (&a.depths, a.depth) {
                (Some(d), _) => parse_depths(d)?,
                (None, Some(d)) => vec![d],
                (None, None) => return Err(UsageError("give --depth or --depths".into()).into()),
            };
            depths
                .into_iter()
                .map(|d| generate_random_circuit(r, c, d, a.seed))
                .collect::<Result<_, _>>()?
        }
        _ => {
            return Err(UsageError("give either --circuit or --rows and --cols with --depth or --depths".into()).into())
        }
    };
    let rows: Vec<WidthRow> = circuits.iter().map(|c| width_row(c, a)).collect::<Result<_>>()?;
    let text = match a.format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut out = String::from("depth,graph,ordering,vertices,edges,width,max_clique,flops\n");
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{:e}",
                    r.depth, r.graph, r.ordering, r.vertices, r.edges, r.width, r.max_clique, r.flops
                )?;
            }
            out
        }
    };
    emit(a.output.as_deref(), &text)?;
    let mut seeds = vec![("ordering", a.ordering_seed)];
    if a.circuit.is_none() {
        seeds.push(("circuit", a.seed));
    }
    finish(a.output.as_deref(), "width", a, &seeds)
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    pub source: CircuitSource,
    /// Size of the uniform set T.
    #[arg(long)]
    pub t: usize,
    /// Size of the sample S drawn from T.
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub sample_seed: u64,
    #[command(flatten)]
    pub sim: SimOptions,
    /// Writes PREFIX.csv (T with probabilities), PREFIX.samples (S) and
    /// PREFIX.json (summary).
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Debug, Serialize)]
struct SampleSummary {
    num_qubits: usize,
    t: usize,
    m: usize,
    total_probability: f64,
    entropy_estimate: f64,
    cross_entropy: Option<f64>,
}

pub fn sample(a: &SampleArgs) -> Result<()> {
    let circuit = load_circuit(&a.source)?;
    let options = amplitude_options(&circuit, &a.sim)?;
    let set = sample_outputs_with(&circuit, a.t, a.m, a.sample_seed, &options, a.sim.workers)?;
    let mut drawn = vec![0usize; set.set.len()];
    for &i in &set.samples {
        drawn[i] += 1;
    }
    let normalized = set.normalized();
    let mut csv = String::from("bitstring,prob,normalized,drawn\n");
    for (i, x) in set.set.iter().enumerate() {
        writeln!(csv, "{x},{:e},{:e},{}", set.probabilities[i], normalized[i], drawn[i])?;
    }
    let samples: String = set.sample_bitstrings().iter().map(|x| format!("{x}\n")).collect();
    let summary = SampleSummary {
        num_qubits: set.num_qubits,
        t: set.set.len(),
        m: set.samples.len(),
        total_probability: set.total,
        entropy_estimate: set.entropy_estimate(),
        cross_entropy: cross_entropy(&set.sample_probabilities()).ok(),
    };
    let json = to_json(&summary)?;
    emit(Some(&with_suffix(&a.output, ".csv")), &csv)?;
    emit(Some(&with_suffix(&a.output, ".samples")), &samples)?;
    emit(Some(&with_suffix(&a.output, ".json")), &json)?;
    emit(None, &json)?;
    let mut seeds = circuit_seeds(&a.source);
    seeds.push(("sample", a.sample_seed));
    finish(Some(&a.output), "sample", a, &seeds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constants {
    /// Asymptotic Porter-Thomas values for n qubits.
    Pt,
    /// Finite-size values from the full output distribution.
    Exact,
}

#[derive(Debug, Args, Serialize)]
pub struct XebArgs {
    #[command(flatten)]
    pub source: CircuitSource,
    /// Measured bit-strings, one per line.
    #[arg(long)]
    pub measured: PathBuf,
    #[arg(long, value_enum, default_value_t = Constants::Pt)]
    pub constants: Constants,
    #[command(flatten)]
    pub sim: SimOptions,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct XebReport {
    alpha: f64,
    cross_entropy: f64,
    h0: f64,
    h_pt: f64,
    m: usize,
    stderr: f64,
    constants: Constants,
}

pub fn xeb(a: &XebArgs) -> Result<()> {
    let circuit = load_circuit(&a.source)?;
    let n = circuit.num_qubits();
    let text = fs::read_to_string(&a.measured).with_context(|| format!("reading {}", a.measured.display()))?;
    let xs = parse_bitstrings(&text, n).with_context(|| format!("parsing {}", a.measured.display()))?;
    let probs: Vec<f64> = probabilities(&circuit, &xs, &a.sim)?
        .iter()
        .map(|r| r.probability)
        .collect();
    let (h0, h_pt) = match a.constants {
        Constants::Pt => {
            let c = porter_thomas_constants(n);
            (c.h0, c.h_pt)
        }
        Constants::Exact => {
            let p: Vec<f64> = statevector_oracle_with(&circuit, DEFAULT_STATEVECTOR_CAP, a.sim.exec())?
                .iter()
                .map(|z| z.norm_sqr())
                .collect();
            let h0 = -p.iter().map(|q| q.ln()).sum::<f64>() / p.len() as f64;
            let h = -p.iter().filter(|&&q| q > 0.0).map(|q| q * q.ln()).sum::<f64>();
            (h0, h)
        }
    };
    let est = fidelity_estimate(&probs, h0, h_pt)?;
    let report = XebReport {
        alpha: est.alpha,
        cross_entropy: est.cross_entropy,
        h0,
        h_pt,
        m: est.m,
        stderr: est.stderr,
        constants: a.constants,
    };
    emit(a.output.as_deref(), &to_json(&report)?)?;
    finish(a.output.as_deref(), "xeb", a, &circuit_seeds(&a.source))
}

#[derive(Debug, Args, Serialize)]
pub struct PtArgs {
    #[command(flatten)]
    pub source: CircuitSource,
    /// Probabilities, one per line, instead of a circuit.
    #[arg(long, requires = "qubits")]
    pub probs: Option<PathBuf>,
    /// Qubit count for --probs.
    #[arg(long)]
    pub qubits: Option<usize>,
    /// Use probabilities of t uniform outputs instead of the full distribution.
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub sample_seed: u64,
    #[arg(long, default_value_t = 50)]
    pub bins: usize,
    #[arg(long, default_value_t = 200)]
    pub resamples: usize,
    #[arg(long, default_value_t = 0)]
    pub bootstrap_seed: u64,
    #[command(flatten)]
    pub sim: SimOptions,
    /// Writes PREFIX.csv (histogram) and PREFIX.json (statistics).
    #[arg(long, short)]
    pub output: PathBuf,
}

pub fn pt(a: &PtArgs) -> Result<()> {
    let mut seeds = vec![("bootstrap", a.bootstrap_seed)];
    let (probs, n) = match (&a.probs, a.source.is_given()) {
        (Some(path), false) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let probs = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| l.parse::<f64>().with_context(|| format!("invalid probability {l:?}")))
                .collect::<Result<Vec<_>>>()?;
            (probs, a.qubits.expect("required by clap"))
        }
        (None, true) => {
            let circuit = load_circuit(&a.source)?;
            seeds.extend(circuit_seeds(&a.source));
            let n = circuit.num_qubits();
            let probs = match a.t {
                Some(t) => {
                    seeds.push(("sample", a.sample_seed));
                    let options = amplitude_options(&circuit, &a.sim)?;
                    sample_outputs_with(&circuit, t, 1, a.sample_seed, &options, a.sim.workers)?.probabilities
                }
                None => statevector_oracle_with(&circuit, DEFAULT_STATEVECTOR_CAP, a.sim.exec())?
                    .iter()
                    .map(|z| z.norm_sqr())
                    .collect(),
            };
            (probs, n)
        }
        _ => return Err(UsageError("give exactly one of --probs or a circuit".into()).into()),
    };
    let stats = pt_check_with(&probs, n, a.bins, a.resamples, a.bootstrap_seed)?;
    let json = to_json(&stats)?;
    emit(Some(&with_suffix(&a.output, ".csv")), &stats.histogram_csv())?;
    emit(Some(&with_suffix(&a.output, ".json")), &json)?;
    emit(None, &json)?;
    finish(Some(&a.output), "pt", a, &seeds)
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: CircuitSource,
    /// Outputs to compare; all 2^n when absent and n <= 10, else 64.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub verify_seed: u64,
    /// Largest accepted relative deviation.
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[command(flatten)]
    pub sim: SimOptions,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Timings {
    elimination: f64,
    statevector: f64,
    ising: Option<f64>,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    num_qubits: usize,
    depth: usize,
    outputs_checked: usize,
    tolerance: f64,
    elimination_vs_statevector: f64,
    ising_vs_statevector: Option<f64>,
    ising_skipped: Option<String>,
    clifford: bool,
    phase_profile: Vec<u8>,
    profile_even: bool,
    seconds: Timings,
    passed: bool,
}

/// `|a - e| / max(|e|, 2^{-n/2})`.
fn relative_deviation(a: Complex64, e: Complex64, n: usize) -> f64 {
    (a - e).norm() / e.norm().max(2f64.powf(-(n as f64) / 2.0))
}

pub fn verify(a: &VerifyArgs) -> Result<()> {
    let circuit = load_circuit(&a.source)?;
    let n = circuit.num_qubits();
    if n >= usize::BITS as usize {
        return Err(UsageError(format!("{n} qubits is too many to verify")).into());
    }
    let space = 1usize << n;
    let count = a.count.unwrap_or(if n <= 10 { space } else { 64 }).min(space);
    let xs: Vec<BitString> = if count == space {
        (0..space as u64).map(|i| BitString::from_index(i, n)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(a.verify_seed, "verify/outputs"));
        let mut idx = index::sample(&mut rng, space, count).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| BitString::from_index(i as u64, n)).collect()
    };

    let start = Instant::now();
    let sv = statevector_oracle_with(&circuit, DEFAULT_STATEVECTOR_CAP, a.sim.exec())?;
    let sv_secs = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let elim = probabilities(&circuit, &xs, &a.sim)?;
    let elim_secs = start.elapsed().as_secs_f64();
    let elim_dev = xs
        .iter()
        .zip(&elim)
        .map(|(x, r)| relative_deviation(r.amplitude, sv[x.to_index() as usize], n))
        .fold(0.0, f64::max);

    let model = build_ising(&circuit);
    let (ising_dev, ising_secs, ising_skipped) = if model.num_free_spins() <= DEFAULT_SPIN_CAP {
        let start = Instant::now();
        let mut dev = 0.0f64;
        for x in &xs {
            let p = partition_amplitude_with(&model, x, DEFAULT_SPIN_CAP, a.sim.exec())?;
            dev = dev.max(relative_deviation(p, sv[x.to_index() as usize], n));
        }
        (Some(dev), Some(start.elapsed().as_secs_f64()), None)
    } else {
        let why = format!(
            "{} free spins exceed the cap of {DEFAULT_SPIN_CAP}",
            model.num_free_spins()
        );
        (None, None, Some(why))
    };

    let clifford = circuit.gates().iter().all(|g| g.kind != GateKind::T);
    let profile: Vec<u8> = clifford_phase_profile(&circuit, 4096, derive_seed(a.verify_seed, "verify/profile"))
        .into_iter()
        .collect();
    let profile_even = profile.iter().all(|u| u % 2 == 0);
    let passed = elim_dev <= a.tolerance && ising_dev.is_none_or(|d| d <= a.tolerance) && (!clifford || profile_even);
    let report = VerifyReport {
        num_qubits: n,
        depth: circuit.depth(),
        outputs_checked: xs.len(),
        tolerance: a.tolerance,
        elimination_vs_statevector: elim_dev,
        ising_vs_statevector: ising_dev,
        ising_skipped,
        clifford,
        phase_profile: profile,
        profile_even,
        seconds: Timings {
            elimination: elim_secs,
            statevector: sv_secs,
            ising: ising_secs,
        },
        passed,
    };
    emit(a.output.as_deref(), &to_json(&report)?)?;
    let mut seeds = circuit_seeds(&a.source);
    seeds.push(("verify", a.verify_seed));
    finish(a.output.as_deref(), "verify", a, &seeds)?;
    if passed {
        Ok(())
    } else {
        Err(Mismatch(format!(
            "oracles disagree: elimination {elim_dev:e}, ising {ising_dev:?}, clifford profile {:?}",
            report.phase_profile
        ))
        .into())
    }
}
