use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dequantlab::circuit::{
    analyze_dil_with, build_fftq, build_grover, parse_circuit_named, AnalysisOptions, CircuitIR, DilReport,
};
use dequantlab::entropy::{binary_entropy, von_neumann_entropy, DensityMatrix};
use dequantlab::matrix::{Complex64, ComplexMatrix, DimCap};
use dequantlab::projector::QuantumState;
use dequantlab::verify::Suite;
use dequantlab::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dequantlab", version, about = "Dequantization entropy and DIL analysis of quantum circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a circuit file and print its DIL report as JSON.
    Analyze {
        file: PathBuf,
        /// Also compute the recurrent register DIL for a basis state.
        #[arg(long)]
        exact: bool,
        /// Basis index of the input state for --exact.
        #[arg(long, requires = "exact", default_value_t = 0)]
        state: usize,
        /// Report entropies in bits.
        #[arg(long)]
        bits: bool,
    },
    /// Build and analyze a built-in circuit.
    Builtin {
        kind: Kind,
        n: usize,
        /// Print the circuit text before the report.
        #[arg(long)]
        emit: bool,
        #[arg(long)]
        bits: bool,
    },
    /// Run seeded property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Binary entropy of a phase fraction, or von Neumann entropy of a density matrix.
    Entropy {
        #[arg(long, conflicts_with = "rho", required_unless_present = "rho")]
        phi: Option<f64>,
        /// JSON array of rows; entries are reals or [re, im] pairs.
        #[arg(long)]
        rho: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Fft,
    Grover,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Conjunction,
    Power,
    Limit,
    Entropy,
    All,
}

enum Failure {
    Usage(String),
    Parse(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Parse(e.to_string()),
            Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

// A closed pipe on stdout is not an error worth reporting.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(m) | Failure::Parse(m) | Failure::Numerical(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}

fn options() -> AnalysisOptions {
    AnalysisOptions { cap: DimCap::from_env(), ..AnalysisOptions::default() }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Analyze { file, exact, state, bits } => {
            let text = std::fs::read_to_string(&file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let name = file.file_stem().and_then(|s| s.to_str()).unwrap_or("circuit");
            let circuit =
                parse_circuit_named(&text, name).map_err(|e| Failure::Parse(format!("{}: {e}", file.display())))?;
            let state = if exact { Some(basis_state(&circuit, state)?) } else { None };
            report(&circuit, state.as_ref(), bits)
        }
        Command::Builtin { kind, n, emit, bits } => {
            let circuit = match kind {
                Kind::Fft => build_fftq(n),
                Kind::Grover => build_grover(n),
            }
            .map_err(usage)?;
            if emit {
                out(&circuit.to_text());
            }
            report(&circuit, None, bits)
        }
        Command::Verify { suite, seed } => verify(suite, seed),
        Command::Entropy { phi, rho } => {
            let value = match (phi, rho) {
                (Some(phi), _) => binary_entropy(phi).map_err(usage)?,
                (None, Some(path)) => von_neumann_entropy(&read_density(&path)?)?,
                (None, None) => return Err(usage("one of --phi or --rho is required")),
            };
            out(&format!("{}\n", json!({ "entropy_nats": value, "entropy_bits": value / std::f64::consts::LN_2 })));
            Ok(())
        }
    }
}

fn basis_state(circuit: &CircuitIR, index: usize) -> Result<QuantumState, Failure> {
    let max = options().max_exact_qubits;
    if circuit.n_qubits > max {
        return Err(usage(format!("--exact supports at most {max} qubits, circuit has {}", circuit.n_qubits)));
    }
    let dim = 1usize << circuit.n_qubits;
    QuantumState::basis(dim, index).map_err(|_| usage(format!("--state {index} outside 0..{dim}")))
}

fn report(circuit: &CircuitIR, state: Option<&QuantumState>, bits: bool) -> Result<(), Failure> {
    let r: DilReport = analyze_dil_with(circuit, state, options())?;
    out(&format!("{}\n", r.to_json(bits)));
    Ok(())
}

fn verify(arg: SuiteArg, seed: u64) -> Result<(), Failure> {
    let suites: Vec<Suite> = match arg {
        SuiteArg::Conjunction => vec![Suite::Conjunction],
        SuiteArg::Power => vec![Suite::Power],
        SuiteArg::Limit => vec![Suite::Limit],
        SuiteArg::Entropy => vec![Suite::Entropy],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut first: Option<Value> = None;
    for s in suites {
        let r = s.run(seed)?;
        out(&r.to_string());
        if first.is_none() {
            first = r.first_failure().map(|(property, detail)| {
                json!({ "suite": s.name(), "seed": seed, "property": property, "counterexample": detail })
            });
        }
    }
    match first {
        None => Ok(()),
        Some(v) => {
            out(&format!("{v}\n"));
            Err(Failure::Numerical("property failed; counterexample above".into()))
        }
    }
}

fn read_density(path: &Path) -> Result<DensityMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let rows: Vec<Vec<Value>> =
        serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Failure::Parse(format!("{}: row {i} has {} entries, expected {n}", path.display(), row.len())));
        }
        for v in row {
            let z = match v {
                Value::Number(x) => x.as_f64().map(|re| Complex64::new(re, 0.0)),
                Value::Array(p) if p.len() == 2 => {
                    p[0].as_f64().zip(p[1].as_f64()).map(|(re, im)| Complex64::new(re, im))
                }
                _ => None,
            };
            data.push(z.ok_or_else(|| Failure::Parse(format!("{}: bad entry {v}", path.display())))?);
        }
    }
    let m = ComplexMatrix::from_vec(n, n, data)?;
    Ok(DensityMatrix::new(m)?)
}
