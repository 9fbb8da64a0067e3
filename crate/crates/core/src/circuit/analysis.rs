use serde::Serialize;

use super::builders::{grover_iterations, recognize_family, Family};
use super::count::{count_conjunctions, ConjunctionCount, CountingMode};
use super::decompose::{materialize_expr, Factor, ProjectorExpr, Term};
use super::CircuitIR;
use crate::entropy::{dil_upper_bound_classes, register_dil_with, ConjunctionStep, DimClass, RegisterDilOptions};
use crate::error::{Error, Result};
use crate::matrix::{c, DimCap};
use crate::projector::{Projector, QuantumState};

const FFTQ_FORM: &str = "[q_I+(N+1)(2^N-1)]ln2";
const GROVER_FORM: &str = "[q_I+(π/4)(N+1)²2^{N/2}]ln2";
const GENERIC_FORM: &str = "(q_I+c_I)ln2+Σ_k ln dim Π_k";

#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub cap: DimCap,
    /// Exact mode refuses larger registers.
    pub max_exact_qubits: usize,
    /// Phase fraction assumed for each free qubit.
    pub free_fraction: f64,
    pub dil: RegisterDilOptions,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { cap: DimCap::default(), max_exact_qubits: 6, free_fraction: 0.5, dil: RegisterDilOptions::default() }
    }
}

/// Grover counts, real-valued and for the explicit circuit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroverAccounting {
    /// Data qubits.
    pub n: usize,
    /// `(π/4) 2^{N/2}`
    pub iterations_exact: f64,
    /// Iterations present in the gate list.
    pub iterations: usize,
    /// Ancilla intersections, `(π/4) 2^{N/2}`.
    pub c_gamma: f64,
    /// Diffusion intersections, `(π/4) N 2^{N/2}`.
    pub c_diffusion: f64,
    pub integer_c_i: f64,
    pub integer_commuting_c_i: f64,
}

#[derive(Debug, Clone)]
pub struct DilReport {
    pub circuit: String,
    pub n_qubits: usize,
    pub counts: ConjunctionCount,
    pub dil_upper_bound_nats: f64,
    pub dil_exact_nats: Option<f64>,
    pub closed_form: String,
    pub grover: Option<GroverAccounting>,
}

pub fn analyze_dil(circuit: &CircuitIR, state: Option<&QuantumState>) -> Result<DilReport> {
    analyze_dil_with(circuit, state, AnalysisOptions::default())
}

/// Counts conjunctions and evaluates the DIL bound; with a state, also runs
/// the recurrent register DIL over the materialized intersections.
pub fn analyze_dil_with(circuit: &CircuitIR, state: Option<&QuantumState>, opts: AnalysisOptions) -> Result<DilReport> {
    let mut counts = count_conjunctions(circuit);
    let family = recognize_family(circuit);
    let mut grover = None;
    let closed_form = match family {
        Some(Family::Fftq(_)) => FFTQ_FORM,
        Some(Family::Grover(n)) => {
            let (exact, rounds) = grover_iterations(n);
            let c_gamma = exact;
            let c_diffusion = exact * n as f64;
            grover = Some(GroverAccounting {
                n,
                iterations_exact: exact,
                iterations: rounds,
                c_gamma,
                c_diffusion,
                integer_c_i: counts.c_i,
                integer_commuting_c_i: counts.commuting_c_i,
            });
            counts.c_i = c_gamma + c_diffusion;
            counts.commuting_c_i = c_gamma;
            counts.dims = vec![
                DimClass { dim: 1u64 << circuit.n_qubits, count: c_diffusion },
                DimClass { dim: 1, count: c_gamma },
            ];
            GROVER_FORM
        }
        None => GENERIC_FORM,
    };
    let bound = dil_upper_bound_classes(counts.q_i as f64, counts.c_i, &counts.dims);

    let dil_exact_nats = match state {
        None => None,
        Some(s) => Some(exact_dil(circuit, &counts, s, opts)?),
    };

    Ok(DilReport {
        circuit: circuit.name.clone(),
        n_qubits: circuit.n_qubits,
        counts,
        dil_upper_bound_nats: bound,
        dil_exact_nats,
        closed_form: closed_form.to_string(),
        grover,
    })
}

fn factor_projector(factors: &[Factor], n_qubits: usize, cap: DimCap) -> Result<Projector> {
    let expr = ProjectorExpr { terms: vec![Term { coeff: c(1.0, 0.0), factors: factors.to_vec() }] };
    Projector::new(materialize_expr(&expr, n_qubits, cap)?)
}

/// Materialized conjunction steps, one list per stage.
pub fn exact_steps(circuit: &CircuitIR, counts: &ConjunctionCount, cap: DimCap) -> Result<Vec<Vec<ConjunctionStep>>> {
    let mut stages: Vec<Vec<ConjunctionStep>> = vec![Vec::new(); circuit.stages().len()];
    for g in &counts.groups {
        for (p, q) in g.pairs() {
            let step = ConjunctionStep::new(
                factor_projector(&p, circuit.n_qubits, cap)?,
                factor_projector(&q, circuit.n_qubits, cap)?,
            )?;
            stages[g.stage].push(step);
        }
    }
    Ok(stages)
}

fn exact_dil(
    circuit: &CircuitIR,
    counts: &ConjunctionCount,
    state: &QuantumState,
    opts: AnalysisOptions,
) -> Result<f64> {
    if circuit.n_qubits > opts.max_exact_qubits {
        return Err(Error::Capacity { requested: circuit.n_qubits, cap: opts.max_exact_qubits });
    }
    let dim = 1usize << circuit.n_qubits;
    if state.dim() != dim {
        return Err(Error::DimensionMismatch { op: "exact DIL state", left: (state.dim(), 1), right: (dim, dim) });
    }
    let stages = exact_steps(circuit, counts, opts.cap)?;
    let fractions = vec![opts.free_fraction; counts.q_i];
    let mut total = 0.0;
    for (i, steps) in stages.iter().enumerate() {
        let (q, f): (usize, &[f64]) = if i == 0 { (counts.q_i, &fractions) } else { (0, &[]) };
        total += register_dil_with(state, steps, q, f, opts.dil)?.total;
    }
    Ok(total)
}

/// Rounds to 10 significant digits.
fn sig10(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

#[derive(Serialize)]
struct DimJson {
    dim: u64,
    count: f64,
}

#[derive(Serialize)]
struct GroverJson {
    n: usize,
    iterations_exact: f64,
    iterations: usize,
    c_gamma: f64,
    c_diffusion: f64,
    integer_c_i: f64,
    integer_commuting_c_i: f64,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    circuit: &'a str,
    n_qubits: usize,
    q_i: usize,
    c_i: f64,
    commuting_c_i: f64,
    n_i: usize,
    dim_pi: Vec<DimJson>,
    dil_upper_bound_nats: f64,
    dil_exact_nats: Option<f64>,
    closed_form: &'a str,
    units: &'static str,
    counting: CountingMode,
    grover: Option<GroverJson>,
}

impl DilReport {
    /// Report as pretty JSON; `bits` converts the entropy values from nats.
    pub fn to_json(&self, bits: bool) -> String {
        let unit = if bits { std::f64::consts::LN_2 } else { 1.0 };
        let json = ReportJson {
            circuit: &self.circuit,
            n_qubits: self.n_qubits,
            q_i: self.counts.q_i,
            c_i: sig10(self.counts.c_i),
            commuting_c_i: sig10(self.counts.commuting_c_i),
            n_i: self.counts.n_i,
            dim_pi: self.counts.dims.iter().map(|d| DimJson { dim: d.dim, count: sig10(d.count) }).collect(),
            dil_upper_bound_nats: sig10(self.dil_upper_bound_nats / unit),
            dil_exact_nats: self.dil_exact_nats.map(|v| sig10(v / unit)),
            closed_form: &self.closed_form,
            units: if bits { "bits" } else { "nats" },
            counting: self.counts.mode,
            grover: self.grover.as_ref().map(|g| GroverJson {
                n: g.n,
                iterations_exact: sig10(g.iterations_exact),
                iterations: g.iterations,
                c_gamma: sig10(g.c_gamma),
                c_diffusion: sig10(g.c_diffusion),
                integer_c_i: sig10(g.integer_c_i),
                integer_commuting_c_i: sig10(g.integer_commuting_c_i),
            }),
        };
        serde_json::to_string_pretty(&json).expect("report serializes")
    }
}
