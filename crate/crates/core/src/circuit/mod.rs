//! Circuit IR, text format, and the DIL analysis passes.
//!
//! A circuit is a register size and a gate list in time order: the first gate
//! listed acts first. `stage` boundaries split the list into implication-free
//! subexpressions that are analyzed independently and summed.
//!
//! Qubit 0 is the most significant tensor factor.

mod analysis;
mod builders;
mod count;
mod decompose;
mod parse;

use std::fmt;

pub use analysis::{analyze_dil, analyze_dil_with, exact_steps, AnalysisOptions, DilReport, GroverAccounting};
pub use builders::{
    build_fftq, build_grover, grover_iterations, recognize_family, Family, MAX_FFTQ_QUBITS, MAX_GROVER_QUBITS,
};
pub use count::{count_conjunctions, ConjunctionCount, CountingMode, IntersectionGroup, IntersectionRule};
pub use decompose::{
    decompose_gate, materialize_circuit, materialize_expr, Decomposition, Factor, FactorKind, ProjectorExpr, Term,
};
pub use parse::{parse_circuit, parse_circuit_named, ParseError};

use crate::error::{Error, Result};

/// Largest register accepted by the text format.
pub const MAX_REGISTER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    /// Walsh-Hadamard on a qubit.
    W(usize),
    /// Controlled phase `π / 2^(target − control)`; requires `target > control`.
    CPhase {
        control: usize,
        target: usize,
    },
    Pz(usize),
    Px(usize),
    Npz(usize),
    Npx(usize),
    /// Opaque oracle `U_Γ`; carries no decomposition and no conjunctions.
    Oracle(String),
}

impl Gate {
    /// Qubits the gate touches, in ascending order.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::W(k) | Gate::Pz(k) | Gate::Px(k) | Gate::Npz(k) | Gate::Npx(k) => vec![k],
            Gate::CPhase { control, target } => vec![control, target],
            Gate::Oracle(_) => Vec::new(),
        }
    }

    pub fn is_projector_statement(&self) -> bool {
        matches!(self, Gate::Pz(_) | Gate::Px(_) | Gate::Npz(_) | Gate::Npx(_))
    }

    /// Phase `π / 2^(s − k)` of a controlled-phase gate.
    pub fn phase(&self) -> Option<f64> {
        match *self {
            Gate::CPhase { control, target } => Some(std::f64::consts::PI / 2f64.powi((target - control) as i32)),
            _ => None,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::W(k) => write!(f, "w {k}"),
            Gate::CPhase { control, target } => write!(f, "cphase {control} {target}"),
            Gate::Pz(k) => write!(f, "pz {k}"),
            Gate::Px(k) => write!(f, "px {k}"),
            Gate::Npz(k) => write!(f, "npz {k}"),
            Gate::Npx(k) => write!(f, "npx {k}"),
            Gate::Oracle(name) => write!(f, "oracle {name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitIR {
    pub name: String,
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
    /// Gate indices where a new subexpression starts.
    pub stage_marks: Vec<usize>,
}

impl CircuitIR {
    pub fn new(name: impl Into<String>, n_qubits: usize, gates: Vec<Gate>, stage_marks: Vec<usize>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidArgument("register needs at least one qubit".into()));
        }
        for g in &gates {
            if let Some(&q) = g.qubits().iter().find(|&&q| q >= n_qubits) {
                return Err(Error::InvalidArgument(format!("gate `{g}` addresses qubit {q} of {n_qubits}")));
            }
            if let Gate::CPhase { control, target } = *g {
                if target <= control {
                    return Err(Error::InvalidArgument(format!("gate `{g}` needs target > control")));
                }
            }
        }
        if stage_marks.windows(2).any(|w| w[0] >= w[1]) || stage_marks.iter().any(|&m| m == 0 || m >= gates.len()) {
            return Err(Error::InvalidArgument(format!("invalid stage marks {stage_marks:?}")));
        }
        Ok(Self { name: name.into(), n_qubits, gates, stage_marks })
    }

    /// Gate slices of the implication-free subexpressions.
    pub fn stages(&self) -> Vec<&[Gate]> {
        let mut bounds = vec![0];
        bounds.extend(&self.stage_marks);
        bounds.push(self.gates.len());
        bounds.windows(2).map(|w| &self.gates[w[0]..w[1]]).collect()
    }

    /// Canonical text form: `reg`, then one directive per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("reg {}\n", self.n_qubits);
        let mut marks = self.stage_marks.iter().peekable();
        for (i, g) in self.gates.iter().enumerate() {
            if marks.peek() == Some(&&i) {
                out.push_str("stage\n");
                marks.next();
            }
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}
