//! Built-in circuits: the quantum Fourier transform and Grover search.

use std::f64::consts::FRAC_PI_4;

use super::{CircuitIR, Gate};
use crate::error::{Error, Result};

pub const MAX_FFTQ_QUBITS: usize = 20;
/// Data qubits; the circuit adds one ancilla.
pub const MAX_GROVER_QUBITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Fftq(usize),
    Grover(usize),
}

/// `FFT_Q = Φ_0 ⋯ Φ_{N−1}`, `Φ_k = W_k C_{k,N−1} ⋯ C_{k,k+1}`, listed in
/// time order: `Φ_{N−1}` acts first and inside `Φ_k` the gate `C_{k,k+1}`
/// acts first.
///
/// The resulting unitary is the QFT applied after reversing the qubit order
/// of the input.
pub fn build_fftq(n: usize) -> Result<CircuitIR> {
    if !(1..=MAX_FFTQ_QUBITS).contains(&n) {
        return Err(Error::InvalidArgument(format!("fft register size {n} outside 1..={MAX_FFTQ_QUBITS}")));
    }
    let mut gates = Vec::with_capacity(n * (n + 1) / 2);
    for k in (0..n).rev() {
        gates.extend((k + 1..n).map(|s| Gate::CPhase { control: k, target: s }));
        gates.push(Gate::W(k));
    }
    CircuitIR::new(format!("fftq-{n}"), n, gates, vec![])
}

/// `(π/4) 2^{N/2}` and its rounded value.
pub fn grover_iterations(n: usize) -> (f64, usize) {
    let exact = FRAC_PI_4 * 2f64.powf(n as f64 / 2.0);
    (exact, exact.round() as usize)
}

/// Grover search over `2^n` items: the oracle, then `R = round((π/4) 2^{n/2})`
/// iterations of `W_k P_z,k W_k` on every data qubit followed by
/// `P_¬z − P_z` on the ancilla (qubit `n`).
pub fn build_grover(n: usize) -> Result<CircuitIR> {
    if !(2..=MAX_GROVER_QUBITS).contains(&n) {
        return Err(Error::InvalidArgument(format!("grover register size {n} outside 2..={MAX_GROVER_QUBITS}")));
    }
    let (_, rounds) = grover_iterations(n);
    let mut gates = Vec::with_capacity(1 + rounds * (3 * n + 2));
    gates.push(Gate::Oracle("gamma".into()));
    for _ in 0..rounds {
        for k in 0..n {
            gates.extend([Gate::W(k), Gate::Pz(k), Gate::W(k)]);
        }
        gates.extend([Gate::Npz(n), Gate::Pz(n)]);
    }
    CircuitIR::new(format!("grover-{n}"), n + 1, gates, vec![])
}

/// Identifies a circuit whose gate list is exactly a built-in one.
pub fn recognize_family(c: &CircuitIR) -> Option<Family> {
    if !c.stage_marks.is_empty() {
        return None;
    }
    let n = c.n_qubits;
    if matches!(c.gates.last(), Some(Gate::W(0))) {
        if let Ok(f) = build_fftq(n) {
            if f.gates == c.gates {
                return Some(Family::Fftq(n));
            }
        }
    }
    if matches!(c.gates.first(), Some(Gate::Oracle(_))) && n >= 3 {
        if let Ok(g) = build_grover(n - 1) {
            if g.gates.len() == c.gates.len() && g.gates[1..] == c.gates[1..] {
                return Some(Family::Grover(n - 1));
            }
        }
    }
    None
}
