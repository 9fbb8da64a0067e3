//! Conjunction counting.
//!
//! Counting is rule-based over gate patterns:
//!
//! * a run of `m` controlled-phase gates with control `k` followed by `W_k`
//!   gives `2^m` non-commuting intersections (each `C_{k,s}` doubles the
//!   number of `P_z,k` terms meeting the `P_x,k` of `W_k`; a bare `W_k`
//!   gives one, `P_x,k ∧ P_¬z,k`);
//! * `W_k P_z,k W_k` gives one non-commuting intersection `P_x,k ∧ P_z,k`;
//! * an adjacent complementary pair on one qubit (`npz k`/`pz k`) gives one
//!   commuting intersection with `dim Π = 1`;
//! * oracles give nothing.
//!
//! Gates left over are handled by a pairwise scan of consecutive gates on
//! each qubit, and the whole count is then labelled heuristic.

use serde::Serialize;

use super::decompose::{decompose_gate, Decomposition, Factor, FactorKind};
use super::{CircuitIR, Gate};
use crate::entropy::DimClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountingMode {
    RuleBased,
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionRule {
    /// `C_{k,·}^m W_k`
    PhaseBlock,
    /// `W_k P_z,k W_k`
    WalshFilter,
    /// Adjacent complementary projectors on one qubit.
    Complementary,
    /// Pairwise scan outside the known patterns.
    Fallback,
}

/// One or more intersections produced by a single pattern match.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionGroup {
    pub rule: IntersectionRule,
    pub stage: usize,
    pub p: Factor,
    pub q: Factor,
    /// Phase-block targets; every subset adds `P_z` on those qubits to `q`,
    /// so the group holds `2^partners.len()` intersections.
    pub partners: Vec<usize>,
    pub commuting: bool,
}

impl IntersectionGroup {
    pub fn count(&self) -> u64 {
        1u64 << self.partners.len()
    }

    /// `(P, Q)` factor lists of every intersection in the group.
    pub fn pairs(&self) -> Vec<(Vec<Factor>, Vec<Factor>)> {
        (0..self.count())
            .map(|mask| {
                let mut q = vec![self.q];
                q.extend(
                    self.partners
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &s)| Factor::new(FactorKind::Pz, s)),
                );
                (vec![self.p], q)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjunctionCount {
    /// Qubits touched by no intersection.
    pub q_i: usize,
    /// All intersections, commuting ones included. Real-valued so that
    /// iteration-count accounting like `(π/4) 2^{N/2}` fits.
    pub c_i: f64,
    /// Negated projector factors.
    pub n_i: usize,
    /// Intersections with `dim Π = 1`.
    pub commuting_c_i: f64,
    pub dims: Vec<DimClass>,
    pub mode: CountingMode,
    pub groups: Vec<IntersectionGroup>,
}

impl ConjunctionCount {
    pub fn non_commuting(&self) -> f64 {
        self.c_i - self.commuting_c_i
    }
}

fn local_factors(g: &Gate, qubit: usize) -> Vec<FactorKind> {
    use FactorKind::*;
    match *g {
        Gate::W(_) => vec![Px, Npz],
        Gate::CPhase { control, .. } if control == qubit => vec![Npz, Pz],
        Gate::CPhase { .. } => vec![Pz],
        Gate::Pz(_) => vec![Pz],
        Gate::Px(_) => vec![Px],
        Gate::Npz(_) => vec![Npz],
        Gate::Npx(_) => vec![Npx],
        Gate::Oracle(_) => vec![],
    }
}

fn statement_kind(g: &Gate) -> Option<(FactorKind, usize)> {
    match *g {
        Gate::Pz(k) => Some((FactorKind::Pz, k)),
        Gate::Px(k) => Some((FactorKind::Px, k)),
        Gate::Npz(k) => Some((FactorKind::Npz, k)),
        Gate::Npx(k) => Some((FactorKind::Npx, k)),
        _ => None,
    }
}

fn complementary(a: &Gate, b: &Gate) -> Option<(Factor, Factor)> {
    let (ka, qa) = statement_kind(a)?;
    let (kb, qb) = statement_kind(b)?;
    let pair = matches!(
        (ka, kb),
        (FactorKind::Pz, FactorKind::Npz)
            | (FactorKind::Npz, FactorKind::Pz)
            | (FactorKind::Px, FactorKind::Npx)
            | (FactorKind::Npx, FactorKind::Px)
    );
    (pair && qa == qb).then(|| (Factor::new(ka, qa), Factor::new(kb, qb)))
}

fn rule_pass(stage: usize, gates: &[Gate], consumed: &mut [bool], groups: &mut Vec<IntersectionGroup>) {
    use FactorKind::*;
    let mut i = 0;
    while i < gates.len() {
        match gates[i] {
            Gate::W(k) if gates.get(i + 1) == Some(&Gate::Pz(k)) && gates.get(i + 2) == Some(&Gate::W(k)) => {
                groups.push(IntersectionGroup {
                    rule: IntersectionRule::WalshFilter,
                    stage,
                    p: Factor::new(Px, k),
                    q: Factor::new(Pz, k),
                    partners: vec![],
                    commuting: false,
                });
                consumed[i..i + 3].fill(true);
                i += 3;
            }
            Gate::W(k) => {
                groups.push(IntersectionGroup {
                    rule: IntersectionRule::PhaseBlock,
                    stage,
                    p: Factor::new(Px, k),
                    q: Factor::new(Npz, k),
                    partners: vec![],
                    commuting: false,
                });
                consumed[i] = true;
                i += 1;
            }
            Gate::CPhase { control: k, .. } => {
                let mut j = i;
                let mut partners = Vec::new();
                while let Some(&Gate::CPhase { control, target }) = gates.get(j) {
                    if control != k {
                        break;
                    }
                    partners.push(target);
                    j += 1;
                }
                if gates.get(j) == Some(&Gate::W(k)) {
                    groups.push(IntersectionGroup {
                        rule: IntersectionRule::PhaseBlock,
                        stage,
                        p: Factor::new(Px, k),
                        q: Factor::new(Pz, k),
                        partners,
                        commuting: false,
                    });
                    consumed[i..=j].fill(true);
                    i = j + 1;
                } else {
                    i += 1;
                }
            }
            _ => {
                if let Some((p, q)) = gates.get(i + 1).and_then(|next| complementary(&gates[i], next)) {
                    groups.push(IntersectionGroup {
                        rule: IntersectionRule::Complementary,
                        stage,
                        p,
                        q,
                        partners: vec![],
                        commuting: true,
                    });
                    consumed[i..i + 2].fill(true);
                    i += 2;
                } else {
                    i += 1;
                }
            }
        }
    }
}

fn fallback_pass(
    stage: usize,
    n_qubits: usize,
    gates: &[Gate],
    consumed: &[bool],
    groups: &mut Vec<IntersectionGroup>,
) {
    let mut last: Vec<Option<usize>> = vec![None; n_qubits];
    for (i, g) in gates.iter().enumerate() {
        if let Gate::Oracle(_) = g {
            last.fill(None);
            continue;
        }
        for j in g.qubits() {
            if let Some(prev) = last[j] {
                if !(consumed[prev] && consumed[i]) {
                    let a = local_factors(&gates[prev], j);
                    let b = local_factors(g, j);
                    let clash =
                        a.iter().find_map(|&fa| b.iter().find(|&&fb| !fa.commutes_with(fb)).map(|&fb| (fa, fb)));
                    if let Some((fa, fb)) = clash {
                        groups.push(IntersectionGroup {
                            rule: IntersectionRule::Fallback,
                            stage,
                            p: Factor::new(fa, j),
                            q: Factor::new(fb, j),
                            partners: vec![],
                            commuting: false,
                        });
                    } else if gates[prev].is_projector_statement() && g.is_projector_statement() {
                        groups.push(IntersectionGroup {
                            rule: IntersectionRule::Fallback,
                            stage,
                            p: Factor::new(a[0], j),
                            q: Factor::new(b[0], j),
                            partners: vec![],
                            commuting: true,
                        });
                    }
                }
            }
            last[j] = Some(i);
        }
    }
}

/// Counts intersections, negations and free qubits of a circuit.
pub fn count_conjunctions(circuit: &CircuitIR) -> ConjunctionCount {
    let mut groups = Vec::new();
    let mut heuristic = false;
    for (stage, gates) in circuit.stages().into_iter().enumerate() {
        let mut consumed = vec![false; gates.len()];
        rule_pass(stage, gates, &mut consumed, &mut groups);
        if gates.iter().zip(&consumed).any(|(g, &c)| !c && !matches!(g, Gate::Oracle(_))) {
            heuristic = true;
            fallback_pass(stage, circuit.n_qubits, gates, &consumed, &mut groups);
        }
    }

    let mut touched = vec![false; circuit.n_qubits];
    let (mut non_commuting, mut commuting) = (0u64, 0u64);
    for g in &groups {
        touched[g.p.qubit] = true;
        touched[g.q.qubit] = true;
        for &s in &g.partners {
            touched[s] = true;
        }
        if g.commuting {
            commuting += g.count();
        } else {
            non_commuting += g.count();
        }
    }

    let n_i = circuit
        .gates
        .iter()
        .map(|g| match decompose_gate(g) {
            Decomposition::Expr(e) => e.terms.iter().flat_map(|t| &t.factors).filter(|f| f.kind.is_negated()).count(),
            Decomposition::Opaque(_) => 0,
        })
        .sum();

    let register_dim = 1u64 << circuit.n_qubits;
    let mut dims = Vec::new();
    if non_commuting > 0 {
        dims.push(DimClass { dim: register_dim, count: non_commuting as f64 });
    }
    if commuting > 0 {
        dims.push(DimClass { dim: 1, count: commuting as f64 });
    }

    ConjunctionCount {
        q_i: touched.iter().filter(|&&t| !t).count(),
        c_i: (non_commuting + commuting) as f64,
        n_i,
        commuting_c_i: commuting as f64,
        dims,
        mode: if heuristic { CountingMode::Heuristic } else { CountingMode::RuleBased },
        groups,
    }
}
