//! Entropy of dequantized propositions.
//!
//! All values are in nats. The quantities built here:
//!
//! * von Neumann entropy `H_Q(ρ) = −Tr ρ ln ρ`;
//! * binary Shannon entropy `H_C(φ) = −φ ln φ − (1−φ) ln(1−φ)` of a phase
//!   fraction, with `φ(P) = rank P / dim P` for projectors;
//! * the `Π`-traced entropy: a pure state expanded over the spectral
//!   subspaces of the commutator `Π` becomes a mixture with weights `|ζ_π|²`;
//! * the conjunction entropy `H_Q(ρ_Π) + Σ_π |ζ_π|² H_C(φ_{∧|π})`;
//! * the register DIL, nesting the conjunction entropy over a sequence of
//!   conjunctions, and its upper bound
//!   `(q_I + c_I) ln 2 + Σ_k ln dim Π_k`.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigen, Complex64, ComplexMatrix};
use crate::projector::{commutator, nc_conjunction, CommutatorData, Projector, QuantumState};

/// Eigenvalues of `Π` closer than this share a spectral subspace.
pub const SPECTRAL_CLUSTER_TOL: f64 = 1e-9;
/// Eigenvalues within this distance of 0 or 1 are snapped before taking logs.
pub const EIGEN_CLAMP: f64 = 1e-10;
/// Default cap on branching conjunctions in [`register_dil`].
pub const DEFAULT_MAX_BRANCHING_STEPS: usize = 8;

/// `x ln x` with `0 ln 0 = 0`.
#[inline]
fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare(matrix.rows(), matrix.cols()));
        }
        let herm = matrix.hermiticity_defect();
        if herm > 1e-10 {
            return Err(Error::InvalidDensity(format!("Hermitian defect {herm:e}")));
        }
        let tr = matrix.trace()?;
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let eig = hermitian_eigen(&matrix)?;
        if let Some(&min) = eig.eigenvalues.first() {
            if min < -1e-10 {
                return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
            }
        }
        Ok(Self { matrix })
    }

    /// `|ζ⟩⟨ζ|`
    pub fn pure(state: &QuantumState) -> Self {
        Self { matrix: ComplexMatrix::outer(state.amplitudes(), state.amplitudes()) }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64) }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// `−Tr ρ ln ρ`
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eig = hermitian_eigen(rho.matrix())?;
    Ok(-eig
        .eigenvalues
        .iter()
        .map(|&l| {
            if l.abs() <= EIGEN_CLAMP {
                0.0
            } else if (l - 1.0).abs() <= EIGEN_CLAMP {
                1.0
            } else {
                l
            }
        })
        .map(xlnx)
        .sum::<f64>())
}

/// Binary Shannon entropy of a phase fraction.
pub fn binary_entropy(phi: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&phi) {
        return Err(Error::InvalidArgument(format!("phase fraction {phi} outside [0, 1]")));
    }
    Ok(-xlnx(phi) - xlnx(1.0 - phi))
}

/// `rank P / dim P`, the stand-in for the phase-space volume fraction.
pub fn projector_phase_fraction(p: &Projector) -> f64 {
    p.rank() as f64 / p.dim() as f64
}

/// `H_C` of a projector's phase fraction, evaluated from `min(r, d − r)` so
/// that `P` and `¬P` give bit-identical values.
pub fn projector_entropy(p: &Projector) -> f64 {
    let d = p.dim();
    let r = p.rank().min(d - p.rank());
    -xlnx(r as f64 / d as f64) - xlnx((d - r) as f64 / d as f64)
}

/// One spectral subspace of `Π` reached from a state.
#[derive(Debug, Clone)]
pub struct Branch {
    /// Eigenvalue of `Π` labelling the subspace (cluster mean).
    pub eigenvalue: f64,
    /// `|ζ_π|²`
    pub weight: f64,
    /// Normalized projection of the state onto the subspace.
    pub state: QuantumState,
}

/// Expands `state` over the spectral subspaces of `Π`.
///
/// Degenerate eigenvalues are grouped, so the weights do not depend on the
/// basis the eigensolver picks inside a degenerate block. Zero-weight
/// subspaces are dropped.
pub fn spectral_branches(state: &QuantumState, c: &CommutatorData) -> Result<Vec<Branch>> {
    let d = c.pi.rows();
    if state.dim() != d {
        return Err(Error::DimensionMismatch { op: "state vs Π", left: (state.dim(), 1), right: (d, d) });
    }
    let v = &c.eigen.eigenvectors;
    let coeffs: Vec<Complex64> =
        (0..d).map(|j| (0..d).map(|i| v[(i, j)].conj() * state.amplitudes()[i]).sum()).collect();
    let mut out = Vec::new();
    for range in c.eigen.clusters(SPECTRAL_CLUSTER_TOL) {
        let weight: f64 = range.clone().map(|j| coeffs[j].norm_sqr()).sum();
        if weight <= 0.0 {
            continue;
        }
        let mut proj = vec![Complex64::default(); d];
        for j in range.clone() {
            for (i, slot) in proj.iter_mut().enumerate() {
                *slot += v[(i, j)] * coeffs[j];
            }
        }
        let eigenvalue = range.clone().map(|j| c.eigen.eigenvalues[j]).sum::<f64>() / range.len() as f64;
        out.push(Branch { eigenvalue, weight, state: QuantumState::normalized(proj)? });
    }
    Ok(out)
}

/// `H_Q(ρ_Π) = −Σ_π |ζ_π|² ln |ζ_π|²`
pub fn pi_traced_entropy(state: &QuantumState, c: &CommutatorData) -> Result<f64> {
    let branches = spectral_branches(state, c)?;
    Ok(-branches.iter().map(|b| xlnx(b.weight)).sum::<f64>())
}

/// One conjunction in a sequence: the pair, its commutator, and the meet.
#[derive(Debug, Clone)]
pub struct ConjunctionStep {
    pub p: Projector,
    pub q: Projector,
    pub commutator: CommutatorData,
    pub conjunction: Projector,
}

impl ConjunctionStep {
    pub fn new(p: Projector, q: Projector) -> Result<Self> {
        let commutator = commutator(&p, &q)?;
        let conjunction = nc_conjunction(&p, &q)?;
        Ok(Self { p, q, commutator, conjunction })
    }

    pub fn is_commuting(&self) -> bool {
        self.commutator.is_zero()
    }

    /// `dim Π` entering the bound: 1 for commuting pairs.
    pub fn bound_dim(&self) -> u64 {
        if self.is_commuting() {
            1
        } else {
            self.commutator.dim_pi as u64
        }
    }
}

/// `φ_{∧|π}`. In the finite model the meet does not depend on the branch, so
/// this is `φ_∧` for every `π`.
pub fn conditional_fraction(step: &ConjunctionStep, _branch: &Branch) -> f64 {
    projector_phase_fraction(&step.conjunction)
}

/// `H_Q(ρ_Π) + Σ_π |ζ_π|² H_C(φ_{∧|π})`
pub fn nc_conjunction_entropy(state: &QuantumState, step: &ConjunctionStep) -> Result<f64> {
    let branches = spectral_branches(state, &step.commutator)?;
    let mut hq = 0.0;
    let mut mixed = 0.0;
    for b in &branches {
        hq -= xlnx(b.weight);
        mixed += b.weight * binary_entropy(conditional_fraction(step, b))?;
    }
    Ok(hq + mixed)
}

/// Itemized register DIL.
#[derive(Debug, Clone, Serialize)]
pub struct DilBreakdown {
    /// `Σ_i H_C(χ_{λ_i})` over the free qubits.
    pub q_term: f64,
    /// Expected `H_Q(ρ_Π)` per step.
    pub hq_terms: Vec<f64>,
    /// Expected `Σ_π |ζ_π|² H_C(χ_{∧|π})` per step.
    pub branch_terms: Vec<f64>,
    pub total: f64,
    pub upper_bound: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct RegisterDilOptions {
    pub max_branching_steps: usize,
}

impl Default for RegisterDilOptions {
    fn default() -> Self {
        Self { max_branching_steps: DEFAULT_MAX_BRANCHING_STEPS }
    }
}

/// Register DIL under default options.
pub fn register_dil(
    state: &QuantumState,
    steps: &[ConjunctionStep],
    q_i: usize,
    free_fractions: &[f64],
) -> Result<DilBreakdown> {
    register_dil_with(state, steps, q_i, free_fractions, RegisterDilOptions::default())
}

/// Recurrent register DIL.
///
/// The first conjunction acts on `state`. Every later conjunction acts on
/// each branch left by the previous one, i.e. on the normalized projection
/// of the running state onto a spectral subspace of the previous `Π`, and
/// its entropy is averaged with the branch weights.
pub fn register_dil_with(
    state: &QuantumState,
    steps: &[ConjunctionStep],
    q_i: usize,
    free_fractions: &[f64],
    opts: RegisterDilOptions,
) -> Result<DilBreakdown> {
    if free_fractions.len() != q_i {
        return Err(Error::InvalidArgument(format!("{} free fractions for q_I = {q_i}", free_fractions.len())));
    }
    let branching = steps.iter().filter(|s| !s.is_commuting()).count();
    if branching > opts.max_branching_steps {
        return Err(Error::RecursionDepth { steps: branching, cap: opts.max_branching_steps });
    }
    for s in steps {
        if s.commutator.pi.rows() != state.dim() {
            return Err(Error::DimensionMismatch {
                op: "register_dil",
                left: (state.dim(), 1),
                right: (s.commutator.pi.rows(), s.commutator.pi.rows()),
            });
        }
    }

    let q_term = free_fractions.iter().map(|&f| binary_entropy(f)).sum::<Result<f64>>()?;
    let mut hq_terms = vec![0.0; steps.len()];
    let mut branch_terms = vec![0.0; steps.len()];
    accumulate(state, steps, 0, 1.0, &mut hq_terms, &mut branch_terms)?;

    let total = q_term + hq_terms.iter().sum::<f64>() + branch_terms.iter().sum::<f64>();
    let dims: Vec<u64> = steps.iter().map(ConjunctionStep::bound_dim).collect();
    let upper_bound = dil_upper_bound(q_i as f64, steps.len() as f64, &dims);
    Ok(DilBreakdown { q_term, hq_terms, branch_terms, total, upper_bound })
}

fn accumulate(
    state: &QuantumState,
    steps: &[ConjunctionStep],
    k: usize,
    weight: f64,
    hq_terms: &mut [f64],
    branch_terms: &mut [f64],
) -> Result<()> {
    let Some(step) = steps.get(k) else {
        return Ok(());
    };
    let branches = spectral_branches(state, &step.commutator)?;
    for b in &branches {
        hq_terms[k] -= weight * xlnx(b.weight);
        branch_terms[k] += weight * b.weight * binary_entropy(conditional_fraction(step, b))?;
    }
    if branches.len() == 1 {
        return accumulate(state, steps, k + 1, weight, hq_terms, branch_terms);
    }
    for b in &branches {
        accumulate(&b.state, steps, k + 1, weight * b.weight, hq_terms, branch_terms)?;
    }
    Ok(())
}

/// `(q_I + c_I) ln 2 + Σ_k ln dim Π_k`
pub fn dil_upper_bound(q_i: f64, c_i: f64, dims: &[u64]) -> f64 {
    (q_i + c_i) * LN_2 + dims.iter().map(|&d| (d as f64).ln()).sum::<f64>()
}

/// A run of conjunctions sharing one `dim Π`. The count may be fractional
/// when it comes from an iteration count like `(π/4) 2^{N/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimClass {
    pub dim: u64,
    pub count: f64,
}

/// [`dil_upper_bound`] with run-length encoded dimensions.
pub fn dil_upper_bound_classes(q_i: f64, c_i: f64, classes: &[DimClass]) -> f64 {
    (q_i + c_i) * LN_2 + classes.iter().map(|cl| cl.count * (cl.dim as f64).ln()).sum::<f64>()
}
