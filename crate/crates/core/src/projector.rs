//! Quantum logic on projectors.
//!
//! A proposition is an orthogonal projector `P` (Hermitian, `P² = P`); its
//! range is the subspace where the proposition holds. This module provides the
//! full operation set:
//!
//! | operation | definition |
//! |-----------|------------|
//! | negation | `I − P` |
//! | commuting conjunction | `PQ` (requires `[P, Q] = 0`) |
//! | conjunction (meet) | `lim (PQ)^n`, projector onto `range P ∩ range Q` |
//! | disjunction | `P + Q − P∧Q` |
//! | implication | `P ≤ Q` iff `P∧Q = P` |
//!
//! The commutator is written `[P, Q] = iΠ` with `Π` Hermitian. Finite
//! matrices carry no `ħ`, so the raw commutator plays the role of `iħΠ`.
//! The classical limit is emulated by [`SemiclassicalFamily`], a pair of
//! rank-1 projectors whose angle `θ` shrinks to zero.

use crate::entropy::binary_entropy;
use crate::error::{Error, Result};
use crate::matrix::{c, hermitian_eigen, rank, tensor_product, Complex64, ComplexMatrix, DimCap, HermitianEigen};

/// Tolerance for the Hermitian and idempotency checks on construction.
pub const PROJECTOR_TOL: f64 = 1e-10;
/// Tolerance used when deciding whether two projectors commute.
pub const COMMUTE_TOL: f64 = 1e-9;
/// Tolerance for results of the limit construction.
pub const CONJUNCTION_TOL: f64 = 1e-9;

/// Squaring steps are capped here regardless of `max_iter`: `(PQ)^(2^64)`
/// is far beyond any meaningful power.
const MAX_SQUARINGS: usize = 64;

/// Hermitian idempotent matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: ComplexMatrix,
}

impl Projector {
    /// Validates `matrix` with the default tolerance.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, PROJECTOR_TOL)
    }

    /// Validates `matrix` with `|P − P†|_F, |P² − P|_F ≤ tol · max(1, |P|_F)`.
    pub fn with_tolerance(matrix: ComplexMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare(matrix.rows(), matrix.cols()));
        }
        let scale = matrix.frobenius_norm().max(1.0);
        let herm = matrix.hermiticity_defect();
        if herm > tol * scale {
            return Err(Error::NotProjector(format!("Hermitian defect {herm:e}")));
        }
        let idem = (&matrix * &matrix).distance(&matrix);
        if idem > tol * scale {
            return Err(Error::NotProjector(format!("idempotency defect {idem:e}")));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn zero(dim: usize) -> Self {
        Self { matrix: ComplexMatrix::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(dim) }
    }

    /// Projector onto the span of orthonormal `columns`.
    pub fn from_frame(dim: usize, columns: &[Vec<Complex64>]) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(dim, dim);
        for v in columns {
            if v.len() != dim {
                return Err(Error::InvalidArgument(format!("frame vector of length {} in dim {dim}", v.len())));
            }
            m = &m + &ComplexMatrix::outer(v, v);
        }
        Self::with_tolerance(m, 1e-9)
    }

    /// `|0⟩⟨0|` on one qubit.
    pub fn pz() -> Self {
        Self { matrix: ComplexMatrix::from_real_diag(&[1.0, 0.0]) }
    }

    /// `|+⟩⟨+|` on one qubit.
    pub fn px() -> Self {
        Self { matrix: ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).expect("2x2") }
    }

    /// `I − |0⟩⟨0|` on one qubit.
    pub fn npz() -> Self {
        negate(&Self::pz())
    }

    /// `I − |+⟩⟨+|` on one qubit.
    pub fn npx() -> Self {
        negate(&Self::px())
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn rank(&self) -> usize {
        // Tr P is the rank for an exact projector; the eigen route guards
        // against accumulated error in limit results.
        rank(&self.matrix, crate::matrix::DEFAULT_RANK_TOL).unwrap_or_else(|_| self.trace_rank())
    }

    fn trace_rank(&self) -> usize {
        self.matrix.trace().map(|t| t.re.round().max(0.0) as usize).unwrap_or(0)
    }

    /// Places a single-qubit projector on `qubit` of an `n_qubits` register
    /// (qubit 0 is the most significant tensor factor).
    pub fn embed(&self, qubit: usize, n_qubits: usize, cap: DimCap) -> Result<Self> {
        if self.dim() != 2 || qubit >= n_qubits {
            return Err(Error::InvalidArgument(format!(
                "cannot embed a dim-{} projector on qubit {qubit} of {n_qubits}",
                self.dim()
            )));
        }
        let m = embed_single(&self.matrix, qubit, n_qubits, cap)?;
        Ok(Self { matrix: m })
    }

    /// `|P − Q|_F`
    pub fn distance(&self, other: &Self) -> f64 {
        self.matrix.distance(&other.matrix)
    }
}

/// `I ⊗ … ⊗ op ⊗ … ⊗ I` with `op` on `qubit`.
pub(crate) fn embed_single(op: &ComplexMatrix, qubit: usize, n_qubits: usize, cap: DimCap) -> Result<ComplexMatrix> {
    cap.check(1usize.checked_shl(n_qubits as u32).unwrap_or(usize::MAX))?;
    let left = ComplexMatrix::identity(1 << qubit);
    let right = ComplexMatrix::identity(1 << (n_qubits - qubit - 1));
    tensor_product(&tensor_product(&left, op, cap)?, &right, cap)
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if amplitudes.is_empty() || (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        Ok(Self { amplitudes: amplitudes.into_iter().map(|z| z / norm).collect() })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidArgument(format!("basis index {index} out of range for dim {dim}")));
        }
        let mut v = vec![Complex64::default(); dim];
        v[index] = c(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }
}

/// `|s⟩⟨s|`
pub fn projector_from_state(s: &QuantumState) -> Projector {
    Projector { matrix: ComplexMatrix::outer(s.amplitudes(), s.amplitudes()) }
}

/// `I − P`
pub fn negate(p: &Projector) -> Projector {
    Projector { matrix: &ComplexMatrix::identity(p.dim()) - &p.matrix }
}

fn check_dims(p: &Projector, q: &Projector) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            op: "projector pair",
            left: (p.dim(), p.dim()),
            right: (q.dim(), q.dim()),
        });
    }
    Ok(())
}

/// `PQ` for commuting projectors.
pub fn commuting_conjunction(p: &Projector, q: &Projector) -> Result<Projector> {
    check_dims(p, q)?;
    let pq = &p.matrix * &q.matrix;
    let qp = &q.matrix * &p.matrix;
    let defect = pq.distance(&qp);
    if defect > COMMUTE_TOL {
        return Err(Error::NonCommuting(defect));
    }
    Ok(Projector { matrix: pq.hermitian_part() })
}

/// Stopping rule for [`nc_conjunction`].
#[derive(Debug, Clone, Copy)]
pub struct ConjunctionOptions {
    /// Frobenius distance between successive iterates that counts as converged.
    pub tol: f64,
    /// Maximum number of squaring steps.
    pub max_iter: usize,
}

impl Default for ConjunctionOptions {
    fn default() -> Self {
        Self { tol: 1e-12, max_iter: 100_000 }
    }
}

/// Result of the alternating-product limit together with its cost.
#[derive(Debug, Clone)]
pub struct Conjunction {
    pub projector: Projector,
    /// Squaring steps performed.
    pub squarings: usize,
    /// Frobenius distance between the last two iterates.
    pub final_delta: f64,
}

/// Conjunction `P ∧ Q = lim_{n→∞} (PQ)^n`.
///
/// The limit is reached by repeated squaring `M ← M²`, so after `s` steps the
/// iterate is `(PQ)^(2^s)`. Iteration stops once successive iterates differ by
/// less than `opts.tol` in Frobenius norm, or once that difference is below
/// [`CONJUNCTION_TOL`] and stops shrinking.
pub fn nc_conjunction_with(p: &Projector, q: &Projector, opts: ConjunctionOptions) -> Result<Conjunction> {
    check_dims(p, q)?;
    let mut m = &p.matrix * &q.matrix;
    let limit = opts.max_iter.min(MAX_SQUARINGS);
    let mut delta = f64::INFINITY;
    let mut squarings = 0;
    let mut stalled = false;
    while squarings < limit {
        let next = &m * &m;
        let step = next.distance(&m);
        // past the rounding floor squaring only amplifies error
        if step >= delta && delta < CONJUNCTION_TOL {
            stalled = true;
            break;
        }
        delta = step;
        m = next;
        squarings += 1;
        if delta < opts.tol {
            break;
        }
    }
    if delta >= opts.tol && !stalled {
        return Err(Error::Convergence { iterations: squarings, delta });
    }
    let projector = Projector::with_tolerance(m.hermitian_part(), CONJUNCTION_TOL)?;
    Ok(Conjunction { projector, squarings, final_delta: delta })
}

/// [`nc_conjunction_with`] under default options, returning only the projector.
pub fn nc_conjunction(p: &Projector, q: &Projector) -> Result<Projector> {
    nc_conjunction_with(p, q, ConjunctionOptions::default()).map(|c| c.projector)
}

/// Projector onto `range P ∩ range Q` from the eigenvalue-2 eigenspace of
/// `P + Q`. Independent of the alternating-product route; used to check it.
pub fn intersection_oracle(p: &Projector, q: &Projector) -> Result<Projector> {
    check_dims(p, q)?;
    let sum = &p.matrix + &q.matrix;
    let eig = hermitian_eigen(&sum)?;
    let d = p.dim();
    let frame: Vec<Vec<Complex64>> =
        (0..d).filter(|&j| eig.eigenvalues[j] > 2.0 - 1e-9).map(|j| eig.eigenvectors.column(j)).collect();
    Projector::from_frame(d, &frame)
}

/// `P + Q − P∧Q`, flagged when the result fails to be idempotent.
#[derive(Debug, Clone)]
pub struct Disjunction {
    pub matrix: ComplexMatrix,
    /// `|D² − D|_F ≤ 1e-9 · max(1, |D|_F)`
    pub is_projector: bool,
}

impl Disjunction {
    pub fn into_projector(self) -> Option<Projector> {
        self.is_projector.then(|| Projector::from_matrix_unchecked(self.matrix))
    }
}

pub fn disjunction(p: &Projector, q: &Projector) -> Result<Disjunction> {
    let meet = nc_conjunction(p, q)?;
    let matrix = &(&p.matrix + &q.matrix) - &meet.matrix;
    let is_projector = Projector::with_tolerance(matrix.clone(), CONJUNCTION_TOL).is_ok();
    Ok(Disjunction { matrix, is_projector })
}

/// `P ≤ Q`: the meet equals `P`.
pub fn implies(p: &Projector, q: &Projector) -> Result<bool> {
    let meet = nc_conjunction(p, q)?;
    Ok(meet.distance(p) <= CONJUNCTION_TOL)
}

/// Commutator `PQ − QP = iΠ` with its spectral data.
#[derive(Debug, Clone)]
pub struct CommutatorData {
    /// `Π = −i(PQ − QP)`, Hermitian.
    pub pi: ComplexMatrix,
    pub eigen: HermitianEigen,
    /// Dimension of the Hilbert space the pair acts on.
    pub dim_pi: usize,
    /// Diagnostic only; bounds use `dim_pi`.
    pub rank_pi: usize,
}

impl CommutatorData {
    /// The raw commutator `iΠ`.
    pub fn raw(&self) -> ComplexMatrix {
        self.pi.scale(c(0.0, 1.0))
    }

    pub fn is_zero(&self) -> bool {
        self.pi.frobenius_norm() <= COMMUTE_TOL
    }
}

pub fn commutator(p: &Projector, q: &Projector) -> Result<CommutatorData> {
    check_dims(p, q)?;
    let raw = &(&p.matrix * &q.matrix) - &(&q.matrix * &p.matrix);
    let pi = raw.scale(c(0.0, -1.0)).hermitian_part();
    let eigen = hermitian_eigen(&pi)?;
    let top = eigen.eigenvalues.iter().fold(0.0f64, |a, l| a.max(l.abs())).max(1.0);
    let rank_pi = eigen.eigenvalues.iter().filter(|l| l.abs() > 1e-9 * top).count();
    Ok(CommutatorData { pi, eigen, dim_pi: p.dim(), rank_pi })
}

/// Matrices entering the closed-form power of `P_λ P_μ`, with `C = [P_λ, P_μ]`.
#[derive(Debug, Clone)]
pub struct PowerFormulaTerms {
    /// `C(I + C)`
    pub alpha: ComplexMatrix,
    /// `P_μ P_λ + (I − P_λ) C`
    pub beta: ComplexMatrix,
    /// `P_λ C² (I + α)^k`
    pub gamma_k: ComplexMatrix,
    /// `C`, the raw commutator.
    pub commutator: ComplexMatrix,
}

/// Evaluates the closed-form expression for `(P_λ P_μ)^n`:
///
/// * `n = 2k + 1`: `β (I + α)^k + P_λ C α^k`
/// * `n = 2(k + 1)`: `β [(I + α)^k + C α^k] + γ_k`
///
/// The expression agrees with the direct product for `n ≤ 4`. From `n = 5`
/// on it does not: its derivation expands `(P_λ + C² + C)^k` binomially,
/// which needs `P_λ` to commute with `C`.
pub fn product_power_closed_form(p: &Projector, q: &Projector, n: u32) -> Result<(ComplexMatrix, PowerFormulaTerms)> {
    check_dims(p, q)?;
    if n == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let d = p.dim();
    let id = ComplexMatrix::identity(d);
    let (pl, pm) = (&p.matrix, &q.matrix);
    let cm = &(pl * pm) - &(pm * pl);
    let alpha = &cm * &(&id + &cm);
    let beta = &(pm * pl) + &(&(&id - pl) * &cm);
    let k = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 - 1 };
    let one_plus_alpha_k = (&id + &alpha).pow(k)?;
    let alpha_k = alpha.pow(k)?;
    let gamma_k = &(&(pl * &cm) * &cm) * &one_plus_alpha_k;
    let value = if n % 2 == 1 {
        &(&beta * &one_plus_alpha_k) + &(&(pl * &cm) * &alpha_k)
    } else {
        &(&beta * &(&one_plus_alpha_k + &(&cm * &alpha_k))) + &gamma_k
    };
    Ok((value, PowerFormulaTerms { alpha, beta, gamma_k, commutator: cm }))
}

/// `(PQ)^n` by a plain multiply chain.
pub fn direct_product_power(p: &Projector, q: &Projector, n: u32) -> Result<ComplexMatrix> {
    check_dims(p, q)?;
    let pq = &p.matrix * &q.matrix;
    let mut acc = pq.clone();
    for _ in 1..n {
        acc = &acc * &pq;
    }
    Ok(acc)
}

/// Rank-1 pair `|0⟩⟨0|`, `|θ⟩⟨θ|` with `|θ⟩ = cos θ|0⟩ + sin θ|1⟩`.
///
/// As `θ → 0` the commutator vanishes like `sin 2θ / √2`, which is the
/// finite-dimensional stand-in for `ħ → 0`.
#[derive(Debug, Clone)]
pub struct SemiclassicalFamily {
    pub theta: f64,
    pub p_fixed: Projector,
    pub p_rotated: Projector,
}

impl SemiclassicalFamily {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta <= std::f64::consts::FRAC_PI_4) {
            return Err(Error::InvalidArgument(format!("θ = {theta} outside (0, π/4]")));
        }
        let state = QuantumState::new(vec![c(theta.cos(), 0.0), c(theta.sin(), 0.0)])?;
        Ok(Self { theta, p_fixed: Projector::pz(), p_rotated: projector_from_state(&state) })
    }
}

/// `|(P_fixed P_θ)^n − P_θ P_fixed|_F`
pub fn semiclassical_convergence(family: &SemiclassicalFamily, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let power = direct_product_power(&family.p_fixed, &family.p_rotated, n)?;
    let reversed = family.p_rotated.matrix() * family.p_fixed.matrix();
    Ok(power.distance(&reversed))
}

/// Outcome of checking `(PQ)^k P∧ = P∧ = P∧ (PQ)^k` and the entropy equality.
#[derive(Debug, Clone)]
pub struct TheoremCheck {
    pub left_residual: f64,
    pub right_residual: f64,
    /// Dimension of `{v : |(PQ)^k v| = |v|}`, the subspace `(PQ)^k` fixes.
    pub product_subspace_rank: usize,
    pub conjunction_rank: usize,
    pub product_entropy: f64,
    pub conjunction_entropy: f64,
}

impl TheoremCheck {
    pub fn holds(&self) -> bool {
        self.left_residual <= CONJUNCTION_TOL
            && self.right_residual <= CONJUNCTION_TOL
            && self.product_entropy == self.conjunction_entropy
    }
}

/// Checks the conjunction identities for the finite product `(PQ)^k`.
///
/// The subspace attributed to `(PQ)^k` is the set of vectors it leaves
/// unchanged in norm, read off the eigenvalue-1 space of `A†A` with
/// `A = (PQ)^k`. Its phase fraction and that of `P∧` then give the two
/// entropies compared.
pub fn verify_conjunction_theorem(p: &Projector, q: &Projector, k: u32) -> Result<TheoremCheck> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let meet = nc_conjunction(p, q)?;
    let a = direct_product_power(p, q, k)?;
    let left_residual = (&a * meet.matrix()).distance(meet.matrix());
    let right_residual = (meet.matrix() * &a).distance(meet.matrix());

    let gram = &a.adjoint() * &a;
    let eig = hermitian_eigen(&gram)?;
    let product_subspace_rank = eig.eigenvalues.iter().filter(|&&l| l > 1.0 - 1e-9).count();
    let conjunction_rank = meet.rank();
    let d = p.dim() as f64;
    Ok(TheoremCheck {
        left_residual,
        right_residual,
        product_subspace_rank,
        conjunction_rank,
        product_entropy: binary_entropy(product_subspace_rank as f64 / d)?,
        conjunction_entropy: binary_entropy(conjunction_rank as f64 / d)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap() -> DimCap {
        DimCap::default()
    }

    fn kron(a: &Projector, b: &Projector) -> Projector {
        Projector::new(tensor_product(a.matrix(), b.matrix(), cap()).unwrap()).unwrap()
    }

    #[test]
    fn state_projectors() {
        let p0 = projector_from_state(&QuantumState::basis(2, 0).unwrap());
        assert_eq!(p0, Projector::pz());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = projector_from_state(&QuantumState::new(vec![c(h, 0.0), c(h, 0.0)]).unwrap());
        assert!(plus.distance(&Projector::px()) < 1e-15);
        assert!(Projector::new(plus.matrix().clone()).is_ok());
        assert!((plus.matrix().trace().unwrap().re - 1.0).abs() < 1e-10);
        assert!(matches!(QuantumState::new(vec![c(1.0, 0.0), c(1.0, 0.0)]), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn negation() {
        assert_eq!(negate(&Projector::pz()).matrix(), &ComplexMatrix::from_real_diag(&[0.0, 1.0]));
        assert_eq!(negate(&negate(&Projector::px())), Projector::px());
        assert_eq!(negate(&Projector::identity(3)), Projector::zero(3));
        let p = kron(&Projector::pz(), &Projector::identity(2));
        assert_eq!(negate(&p).rank(), 4 - p.rank());
    }

    #[test]
    fn commuting_conjunction_cases() {
        let i2 = Projector::identity(2);
        let a = kron(&Projector::pz(), &i2);
        let b = kron(&i2, &Projector::pz());
        let both = kron(&Projector::pz(), &Projector::pz());
        assert!(commuting_conjunction(&a, &b).unwrap().distance(&both) < 1e-15);
        assert_eq!(commuting_conjunction(&a, &a).unwrap(), a);
        let z = commuting_conjunction(&Projector::pz(), &Projector::npz()).unwrap();
        assert_eq!(z, Projector::zero(2));
        assert!(matches!(commuting_conjunction(&Projector::pz(), &Projector::px()), Err(Error::NonCommuting(_))));
    }

    #[test]
    fn nc_conjunction_of_pz_px_is_zero() {
        // (P_z P_x)^n = 2^{1-n} P_z P_x
        let pq = Projector::pz().matrix() * Projector::px().matrix();
        let p3 = direct_product_power(&Projector::pz(), &Projector::px(), 3).unwrap();
        assert!(p3.distance(&pq.scale_real(0.25)) < 1e-15);

        let meet = nc_conjunction(&Projector::pz(), &Projector::px()).unwrap();
        assert!(meet.matrix().frobenius_norm() < 1e-12);
        let oracle = intersection_oracle(&Projector::pz(), &Projector::px()).unwrap();
        assert_eq!(oracle, Projector::zero(2));
    }

    #[test]
    fn nc_conjunction_equal_inputs_one_step() {
        let p = Projector::px();
        let r = nc_conjunction_with(&p, &p, ConjunctionOptions::default()).unwrap();
        assert_eq!(r.squarings, 1);
        assert!(r.projector.distance(&p) < 1e-15);
    }

    #[test]
    fn nc_conjunction_reports_nonconvergence() {
        let opts = ConjunctionOptions { tol: 1e-12, max_iter: 2 };
        let err = nc_conjunction_with(&Projector::pz(), &Projector::px(), opts).unwrap_err();
        assert!(matches!(err, Error::Convergence { iterations: 2, .. }));
    }

    #[test]
    fn nc_matches_commuting_case() {
        let i2 = Projector::identity(2);
        let a = kron(&Projector::pz(), &i2);
        let b = kron(&i2, &Projector::px());
        let nc = nc_conjunction(&a, &b).unwrap();
        assert!(nc.distance(&commuting_conjunction(&a, &b).unwrap()) < 1e-12);
    }

    #[test]
    fn oracle_cases() {
        let i2 = Projector::identity(2);
        let a = kron(&Projector::pz(), &i2);
        let b = kron(&i2, &Projector::pz());
        let expected = kron(&Projector::pz(), &Projector::pz());
        assert!(intersection_oracle(&a, &b).unwrap().distance(&expected) < 1e-12);
        assert!(intersection_oracle(&a, &a).unwrap().distance(&a) < 1e-12);
    }

    #[test]
    fn disjunction_cases() {
        let d = disjunction(&Projector::pz(), &Projector::npz()).unwrap();
        assert!(d.is_projector);
        assert!(d.matrix.distance(&ComplexMatrix::identity(2)) < 1e-12);

        let p = Projector::px();
        let d = disjunction(&p, &p).unwrap();
        assert!(d.is_projector && d.matrix.distance(p.matrix()) < 1e-12);

        let d = disjunction(&Projector::pz(), &Projector::px()).unwrap();
        let sum = Projector::pz().matrix() + Projector::px().matrix();
        assert!(d.matrix.distance(&sum) < 1e-12);
        assert!(!d.is_projector);
        assert!(d.into_projector().is_none());
    }

    #[test]
    fn implication_cases() {
        let zz = kron(&Projector::pz(), &Projector::pz());
        let zi = kron(&Projector::pz(), &Projector::identity(2));
        assert!(implies(&zz, &zi).unwrap());
        assert!(!implies(&zi, &zz).unwrap());
        assert!(!implies(&Projector::pz(), &Projector::px()).unwrap());
        assert!(implies(&Projector::px(), &Projector::identity(2)).unwrap());
    }

    #[test]
    fn commutator_of_pz_px_is_half_sigma_y() {
        let data = commutator(&Projector::pz(), &Projector::px()).unwrap();
        let half_sy = ComplexMatrix::from_vec(2, 2, vec![c(0.0, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.0, 0.0)]).unwrap();
        assert!(data.pi.distance(&half_sy) < 1e-15);
        assert!((data.eigen.eigenvalues[0] + 0.5).abs() < 1e-14);
        assert!((data.eigen.eigenvalues[1] - 0.5).abs() < 1e-14);
        assert_eq!(data.dim_pi, 2);
        assert_eq!(data.rank_pi, 2);
        let raw = &(Projector::pz().matrix() * Projector::px().matrix())
            - &(Projector::px().matrix() * Projector::pz().matrix());
        assert!(data.raw().distance(&raw) < 1e-15);
    }

    #[test]
    fn commutator_vanishes_for_commuting_pairs() {
        assert!(commutator(&Projector::pz(), &Projector::npz()).unwrap().is_zero());
        let a = kron(&Projector::pz(), &Projector::identity(2));
        let b = kron(&Projector::identity(2), &Projector::px());
        let data = commutator(&a, &b).unwrap();
        assert!(data.is_zero());
        assert_eq!(data.dim_pi, 4);
        assert_eq!(data.rank_pi, 0);
    }

    #[test]
    fn closed_form_low_powers() {
        let (p, q) = (Projector::pz(), Projector::px());
        for n in 1..=4 {
            let (v, _) = product_power_closed_form(&p, &q, n).unwrap();
            let direct = direct_product_power(&p, &q, n).unwrap();
            assert!(v.distance(&direct) < 1e-10 * n as f64, "n = {n}");
        }
        let (v1, terms) = product_power_closed_form(&p, &q, 1).unwrap();
        assert!(v1.distance(&(p.matrix() * q.matrix())) < 1e-15);
        let id = ComplexMatrix::identity(2);
        assert!(terms.alpha.distance(&(&terms.commutator * &(&id + &terms.commutator))) < 1e-15);
        assert!(product_power_closed_form(&p, &q, 0).is_err());
    }

    #[test]
    fn closed_form_commuting_pair() {
        let (p, q) = (Projector::pz(), Projector::identity(2));
        for n in 1..=8 {
            let (v, terms) = product_power_closed_form(&p, &q, n).unwrap();
            assert!(v.distance(p.matrix()) < 1e-15);
            assert!(terms.alpha.frobenius_norm() == 0.0 && terms.gamma_k.frobenius_norm() == 0.0);
        }
    }

    #[test]
    fn closed_form_breaks_from_five_in_two_dims() {
        let (p, q) = (Projector::pz(), Projector::px());
        let (v, _) = product_power_closed_form(&p, &q, 5).unwrap();
        let direct = direct_product_power(&p, &q, 5).unwrap();
        // residual frozen from an independent numpy evaluation: 1/(2√2)
        assert!((v.distance(&direct) - 0.3535533905932738).abs() < 1e-12);
    }

    #[test]
    fn semiclassical_examples() {
        let fam = SemiclassicalFamily::new(std::f64::consts::FRAC_PI_4).unwrap();
        let v = semiclassical_convergence(&fam, 1).unwrap();
        assert!((v - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);

        let mut last = f64::INFINITY;
        for theta in [0.4, 0.2, 0.1, 0.05] {
            let v = semiclassical_convergence(&SemiclassicalFamily::new(theta).unwrap(), 3).unwrap();
            assert!(v < last);
            last = v;
        }
        let tiny = semiclassical_convergence(&SemiclassicalFamily::new(1e-6).unwrap(), 2).unwrap();
        assert!(tiny <= 1e-5);
        assert!(SemiclassicalFamily::new(0.0).is_err());
        assert!(SemiclassicalFamily::new(1.0).is_err());
    }

    #[test]
    fn family_commutator_norm() {
        for theta in [0.05, 0.3, 0.7] {
            let fam = SemiclassicalFamily::new(theta).unwrap();
            let data = commutator(&fam.p_fixed, &fam.p_rotated).unwrap();
            let expected = (2.0 * theta).sin().abs() / 2f64.sqrt();
            assert!((data.pi.frobenius_norm() - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn theorem_on_pz_px() {
        let check = verify_conjunction_theorem(&Projector::pz(), &Projector::px(), 3).unwrap();
        assert!(check.holds());
        assert_eq!(check.conjunction_rank, 0);
        assert_eq!(check.product_entropy, 0.0);
    }

    #[test]
    fn theorem_on_commuting_pair() {
        let a = kron(&Projector::pz(), &Projector::identity(2));
        let b = kron(&Projector::identity(2), &Projector::px());
        for k in [1, 2, 7] {
            assert!(verify_conjunction_theorem(&a, &b, k).unwrap().holds());
        }
    }

    #[test]
    fn embed_places_factor() {
        let e = Projector::pz().embed(0, 2, cap()).unwrap();
        assert_eq!(e, kron(&Projector::pz(), &Projector::identity(2)));
        let e = Projector::pz().embed(1, 2, cap()).unwrap();
        assert_eq!(e, kron(&Projector::identity(2), &Projector::pz()));
        assert!(Projector::pz().embed(2, 2, cap()).is_err());
    }
}
