//! Gates written as weighted sums of projector products.
//!
//! With `P_z = |0⟩⟨0|`, `P_x = |+⟩⟨+|` and `P_¬ = I − P`:
//!
//! * `W_k = √2 (P_x,k − P_¬z,k)`
//! * `C_{k,s} = (1 − e^{iφ}) (P_z,s P_¬z,k + I_s P_z,k) + e^{iφ} I_s I_k`,
//!   with `φ = π / 2^(s−k)`.

use std::f64::consts::SQRT_2;

use super::{CircuitIR, Gate};
use crate::error::{Error, Result};
use crate::matrix::{c, tensor_product, Complex64, ComplexMatrix, DimCap};
use crate::projector::Projector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Pz,
    Px,
    Npz,
    Npx,
}

impl FactorKind {
    pub fn projector(self) -> Projector {
        match self {
            FactorKind::Pz => Projector::pz(),
            FactorKind::Px => Projector::px(),
            FactorKind::Npz => Projector::npz(),
            FactorKind::Npx => Projector::npx(),
        }
    }

    pub fn is_negated(self) -> bool {
        matches!(self, FactorKind::Npz | FactorKind::Npx)
    }

    /// Diagonal in the computational basis.
    pub fn is_z_type(self) -> bool {
        matches!(self, FactorKind::Pz | FactorKind::Npz)
    }

    /// Two single-qubit factors on the same qubit commute iff they share a basis.
    pub fn commutes_with(self, other: FactorKind) -> bool {
        self.is_z_type() == other.is_z_type()
    }
}

/// Single-qubit projector placed on a qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub kind: FactorKind,
    pub qubit: usize,
}

impl Factor {
    pub fn new(kind: FactorKind, qubit: usize) -> Self {
        Self { kind, qubit }
    }
}

/// `coeff · Π factors`; qubits without a factor carry the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorExpr {
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decomposition {
    Expr(ProjectorExpr),
    /// The oracle has no decomposition.
    Opaque(String),
}

pub fn decompose_gate(g: &Gate) -> Decomposition {
    use FactorKind::*;
    let term = |coeff: Complex64, factors: Vec<Factor>| Term { coeff, factors };
    let single = |kind, q| ProjectorExpr { terms: vec![term(c(1.0, 0.0), vec![Factor::new(kind, q)])] };
    let expr = match *g {
        Gate::W(k) => ProjectorExpr {
            terms: vec![
                term(c(SQRT_2, 0.0), vec![Factor::new(Px, k)]),
                term(c(-SQRT_2, 0.0), vec![Factor::new(Npz, k)]),
            ],
        },
        Gate::CPhase { control, target } => {
            let phase = Complex64::from_polar(1.0, g.phase().expect("cphase"));
            let one_minus = c(1.0, 0.0) - phase;
            ProjectorExpr {
                terms: vec![
                    term(one_minus, vec![Factor::new(Npz, control), Factor::new(Pz, target)]),
                    term(one_minus, vec![Factor::new(Pz, control)]),
                    term(phase, vec![]),
                ],
            }
        }
        Gate::Pz(k) => single(Pz, k),
        Gate::Px(k) => single(Px, k),
        Gate::Npz(k) => single(Npz, k),
        Gate::Npx(k) => single(Npx, k),
        Gate::Oracle(ref name) => return Decomposition::Opaque(name.clone()),
    };
    Decomposition::Expr(expr)
}

/// Dense matrix of a projector expression on an `n_qubits` register.
pub fn materialize_expr(expr: &ProjectorExpr, n_qubits: usize, cap: DimCap) -> Result<ComplexMatrix> {
    let dim = 1usize.checked_shl(n_qubits as u32).filter(|_| n_qubits < usize::BITS as usize).unwrap_or(usize::MAX);
    cap.check(dim)?;
    let mut total = ComplexMatrix::zeros(dim, dim);
    for t in &expr.terms {
        let mut m = ComplexMatrix::identity(1);
        for q in 0..n_qubits {
            let local = match t.factors.iter().find(|f| f.qubit == q) {
                Some(f) => f.kind.projector().into_matrix(),
                None => ComplexMatrix::identity(2),
            };
            m = tensor_product(&m, &local, cap)?;
        }
        total = &total + &m.scale(t.coeff);
    }
    Ok(total)
}

/// Product of the gate matrices, `G_last ⋯ G_first`.
pub fn materialize_circuit(circuit: &CircuitIR, cap: DimCap) -> Result<ComplexMatrix> {
    let dim = 1usize << circuit.n_qubits.min(usize::BITS as usize - 1);
    cap.check(dim)?;
    let mut u = ComplexMatrix::identity(dim);
    for g in &circuit.gates {
        match decompose_gate(g) {
            Decomposition::Expr(e) => {
                let m = materialize_expr(&e, circuit.n_qubits, cap)?;
                u = &m * &u;
            }
            Decomposition::Opaque(name) => {
                return Err(Error::InvalidArgument(format!("oracle `{name}` has no matrix")));
            }
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(g: &Gate, n: usize) -> ComplexMatrix {
        match decompose_gate(g) {
            Decomposition::Expr(e) => materialize_expr(&e, n, DimCap::default()).unwrap(),
            Decomposition::Opaque(_) => panic!("opaque"),
        }
    }

    #[test]
    fn walsh_hadamard() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).unwrap();
        assert!(mat(&Gate::W(0), 1).distance(&expected) < 1e-15);
    }

    #[test]
    fn controlled_phase() {
        let m = mat(&Gate::CPhase { control: 0, target: 1 }, 2);
        let expected = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);
        assert!(m.distance(&expected) < 1e-15);

        // non-adjacent pair on three qubits: phase π/4 on |1?1⟩
        let m = mat(&Gate::CPhase { control: 0, target: 2 }, 3);
        let e = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        for i in 0..8 {
            let want = if i & 0b101 == 0b101 { e } else { c(1.0, 0.0) };
            assert!((m[(i, i)] - want).norm() < 1e-15);
        }
        assert!(
            (&m - &ComplexMatrix::from_diag(&(0..8).map(|i| m[(i, i)]).collect::<Vec<_>>())).frobenius_norm() < 1e-15
        );
    }

    #[test]
    fn oracle_is_opaque() {
        assert_eq!(decompose_gate(&Gate::Oracle("g".into())), Decomposition::Opaque("g".into()));
    }

    #[test]
    fn projector_statements() {
        assert_eq!(mat(&Gate::Npz(1), 2), ComplexMatrix::from_real_diag(&[0.0, 1.0, 0.0, 1.0]));
    }

    #[test]
    fn materialization_cap() {
        let e = match decompose_gate(&Gate::W(0)) {
            Decomposition::Expr(e) => e,
            _ => unreachable!(),
        };
        assert!(matches!(materialize_expr(&e, 5, DimCap(16)), Err(Error::Capacity { requested: 32, cap: 16 })));
    }

    #[test]
    fn factor_commutation() {
        assert!(FactorKind::Pz.commutes_with(FactorKind::Npz));
        assert!(!FactorKind::Px.commutes_with(FactorKind::Npz));
    }
}
