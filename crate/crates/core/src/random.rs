//! Seeded generators for randomized checks.
//!
//! Random projectors come from the first `r` columns of a Haar unitary (QR of
//! a complex Gaussian matrix with the phases of `R`'s diagonal divided out).

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::circuit::{CircuitIR, Gate};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::projector::{Projector, QuantumState};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = DMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut data = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
            data.push(q[(i, j)] * phase);
        }
    }
    ComplexMatrix::from_vec(dim, dim, data).expect("finite unitary")
}

/// Rank-`rank` projector, uniform over the Grassmannian.
pub fn random_projector(dim: usize, rank: usize, rng: &mut impl Rng) -> Projector {
    let u = random_unitary(dim, rng);
    let frame: Vec<_> = (0..rank).map(|j| u.column(j)).collect();
    Projector::from_frame(dim, &frame).expect("orthonormal frame")
}

/// Random projector pair with independent ranks in `0..=dim`.
pub fn random_pair(dim: usize, rng: &mut impl Rng) -> (Projector, Projector) {
    let r1 = rng.random_range(0..=dim);
    let r2 = rng.random_range(0..=dim);
    (random_projector(dim, r1, rng), random_projector(dim, r2, rng))
}

pub fn random_state(dim: usize, rng: &mut impl Rng) -> QuantumState {
    QuantumState::normalized((0..dim).map(|_| gaussian(rng)).collect()).expect("non-zero vector")
}

pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_vec(dim, dim, data).expect("finite").hermitian_part()
}

/// Random circuit over the full gate set (no oracle), `gates` long.
pub fn random_circuit(n_qubits: usize, gates: usize, rng: &mut impl Rng) -> CircuitIR {
    let mut list = Vec::with_capacity(gates);
    while list.len() < gates {
        let k = rng.random_range(0..n_qubits);
        let g = match rng.random_range(0..6) {
            0 => Gate::W(k),
            1 if k + 1 < n_qubits => Gate::CPhase { control: k, target: rng.random_range(k + 1..n_qubits) },
            1 => continue,
            2 => Gate::Pz(k),
            3 => Gate::Px(k),
            4 => Gate::Npz(k),
            _ => Gate::Npx(k),
        };
        list.push(g);
    }
    CircuitIR::new("random", n_qubits, list, vec![]).expect("valid random circuit")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = seeded(1);
        let u = random_unitary(6, &mut rng);
        assert!((&u.adjoint() * &u).distance(&ComplexMatrix::identity(6)) < 1e-12);
    }

    #[test]
    fn projector_has_requested_rank() {
        let mut rng = seeded(2);
        for r in 0..=5 {
            assert_eq!(random_projector(5, r, &mut rng).rank(), r);
        }
    }

    #[test]
    fn reproducible() {
        let a = random_state(4, &mut seeded(9));
        let b = random_state(4, &mut seeded(9));
        assert_eq!(a, b);
    }
}
