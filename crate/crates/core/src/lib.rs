//! Quantum logic on finite-dimensional projectors and the information lost
//! when it is reduced to classical logic.
//!
//! The crate is layered bottom-up:
//!
//! * [`matrix`]: dense complex matrices, Kronecker products, Hermitian
//!   eigendecomposition.
//! * [`projector`]: negation, conjunction (commuting and general),
//!   disjunction, implication, commutators, the closed-form product power,
//!   and the semiclassical family.
//! * [`classical`]: characteristic functions on a uniform phase-space grid.
//! * [`entropy`]: von Neumann and Shannon entropies, the `Π`-traced
//!   conjunction entropy, and the recurrent register DIL with its bound.
//! * [`circuit`]: the circuit text format, gate decompositions into
//!   projectors, conjunction counting, and the FFT/Grover builders.
//! * [`verify`]: seeded property suites.
//!
//! ```
//! use dequantlab::projector::{nc_conjunction, Projector};
//!
//! // |0⟩ and |+⟩ span no common direction: their meet is zero.
//! let meet = nc_conjunction(&Projector::pz(), &Projector::px()).unwrap();
//! assert!(meet.matrix().frobenius_norm() < 1e-12);
//! ```
#![forbid(unsafe_code)]

pub mod circuit;
pub mod classical;
pub mod entropy;
mod error;
pub mod matrix;
pub mod projector;
pub mod random;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/projectors.md")]
    mod projectors {}
    #[doc = include_str!("../../../book/src/power.md")]
    mod power {}
    #[doc = include_str!("../../../book/src/entropy.md")]
    mod entropy {}
    #[doc = include_str!("../../../book/src/circuits.md")]
    mod circuits {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
