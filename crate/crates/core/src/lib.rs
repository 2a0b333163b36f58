//! Quantum-simulation toolkit for the Morse potential.
//!
//! The crate builds discretized Morse Hamiltonians (supersymmetric partners and their
//! hierarchy, diatomic molecules, a two-coordinate triatomic model), expands them in
//! Pauli strings, and minimizes their energy with a statevector simulation of the Ry
//! variational circuit. Dense Hermitian diagonalization serves as the exact reference.
//!
//! ```
//! use morse_vqe::basis::oscillator_basis;
//! use morse_vqe::matrix::hermitian_eigenvalues;
//! use morse_vqe::models::{build_susy_hamiltonian, PartnerSign, SusyMorseSpec};
//!
//! let pair = oscillator_basis(16).unwrap();
//! let spec = SusyMorseSpec::new(5.0, PartnerSign::Minus, 0.5, 0).unwrap();
//! let h = build_susy_hamiltonian(&spec, &pair).unwrap();
//! let ground = hermitian_eigenvalues(&h).unwrap()[0];
//! assert!(ground.abs() < 0.05);
//! ```

pub mod basis;
pub mod error;
pub mod matrix;
pub mod models;
pub mod pauli;
pub mod vqe;

pub use error::{Error, Result};
