//! Morse-potential model builders.
//!
//! * [`susy`]: partner Hamiltonians, the shape-invariance hierarchy and the analytic
//!   spectrum in the form `V = e^{-2x} - (2A ± 1) e^{-x} + A²`.
//! * [`molecule`]: the diatomic parameter pipeline and the single-λ Hamiltonian.
//! * [`triatomic`]: two-coordinate Hamiltonians in coupled and decoupled form.

pub mod molecule;
pub mod susy;
pub mod triatomic;

pub use molecule::{
    build_molecule_hamiltonian, derive_molecule, lookup_molecule, molecule_basis,
    reduced_mass, MoleculeParams, MoleculeRecord, BUILTIN_MOLECULES,
};
pub use susy::{
    associated_laguerre, build_susy_hamiltonian, exact_energy, exact_wavefunction,
    ladder_operator, rescaled_susy_hamiltonian, superpotential, susy_potential, PartnerSign,
    SusyMorseSpec,
};
pub use triatomic::{build_triatomic_hamiltonian, TriatomicForm, TriatomicSpec};
