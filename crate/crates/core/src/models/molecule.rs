//! Diatomic Morse molecules.
//!
//! The physical Hamiltonian `p²/(2 m_r) + D (e^{−2ax} − 2e^{−ax})` maps onto the
//! dimensionless single-parameter form
//!
//! ```text
//! H = p²/2 + (λ²/2)(e^{−2x} − 2e^{−x} + 1)
//! λ² = 2 m_r c² D / (a² ħ²c²),   E_mult = a² ħ²c² / (m_r c²)
//! ε₀ = (λ − ¼)/2,   ε_∞ = λ²/2,   E₀ = (ε₀ − λ²/2) E_mult
//! ```

use crate::basis::{oscillator_basis, DiscretizedOperatorPair};
use crate::error::{invalid, Error, Result};
use crate::matrix::{hermitian_matrix_function, HermitianMatrix};

/// Rest energy of one atomic mass unit, eV.
pub const AMU_EV: f64 = 931.5e6;
/// ħc in eV·Å. Widths are given in 10¹⁰ m⁻¹ = Å⁻¹.
pub const HBAR_C_EV_ANGSTROM: f64 = 1973.269804;

/// Raw molecular inputs: reduced mass (amu), well depth (eV) and width (Å⁻¹).
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeParams {
    pub name: String,
    pub reduced_mass: f64,
    pub well_depth: f64,
    pub width: f64,
}

impl MoleculeParams {
    pub fn new(name: impl Into<String>, reduced_mass: f64, well_depth: f64, width: f64) -> Self {
        Self {
            name: name.into(),
            reduced_mass,
            well_depth,
            width,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeRecord {
    pub params: MoleculeParams,
    pub lambda_squared: f64,
    /// Energy unit of the dimensionless Hamiltonian, eV.
    pub e_mult: f64,
    pub epsilon0: f64,
    pub epsilon_inf: f64,
    /// Ground-state energy relative to the dissociation limit, eV.
    pub ground_energy: f64,
    pub n_bound: usize,
}

impl MoleculeRecord {
    pub fn name(&self) -> &str {
        &self.params.name
    }

    pub fn lambda(&self) -> f64 {
        self.lambda_squared.sqrt()
    }

    pub fn epsilon_ratio(&self) -> f64 {
        self.epsilon0 / self.epsilon_inf
    }

    /// Converts a dimensionless eigenvalue of the λ-form Hamiltonian to eV.
    pub fn to_ev(&self, epsilon: f64) -> f64 {
        (epsilon - self.epsilon_inf) * self.e_mult
    }
}

pub fn reduced_mass(m1: f64, m2: f64) -> Result<f64> {
    if !(m1 > 0.0 && m2 > 0.0) {
        return Err(invalid("mass", format!("masses must be positive, got {m1} and {m2}")));
    }
    Ok(m1 * m2 / (m1 + m2))
}

pub fn derive_molecule(params: MoleculeParams) -> Result<MoleculeRecord> {
    for (name, v) in [
        ("reduced_mass", params.reduced_mass),
        ("well_depth", params.well_depth),
        ("width", params.width),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(invalid(name, format!("must be positive, got {v}")));
        }
    }
    let rest_energy = params.reduced_mass * AMU_EV;
    let width_energy = (params.width * HBAR_C_EV_ANGSTROM).powi(2);
    let lambda_squared = 2.0 * rest_energy * params.well_depth / width_energy;
    let e_mult = width_energy / rest_energy;
    let lambda = lambda_squared.sqrt();
    let epsilon0 = (lambda - 0.25) / 2.0;
    let epsilon_inf = lambda_squared / 2.0;
    Ok(MoleculeRecord {
        params,
        lambda_squared,
        e_mult,
        epsilon0,
        epsilon_inf,
        ground_energy: (epsilon0 - epsilon_inf) * e_mult,
        n_bound: (lambda + 0.5).floor() as usize,
    })
}

/// `(name, m_r [amu], D [eV], a [Å⁻¹])` for the built-in molecules.
pub const BUILTIN_MOLECULES: [(&str, f64, f64, f64); 6] = [
    ("H2", 0.50391, 4.7446, 1.9426),
    ("HCl", 0.9796, 4.618, 1.869),
    ("LiH", 0.8801221, 2.515287, 1.1280),
    ("CO", 6.8606719, 11.2256, 2.2994),
    ("O2", 8.0, 5.214, 2.655),
    ("N2", 7.0, 9.905, 2.691),
];

/// Case-insensitive lookup in [`BUILTIN_MOLECULES`].
pub fn lookup_molecule(name: &str) -> Result<MoleculeParams> {
    BUILTIN_MOLECULES
        .iter()
        .find(|(n, ..)| n.eq_ignore_ascii_case(name))
        .map(|&(n, m, d, a)| MoleculeParams::new(n, m, d, a))
        .ok_or_else(|| {
            let known: Vec<&str> = BUILTIN_MOLECULES.iter().map(|m| m.0).collect();
            Error::Parse(format!(
                "unknown molecule '{name}' (known: {})",
                known.join(", ")
            ))
        })
}

/// `p²/2 + (λ²/2)(e^{−2X} − 2e^{−X} + 1)`.
pub fn build_molecule_hamiltonian(
    lambda: f64,
    pair: &DiscretizedOperatorPair,
) -> Result<HermitianMatrix> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(invalid("lambda", format!("must be positive, got {lambda}")));
    }
    let well = 0.5 * lambda * lambda;
    let potential = hermitian_matrix_function(&pair.x_op, move |x| {
        let e = (-x).exp();
        well * (e * e - 2.0 * e + 1.0)
    })?;
    Ok(&pair.p_squared_op.scale(0.5) + &potential)
}

/// Oscillator basis with length scale `1/√λ`, the harmonic width of the λ-form well.
pub fn molecule_basis(lambda: f64, dim: usize) -> Result<DiscretizedOperatorPair> {
    oscillator_basis(dim)?.with_length_scale(1.0 / lambda.sqrt())
}
