use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, C64, ONE, ZERO};

/// Tolerance on `‖ψ‖₂ − 1` accepted on construction.
pub const NORM_TOL: f64 = 1e-12;

/// Amplitudes of an `n`-qubit register. Qubit 0 is the most significant bit of the
/// amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl Statevector {
    pub fn new(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << n_qubits,
                found: amplitudes.len(),
            });
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(n_qubits: usize, mut amplitudes: Vec<C64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::NotNormalized { norm: n });
        }
        amplitudes.iter_mut().for_each(|a| *a /= n);
        Self::new(n_qubits, amplitudes)
    }

    /// `|0…0⟩`.
    pub fn zero_state(n_qubits: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << n_qubits];
        amplitudes[0] = ONE;
        Self {
            n_qubits,
            amplitudes,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    fn bit(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    /// Applies `Ry(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]` to `qubit`.
    pub fn apply_ry(&mut self, qubit: usize, theta: f64) {
        let (s, c) = (theta / 2.0).sin_cos();
        let mask = self.bit(qubit);
        for i0 in 0..self.amplitudes.len() {
            if i0 & mask != 0 {
                continue;
            }
            let i1 = i0 | mask;
            let (a0, a1) = (self.amplitudes[i0], self.amplitudes[i1]);
            self.amplitudes[i0] = a0 * c - a1 * s;
            self.amplitudes[i1] = a0 * s + a1 * c;
        }
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let cmask = self.bit(control);
        let tmask = self.bit(target);
        for i in 0..self.amplitudes.len() {
            if i & cmask != 0 && i & tmask == 0 {
                self.amplitudes.swap(i, i | tmask);
            }
        }
    }
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Tolerated imaginary residue of `⟨ψ|H|ψ⟩`.
const IMAG_TOL: f64 = 1e-10;

/// `⟨ψ|H|ψ⟩` for a Hermitian `H`.
pub fn energy_expectation(h: &HermitianMatrix, state: &Statevector) -> Result<f64> {
    if h.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: state.dim(),
        });
    }
    let value = h.quadratic_form(state.amplitudes())?;
    debug_assert!(
        value.im.abs() <= IMAG_TOL * (1.0 + value.re.abs()),
        "imaginary expectation residue {}",
        value.im
    );
    Ok(value.re)
}
