use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::vqe::Statevector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Entanglement {
    /// CNOT(i → j) for every pair `i < j`, in lexicographic order.
    #[default]
    Full,
}

impl fmt::Display for Entanglement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("full")
    }
}

impl FromStr for Entanglement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Entanglement::Full),
            other => Err(Error::Parse(format!("unsupported entanglement '{other}'"))),
        }
    }
}

/// Ry variational form: `depth` blocks of `[Ry layer, entangler]`, then a final Ry
/// layer, for `n_qubits · (depth + 1)` angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnsatzConfig {
    pub n_qubits: usize,
    pub depth: usize,
    pub entanglement: Entanglement,
}

impl AnsatzConfig {
    pub fn new(n_qubits: usize, depth: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(invalid("n_qubits", "need at least one qubit"));
        }
        Ok(Self {
            n_qubits,
            depth,
            entanglement: Entanglement::Full,
        })
    }

    pub fn parameter_count(&self) -> usize {
        self.n_qubits * (self.depth + 1)
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }
}

/// Rotation angles in radians.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterVector(Vec<f64>);

impl ParameterVector {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(invalid("angles", format!("non-finite angle {bad}")));
        }
        Ok(Self(angles))
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

pub fn ansatz_state(config: &AnsatzConfig, params: &ParameterVector) -> Result<Statevector> {
    prepare(config, params.as_slice())
}

/// Same as [`ansatz_state`] on a raw slice; the optimizer hot path.
pub(crate) fn prepare(config: &AnsatzConfig, angles: &[f64]) -> Result<Statevector> {
    if angles.len() != config.parameter_count() {
        return Err(Error::DimensionMismatch {
            expected: config.parameter_count(),
            found: angles.len(),
        });
    }
    let n = config.n_qubits;
    let mut state = Statevector::zero_state(n);
    for (layer, chunk) in angles.chunks(n).enumerate() {
        for (q, &theta) in chunk.iter().enumerate() {
            state.apply_ry(q, theta);
        }
        if layer < config.depth {
            match config.entanglement {
                Entanglement::Full => {
                    for control in 0..n {
                        for target in control + 1..n {
                            state.apply_cnot(control, target);
                        }
                    }
                }
            }
        }
    }
    Ok(state)
}
