//! Two-coordinate Morse Hamiltonians for a symmetric triatomic.
//!
//! ```text
//! H1 = p_x²/2m + p_y²/2m − p_x p_y / M + C(1 − e^{−x/b})² + C(1 − e^{−y/b})²
//! H2 = p_1²/2m₁ + p_2²/2m₂ + C(1 − e^{−(x₁+x₂)/√2b})² + C(1 − e^{−(x₁−x₂)/√2b})²
//! m₁ = m/(1 − m/M),  m₂ = m/(1 + m/M)
//! ```
//!
//! Both act on the product space with `X₁ = X ⊗ I`, `X₂ = I ⊗ X`, `P₁ = P ⊗ I`,
//! `P₂ = I ⊗ P`.

use std::fmt;
use std::str::FromStr;

use crate::basis::DiscretizedOperatorPair;
use crate::error::{invalid, Error, Result};
use crate::matrix::{hermitian_matrix_function, kron, ComplexMatrix, HermitianMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriatomicForm {
    /// Coupled kinetic term, separable potential.
    H1,
    /// Separable kinetic term, rotated coordinates in the potential.
    H2,
}

impl fmt::Display for TriatomicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriatomicForm::H1 => "H1",
            TriatomicForm::H2 => "H2",
        })
    }
}

impl FromStr for TriatomicForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "H1" | "1" => Ok(TriatomicForm::H1),
            "H2" | "2" => Ok(TriatomicForm::H2),
            other => Err(Error::Parse(format!("unknown form '{other}' (expected H1 or H2)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriatomicSpec {
    /// End-atom mass.
    pub m: f64,
    /// Central-atom mass.
    pub big_m: f64,
    /// Well depth.
    pub c: f64,
    /// Range parameter.
    pub b: f64,
    pub form: TriatomicForm,
}

impl TriatomicSpec {
    pub fn new(m: f64, big_m: f64, c: f64, b: f64, form: TriatomicForm) -> Result<Self> {
        for (name, v) in [("m", m), ("M", big_m), ("b", b)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(name, format!("must be positive, got {v}")));
            }
        }
        if !(c.is_finite() && c >= 0.0) {
            return Err(invalid("C", format!("must be non-negative, got {c}")));
        }
        if form == TriatomicForm::H2 && big_m <= m {
            return Err(invalid(
                "M",
                format!("the decoupled form needs M > m (got m = {m}, M = {big_m})"),
            ));
        }
        Ok(Self {
            m,
            big_m,
            c,
            b,
            form,
        })
    }

    pub fn m1(&self) -> f64 {
        self.m / (1.0 - self.m / self.big_m)
    }

    pub fn m2(&self) -> f64 {
        self.m / (1.0 + self.m / self.big_m)
    }
}

/// `C (1 − E)²` for a Hermitian `E`.
fn morse_well(c: f64, e: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = e.rows();
    let d = ComplexMatrix::identity(n).try_sub(e)?;
    Ok(d.matmul(&d)?.scale_real(c))
}

pub fn build_triatomic_hamiltonian(
    spec: &TriatomicSpec,
    pair: &DiscretizedOperatorPair,
) -> Result<HermitianMatrix> {
    let p2 = pair.p_squared_op.as_matrix();
    let eye = ComplexMatrix::identity(pair.dim);
    let p1_sq = kron(p2, &eye);
    let p2_sq = kron(&eye, p2);

    let h = match spec.form {
        TriatomicForm::H1 => {
            let p = pair.momentum()?.as_matrix();
            let b = spec.b;
            let decay = hermitian_matrix_function(&pair.x_op, move |x| (-x / b).exp())?;
            let well = morse_well(spec.c, decay.as_matrix())?;
            // P₁ and P₂ act on different factors, so P₁P₂ = P ⊗ P exactly.
            let cross = kron(p, p);
            let kinetic = p1_sq
                .try_add(&p2_sq)?
                .scale_real(0.5 / spec.m)
                .try_sub(&cross.scale_real(1.0 / spec.big_m))?;
            kinetic.try_add(&kron(&well, &eye))?.try_add(&kron(&eye, &well))?
        }
        TriatomicForm::H2 => {
            let k = 1.0 / (std::f64::consts::SQRT_2 * spec.b);
            // X₁ and X₂ commute, so exp(−k(X₁ ± X₂)) = exp(−kX) ⊗ exp(∓kX).
            let down = hermitian_matrix_function(&pair.x_op, move |x| (-k * x).exp())?;
            let up = hermitian_matrix_function(&pair.x_op, move |x| (k * x).exp())?;
            let sum = kron(down.as_matrix(), down.as_matrix());
            let diff = kron(down.as_matrix(), up.as_matrix());
            p1_sq
                .scale_real(0.5 / spec.m1())
                .try_add(&p2_sq.scale_real(0.5 / spec.m2()))?
                .try_add(&morse_well(spec.c, &sum)?)?
                .try_add(&morse_well(spec.c, &diff)?)?
        }
    };
    HermitianMatrix::new(h)
}
