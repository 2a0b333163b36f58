//! Discrete position and momentum operators.
//!
//! The closed-form entries below use 1-based row and column indices `j, k` as in the
//! usual textbook layout; storage index `r` corresponds to `j = r + 1`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix, C64, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// Truncated harmonic-oscillator number basis.
    Oscillator,
    /// Uniform grid with a Fourier-conjugated momentum.
    Position,
    /// Uniform grid with the three-point second difference as `p²`.
    FiniteDifference,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Oscillator => "oscillator",
            BasisKind::Position => "position",
            BasisKind::FiniteDifference => "fd",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "oscillator" | "osc" => Ok(BasisKind::Oscillator),
            "position" | "pos" => Ok(BasisKind::Position),
            "fd" | "finite-difference" | "finitedifference" => Ok(BasisKind::FiniteDifference),
            other => Err(Error::Parse(format!(
                "unknown basis '{other}' (expected oscillator, position or fd)"
            ))),
        }
    }
}

/// Position and momentum matrices of one discretization at dimension `dim`.
#[derive(Debug, Clone)]
pub struct DiscretizedOperatorPair {
    pub kind: BasisKind,
    pub dim: usize,
    pub x_op: HermitianMatrix,
    /// Absent for the finite-difference basis, which only defines `p²`.
    pub p_op: Option<HermitianMatrix>,
    pub p_squared_op: HermitianMatrix,
}

impl DiscretizedOperatorPair {
    pub fn build(kind: BasisKind, dim: usize) -> Result<Self> {
        match kind {
            BasisKind::Oscillator => oscillator_basis(dim),
            BasisKind::Position => position_basis(dim),
            BasisKind::FiniteDifference => finite_difference_basis(dim),
        }
    }

    pub fn momentum(&self) -> Result<&HermitianMatrix> {
        self.p_op
            .as_ref()
            .ok_or(Error::MissingMomentum("finite-difference"))
    }

    /// Canonical rescaling `x → ℓ x`, `p → p / ℓ`, which preserves `[x, p]`.
    ///
    /// Matching `ℓ` to the width of a potential well concentrates the truncated basis
    /// where the low-lying states live.
    pub fn with_length_scale(self, length: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(invalid("length_scale", format!("must be positive, got {length}")));
        }
        Ok(Self {
            kind: self.kind,
            dim: self.dim,
            x_op: self.x_op.scale(length),
            p_op: self.p_op.map(|p| p.scale(1.0 / length)),
            p_squared_op: self.p_squared_op.scale(1.0 / (length * length)),
        })
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::BasisTooSmall(n))
    } else {
        Ok(())
    }
}

fn hermitian(m: ComplexMatrix) -> HermitianMatrix {
    HermitianMatrix::new(m).expect("closed-form basis matrices are Hermitian")
}

pub fn oscillator_basis(n: usize) -> Result<DiscretizedOperatorPair> {
    check_dim(n)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // Row r couples to r+1 with √(r+1)/√2.
    let x = ComplexMatrix::from_fn(n, n, |r, c| {
        if c == r + 1 {
            C64::from(s * (c as f64).sqrt())
        } else if r == c + 1 {
            C64::from(s * (r as f64).sqrt())
        } else {
            ZERO
        }
    });
    let p = ComplexMatrix::from_fn(n, n, |r, c| {
        if c == r + 1 {
            C64::new(0.0, -s * (c as f64).sqrt())
        } else if r == c + 1 {
            C64::new(0.0, s * (r as f64).sqrt())
        } else {
            ZERO
        }
    });
    let p = hermitian(p);
    let p2 = p.product(&p)?;
    Ok(DiscretizedOperatorPair {
        kind: BasisKind::Oscillator,
        dim: n,
        x_op: hermitian(x),
        p_op: Some(p),
        p_squared_op: p2,
    })
}

/// `(2j − (N+1))` for 1-based `j`, i.e. the symmetric odd-integer grid.
fn centered_index(r: usize, n: usize) -> f64 {
    (2 * (r + 1)) as f64 - (n + 1) as f64
}

/// The unitary `F[j][k] = exp(2πi/(4N) (2j−(N+1))(2k−(N+1))) / √N`.
pub fn sylvester_matrix(n: usize) -> Result<ComplexMatrix> {
    check_dim(n)?;
    let norm = 1.0 / (n as f64).sqrt();
    let w = 2.0 * PI / (4 * n) as f64;
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        C64::from_polar(norm, w * centered_index(r, n) * centered_index(c, n))
    }))
}

pub fn position_basis(n: usize) -> Result<DiscretizedOperatorPair> {
    check_dim(n)?;
    let spacing = (2.0 * PI / (4 * n) as f64).sqrt();
    let xs: Vec<f64> = (0..n).map(|r| spacing * centered_index(r, n)).collect();
    let x = ComplexMatrix::from_real_diagonal(&xs);
    let f = sylvester_matrix(n)?;
    let p = f.adjoint().matmul(&x)?.matmul(&f)?;
    let p = HermitianMatrix::new(p)?;
    let p2 = p.product(&p)?;
    Ok(DiscretizedOperatorPair {
        kind: BasisKind::Position,
        dim: n,
        x_op: hermitian(x),
        p_op: Some(p),
        p_squared_op: p2,
    })
}

pub fn finite_difference_basis(n: usize) -> Result<DiscretizedOperatorPair> {
    check_dim(n)?;
    let spacing = (1.0 / (2 * n) as f64).sqrt();
    let xs: Vec<f64> = (0..n).map(|r| spacing * centered_index(r, n)).collect();
    let half = n as f64 / 2.0;
    let p2 = ComplexMatrix::from_fn(n, n, |r, c| {
        if r == c {
            C64::from(2.0 * half)
        } else if r.abs_diff(c) == 1 {
            C64::from(-half)
        } else {
            ZERO
        }
    });
    Ok(DiscretizedOperatorPair {
        kind: BasisKind::FiniteDifference,
        dim: n,
        x_op: HermitianMatrix::from_real_diagonal(&xs),
        p_op: None,
        p_squared_op: hermitian(p2),
    })
}
