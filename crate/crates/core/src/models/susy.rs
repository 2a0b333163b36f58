//! Supersymmetric form of the Morse potential.
//!
//! With superpotential `W(x) = A − e^{−x}` (units `2m = ħ = 1`):
//!
//! ```text
//! V−(x) = W² − W' = e^{−2x} − (2A+1) e^{−x} + A²
//! V+(x) = W² + W' = e^{−2x} − (2A−1) e^{−x} + A²
//! E_n   = A² − (A−n)²,   0 ≤ n < A
//! ```
//!
//! Hierarchy level `k ≥ 1` is `V+(x, A−(k−1))` raised by `Σ_{j=1}^{k−1} (2(A−j)+1)`,
//! so its ground energy equals `E_k` of the original `V−`.

use std::fmt;
use std::str::FromStr;

use crate::basis::DiscretizedOperatorPair;
use crate::error::{invalid, Error, Result};
use crate::matrix::{hermitian_matrix_function, ComplexMatrix, HermitianMatrix, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartnerSign {
    Minus,
    Plus,
}

impl fmt::Display for PartnerSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartnerSign::Minus => "minus",
            PartnerSign::Plus => "plus",
        })
    }
}

impl FromStr for PartnerSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "minus" | "-" => Ok(PartnerSign::Minus),
            "plus" | "+" => Ok(PartnerSign::Plus),
            other => Err(Error::Parse(format!("unknown sign '{other}' (expected minus or plus)"))),
        }
    }
}

/// Selects one member of the partner pair or hierarchy.
///
/// `sign` only matters at level 0; level 1 is `V+` at the original `A` by definition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusyMorseSpec {
    a: f64,
    sign: PartnerSign,
    scale: f64,
    hierarchy_level: usize,
}

impl SusyMorseSpec {
    pub fn new(a: f64, sign: PartnerSign, scale: f64, hierarchy_level: usize) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(invalid("A", format!("must be positive, got {a}")));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(invalid("scale", format!("must be positive, got {scale}")));
        }
        let max = a.floor() as usize;
        if hierarchy_level > max {
            return Err(Error::HierarchyTooDeep {
                level: hierarchy_level,
                max,
                a,
            });
        }
        Ok(Self {
            a,
            sign,
            scale,
            hierarchy_level,
        })
    }

    /// `H−` at scale 1, level 0.
    pub fn minus(a: f64) -> Result<Self> {
        Self::new(a, PartnerSign::Minus, 1.0, 0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn sign(&self) -> PartnerSign {
        self.sign
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn hierarchy_level(&self) -> usize {
        self.hierarchy_level
    }

    /// `(effective A, linear coefficient of e^{−x}, constant shift)` for this member.
    fn coefficients(&self) -> (f64, f64, f64) {
        match (self.hierarchy_level, self.sign) {
            (0, PartnerSign::Minus) => (self.a, 2.0 * self.a + 1.0, 0.0),
            (0, PartnerSign::Plus) => (self.a, 2.0 * self.a - 1.0, 0.0),
            (k, _) => {
                let a_k = self.a - (k - 1) as f64;
                // Σ_{j=1}^{k−1} (2(A−j)+1) = (k−1)(2A+1−k); the integer factors are exact.
                let steps = (k - 1) as f64;
                let shift = steps * (2.0 * self.a + 1.0 - k as f64);
                (a_k, 2.0 * a_k - 1.0, shift)
            }
        }
    }

    /// The unscaled potential `V(x)` of this member, as a closure.
    fn unscaled_potential(&self) -> impl Fn(f64) -> f64 {
        let (a_k, lin, shift) = self.coefficients();
        move |x| {
            let e = (-x).exp();
            e * e - lin * e + a_k * a_k + shift
        }
    }
}

/// `W(x) = A − e^{−x}`.
pub fn superpotential(a: f64, x: f64) -> f64 {
    a - (-x).exp()
}

pub fn susy_potential(spec: &SusyMorseSpec, x: f64) -> f64 {
    spec.scale * spec.unscaled_potential()(x)
}

fn check_bound_state(a: f64, n: usize) -> Result<()> {
    if (n as f64) < a {
        Ok(())
    } else {
        Err(Error::NotBoundState { n, a })
    }
}

/// `E_n = A² − (A−n)²`.
pub fn exact_energy(a: f64, n: usize) -> Result<f64> {
    check_bound_state(a, n)?;
    let d = a - n as f64;
    Ok(a * a - d * d)
}

/// Generalized Laguerre polynomial `L_n^{(α)}(y)` by the three-term recurrence.
pub fn associated_laguerre(n: usize, alpha: f64, y: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - y;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - y) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Unnormalized `ψ_n(x) = e^{−x(A−n)} e^{−e^{−x}} L_n^{(2A−2n)}(2e^{−x})`.
pub fn exact_wavefunction(a: f64, n: usize, x: f64) -> Result<f64> {
    check_bound_state(a, n)?;
    let nf = n as f64;
    let e = (-x).exp();
    Ok((-x * (a - nf)).exp() * (-e).exp() * associated_laguerre(n, 2.0 * a - 2.0 * nf, 2.0 * e))
}

/// `H = scale · (p² + V(X))`, with `V(X)` evaluated as a matrix function of `X`.
pub fn build_susy_hamiltonian(
    spec: &SusyMorseSpec,
    pair: &DiscretizedOperatorPair,
) -> Result<HermitianMatrix> {
    let potential = hermitian_matrix_function(&pair.x_op, spec.unscaled_potential())?;
    Ok((&pair.p_squared_op + &potential).scale(spec.scale))
}

/// `H− = p²/2 + ½(A+½)²(e^{−2x} − 2e^{−x} + 1) − ½(A+¼)`, the rescaled-coordinate form.
pub fn rescaled_susy_hamiltonian(a: f64, pair: &DiscretizedOperatorPair) -> Result<HermitianMatrix> {
    if !(a.is_finite() && a > 0.0) {
        return Err(invalid("A", format!("must be positive, got {a}")));
    }
    let lambda = a + 0.5;
    let offset = -0.5 * (a + 0.25);
    let well = 0.5 * lambda * lambda;
    let potential = hermitian_matrix_function(&pair.x_op, move |x| {
        let e = (-x).exp();
        well * (e * e - 2.0 * e + 1.0) + offset
    })?;
    Ok(&pair.p_squared_op.scale(0.5) + &potential)
}

/// Lowering operator `a = iP + W(X)`; `a†a` and `a a†` reproduce `H−` and `H+`
/// away from the truncation edge of the basis.
pub fn ladder_operator(a: f64, pair: &DiscretizedOperatorPair) -> Result<ComplexMatrix> {
    let p = pair.momentum()?;
    let w = hermitian_matrix_function(&pair.x_op, |x| superpotential(a, x))?;
    p.as_matrix().scale(I).try_add(w.as_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{oscillator_basis, position_basis};
    use crate::matrix::hermitian_eigenvalues;

    #[test]
    fn superpotential_values() {
        assert_eq!(superpotential(5.0, 0.0), 4.0);
        assert!((superpotential(5.0, 50.0) - 5.0).abs() <= 1e-15);
        assert!(superpotential(5.0, (1.0f64 / 5.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn potential_at_origin_and_minimum() {
        let spec = SusyMorseSpec::minus(5.0).unwrap();
        assert!((susy_potential(&spec, 0.0) - 15.0).abs() < 1e-14);
        // Minimum where e^{−x} = (2A+1)/2.
        let x_min = -(11.0f64 / 2.0).ln();
        assert!((susy_potential(&spec, x_min) + 5.25).abs() < 1e-12);
        for dx in [-1e-3, 1e-3] {
            assert!(susy_potential(&spec, x_min + dx) > -5.25);
        }
    }

    #[test]
    fn hierarchy_potentials_match_definition() {
        let a = 5.0;
        let plus = |x: f64, a: f64| (-2.0 * x).exp() - (2.0 * a - 1.0) * (-x).exp() + a * a;
        let x = 0.37;
        let level = |k| susy_potential(&SusyMorseSpec::new(a, PartnerSign::Minus, 1.0, k).unwrap(), x);
        assert!((level(1) - plus(x, 5.0)).abs() < 1e-12);
        assert!((level(2) - (plus(x, 4.0) + 9.0)).abs() < 1e-12);
        assert!((level(3) - (plus(x, 3.0) + 9.0 + 7.0)).abs() < 1e-12);
        assert!((level(4) - (plus(x, 2.0) + 9.0 + 7.0 + 5.0)).abs() < 1e-12);
        let sp = SusyMorseSpec::new(a, PartnerSign::Plus, 1.0, 0).unwrap();
        assert!((susy_potential(&sp, x) - plus(x, 5.0)).abs() < 1e-12);
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            SusyMorseSpec::new(5.0, PartnerSign::Minus, 1.0, 6),
            Err(Error::HierarchyTooDeep { level: 6, max: 5, .. })
        ));
        assert!(SusyMorseSpec::new(5.0, PartnerSign::Minus, 1.0, 5).is_ok());
        assert!(SusyMorseSpec::new(-1.0, PartnerSign::Minus, 1.0, 0).is_err());
        assert!(SusyMorseSpec::new(5.0, PartnerSign::Minus, 0.0, 0).is_err());
    }

    #[test]
    fn exact_energies() {
        let e: Vec<f64> = (0..5).map(|n| exact_energy(5.0, n).unwrap()).collect();
        assert_eq!(e, vec![0.0, 9.0, 16.0, 21.0, 24.0]);
        assert_eq!(exact_energy(2.7, 0).unwrap(), 0.0);
        assert_eq!(
            exact_energy(5.0, 5).unwrap_err(),
            Error::NotBoundState { n: 5, a: 5.0 }
        );
    }

    #[test]
    fn laguerre_low_orders() {
        assert_eq!(associated_laguerre(0, 3.0, 1.5), 1.0);
        assert_eq!(associated_laguerre(1, 8.0, 2.0), 7.0);
        // L_2^{(α)}(y) = ((α+1)(α+2) − 2(α+2)y + y²)/2
        let (al, y) = (1.5, 0.7);
        let want = ((al + 1.0) * (al + 2.0) - 2.0 * (al + 2.0) * y + y * y) / 2.0;
        assert!((associated_laguerre(2, al, y) - want).abs() < 1e-14);
    }

    #[test]
    fn wavefunction_closed_forms() {
        for &x in &[-1.0f64, 0.0, 0.8, 3.0] {
            let want = (-5.0 * x).exp() * (-(-x).exp()).exp();
            assert!((exact_wavefunction(5.0, 0, x).unwrap() - want).abs() < 1e-15 * want.max(1.0));
        }
        let want = (-1.0f64).exp() * 7.0;
        assert!((exact_wavefunction(5.0, 1, 0.0).unwrap() - want).abs() < 1e-14 * want);
        assert!(exact_wavefunction(5.0, 5, 0.0).is_err());
    }

    #[test]
    fn wavefunction_solves_schrodinger_equation() {
        let a = 5.0;
        let spec = SusyMorseSpec::minus(a).unwrap();
        let h = 1e-3;
        for n in 0..2 {
            let e_n = exact_energy(a, n).unwrap();
            let psi = |x| exact_wavefunction(a, n, x).unwrap();
            let grid: Vec<f64> = (0..=800).map(|k| -2.0 + 0.01 * k as f64).collect();
            let max_psi = grid.iter().map(|&x| psi(x).abs()).fold(0.0, f64::max);
            for &x in &grid {
                let d2 = (psi(x + h) - 2.0 * psi(x) + psi(x - h)) / (h * h);
                let residual = -d2 + susy_potential(&spec, x) * psi(x) - e_n * psi(x);
                assert!(residual.abs() <= 1e-4 * max_psi, "n={n} x={x} r={residual}");
            }
        }
    }

    #[test]
    fn oscillator_partner_ground_states() {
        let pair = oscillator_basis(16).unwrap();
        let minus = SusyMorseSpec::new(5.0, PartnerSign::Minus, 0.5, 0).unwrap();
        let plus = SusyMorseSpec::new(5.0, PartnerSign::Plus, 0.5, 0).unwrap();
        let em = hermitian_eigenvalues(&build_susy_hamiltonian(&minus, &pair).unwrap()).unwrap();
        let ep = hermitian_eigenvalues(&build_susy_hamiltonian(&plus, &pair).unwrap()).unwrap();
        assert!(em[0].abs() < 0.05, "{}", em[0]);
        assert!((ep[0] - 4.5).abs() < 0.1, "{}", ep[0]);
    }

    #[test]
    fn partner_spectra_are_degenerate() {
        let pair = oscillator_basis(64).unwrap();
        let minus = build_susy_hamiltonian(&SusyMorseSpec::minus(5.0).unwrap(), &pair).unwrap();
        let plus = build_susy_hamiltonian(
            &SusyMorseSpec::new(5.0, PartnerSign::Plus, 1.0, 0).unwrap(),
            &pair,
        )
        .unwrap();
        let em = hermitian_eigenvalues(&minus).unwrap();
        let ep = hermitian_eigenvalues(&plus).unwrap();
        for k in 1..3 {
            assert!((em[k] - ep[k - 1]).abs() < 0.1, "k={k}: {} vs {}", em[k], ep[k - 1]);
        }
    }

    #[test]
    fn hierarchy_ground_states_position_basis() {
        let pair = position_basis(64).unwrap();
        for (k, want) in [0.0, 9.0, 16.0, 21.0, 24.0].iter().enumerate() {
            let spec = SusyMorseSpec::new(5.0, PartnerSign::Minus, 1.0, k).unwrap();
            let ev = hermitian_eigenvalues(&build_susy_hamiltonian(&spec, &pair).unwrap()).unwrap();
            assert!((ev[0] - want).abs() < 0.2, "level {k}: {}", ev[0]);
        }
    }

    #[test]
    fn rescaled_form() {
        let pair = oscillator_basis(64).unwrap();
        let h = rescaled_susy_hamiltonian(5.0, &pair).unwrap();
        let ev = hermitian_eigenvalues(&h).unwrap();
        assert!(ev[0].abs() < 0.05, "{}", ev[0]);
        assert!(rescaled_susy_hamiltonian(0.0, &pair).is_err());
    }

    #[test]
    fn ladder_identity_away_from_truncation_edge() {
        let n = 64;
        let a = 5.0;
        let pair = oscillator_basis(n).unwrap();
        let lower = ladder_operator(a, &pair).unwrap();
        let raise = lower.adjoint();
        let hm = build_susy_hamiltonian(&SusyMorseSpec::minus(a).unwrap(), &pair).unwrap();
        let hp = build_susy_hamiltonian(
            &SusyMorseSpec::new(a, PartnerSign::Plus, 1.0, 0).unwrap(),
            &pair,
        )
        .unwrap();
        let block = n / 2;
        for (product, h) in [(raise.matmul(&lower).unwrap(), &hm), (lower.matmul(&raise).unwrap(), &hp)] {
            let diff = product.try_sub(h.as_matrix()).unwrap();
            let err: f64 = (0..block)
                .flat_map(|r| (0..block).map(move |c| (r, c)))
                .map(|(r, c)| diff[(r, c)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(err <= 1e-8 * h.as_matrix().frobenius_norm(), "{err}");
        }
    }
}
