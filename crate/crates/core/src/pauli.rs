//! Pauli-string expansions of Hermitian matrices.
//!
//! Qubit ordering: the leftmost symbol of a label acts on the most significant tensor
//! factor, i.e. `"ZI"` is `Z ⊗ I`. A string with bit masks `(x, z)` has exactly one
//! nonzero entry per row, `P[r][r ^ x] = i^{#Y} (−1)^{popcount((r ^ x) & z)}`, which
//! turns each trace `tr(P H)` into a single pass over the rows.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix, C64, ZERO};
use crate::vqe::Statevector;

/// Default magnitude below which coefficients are dropped.
pub const DEFAULT_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn flips(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    fn phases(self) -> bool {
        matches!(self, Pauli::Y | Pauli::Z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(symbols: Vec<Pauli>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(invalid("label", "a Pauli string needs at least one symbol"));
        }
        Ok(Self(symbols))
    }

    /// The string whose base-4 digits (I=0, X=1, Y=2, Z=3, leftmost most significant)
    /// spell `index`.
    fn from_index(mut index: usize, n: usize) -> Self {
        let mut symbols = vec![Pauli::I; n];
        for slot in symbols.iter_mut().rev() {
            *slot = Pauli::ALL[index % 4];
            index /= 4;
        }
        Self(symbols)
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn symbols(&self) -> &[Pauli] {
        &self.0
    }

    fn masks(&self) -> (usize, usize, usize) {
        let (mut x, mut z, mut ny) = (0usize, 0usize, 0usize);
        for &p in &self.0 {
            x = (x << 1) | p.flips() as usize;
            z = (z << 1) | p.phases() as usize;
            ny += (p == Pauli::Y) as usize;
        }
        (x, z, ny)
    }

    /// Dense `2ⁿ × 2ⁿ` matrix of the string.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let d = 1usize << self.n_qubits();
        let (x, z, ny) = self.masks();
        let global = i_power(ny);
        let mut m = ComplexMatrix::zeros(d, d);
        for r in 0..d {
            let c = r ^ x;
            m[(r, c)] = global * parity_sign(c & z);
        }
        m
    }

    /// `P|ψ⟩` as a new amplitude vector.
    pub fn apply(&self, amplitudes: &[C64]) -> Vec<C64> {
        let (x, z, ny) = self.masks();
        let global = i_power(ny);
        (0..amplitudes.len())
            .map(|r| {
                let c = r ^ x;
                global * parity_sign(c & z) * amplitudes[c]
            })
            .collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|ch| match ch {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Parse(format!("invalid Pauli symbol '{other}' in '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols)
    }
}

fn i_power(k: usize) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

fn parity_sign(bits: usize) -> f64 {
    if bits.count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Real-weighted sum of Pauli strings, ordered lexicographically by label.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliExpansion {
    pub n_qubits: usize,
    pub terms: Vec<(PauliString, f64)>,
    pub threshold: f64,
}

impl PauliExpansion {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, label: &PauliString) -> f64 {
        self.terms
            .binary_search_by(|(p, _)| p.cmp(label))
            .map(|k| self.terms[k].1)
            .unwrap_or(0.0)
    }

    /// Text form: `#` header lines, then one `LABEL coefficient` line per term.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# n_qubits = {}\n", self.n_qubits));
        out.push_str(&format!("# threshold = {:e}\n", self.threshold));
        out.push_str("# ordering: leftmost label symbol acts on the most significant tensor factor\n");
        out.push_str(&format!("# terms = {}\n", self.terms.len()));
        for (p, c) in &self.terms {
            out.push_str(&format!("{p} {c:?}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut n_qubits = None;
        let mut threshold = 0.0;
        let mut terms: Vec<(PauliString, f64)> = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(header) = line.strip_prefix('#') {
                if let Some((key, value)) = header.split_once('=') {
                    let value = value.trim();
                    match key.trim() {
                        "n_qubits" => {
                            n_qubits = Some(value.parse().map_err(|_| {
                                Error::Parse(format!("bad n_qubits '{value}'"))
                            })?)
                        }
                        "threshold" => {
                            threshold = value
                                .parse()
                                .map_err(|_| Error::Parse(format!("bad threshold '{value}'")))?
                        }
                        _ => {}
                    }
                }
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(label), Some(coeff), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(format!("expected 'LABEL coefficient', got '{line}'")));
            };
            let label: PauliString = label.parse()?;
            let coeff: f64 = coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient '{coeff}'")))?;
            terms.push((label, coeff));
        }
        let n_qubits = match (n_qubits, terms.first()) {
            (Some(n), _) => n,
            (None, Some((p, _))) => p.n_qubits(),
            (None, None) => return Err(Error::Parse("empty expansion without n_qubits header".into())),
        };
        if let Some((p, _)) = terms.iter().find(|(p, _)| p.n_qubits() != n_qubits) {
            return Err(Error::Parse(format!("label {p} does not have {n_qubits} symbols")));
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse("duplicate Pauli label".into()));
        }
        Ok(Self {
            n_qubits,
            terms,
            threshold,
        })
    }
}

/// Coefficients `tr(P H)/2ⁿ` for every string, keeping `|c| > threshold`.
pub fn pauli_decompose(h: &HermitianMatrix, n_qubits: usize, threshold: f64) -> Result<PauliExpansion> {
    if !(threshold >= 0.0) {
        return Err(invalid("threshold", format!("must be non-negative, got {threshold}")));
    }
    let d = h.dim();
    if !d.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(d));
    }
    if d != 1 << n_qubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << n_qubits,
            found: d,
        });
    }
    let m = h.as_matrix();
    let mut terms = Vec::new();
    for index in 0..(1usize << (2 * n_qubits)) {
        let label = PauliString::from_index(index, n_qubits);
        let (x, z, ny) = label.masks();
        // tr(P H) = Σ_r P[r][c] H[c][r], c = r ^ x.
        let mut acc = ZERO;
        for r in 0..d {
            let c = r ^ x;
            let v = m[(c, r)];
            if (c & z).count_ones() % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
        }
        let coeff = (i_power(ny) * acc).re / d as f64;
        if coeff.abs() > threshold {
            terms.push((label, coeff));
        }
    }
    Ok(PauliExpansion {
        n_qubits,
        terms,
        threshold,
    })
}

/// `Σ c·P` as a dense matrix.
pub fn pauli_reconstruct(e: &PauliExpansion) -> HermitianMatrix {
    let d = 1usize << e.n_qubits;
    let mut m = ComplexMatrix::zeros(d, d);
    for (label, coeff) in &e.terms {
        let (x, z, ny) = label.masks();
        let global = i_power(ny) * *coeff;
        for r in 0..d {
            let c = r ^ x;
            m[(r, c)] += global * parity_sign(c & z);
        }
    }
    HermitianMatrix::new(m).expect("real combinations of Pauli strings are Hermitian")
}

/// `Σ c ⟨ψ|P|ψ⟩`.
pub fn expectation_from_expansion(e: &PauliExpansion, state: &Statevector) -> Result<f64> {
    if state.n_qubits() != e.n_qubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << e.n_qubits,
            found: state.dim(),
        });
    }
    let psi = state.amplitudes();
    let mut total = 0.0;
    for (label, coeff) in &e.terms {
        let p_psi = label.apply(psi);
        let ev: C64 = psi.iter().zip(&p_psi).map(|(a, b)| a.conj() * b).sum();
        total += coeff * ev.re;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{kron, ONE};

    fn single(p: Pauli) -> ComplexMatrix {
        match p {
            Pauli::I => ComplexMatrix::identity(2),
            Pauli::X => ComplexMatrix::new(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap(),
            Pauli::Y => ComplexMatrix::new(2, 2, vec![ZERO, -crate::matrix::I, crate::matrix::I, ZERO]).unwrap(),
            Pauli::Z => ComplexMatrix::from_real_diagonal(&[1.0, -1.0]),
        }
    }

    #[test]
    fn string_matrix_matches_kron_products() {
        for index in 0..64 {
            let s = PauliString::from_index(index, 3);
            let direct = s
                .symbols()
                .iter()
                .skip(1)
                .fold(single(s.symbols()[0]), |acc, &p| kron(&acc, &single(p)));
            assert_eq!(s.to_matrix(), direct, "{s}");
        }
    }

    #[test]
    fn identity_and_zz() {
        let e = pauli_decompose(&HermitianMatrix::identity(4), 2, 1e-10).unwrap();
        assert_eq!(e.terms, vec![("II".parse().unwrap(), 1.0)]);
        let zz = HermitianMatrix::from_real_diagonal(&[1.0, -1.0, -1.0, 1.0]);
        let e = pauli_decompose(&zz, 2, 1e-10).unwrap();
        assert_eq!(e.terms, vec![("ZZ".parse().unwrap(), 1.0)]);
    }

    #[test]
    fn reconstruct_identity() {
        let e = PauliExpansion {
            n_qubits: 2,
            terms: vec![("II".parse().unwrap(), 1.0)],
            threshold: 0.0,
        };
        assert_eq!(pauli_reconstruct(&e), HermitianMatrix::identity(4));
    }

    #[test]
    fn rejects_bad_dimensions() {
        let h = HermitianMatrix::identity(6);
        assert_eq!(pauli_decompose(&h, 3, 0.0).unwrap_err(), Error::NotPowerOfTwo(6));
        let h = HermitianMatrix::identity(8);
        assert!(matches!(pauli_decompose(&h, 2, 0.0), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn expectation_on_basis_states() {
        let e = PauliExpansion {
            n_qubits: 1,
            terms: vec![("Z".parse().unwrap(), 1.0)],
            threshold: 0.0,
        };
        let zero = Statevector::zero_state(1);
        assert_eq!(expectation_from_expansion(&e, &zero).unwrap(), 1.0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = Statevector::new(1, vec![s.into(), s.into()]).unwrap();
        assert!(expectation_from_expansion(&e, &plus).unwrap().abs() < 1e-15);
        assert!(expectation_from_expansion(&e, &Statevector::zero_state(2)).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let zz = HermitianMatrix::from_real_diagonal(&[1.5, -0.25, -1.0, 0.75]);
        let e = pauli_decompose(&zz, 2, 0.0).unwrap();
        let text = e.to_text();
        assert!(text.starts_with("# n_qubits = 2\n"));
        let back = PauliExpansion::from_text(&text).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn identity_file_line() {
        let e = pauli_decompose(&HermitianMatrix::identity(4), 2, DEFAULT_THRESHOLD).unwrap();
        let text = e.to_text();
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body, vec!["II 1.0"]);
    }

    #[test]
    fn malformed_text_rejected() {
        assert!(PauliExpansion::from_text("IQ 1.0").is_err());
        assert!(PauliExpansion::from_text("II one").is_err());
        assert!(PauliExpansion::from_text("II 1.0\nII 2.0").is_err());
        assert!(PauliExpansion::from_text("II 1.0\nXXX 2.0").is_err());
        assert!(PauliExpansion::from_text("# nothing").is_err());
    }

    #[test]
    fn labels_are_sorted() {
        let h = HermitianMatrix::new(ComplexMatrix::from_fn(8, 8, |r, c| {
            C64::from(((r + 1) * (c + 1)) as f64)
        }))
        .unwrap();
        let e = pauli_decompose(&h, 3, 0.0).unwrap();
        assert!(e.terms.windows(2).all(|w| w[0].0 < w[1].0));
    }
}
