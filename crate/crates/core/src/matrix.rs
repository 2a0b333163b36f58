//! Dense complex matrices and the Hermitian routines everything else is built on.
//!
//! Storage is row-major. The Hermitian eigensolver reduces the matrix to a real
//! symmetric tridiagonal form with Householder reflections, then runs implicit QL
//! with Wilkinson shifts. Dimensions used in this crate stay at or below 256.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Relative tolerance for the Hermiticity check on construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |r, c| if r == c { C64::from(diag[r]) } else { ZERO })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::from(s))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest `|M[j][k] - conj(M[k][j])|`; square matrices only.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let n = self.rows;
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in j..n {
                worst = worst.max((self[(j, k)] - self[(k, j)].conj()).norm());
            }
        }
        worst
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for (k, a) in self.row(r).iter().enumerate() {
                if *a == ZERO {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    pub fn try_add(&self, other: &ComplexMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ComplexMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(r) {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product: `(A ⊗ B)[p·rb + q][r·cb + s] = A[p][r] · B[q][s]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (rb, cb) = (b.rows, b.cols);
    let mut out = ComplexMatrix::zeros(a.rows * rb, a.cols * cb);
    let out_cols = out.cols;
    for p in 0..a.rows {
        for r in 0..a.cols {
            let av = a[(p, r)];
            if av == ZERO {
                continue;
            }
            for q in 0..rb {
                let base = (p * rb + q) * out_cols + r * cb;
                for (o, bv) in out.data[base..base + cb].iter_mut().zip(b.row(q)) {
                    *o = av * bv;
                }
            }
        }
    }
    out
}

/// A square complex matrix equal to its conjugate transpose.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    /// Accepts `m` when `max |M[j][k] - conj(M[k][j])| <= 1e-12 (1 + max |M|)`.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        let tolerance = HERMITIAN_TOL * (1.0 + m.max_abs());
        let asymmetry = m.hermitian_asymmetry();
        if asymmetry > tolerance {
            return Err(Error::NotHermitian {
                asymmetry,
                tolerance,
            });
        }
        Ok(Self(m))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_real_diagonal(diag))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(ComplexMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale_real(s))
    }

    /// Adds `s` to every diagonal entry.
    pub fn shift(&self, s: f64) -> Self {
        let mut m = self.0.clone();
        for k in 0..m.rows {
            m[(k, k)] += s;
        }
        Self(m)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `⟨v|M|v⟩`, returning the complex value so callers can inspect the imaginary residue.
    pub fn quadratic_form(&self, v: &[C64]) -> Result<C64> {
        let mv = self.0.mul_vec(v)?;
        Ok(v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum())
    }

    /// Product of two Hermitian matrices that is known to be Hermitian (for example
    /// when the factors commute or are equal). The result is rechecked.
    pub fn product(&self, other: &HermitianMatrix) -> Result<Self> {
        Self::new(self.0.matmul(&other.0)?)
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = C64;

    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.0)
    }
}

impl TryFrom<ComplexMatrix> for HermitianMatrix {
    type Error = Error;

    fn try_from(m: ComplexMatrix) -> Result<Self> {
        Self::new(m)
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in addition");
        HermitianMatrix(self.0.try_add(&rhs.0).expect("dimensions checked"))
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch in subtraction");
        HermitianMatrix(self.0.try_sub(&rhs.0).expect("dimensions checked"))
    }
}

impl Mul<f64> for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn mul(self, rhs: f64) -> HermitianMatrix {
        self.scale(rhs)
    }
}

/// Eigenvalues in ascending order with unit-norm eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `V diag(f(λ)) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let fv: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in r..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += v[(r, k)] * v[(c, k)].conj() * fv[k];
                }
                out[(r, c)] = acc;
                out[(c, r)] = acc.conj();
            }
            out[(r, r)].im = 0.0;
        }
        out
    }
}

pub fn hermitian_eigen(m: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let (diag, offdiag, q) = tridiagonalize(m.as_matrix());
    let (eigenvalues, z) = tridiagonal_ql(diag, offdiag)?;

    // Eigenvectors of the original matrix are Q·Z.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eigenvalues[a].total_cmp(&eigenvalues[b]));
    let mut vectors = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for (dst, &src) in order.iter().enumerate() {
            let mut acc = ZERO;
            for k in 0..n {
                acc += q[(r, k)] * z[k * n + src];
            }
            vectors[(r, dst)] = acc;
        }
    }
    Ok(EigenDecomposition {
        eigenvalues: order.iter().map(|&k| eigenvalues[k]).collect(),
        eigenvectors: vectors,
    })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &HermitianMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.eigenvalues)
}

/// `f(M) = V f(Λ) V†`.
pub fn hermitian_matrix_function(
    m: &HermitianMatrix,
    f: impl Fn(f64) -> f64,
) -> Result<HermitianMatrix> {
    let eig = hermitian_eigen(m)?;
    if let Some(&eigenvalue) = eig.eigenvalues.iter().find(|&&l| !f(l).is_finite()) {
        return Err(Error::FunctionOverflow { eigenvalue });
    }
    Ok(HermitianMatrix(eig.reconstruct_with(f)))
}

/// Householder reduction `A = Q T Q†` with `T` real symmetric tridiagonal.
///
/// The complex off-diagonal phases left by the reflections are folded into `Q`.
fn tridiagonalize(m: &ComplexMatrix) -> (Vec<f64>, Vec<f64>, ComplexMatrix) {
    let n = m.rows;
    let mut a = m.clone();
    let mut q = ComplexMatrix::identity(n);
    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];

    for k in 0..n.saturating_sub(2) {
        let xnorm = (k + 1..n).map(|r| a[(r, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -phase * xnorm;

        v.iter_mut().for_each(|z| *z = ZERO);
        for r in k + 1..n {
            v[r] = a[(r, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = v[k + 1..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        v[k + 1..].iter_mut().for_each(|z| *z /= vnorm);

        // A ← H A H with H = I − 2vv†, written as A − 2vq† − 2qv†, q = p − (v†p)v, p = Av.
        for r in 0..n {
            p[r] = (k + 1..n).map(|c| a[(r, c)] * v[c]).sum();
        }
        let vp: C64 = (k + 1..n).map(|r| v[r].conj() * p[r]).sum();
        for r in 0..n {
            p[r] -= vp * v[r];
        }
        for r in 0..n {
            for c in 0..n {
                let delta = v[r] * p[c].conj() + p[r] * v[c].conj();
                a[(r, c)] -= delta * 2.0;
            }
        }
        // Q ← Q H.
        for r in 0..n {
            let qv: C64 = (k + 1..n).map(|c| q[(r, c)] * v[c]).sum();
            for c in k + 1..n {
                q[(r, c)] -= qv * v[c].conj() * 2.0;
            }
        }
    }

    // Diagonal unitary D making the subdiagonal real and nonnegative: T = D T' D†.
    let mut diag = vec![0.0; n];
    let mut offdiag = vec![0.0; n];
    let mut d = ONE;
    for k in 0..n {
        diag[k] = a[(k, k)].re;
        if k + 1 < n {
            let e = a[(k + 1, k)];
            offdiag[k] = e.norm();
            let next = if e.norm() > 0.0 { d * e / e.norm() } else { d };
            for r in 0..n {
                q[(r, k + 1)] *= next;
            }
            d = next;
        }
    }
    (diag, offdiag, q)
}

/// Implicit QL on a real symmetric tridiagonal matrix, accumulating eigenvectors.
///
/// `offdiag[k]` couples rows `k` and `k+1`. Returns the eigenvalues (unsorted) and the
/// row-major eigenvector matrix with eigenvectors as columns.
fn tridiagonal_ql(mut d: Vec<f64>, offdiag: Vec<f64>) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    let mut e = offdiag;
    e[n - 1] = 0.0;
    let mut z = vec![0.0; n * n];
    for k in 0..n {
        z[k * n + k] = 1.0;
    }

    const MAX_SWEEPS: usize = 64;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_SWEEPS {
                return Err(Error::InvalidParameter {
                    name: "matrix",
                    reason: "QL iteration failed to converge".into(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let zk1 = z[k * n + i + 1];
                    let zk = z[k * n + i];
                    z[k * n + i + 1] = s * zk + c * zk1;
                    z[k * n + i] = c * zk - s * zk1;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_z() -> HermitianMatrix {
        HermitianMatrix::from_real_diagonal(&[1.0, -1.0])
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        a.try_sub(b).unwrap().max_abs() <= tol
    }

    #[test]
    fn identity_spectrum() {
        let eig = hermitian_eigen(&HermitianMatrix::identity(4)).unwrap();
        for l in eig.eigenvalues {
            assert!((l - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn pauli_z_spectrum() {
        let eig = hermitian_eigen(&pauli_z()).unwrap();
        assert_eq!(eig.eigenvalues, vec![-1.0, 1.0]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::new(2, 2, vec![ONE, ONE, ZERO, ONE]).unwrap();
        match HermitianMatrix::new(m) {
            Err(Error::NotHermitian { asymmetry, .. }) => assert!((asymmetry - 1.0).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_empty_and_bad_counts() {
        assert_eq!(ComplexMatrix::new(0, 2, vec![]), Err(Error::EmptyMatrix));
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![ONE; 3]),
            Err(Error::EntryCount { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![C64::new(f64::NAN, 0.0)]),
            Err(Error::NonFiniteEntry { row: 0, col: 0 })
        ));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let out = hermitian_matrix_function(&HermitianMatrix::zeros(4), f64::exp).unwrap();
        assert!(close(out.as_matrix(), &ComplexMatrix::identity(4), 1e-14));
    }

    #[test]
    fn exp_of_diagonal() {
        let m = HermitianMatrix::from_real_diagonal(&[1.0, 2.0]);
        let out = hermitian_matrix_function(&m, f64::exp).unwrap();
        let e = std::f64::consts::E;
        assert!(close(
            out.as_matrix(),
            &ComplexMatrix::from_real_diagonal(&[e, e * e]),
            1e-13
        ));
    }

    #[test]
    fn exp_minus_two_by_two_oscillator_position() {
        // X = [[0, s], [s, 0]], s = 1/√2: exp(−X) = cosh(s) I − sinh(s) σx.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x = HermitianMatrix::new(
            ComplexMatrix::new(2, 2, vec![ZERO, s.into(), s.into(), ZERO]).unwrap(),
        )
        .unwrap();
        let out = hermitian_matrix_function(&x, |t| (-t).exp()).unwrap();
        assert!((out[(0, 0)].re - s.cosh()).abs() < 1e-14);
        assert!((out[(0, 1)].re + s.sinh()).abs() < 1e-14);
        assert!((out[(0, 1)] - out[(1, 0)]).norm() < 1e-15);
        let eig = hermitian_eigenvalues(&out).unwrap();
        assert!((eig[0] - (-s).exp()).abs() < 1e-14);
        assert!((eig[1] - s.exp()).abs() < 1e-14);
    }

    #[test]
    fn function_overflow_reports_eigenvalue() {
        let m = HermitianMatrix::from_real_diagonal(&[1.0, 800.0]);
        assert_eq!(
            hermitian_matrix_function(&m, f64::exp).unwrap_err(),
            Error::FunctionOverflow { eigenvalue: 800.0 }
        );
    }

    #[test]
    fn kron_basics() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let z = pauli_z().into_matrix();
        assert_eq!(
            kron(&z, &i2),
            ComplexMatrix::from_real_diagonal(&[1.0, 1.0, -1.0, -1.0])
        );
    }

    #[test]
    fn kron_rectangular_layout() {
        let a = ComplexMatrix::from_fn(2, 3, |r, c| C64::new((r * 3 + c) as f64, 1.0));
        let b = ComplexMatrix::from_fn(3, 2, |r, c| C64::new(1.0, (r * 2 + c) as f64));
        let k = kron(&a, &b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        for p in 0..2 {
            for r in 0..3 {
                for q in 0..3 {
                    for s in 0..2 {
                        assert_eq!(k[(3 * p + q, 2 * r + s)], a[(p, r)] * b[(q, s)]);
                    }
                }
            }
        }
    }

    #[test]
    fn complex_hermitian_two_by_two() {
        // [[1, i], [−i, 1]] has eigenvalues 0 and 2.
        let m = HermitianMatrix::new(ComplexMatrix::new(2, 2, vec![ONE, I, -I, ONE]).unwrap())
            .unwrap();
        let eig = hermitian_eigen(&m).unwrap();
        assert!(eig.eigenvalues[0].abs() < 1e-15);
        assert!((eig.eigenvalues[1] - 2.0).abs() < 1e-15);
    }
}
