// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{QcaError, Result};

pub(crate) const C0: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub(crate) const C1: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub(crate) const CI: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Unitarity tolerance for operators built by the library.
pub const UNITARY_TOL: f64 = 1e-10;
/// Hermiticity tolerance.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense square complex matrix, row-major.
///
/// Basis index convention: for a tensor product `A ⊗ B`, `A` is the more
/// significant factor, so qubit 0 maps to the highest bit of the index.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![C0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C1;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        CMatrix { dim, data }
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be a square.
    pub fn from_row_major(entries: Vec<Complex64>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() {
            return Err(QcaError::InvalidParameter(format!(
                "{} entries do not form a square matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QcaError::NonFinite("matrix entries"));
        }
        Ok(CMatrix { dim, data: entries })
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, k: Complex64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Kronecker product with `self` as the more significant factor.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = CMatrix::zeros(n * m);
        for ar in 0..n {
            for ac in 0..n {
                let a = self[(ar, ac)];
                if a == C0 {
                    continue;
                }
                for br in 0..m {
                    for bc in 0..m {
                        out[(ar * m + br, ac * m + bc)] = a * other[(br, bc)];
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "matrix-vector dimension mismatch");
        (0..self.dim)
            .map(|r| {
                self.data[r * self.dim..(r + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |M^dagger M - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        (&self.dagger() * self).max_abs_diff(&CMatrix::identity(self.dim))
    }

    /// `max |M - M^dagger|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.dim, self.dim, |r, c| self[(r, c)])
    }

    pub(crate) fn from_nalgebra(m: &nalgebra::DMatrix<Complex64>) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        Self::from_fn(m.nrows(), |r, c| m[(r, c)])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == C0 {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| {
                    let z = self[(r, c)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix known to be unitary within [`UNITARY_TOL`] (or a looser, explicitly
/// requested tolerance).
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryOperator(CMatrix);

impl UnitaryOperator {
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerance(m, UNITARY_TOL)
    }

    pub fn with_tolerance(m: CMatrix, tol: f64) -> Result<Self> {
        if !m.is_finite() {
            return Err(QcaError::NonFinite("unitary operator"));
        }
        let deviation = m.unitarity_deviation();
        if deviation > tol {
            return Err(QcaError::NonUnitaryInput { deviation });
        }
        Ok(UnitaryOperator(m))
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryOperator(CMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn dagger(&self) -> Self {
        UnitaryOperator(self.0.dagger())
    }

    /// Product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &UnitaryOperator) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(QcaError::DimensionMismatch {
                expected: self.dim(),
                found: rhs.dim(),
            });
        }
        Ok(UnitaryOperator(&self.0 * &rhs.0))
    }

    /// Multiplies by the unit-modulus phase `e^{i phase}`.
    pub fn with_global_phase(&self, phase: f64) -> Self {
        UnitaryOperator(self.0.scale(Complex64::from_polar(1.0, phase)))
    }

    pub fn tensor(&self, other: &UnitaryOperator) -> Self {
        UnitaryOperator(self.0.kron(&other.0))
    }
}

/// Matrix known to be Hermitian within [`HERMITIAN_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator(CMatrix);

impl HermitianOperator {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(QcaError::NonFinite("Hermitian operator"));
        }
        let deviation = m.hermiticity_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(QcaError::NonHermitianInput { deviation });
        }
        Ok(HermitianOperator(m))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sx() -> CMatrix {
        CMatrix::from_row_major(vec![C0, C1, C1, C0]).unwrap()
    }

    #[test]
    fn identity_kron_identity() {
        let i2 = CMatrix::identity(2);
        assert_eq!(i2.kron(&i2), CMatrix::identity(4));
    }

    #[test]
    fn sigma_x_kron_sigma_x_is_antidiagonal() {
        let xx = sx().kron(&sx());
        for r in 0..4 {
            for c in 0..4 {
                let expected = if r + c == 3 { C1 } else { C0 };
                assert_eq!(xx[(r, c)], expected, "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn rejects_non_square_entries() {
        assert!(CMatrix::from_row_major(vec![C1; 3]).is_err());
    }

    #[test]
    fn unitary_constructor_rejects_scaled_identity() {
        let m = CMatrix::identity(2).scale(Complex64::new(1.01, 0.0));
        assert!(matches!(UnitaryOperator::new(m), Err(QcaError::NonUnitaryInput { .. })));
    }

    #[test]
    fn hermitian_constructor_rejects_skew() {
        let m = CMatrix::from_row_major(vec![C0, C1, -C1, C0]).unwrap();
        assert!(matches!(
            HermitianOperator::new(m),
            Err(QcaError::NonHermitianInput { .. })
        ));
    }
}
