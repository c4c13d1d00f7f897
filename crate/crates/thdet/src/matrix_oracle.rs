//! Brute-force ground truth: dense Toeplitz / Hankel / Toeplitz-plus-Hankel
//! matrices assembled from Fourier coefficients, and determinants by LU with
//! partial pivoting in either backend.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::symbol::{FourierExpansion, RationalSymbolBC};

pub use crate::eigen::{eigenpairs, eigenvalues};

/// Row-major rectangular matrix of scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S: Scalar> {
    pub n_rows: usize,
    pub n_cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != n_rows * n_cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n_rows} x {n_cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().position(|e| !e.is_finite_value()) {
            return Err(Error::NonFinite(format!(
                "matrix entry ({}, {})",
                bad / n_cols.max(1),
                bad % n_cols.max(1)
            )));
        }
        Ok(DenseMatrix { n_rows, n_cols, entries })
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        DenseMatrix { n_rows, n_cols, entries: vec![S::zero(); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Build from a function of (row, col).
    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Result<Self> {
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                entries.push(f(i, j));
            }
        }
        DenseMatrix::new(n_rows, n_cols, entries)
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[i * self.n_cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    /// Debug dump: CSV of "re,im" pairs, row-major, one row per line.
    pub fn dump_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                if j > 0 {
                    out.push(',');
                }
                let z = self.get(i, j).to_c64();
                let _ = write!(out, "{},{}", z.re, z.im);
            }
            out.push('\n');
        }
        out
    }
}

/// Fourier coefficients phi_j for |j| <= hi, cached as a slice.
struct CoeffTable<S: Scalar> {
    hi: i64,
    coeffs: Vec<S>,
}

impl<S: Scalar> CoeffTable<S> {
    fn new(sym: &RationalSymbolBC<S>, hi: i64) -> Result<Self> {
        let exp = FourierExpansion::new(sym)?;
        let mut coeffs = Vec::with_capacity((2 * hi + 1) as usize);
        for j in -hi..=hi {
            coeffs.push(exp.coeff(j)?);
        }
        Ok(CoeffTable { hi, coeffs })
    }

    fn get(&self, j: i64) -> S {
        self.coeffs[(j + self.hi) as usize].clone()
    }
}

/// T_n(phi) with entry (i, j) = phi_{i-j}.
pub fn build_toeplitz<S: Scalar>(sym: &RationalSymbolBC<S>, n: usize) -> Result<DenseMatrix<S>> {
    let table = CoeffTable::new(sym, n.saturating_sub(1) as i64)?;
    DenseMatrix::from_fn(n, n, |i, j| table.get(i as i64 - j as i64))
}

/// H_n(phi) with entry (i, j) = phi_{i+j+1}.
pub fn build_hankel<S: Scalar>(sym: &RationalSymbolBC<S>, n: usize) -> Result<DenseMatrix<S>> {
    let hi = if n == 0 { 0 } else { 2 * n as i64 - 1 };
    let table = CoeffTable::new(sym, hi)?;
    DenseMatrix::from_fn(n, n, |i, j| table.get(i as i64 + j as i64 + 1))
}

/// T_n(phi) + H_n(phi) with entry (i, j) = phi_{i-j} + phi_{i+j+1}.
pub fn build_th<S: Scalar>(sym: &RationalSymbolBC<S>, n: usize) -> Result<DenseMatrix<S>> {
    let hi = if n == 0 { 0 } else { 2 * n as i64 - 1 };
    let table = CoeffTable::new(sym, hi)?;
    DenseMatrix::from_fn(n, n, |i, j| {
        table.get(i as i64 - j as i64) + table.get(i as i64 + j as i64 + 1)
    })
}

/// Determinant by LU with partial pivoting: the exact backend takes the
/// first nonzero pivot (any nonzero is as good as any other in a field), the
/// float backend the largest modulus. A vanishing pivot column means the
/// matrix is singular and the determinant is zero.
pub fn det_lu<S: Scalar>(m: &DenseMatrix<S>) -> Result<S> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.n_rows, cols: m.n_cols });
    }
    let n = m.n_rows;
    let mut a = m.entries.clone();
    let at = |r: usize, c: usize| r * n + c;
    let mut det = S::one();
    for col in 0..n {
        let pivot_row = if S::EXACT {
            (col..n).find(|&r| !a[at(r, col)].is_zero())
        } else {
            (col..n)
                .max_by(|&r1, &r2| a[at(r1, col)].cmp_abs(&a[at(r2, col)]))
                .filter(|&r| !a[at(r, col)].is_zero())
        };
        let pivot_row = match pivot_row {
            Some(r) => r,
            None => return Ok(S::zero()),
        };
        if pivot_row != col {
            for c in col..n {
                a.swap(at(col, c), at(pivot_row, c));
            }
            det = -det;
        }
        let pivot = a[at(col, col)].clone();
        det = det * pivot.clone();
        for row in (col + 1)..n {
            if a[at(row, col)].is_zero() {
                continue;
            }
            let factor = a[at(row, col)].div(&pivot)?;
            for c in (col + 1)..n {
                let delta = factor.clone() * a[at(col, c)].clone();
                a[at(row, c)] = a[at(row, c)].clone() - delta;
            }
            a[at(row, col)] = S::zero();
        }
    }
    if !det.is_finite_value() {
        return Err(Error::NonFinite("determinant".into()));
    }
    Ok(det)
}
