//! Dense complex linear algebra used throughout the crate.
//!
//! Matrices are `nalgebra` dense matrices. Composite indices of multipartite
//! systems are row-major over `(i_1, ..., i_n)`: subsystem 1 is the most
//! significant factor.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type RealMatrix = DMatrix<f64>;

/// Relative tolerance for the Hermiticity precondition of the eigensolver.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Default PSD tolerance, relative to `max(1, max|m|)`.
pub const DEFAULT_TOL: f64 = 1e-9;

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entry modulus.
pub fn max_abs<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> f64 {
    m.iter().map(|z| z.clone().modulus()).fold(0.0, f64::max)
}

pub(crate) fn hermitian_deviation<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)].clone() - m[(j, i)].clone().conjugate()).modulus();
            worst = worst.max(d);
        }
    }
    worst
}

fn check_hermitian<T: ComplexField<RealField = f64>>(m: &DMatrix<T>, rel_tol: f64) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NonSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let deviation = hermitian_deviation(m);
    if deviation > rel_tol * max_abs(m).max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Kronecker product with composite row index `i * b.rows + p`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Result<Vec<f64>> {
    check_hermitian(m, HERMITIAN_TOL)?;
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    // Symmetrize so that the solver sees an exactly Hermitian input.
    let h = (m + m.adjoint()).unscale(2.0);
    let mut values: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

pub fn min_eigenvalue<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.last().copied().unwrap_or(0.0))
}

/// Singular values, sorted descending; `min(rows, cols)` of them.
pub fn singular_values<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut values: Vec<f64> = m.clone().singular_values().iter().map(|s| s.max(0.0)).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Schatten-1 norm.
pub fn trace_norm<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> f64 {
    singular_values(m).iter().sum()
}

/// Scale-aware PSD threshold: `tol * max(1, max|m|)`.
pub fn psd_threshold<T: ComplexField<RealField = f64>>(m: &DMatrix<T>, tol: f64) -> f64 {
    tol * max_abs(m).max(1.0)
}

/// True iff the minimum eigenvalue is at least `-tol * max(1, max|m|)`.
pub fn is_psd<T: ComplexField<RealField = f64>>(m: &DMatrix<T>, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(m)? >= -psd_threshold(m, tol))
}

/// Partial transpose of a bipartite operator on subsystem `subsystem` (1 or 2).
///
/// This is the raw index shuffle; see `DensityMatrix::partial_transpose` for
/// the validated entry point.
pub fn partial_transpose_raw(m: &ComplexMatrix, d1: usize, d2: usize, subsystem: usize) -> ComplexMatrix {
    let n = d1 * d2;
    ComplexMatrix::from_fn(n, n, |row, col| {
        let (i, p) = (row / d2, row % d2);
        let (j, q) = (col / d2, col % d2);
        match subsystem {
            1 => m[(j * d2 + p, i * d2 + q)],
            _ => m[(i * d2 + q, j * d2 + p)],
        }
    })
}

/// Realignment: `R[(i,j),(k,l)] = M[(i,k),(j,l)]`, of size `d1^2 x d2^2`.
pub fn realign_raw(m: &ComplexMatrix, d1: usize, d2: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d1 * d1, d2 * d2, |row, col| {
        let (i, j) = (row / d1, row % d1);
        let (k, l) = (col / d2, col % d2);
        m[(i * d2 + k, j * d2 + l)]
    })
}

pub fn to_complex(m: &RealMatrix) -> ComplexMatrix {
    m.map(|x| c64(x, 0.0))
}
