use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};

/// Tolerances applied when validating a density matrix.
pub const HERMITIAN_RTOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-9;

/// A validated quantum state on `H_{d_1} ⊗ ... ⊗ H_{d_n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity before accepting `matrix`.
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDimension(d));
        }
        let size: usize = dims.iter().product();
        if dims.is_empty() || matrix.nrows() != size || matrix.ncols() != size {
            return Err(Error::DimensionMismatch { size: matrix.nrows().max(matrix.ncols()), dims });
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let deviation = linalg::hermitian_deviation(&matrix);
        if deviation > HERMITIAN_RTOL * linalg::max_abs(&matrix).max(1.0) {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::NotUnitTrace { trace: trace.re });
        }
        let min_eigenvalue = linalg::min_eigenvalue(&matrix)?;
        if min_eigenvalue < -PSD_TOL {
            return Err(Error::NotPsd { min_eigenvalue });
        }
        Ok(Self { dims, matrix })
    }

    /// Builds the state without validation. Callers must guarantee the invariants.
    pub(crate) fn new_unchecked(dims: Vec<usize>, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.nrows(), dims.iter().product::<usize>());
        Self { dims, matrix }
    }

    /// Normalizes a PSD operator to unit trace and validates the result.
    pub fn from_unnormalized(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        let trace = matrix.trace().re;
        if trace.is_nan() || trace <= 0.0 {
            return Err(Error::NotUnitTrace { trace });
        }
        Self::new(dims, matrix.unscale(trace))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Total Hilbert space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.dims.as_slice() {
            &[d1, d2] => Ok((d1, d2)),
            _ => Err(Error::NotBipartite { parties: self.dims.len() }),
        }
    }

    /// Partial transpose on subsystem 1 or 2.
    pub fn partial_transpose(&self, subsystem: usize) -> Result<ComplexMatrix> {
        let (d1, d2) = self.bipartite_dims()?;
        if !(1..=2).contains(&subsystem) {
            return Err(Error::SubsystemOutOfRange { index: subsystem, parties: 2 });
        }
        Ok(linalg::partial_transpose_raw(&self.matrix, d1, d2, subsystem))
    }

    /// Realigned matrix of size `d1^2 x d2^2`.
    pub fn realign(&self) -> Result<ComplexMatrix> {
        let (d1, d2) = self.bipartite_dims()?;
        Ok(linalg::realign_raw(&self.matrix, d1, d2))
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, min_eigenvalue, trace_norm};
    use approx::assert_abs_diff_eq;

    fn bell() -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        for &i in &[0, 3] {
            for &j in &[0, 3] {
                m[(i, j)] = c64(0.5, 0.0);
            }
        }
        DensityMatrix::new(vec![2, 2], m).unwrap()
    }

    fn ket00() -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(0, 0)] = c64(1.0, 0.0);
        DensityMatrix::new(vec![2, 2], m).unwrap()
    }

    fn mixed4() -> DensityMatrix {
        DensityMatrix::new(vec![2, 2], ComplexMatrix::identity(4, 4).unscale(4.0)).unwrap()
    }

    #[test]
    fn validation_errors() {
        let m = ComplexMatrix::identity(4, 4);
        assert!(matches!(DensityMatrix::new(vec![2, 2], m.clone()), Err(Error::NotUnitTrace { .. })));
        assert!(matches!(DensityMatrix::new(vec![2, 3], m.unscale(4.0)), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(DensityMatrix::new(vec![1, 4], m.unscale(4.0)), Err(Error::InvalidDimension(1))));
        let mut neg = ComplexMatrix::zeros(2, 2);
        neg[(0, 0)] = c64(1.5, 0.0);
        neg[(1, 1)] = c64(-0.5, 0.0);
        assert!(matches!(DensityMatrix::new(vec![2], neg), Err(Error::NotPsd { .. })));
        let mut skew = ComplexMatrix::identity(2, 2).unscale(2.0);
        skew[(0, 1)] = c64(0.1, 0.0);
        assert!(matches!(DensityMatrix::new(vec![2], skew), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn partial_transpose_cases() {
        assert_eq!(mixed4().partial_transpose(2).unwrap(), *mixed4().matrix());
        assert_eq!(ket00().partial_transpose(1).unwrap(), *ket00().matrix());
        let pt = bell().partial_transpose(2).unwrap();
        assert_abs_diff_eq!(min_eigenvalue(&pt).unwrap(), -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(pt.trace().re, 1.0, epsilon = 1e-15);
        let tri = DensityMatrix::new_unchecked(vec![2, 2, 2], ComplexMatrix::identity(8, 8).unscale(8.0));
        assert!(matches!(tri.partial_transpose(1), Err(Error::NotBipartite { parties: 3 })));
        assert!(matches!(bell().partial_transpose(3), Err(Error::SubsystemOutOfRange { .. })));
    }

    #[test]
    fn realignment_trace_norms() {
        assert_abs_diff_eq!(trace_norm(&mixed4().realign().unwrap()), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(trace_norm(&bell().realign().unwrap()), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(trace_norm(&ket00().realign().unwrap()), 1.0, epsilon = 1e-12);
    }
}
