//! Bloch decomposition, canonical correlation matrix and the (extended)
//! multipartite correlation tensor with its mode unfoldings.
//!
//! For a bipartite state
//!
//! ```text
//! ρ = I⊗I/(d1 d2) + Σ r_i λ_i⊗I + Σ s_j I⊗λ_j + Σ T_ij λ_i⊗λ_j
//! r_i = Tr ρ(λ_i⊗I)/(2 d2),  s_j = Tr ρ(I⊗λ_j)/(2 d1),  T_ij = Tr ρ(λ_i⊗λ_j)/4
//! ```
//!
//! The extended tensor uses index 0 for the identity on a party; an entry
//! with `m` non-identity slots carries the prefactor `∏_{k active} d_k / (2^m ∏_k d_k)`.

use num_complex::Complex64;

use crate::basis::gellmann_generators;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix, RealMatrix};

/// Local operator stored as its nonzero entries `(row, col, value)`.
#[derive(Debug, Clone)]
struct SparseOp(Vec<(usize, usize, Complex64)>);

impl SparseOp {
    fn from_dense(m: &ComplexMatrix) -> Self {
        let mut entries = Vec::new();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if m[(i, j)] != c64(0.0, 0.0) {
                    entries.push((i, j, m[(i, j)]));
                }
            }
        }
        SparseOp(entries)
    }
}

/// Identity followed by the `d^2 - 1` generators.
fn local_operators(d: usize) -> Result<Vec<SparseOp>> {
    let basis = gellmann_generators(d)?;
    Ok((0..=basis.len()).map(|k| SparseOp::from_dense(&basis.extended(k))).collect())
}

/// `Tr(ρ (A_1 ⊗ ... ⊗ A_n))` for sparse local operators.
fn expectation(rho: &ComplexMatrix, dims: &[usize], ops: &[&SparseOp]) -> Complex64 {
    // Tr(ρ O) = Σ ρ[c, r] O[r, c], with O[r, c] = ∏ A_k[r_k, c_k].
    fn walk(rho: &ComplexMatrix, dims: &[usize], ops: &[&SparseOp], k: usize, row: usize, col: usize, weight: Complex64) -> Complex64 {
        if k == ops.len() {
            return rho[(col, row)] * weight;
        }
        let d = dims[k];
        ops[k].0.iter().fold(c64(0.0, 0.0), |acc, &(r, c, v)| {
            acc + walk(rho, dims, ops, k + 1, row * d + r, col * d + c, weight * v)
        })
    }
    walk(rho, dims, ops, 0, 0, 0, c64(1.0, 0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlochDecomposition {
    pub d1: usize,
    pub d2: usize,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    pub t: RealMatrix,
}

impl BlochDecomposition {
    /// Rebuilds the density matrix from its Bloch coefficients.
    pub fn reconstruct(&self) -> Result<ComplexMatrix> {
        let (b1, b2) = (gellmann_generators(self.d1)?, gellmann_generators(self.d2)?);
        let (i1, i2) = (ComplexMatrix::identity(self.d1, self.d1), ComplexMatrix::identity(self.d2, self.d2));
        let n = self.d1 * self.d2;
        let mut rho = ComplexMatrix::identity(n, n).unscale(n as f64);
        for (i, g) in b1.generators().iter().enumerate() {
            rho += g.kronecker(&i2) * c64(self.r[i], 0.0);
        }
        for (j, g) in b2.generators().iter().enumerate() {
            rho += i1.kronecker(g) * c64(self.s[j], 0.0);
        }
        for (i, a) in b1.generators().iter().enumerate() {
            for (j, b) in b2.generators().iter().enumerate() {
                if self.t[(i, j)] != 0.0 {
                    rho += a.kronecker(b) * c64(self.t[(i, j)], 0.0);
                }
            }
        }
        Ok(rho)
    }
}

/// Block matrix `[[1/(d1 d2), sᵗ], [r, T]]` of size `d1² x d2²`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalMatrix(pub RealMatrix);

impl CanonicalMatrix {
    pub fn matrix(&self) -> &RealMatrix {
        &self.0
    }
}

pub fn decompose_bipartite(rho: &DensityMatrix) -> Result<BlochDecomposition> {
    let (d1, d2) = rho.bipartite_dims()?;
    let (ops1, ops2) = (local_operators(d1)?, local_operators(d2)?);
    let dims = rho.dims();
    let m = rho.matrix();
    let r = (1..ops1.len())
        .map(|i| expectation(m, dims, &[&ops1[i], &ops2[0]]).re / (2 * d2) as f64)
        .collect();
    let s = (1..ops2.len())
        .map(|j| expectation(m, dims, &[&ops1[0], &ops2[j]]).re / (2 * d1) as f64)
        .collect();
    let t = RealMatrix::from_fn(d1 * d1 - 1, d2 * d2 - 1, |i, j| {
        expectation(m, dims, &[&ops1[i + 1], &ops2[j + 1]]).re / 4.0
    });
    Ok(BlochDecomposition { d1, d2, r, s, t })
}

pub fn canonical_matrix(dec: &BlochDecomposition) -> CanonicalMatrix {
    let (rows, cols) = (dec.d1 * dec.d1, dec.d2 * dec.d2);
    let mut m = RealMatrix::zeros(rows, cols);
    m[(0, 0)] = 1.0 / (dec.d1 * dec.d2) as f64;
    for (j, &v) in dec.s.iter().enumerate() {
        m[(0, j + 1)] = v;
    }
    for (i, &v) in dec.r.iter().enumerate() {
        m[(i + 1, 0)] = v;
    }
    m.view_mut((1, 1), (rows - 1, cols - 1)).copy_from(&dec.t);
    CanonicalMatrix(m)
}

/// Real n-way tensor stored flat, row-major over its multi-index.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor {
    party_dims: Vec<usize>,
    shape: Vec<usize>,
    entries: Vec<f64>,
    extended: bool,
}

impl CorrelationTensor {
    pub fn order(&self) -> usize {
        self.shape.len()
    }

    /// Per-mode extents: `d_k² - 1` (plain) or `d_k²` (extended).
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn party_dims(&self) -> &[usize] {
        &self.party_dims
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    fn flat_index(&self, index: &[usize]) -> usize {
        index.iter().zip(&self.shape).fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        assert_eq!(index.len(), self.order());
        self.entries[self.flat_index(index)]
    }

    /// Mode-`mode` unfolding (1-based); see [`unfold`].
    pub fn unfold(&self, mode: usize) -> Result<RealMatrix> {
        unfold(self, mode)
    }
}

fn tensor_entries(rho: &DensityMatrix, extended: bool) -> Result<(Vec<usize>, Vec<Complex64>)> {
    let dims = rho.dims();
    let n = dims.len();
    if n < 2 {
        return Err(Error::TooFewParties(n));
    }
    let ops: Vec<Vec<SparseOp>> = dims.iter().map(|&d| local_operators(d)).collect::<Result<_>>()?;
    let offset = usize::from(!extended);
    let shape: Vec<usize> = dims.iter().map(|&d| d * d - offset).collect();
    let total_dim: f64 = dims.iter().map(|&d| d as f64).product();

    let count: usize = shape.iter().product();
    let mut entries = Vec::with_capacity(count);
    let mut index = vec![0usize; n];
    for _ in 0..count {
        let local: Vec<&SparseOp> = index.iter().zip(&ops).map(|(&a, o)| &o[a + offset]).collect();
        let (mut active, mut active_dims) = (0i32, 1.0);
        for (k, &a) in index.iter().enumerate() {
            if a + offset != 0 {
                active += 1;
                active_dims *= dims[k] as f64;
            }
        }
        let value = if active == 0 {
            c64(1.0 / total_dim, 0.0)
        } else {
            expectation(rho.matrix(), dims, &local) * (active_dims / (2f64.powi(active) * total_dim))
        };
        entries.push(value);
        // advance row-major multi-index
        for k in (0..n).rev() {
            index[k] += 1;
            if index[k] < shape[k] {
                break;
            }
            index[k] = 0;
        }
    }
    Ok((shape, entries))
}

/// Correlation tensor over all parties. With `extended`, every mode gains the
/// identity index 0 and the all-zero entry is `1/∏ d_k`.
pub fn correlation_tensor(rho: &DensityMatrix, extended: bool) -> Result<CorrelationTensor> {
    let (shape, entries) = tensor_entries(rho, extended)?;
    Ok(CorrelationTensor {
        party_dims: rho.dims().to_vec(),
        shape,
        entries: entries.into_iter().map(|z| z.re).collect(),
        extended,
    })
}

/// Mode-k unfolding (1-based `mode`). Rows follow mode `k`; columns run over
/// the remaining modes row-major, the lowest-numbered remaining mode most
/// significant.
pub fn unfold(t: &CorrelationTensor, mode: usize) -> Result<RealMatrix> {
    let order = t.order();
    if mode == 0 || mode > order {
        return Err(Error::ModeOutOfRange { mode, order });
    }
    let k = mode - 1;
    let rows = t.shape[k];
    let cols = t.entries.len() / rows;
    let mut out = RealMatrix::zeros(rows, cols);
    let mut index = vec![0usize; order];
    for &value in &t.entries {
        let col = index
            .iter()
            .zip(&t.shape)
            .enumerate()
            .filter(|&(m, _)| m != k)
            .fold(0, |acc, (_, (&i, &n))| acc * n + i);
        out[(index[k], col)] = value;
        for m in (0..order).rev() {
            index[m] += 1;
            if index[m] < t.shape[m] {
                break;
            }
            index[m] = 0;
        }
    }
    Ok(out)
}
