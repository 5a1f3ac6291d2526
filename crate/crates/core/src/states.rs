//! Test states: Werner family, the 3x3 tiles PPT entangled state, GHZ/W,
//! products, plus seeded random generators used by the soundness suites.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};

pub type Ket = DVector<Complex64>;

const NORM_TOL: f64 = 1e-12;

/// Werner state `[(d - x) I + (d x - 1) F] / (d³ - d)` on `d ⊗ d`, `x ∈ [-1, 1]`.
pub fn werner(d: usize, x: f64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::ParamOutOfRange { name: "x", value: x });
    }
    let n = d * d;
    let df = d as f64;
    let norm = df * df * df - df;
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            // F |i j> = |j i>
            m[(j * d + i, i * d + j)] += c64((df * x - 1.0) / norm, 0.0);
        }
    }
    for k in 0..n {
        m[(k, k)] += c64((df - x) / norm, 0.0);
    }
    Ok(DensityMatrix::new_unchecked(vec![d, d], m))
}

fn basis_ket(d: usize, coeffs: &[f64]) -> Ket {
    debug_assert_eq!(coeffs.len(), d);
    Ket::from_iterator(d, coeffs.iter().map(|&c| c64(c, 0.0)))
}

fn product_ket(parts: &[Ket]) -> Ket {
    parts[1..].iter().fold(parts[0].clone(), |acc, k| acc.kronecker(k))
}

/// The five product vectors of the 3x3 unextendible tiles basis.
pub fn tiles_vectors() -> [Ket; 5] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let k = |c: [f64; 3]| basis_ket(3, &c);
    let all = k([1.0, 1.0, 1.0]);
    [
        product_ket(&[k([1.0, 0.0, 0.0]), k([h, -h, 0.0])]),
        product_ket(&[k([h, -h, 0.0]), k([0.0, 0.0, 1.0])]),
        product_ket(&[k([0.0, 0.0, 1.0]), k([0.0, h, -h])]),
        product_ket(&[k([0.0, h, -h]), k([1.0, 0.0, 0.0])]),
        product_ket(&[all.clone(), all]).unscale(3.0),
    ]
}

/// `(I_9 - Σ |χ_i><χ_i|) / 4`: PPT yet entangled.
pub fn tiles_ppt() -> DensityMatrix {
    let mut m = ComplexMatrix::identity(9, 9);
    for v in tiles_vectors() {
        m -= &v * v.adjoint();
    }
    DensityMatrix::new_unchecked(vec![3, 3], m.unscale(4.0))
}

/// `x ρ + (1 - x) I / D`.
pub fn mix_white_noise(rho: &DensityMatrix, x: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ParamOutOfRange { name: "x", value: x });
    }
    let n = rho.dim();
    let m = rho.matrix() * c64(x, 0.0) + ComplexMatrix::identity(n, n) * c64((1.0 - x) / n as f64, 0.0);
    Ok(DensityMatrix::new_unchecked(rho.dims().to_vec(), m))
}

pub fn maximally_mixed(dims: &[usize]) -> Result<DensityMatrix> {
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidDimension(d));
    }
    let n: usize = dims.iter().product();
    Ok(DensityMatrix::new_unchecked(dims.to_vec(), ComplexMatrix::identity(n, n).unscale(n as f64)))
}

fn projector(dims: Vec<usize>, psi: &Ket) -> DensityMatrix {
    DensityMatrix::new_unchecked(dims, psi * psi.adjoint())
}

/// `(|0…0> + |1…1>)/√2` on `n` qubits.
pub fn ghz(n: usize) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::TooFewParties(n));
    }
    let dim = 1 << n;
    let mut psi = Ket::zeros(dim);
    psi[0] = c64(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    psi[dim - 1] = c64(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Ok(projector(vec![2; n], &psi))
}

/// `(|10…0> + |01…0> + … + |0…01>)/√n` on `n` qubits.
pub fn w(n: usize) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::TooFewParties(n));
    }
    let dim = 1 << n;
    let amp = 1.0 / (n as f64).sqrt();
    let mut psi = Ket::zeros(dim);
    for k in 0..n {
        psi[1 << k] = c64(amp, 0.0);
    }
    Ok(projector(vec![2; n], &psi))
}

pub fn bell() -> DensityMatrix {
    ghz(2).expect("two parties")
}

/// `|00><00|` on two qubits.
pub fn ket00() -> DensityMatrix {
    let zero = basis_ket(2, &[1.0, 0.0]);
    pure_product(&[zero.clone(), zero]).expect("unit vectors")
}

/// Projector onto `v_1 ⊗ … ⊗ v_n`; each vector must be normalized.
pub fn pure_product(vectors: &[Ket]) -> Result<DensityMatrix> {
    if vectors.is_empty() {
        return Err(Error::TooFewParties(0));
    }
    for v in vectors {
        let norm = v.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::UnnormalizedVector { norm });
        }
        if v.len() < 2 {
            return Err(Error::InvalidDimension(v.len()));
        }
    }
    let dims = vectors.iter().map(|v| v.len()).collect();
    Ok(projector(dims, &product_ket(vectors)))
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    c64(re, im)
}

/// Haar-random unit vector in `C^d`.
pub fn random_ket<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Ket {
    let v = Ket::from_fn(d, |_, _| gaussian_complex(rng));
    let n = v.norm();
    v.unscale(n)
}

/// Haar-random `d x d` unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(d, d, |_, _| gaussian_complex(rng));
    let (q, r) = g.qr().unpack();
    let phases = DVector::from_fn(d, |i, _| {
        let z = r[(i, i)];
        if z.norm() > 0.0 { z / z.norm() } else { c64(1.0, 0.0) }
    });
    q * ComplexMatrix::from_diagonal(&phases)
}

/// Random full-rank state `G G† / Tr(G G†)` from a square Ginibre matrix.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> Result<DensityMatrix> {
    let n: usize = dims.iter().product();
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian_complex(rng));
    let m = &g * g.adjoint();
    DensityMatrix::from_unnormalized(dims.to_vec(), hermitize(m))
}

pub fn random_pure_product<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> Result<DensityMatrix> {
    let kets: Vec<Ket> = dims.iter().map(|&d| random_ket(rng, d)).collect();
    pure_product(&kets)
}

/// Convex mixture of `terms` random pure products with Dirichlet(1, …, 1) weights.
pub fn random_separable<R: Rng + ?Sized>(rng: &mut R, dims: &[usize], terms: usize) -> Result<DensityMatrix> {
    if terms == 0 {
        return Err(Error::ParamOutOfRange { name: "terms", value: 0.0 });
    }
    let weights: Vec<f64> = (0..terms).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = weights.iter().sum();
    let n: usize = dims.iter().product();
    let mut m = ComplexMatrix::zeros(n, n);
    for w in weights {
        m += random_pure_product(rng, dims)?.into_matrix() * c64(w / total, 0.0);
    }
    DensityMatrix::from_unnormalized(dims.to_vec(), hermitize(m))
}

fn hermitize(m: ComplexMatrix) -> ComplexMatrix {
    (&m + m.adjoint()).unscale(2.0)
}

/// Named state family with its parameters, as used by the CLI.
#[derive(Debug, Clone, PartialEq)]
pub enum StateFamily {
    Werner { d: usize, x: f64 },
    TilesPpt { noise: f64 },
    Ghz { n: usize },
    W { n: usize },
    Bell,
    MaximallyMixed { dims: Vec<usize> },
    /// Computational basis product `|i_1 … i_n>`.
    PureProduct { dims: Vec<usize>, levels: Vec<usize> },
    RandomSeparable { dims: Vec<usize>, terms: usize, seed: u64 },
}

impl StateFamily {
    pub fn name(&self) -> &'static str {
        match self {
            StateFamily::Werner { .. } => "werner",
            StateFamily::TilesPpt { .. } => "tiles-ppt",
            StateFamily::Ghz { .. } => "ghz",
            StateFamily::W { .. } => "w",
            StateFamily::Bell => "bell",
            StateFamily::MaximallyMixed { .. } => "maximally-mixed",
            StateFamily::PureProduct { .. } => "pure-product",
            StateFamily::RandomSeparable { .. } => "random-separable",
        }
    }

    pub fn params(&self) -> BTreeMap<String, serde_json::Value> {
        use serde_json::json;
        let mut p = BTreeMap::new();
        match self {
            StateFamily::Werner { d, x } => {
                p.insert("d".into(), json!(d));
                p.insert("x".into(), json!(x));
            }
            StateFamily::TilesPpt { noise } => {
                p.insert("noise".into(), json!(noise));
            }
            StateFamily::Ghz { n } | StateFamily::W { n } => {
                p.insert("n".into(), json!(n));
            }
            StateFamily::Bell => {}
            StateFamily::MaximallyMixed { dims } => {
                p.insert("dims".into(), json!(dims));
            }
            StateFamily::PureProduct { dims, levels } => {
                p.insert("dims".into(), json!(dims));
                p.insert("levels".into(), json!(levels));
            }
            StateFamily::RandomSeparable { dims, terms, seed } => {
                p.insert("dims".into(), json!(dims));
                p.insert("terms".into(), json!(terms));
                p.insert("seed".into(), json!(seed));
            }
        }
        p
    }

    pub fn generate(&self) -> Result<DensityMatrix> {
        match self {
            StateFamily::Werner { d, x } => werner(*d, *x),
            StateFamily::TilesPpt { noise } => mix_white_noise(&tiles_ppt(), *noise),
            StateFamily::Ghz { n } => ghz(*n),
            StateFamily::W { n } => w(*n),
            StateFamily::Bell => Ok(bell()),
            StateFamily::MaximallyMixed { dims } => maximally_mixed(dims),
            StateFamily::PureProduct { dims, levels } => {
                if dims.len() != levels.len() {
                    return Err(Error::DimensionMismatch { size: levels.len(), dims: dims.clone() });
                }
                let kets = dims
                    .iter()
                    .zip(levels)
                    .map(|(&d, &l)| {
                        if l >= d {
                            return Err(Error::ParamOutOfRange { name: "level", value: l as f64 });
                        }
                        let mut k = Ket::zeros(d);
                        k[l] = c64(1.0, 0.0);
                        Ok(k)
                    })
                    .collect::<Result<Vec<_>>>()?;
                pure_product(&kets)
            }
            StateFamily::RandomSeparable { dims, terms, seed } => {
                random_separable(&mut seeded_rng(*seed), dims, *terms)
            }
        }
    }
}

impl fmt::Display for StateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        for (k, v) in self.params() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}
