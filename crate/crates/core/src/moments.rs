//! Moments `a_k = Tr (T T†)^{k/2} = Σ σ_i^k` of a correlation matrix and the
//! Hankel matrices built from them.

use crate::bloch::{canonical_matrix, decompose_bipartite};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{singular_values, RealMatrix};

/// Which correlation object the moments were taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentSource {
    /// Bare singular values, no state attached.
    Raw,
    /// Correlation matrix `T`.
    Plain,
    /// Canonical matrix `T̃`.
    Canonical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector {
    /// `values[0]` is the `a0` convention value; `values[k] = Σ σ^k` for `k ≥ 1`.
    pub values: Vec<f64>,
    pub source: MomentSource,
    /// Subsystem dimensions of the state, empty for [`MomentSource::Raw`].
    pub dims: Vec<usize>,
}

impl MomentVector {
    pub fn a0(&self) -> f64 {
        self.values[0]
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> f64 {
        self.values[k]
    }
}

fn power_sum(sigmas: &[f64], k: usize) -> f64 {
    let k = k as f64;
    sigmas.iter().filter(|&&s| s > 1e-300).map(|&s| (k * s.ln()).exp()).sum()
}

/// `[a0, Σσ, Σσ², …, Σσ^order]`.
pub fn moment_vector(sigmas: &[f64], order: usize, a0: f64) -> Result<MomentVector> {
    if let Some(&s) = sigmas.iter().find(|&&s| s < 0.0 || s.is_nan()) {
        return Err(Error::NegativeSingularValue(s));
    }
    let mut values = Vec::with_capacity(order + 1);
    values.push(a0);
    values.extend((1..=order).map(|k| power_sum(sigmas, k)));
    Ok(MomentVector { values, source: MomentSource::Raw, dims: Vec::new() })
}

/// Singular values of `T` (or `T̃` when `canonical`).
pub fn correlation_singular_values(rho: &DensityMatrix, canonical: bool) -> Result<Vec<f64>> {
    let dec = decompose_bipartite(rho)?;
    Ok(if canonical { singular_values(canonical_matrix(&dec).matrix()) } else { singular_values(&dec.t) })
}

/// Moments up to order `d1 d2`, which is everything the Hankel families use.
pub fn moments_of_state(rho: &DensityMatrix, canonical: bool) -> Result<MomentVector> {
    let (d1, d2) = rho.bipartite_dims()?;
    moments_of_state_to_order(rho, canonical, d1 * d2)
}

pub fn moments_of_state_to_order(rho: &DensityMatrix, canonical: bool, order: usize) -> Result<MomentVector> {
    let (d1, d2) = rho.bipartite_dims()?;
    let sigmas = correlation_singular_values(rho, canonical)?;
    let a0 = if canonical { (d1 * d1 * d2 * d2) as f64 } else { ((d1 * d1 - 1) * (d2 * d2 - 1)) as f64 };
    let mut m = moment_vector(&sigmas, order, a0)?;
    m.source = if canonical { MomentSource::Canonical } else { MomentSource::Plain };
    m.dims = vec![d1, d2];
    Ok(m)
}

/// Hankel families `Ĥ_k = [a_{i+j}]` (`k = 1..⌊D/2⌋`) and
/// `B̂_l = [a_{m+n+1}]` (`l = 1..⌊(D-1)/2⌋`), `D = d1 d2`, with every `a1`
/// replaced by `substituted_a1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelPair {
    pub h_hat: Vec<RealMatrix>,
    pub b_hat: Vec<RealMatrix>,
    pub substituted_a1: f64,
}

pub fn hankel_matrices(m: &MomentVector, substituted_a1: f64) -> Result<HankelPair> {
    let total: usize = m.dims.iter().product();
    if m.dims.is_empty() || m.values.len() < total + 1 {
        return Err(Error::InsufficientMoments { needed: total.max(1), have: m.order() });
    }
    let entry = |idx: usize| if idx == 1 { substituted_a1 } else { m.values[idx] };
    let h_hat = (1..=total / 2)
        .map(|k| RealMatrix::from_fn(k + 1, k + 1, |i, j| entry(i + j)))
        .collect();
    let b_hat = (1..=(total - 1) / 2)
        .map(|l| RealMatrix::from_fn(l + 1, l + 1, |i, j| entry(i + j + 1)))
        .collect();
    Ok(HankelPair { h_hat, b_hat, substituted_a1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_psd;
    use crate::states;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn with_dims(values: Vec<f64>, dims: Vec<usize>) -> MomentVector {
        MomentVector { values, source: MomentSource::Plain, dims }
    }

    #[test]
    fn raw_moment_vectors() {
        assert_eq!(moment_vector(&[0.0; 3], 3, 9.0).unwrap().values, vec![9.0, 0.0, 0.0, 0.0]);
        let m = moment_vector(&[0.5], 3, 9.0).unwrap();
        assert_abs_diff_eq!(m.values.as_slice(), [9.0, 0.5, 0.25, 0.125].as_slice(), epsilon = 1e-15);
        // Werner d=3, x=-1/2: σ = |3x - 1| / (2·3·8) = 5/96
        let s = 5.0 / 96.0;
        let m = moment_vector(&[s; 8], 3, 64.0).unwrap();
        assert_abs_diff_eq!(m.get(1), 5.0 / 12.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.get(2), 8.0 * s * s, epsilon = 1e-15);
        assert_abs_diff_eq!(m.get(3), 8.0 * s * s * s, epsilon = 1e-15);
        assert_eq!(moment_vector(&[0.1, -0.2], 3, 1.0).unwrap_err(), Error::NegativeSingularValue(-0.2));
    }

    #[test]
    fn state_moments() {
        let m = moments_of_state(&states::maximally_mixed(&[2, 2]).unwrap(), false).unwrap();
        assert_eq!(m.values, vec![9.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(m.source, MomentSource::Plain);

        let b = moments_of_state(&states::maximally_mixed(&[3, 3]).unwrap(), true).unwrap();
        assert_eq!(b.a0(), 81.0);
        assert_eq!(b.order(), 9);
        for k in 1..=9 {
            assert_abs_diff_eq!(b.get(k), 9f64.powi(-(k as i32)), epsilon = 1e-15);
        }

        let b = moments_of_state(&states::ket00(), true).unwrap();
        assert_abs_diff_eq!(b.get(1), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(b.get(2), 0.25, epsilon = 1e-14);

        let ghz = states::ghz(3).unwrap();
        assert!(matches!(moments_of_state(&ghz, false), Err(Error::NotBipartite { parties: 3 })));
    }

    #[test]
    fn two_qubit_hankel_layout() {
        let (c, a2, a3, a4) = (0.7, 0.2, 0.3, 0.4);
        let m = with_dims(vec![9.0, 0.123, a2, a3, a4], vec![2, 2]);
        let pair = hankel_matrices(&m, c).unwrap();
        assert_eq!(pair.h_hat.len(), 2);
        assert_eq!(pair.b_hat.len(), 1);
        assert_eq!(pair.h_hat[0], RealMatrix::from_row_slice(2, 2, &[9.0, c, c, a2]));
        assert_eq!(
            pair.h_hat[1],
            RealMatrix::from_row_slice(3, 3, &[9.0, c, a2, c, a2, a3, a2, a3, a4])
        );
        assert_eq!(pair.b_hat[0], RealMatrix::from_row_slice(2, 2, &[c, a2, a2, a3]));
    }

    #[test]
    fn substituted_b_hat_cases() {
        let zero = with_dims(vec![9.0, 0.0, 0.0, 0.0, 0.0], vec![2, 2]);
        let pair = hankel_matrices(&zero, 0.25).unwrap();
        assert_eq!(pair.b_hat[0], RealMatrix::from_row_slice(2, 2, &[0.25, 0.0, 0.0, 0.0]));
        assert!(is_psd(&pair.b_hat[0], 1e-9).unwrap());

        // Werner d=2, x=0: three singular values 1/12
        let m = moment_vector(&[1.0 / 12.0; 3], 4, 9.0).unwrap();
        let m = with_dims(m.values, vec![2, 2]);
        assert_abs_diff_eq!(m.get(2), 3.0 / 144.0, epsilon = 1e-16);
        assert_abs_diff_eq!(m.get(3), 3.0 / 1728.0, epsilon = 1e-17);
        let pair = hankel_matrices(&m, 0.25).unwrap();
        assert!(is_psd(&pair.b_hat[0], 1e-9).unwrap());
    }

    #[test]
    fn qutrit_hankel_counts() {
        let m = moments_of_state(&states::tiles_ppt(), false).unwrap();
        let pair = hankel_matrices(&m, 1.0 / 3.0).unwrap();
        assert_eq!(pair.h_hat.len(), 4);
        assert_eq!(pair.b_hat.len(), 4);
        assert_eq!(pair.b_hat[3].shape(), (5, 5));
        assert_eq!(pair.b_hat[3][(4, 4)], m.get(9));
        assert!(pair.h_hat.iter().chain(&pair.b_hat).all(|h| h == &h.transpose()));
    }

    #[test]
    fn insufficient_moments() {
        let short = with_dims(vec![9.0, 0.1, 0.2, 0.3], vec![2, 2]);
        assert!(matches!(hankel_matrices(&short, 0.25), Err(Error::InsufficientMoments { needed: 4, have: 3 })));
        let raw = moment_vector(&[0.1], 8, 1.0).unwrap();
        assert!(matches!(hankel_matrices(&raw, 0.25), Err(Error::InsufficientMoments { .. })));
    }

    proptest! {
        #[test]
        fn permutation_invariant(mut sigmas in prop::collection::vec(0.0f64..1.0, 1..12), shift in 0usize..12) {
            let a = moment_vector(&sigmas, 6, 1.0).unwrap();
            let len = sigmas.len();
            sigmas.rotate_left(shift % len);
            sigmas.reverse();
            let b = moment_vector(&sigmas, 6, 1.0).unwrap();
            for k in 0..=6 {
                prop_assert!((a.get(k) - b.get(k)).abs() <= 1e-12 * a.get(k).max(1.0));
            }
        }

        #[test]
        fn power_sums_are_log_convex(sigmas in prop::collection::vec(0.0f64..2.0, 1..12)) {
            let m = moment_vector(&sigmas, 8, 1.0).unwrap();
            for k in 2..8 {
                let lhs = m.get(k) * m.get(k);
                let rhs = m.get(k - 1) * m.get(k + 1);
                prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-300);
            }
        }
    }
}
