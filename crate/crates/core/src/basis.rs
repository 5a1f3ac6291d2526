//! Generalized Gell-Mann matrices: traceless Hermitian generators of su(d)
//! normalized so that `Tr(λ_i λ_j) = 2 δ_ij`.
//!
//! Ordering is fixed: symmetric `E_jk + E_kj` for `j < k` in lexicographic
//! order, then antisymmetric `-i(E_jk - E_kj)` in the same order, then the
//! diagonal generators `D_1 .. D_{d-1}`. At `d = 2` this gives `σx, σy, σz`.

use crate::error::{Error, Result};
use crate::linalg::{c64, ComplexMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    d: usize,
    generators: Vec<ComplexMatrix>,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generator `index` with the identity prepended at index 0.
    pub fn extended(&self, index: usize) -> ComplexMatrix {
        match index {
            0 => ComplexMatrix::identity(self.d, self.d),
            k => self.generators[k - 1].clone(),
        }
    }
}

pub fn gellmann_generators(d: usize) -> Result<GeneratorBasis> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|j| (j + 1..d).map(move |k| (j, k))).collect();
    let mut generators = Vec::with_capacity(d * d - 1);

    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(j, k)] = c64(1.0, 0.0);
        m[(k, j)] = c64(1.0, 0.0);
        generators.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(d, d);
        m[(j, k)] = c64(0.0, -1.0);
        m[(k, j)] = c64(0.0, 1.0);
        generators.push(m);
    }
    for l in 1..d {
        let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut m = ComplexMatrix::zeros(d, d);
        for i in 0..l {
            m[(i, i)] = c64(scale, 0.0);
        }
        m[(l, l)] = c64(-(l as f64) * scale, 0.0);
        generators.push(m);
    }
    Ok(GeneratorBasis { d, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_deviation;
    use approx::assert_abs_diff_eq;
    use nalgebra::ComplexField;
    use proptest::prelude::*;

    fn hs(a: &ComplexMatrix, b: &ComplexMatrix) -> num_complex::Complex64 {
        (a * b).trace()
    }

    #[test]
    fn qubit_generators_are_pauli() {
        let basis = gellmann_generators(2).unwrap();
        let g = basis.generators();
        assert_eq!(g.len(), 3);
        let x = ComplexMatrix::from_row_slice(2, 2, &[c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)]);
        let y = ComplexMatrix::from_row_slice(2, 2, &[c64(0.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(0.0, 0.0)]);
        let z = ComplexMatrix::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0)]);
        assert_eq!(g[0], x);
        assert_eq!(g[1], y);
        assert_abs_diff_eq!((&g[2] - z).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn qutrit_has_eight() {
        let g = gellmann_generators(3).unwrap();
        assert_eq!(g.len(), 8);
        assert_abs_diff_eq!(hs(&g.generators()[0], &g.generators()[0]).re, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn invalid_dimension() {
        assert_eq!(gellmann_generators(1).unwrap_err(), Error::InvalidDimension(1));
    }

    #[test]
    fn structure_for_small_dims() {
        for d in 2..=6 {
            let basis = gellmann_generators(d).unwrap();
            let g = basis.generators();
            assert_eq!(g.len(), d * d - 1);
            for (i, a) in g.iter().enumerate() {
                assert!(hermitian_deviation(a) <= 1e-14);
                assert!(a.trace().modulus() <= 1e-14);
                for (j, b) in g.iter().enumerate() {
                    let expected = if i == j { 2.0 } else { 0.0 };
                    let ip = hs(a, b);
                    assert!((ip.re - expected).abs() <= 1e-12 && ip.im.abs() <= 1e-12, "d={d} ({i},{j})");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn expansion_reconstructs_hermitian(d in 2usize..=5, seed in prop::collection::vec(-1.0f64..1.0, 50)) {
            let mut h = ComplexMatrix::zeros(d, d);
            let mut it = seed.iter().cycle();
            for i in 0..d {
                h[(i, i)] = c64(*it.next().unwrap(), 0.0);
                for j in i + 1..d {
                    let z = c64(*it.next().unwrap(), *it.next().unwrap());
                    h[(i, j)] = z;
                    h[(j, i)] = z.conj();
                }
            }
            let basis = gellmann_generators(d).unwrap();
            let mut rebuilt = ComplexMatrix::identity(d, d) * (h.trace() / d as f64);
            for g in basis.generators() {
                rebuilt += g * (hs(&h, g) / 2.0);
            }
            prop_assert!((rebuilt - h).norm() <= 1e-12);
        }
    }
}
