//! Entanglement detection from moments of correlation tensors.
//!
//! A state is written in the Bloch basis of generalized Gell-Mann matrices;
//! the singular values of its correlation matrix (or tensor unfoldings) give
//! power-sum moments `a_k = Σ σ_i^k`. Separable states obey trace-norm bounds
//! on the correlation objects, which combined with `a_2² ≤ a_1 a_3` and with
//! positivity of moment Hankel matrices yield entanglement witnesses.
//! PPT, realignment (CCNR) and plain trace-norm tests are included as
//! baselines.
//!
//! ```
//! use ctm_core::{criteria, states};
//!
//! let rho = states::werner(3, -0.5).unwrap();
//! let (plain, _) = criteria::theorem1(&rho, 1e-9).unwrap();
//! assert!(plain.violated);
//! ```

pub mod basis;
pub mod bloch;
pub mod cli;
pub mod criteria;
pub mod density;
pub mod error;
pub mod io;
pub mod linalg;
pub mod moments;
pub mod states;
pub mod threshold;

pub use criteria::{CriterionName, CriterionReport, Options};
pub use density::DensityMatrix;
pub use error::{Error, Result};
