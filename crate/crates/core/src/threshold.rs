//! Detection thresholds along one-parameter state families.
//!
//! The margin of a criterion is sampled on a coarse grid (step `0.01`), every
//! sign change is bracketed, and each bracket is bisected down to the
//! requested precision.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::criteria::{evaluate, CriterionName, Options};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::states;

pub const SCAN_STEP: f64 = 1e-2;
pub const MIN_PRECISION: f64 = 1e-8;

/// A family `x ↦ ρ(x)` with one scalar mixing parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarFamily {
    /// Tiles PPT state mixed with white noise, `x ∈ [0, 1]`.
    TilesNoise,
    /// Werner states on `d ⊗ d`, `x ∈ [-1, 1]`.
    Werner { d: usize },
    /// GHZ on `n` qubits with white noise, `x ∈ [0, 1]`.
    GhzNoise { n: usize },
    /// W state on `n` qubits with white noise, `x ∈ [0, 1]`.
    WNoise { n: usize },
    /// Bell state with white noise, `x ∈ [0, 1]`.
    BellNoise,
}

impl ScalarFamily {
    /// Parses a family name, pulling `d` or `n` from the given parameters.
    pub fn parse(name: &str, d: Option<usize>, n: Option<usize>) -> Result<Self> {
        Ok(match name {
            "tiles-noise" | "tiles-ppt" | "tiles" => ScalarFamily::TilesNoise,
            "werner" => ScalarFamily::Werner { d: d.unwrap_or(3) },
            "ghz-noise" | "ghz" => ScalarFamily::GhzNoise { n: n.unwrap_or(3) },
            "w-noise" | "w" => ScalarFamily::WNoise { n: n.unwrap_or(3) },
            "bell-noise" | "bell" => ScalarFamily::BellNoise,
            other => return Err(Error::NonScalarFamily(other.to_string())),
        })
    }

    pub fn range(&self) -> (f64, f64) {
        match self {
            ScalarFamily::Werner { .. } => (-1.0, 1.0),
            _ => (0.0, 1.0),
        }
    }

    pub fn state(&self, x: f64) -> Result<DensityMatrix> {
        match *self {
            ScalarFamily::TilesNoise => states::mix_white_noise(&states::tiles_ppt(), x),
            ScalarFamily::Werner { d } => states::werner(d, x),
            ScalarFamily::GhzNoise { n } => states::mix_white_noise(&states::ghz(n)?, x),
            ScalarFamily::WNoise { n } => states::mix_white_noise(&states::w(n)?, x),
            ScalarFamily::BellNoise => states::mix_white_noise(&states::bell(), x),
        }
    }
}

impl fmt::Display for ScalarFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarFamily::TilesNoise => write!(f, "tiles-noise"),
            ScalarFamily::Werner { d } => write!(f, "werner(d={d})"),
            ScalarFamily::GhzNoise { n } => write!(f, "ghz-noise(n={n})"),
            ScalarFamily::WNoise { n } => write!(f, "w-noise(n={n})"),
            ScalarFamily::BellNoise => write!(f, "bell-noise"),
        }
    }
}

impl FromStr for ScalarFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScalarFamily::parse(s, None, None)
    }
}

/// A located sign change of the margin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    /// Bisected bracket, `hi - lo ≤ precision`.
    pub lo: f64,
    pub hi: f64,
    /// Midpoint of the final bracket.
    pub x: f64,
    /// True when the detected region lies above `x`.
    pub detects_above: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub family: String,
    pub criterion: CriterionName,
    pub precision: f64,
    /// All crossings in increasing `x`.
    pub crossings: Vec<Crossing>,
    /// Boundary of the detected region adjacent to the upper end of the
    /// range, falling back to the only crossing; `None` without a sign change.
    pub threshold: Option<f64>,
}

impl ThresholdResult {
    pub fn is_single_crossing(&self) -> bool {
        self.crossings.len() == 1
    }
}

/// Criterion margin at `x`.
pub fn margin_at(family: &ScalarFamily, criterion: CriterionName, x: f64, opts: &Options) -> Result<f64> {
    Ok(evaluate(&family.state(x)?, criterion, opts)?.margin)
}

fn bisect<F>(mut lo: f64, mut hi: f64, lo_detected: bool, precision: f64, f: &F) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<bool>,
{
    while hi - lo > precision {
        let mid = 0.5 * (lo + hi);
        if f(mid)? == lo_detected {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

pub fn find_threshold(
    family: &ScalarFamily,
    criterion: CriterionName,
    precision: f64,
    opts: &Options,
) -> Result<ThresholdResult> {
    if precision.is_nan() || precision < MIN_PRECISION {
        return Err(Error::ParamOutOfRange { name: "precision", value: precision });
    }
    let (lo, hi) = family.range();
    let steps = ((hi - lo) / SCAN_STEP).round() as usize;
    let grid: Vec<f64> = (0..=steps).map(|i| (lo + i as f64 * SCAN_STEP).min(hi)).collect();
    let detected = |x: f64| margin_at(family, criterion, x, opts).map(|m| m > 0.0);
    let flags = grid.iter().map(|&x| detected(x)).collect::<Result<Vec<_>>>()?;

    let mut crossings = Vec::new();
    for (i, pair) in flags.windows(2).enumerate() {
        if pair[0] != pair[1] {
            let (a, b) = bisect(grid[i], grid[i + 1], pair[0], precision, &detected)?;
            crossings.push(Crossing { lo: a, hi: b, x: 0.5 * (a + b), detects_above: pair[1] });
        }
    }
    let threshold = crossings
        .iter()
        .rev()
        .find(|c| c.detects_above)
        .or(crossings.last())
        .map(|c| c.x);
    Ok(ThresholdResult { family: family.to_string(), criterion, precision, crossings, threshold })
}
