//! Separability tests. Each returns a [`CriterionReport`]; a violated report
//! certifies entanglement, a satisfied one certifies nothing.
//!
//! Reports follow one convention: `margin = quantity - bound` and
//! `violated = margin > 0`. The tolerance is folded into `bound`: inequality
//! tests use `bound = rhs * (1 + tol)`, PSD tests use
//! `quantity = -λ_min` and `bound = tol * max(1, max|M|)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bloch::correlation_tensor;
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{self, max_abs, min_eigenvalue, singular_values, trace_norm, RealMatrix};
use crate::moments::{hankel_matrices, moment_vector, moments_of_state, moments_of_state_to_order, MomentVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CriterionName {
    #[serde(rename = "ppt")]
    Ppt,
    #[serde(rename = "ccnr")]
    Ccnr,
    #[serde(rename = "dv")]
    Dv,
    #[serde(rename = "li")]
    Li,
    #[serde(rename = "thm1-plain")]
    Thm1Plain,
    #[serde(rename = "thm1-canonical")]
    Thm1Canonical,
    #[serde(rename = "thm2-plain")]
    Thm2Plain,
    #[serde(rename = "thm2-canonical")]
    Thm2Canonical,
    #[serde(rename = "thm3-plain")]
    Thm3Plain,
    #[serde(rename = "thm3-canonical")]
    Thm3Canonical,
}

impl CriterionName {
    /// Evaluation order for bipartite states.
    pub const BIPARTITE: [CriterionName; 10] = [
        CriterionName::Ppt,
        CriterionName::Ccnr,
        CriterionName::Dv,
        CriterionName::Li,
        CriterionName::Thm1Plain,
        CriterionName::Thm1Canonical,
        CriterionName::Thm2Plain,
        CriterionName::Thm2Canonical,
        CriterionName::Thm3Plain,
        CriterionName::Thm3Canonical,
    ];

    /// Evaluation order for three or more parties.
    pub const MULTIPARTITE: [CriterionName; 4] =
        [CriterionName::Dv, CriterionName::Li, CriterionName::Thm3Plain, CriterionName::Thm3Canonical];

    pub fn as_str(self) -> &'static str {
        match self {
            CriterionName::Ppt => "ppt",
            CriterionName::Ccnr => "ccnr",
            CriterionName::Dv => "dv",
            CriterionName::Li => "li",
            CriterionName::Thm1Plain => "thm1-plain",
            CriterionName::Thm1Canonical => "thm1-canonical",
            CriterionName::Thm2Plain => "thm2-plain",
            CriterionName::Thm2Canonical => "thm2-canonical",
            CriterionName::Thm3Plain => "thm3-plain",
            CriterionName::Thm3Canonical => "thm3-canonical",
        }
    }

    pub fn applicable(parties: usize) -> &'static [CriterionName] {
        if parties == 2 {
            &Self::BIPARTITE
        } else {
            &Self::MULTIPARTITE
        }
    }
}

impl fmt::Display for CriterionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CriterionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CriterionName::BIPARTITE
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownCriterion(s.to_string()))
    }
}

/// One line of a report breakdown (a Hankel block, an unfolding mode, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detail {
    pub label: String,
    pub quantity: f64,
    pub bound: f64,
    pub margin: f64,
    /// False for diagnostics that never feed into `violated` (the `Ĥ_k` blocks).
    pub counted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub name: CriterionName,
    pub quantity: f64,
    pub bound: f64,
    pub violated: bool,
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub detail: Vec<Detail>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CriterionReport {
    fn new(name: CriterionName, quantity: f64, bound: f64) -> Self {
        let margin = quantity - bound;
        CriterionReport { name, quantity, bound, violated: margin > 0.0, margin, detail: Vec::new(), error: None }
    }

    fn inequality(name: CriterionName, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(name, lhs, rhs * (1.0 + tol))
    }

    fn failed(name: CriterionName, err: &Error) -> Self {
        CriterionReport {
            name,
            quantity: 0.0,
            bound: 0.0,
            violated: false,
            margin: 0.0,
            detail: Vec::new(),
            error: Some(err.to_string()),
        }
    }

    fn with_detail(mut self, detail: Vec<Detail>) -> Self {
        self.detail = detail;
        self
    }
}

/// `√((d1² - d1)(d2² - d2)) / (2 d1 d2)`: trace-norm bound on `T` for separable states.
pub fn dv_bound(d1: usize, d2: usize) -> f64 {
    let (a, b) = (d1 as f64, d2 as f64);
    ((a * a - a) * (b * b - b)).sqrt() / (2.0 * a * b)
}

/// `√((2 + d1² - d1)(2 + d2² - d2)) / (2 d1 d2)`: trace-norm bound on `T̃`.
pub fn li_bound(d1: usize, d2: usize) -> f64 {
    let (a, b) = (d1 as f64, d2 as f64);
    ((2.0 + a * a - a) * (2.0 + b * b - b)).sqrt() / (2.0 * a * b)
}

/// `∏ √((d_k - 1) / (2 d_k))`.
pub fn multi_plain_bound(dims: &[usize]) -> f64 {
    dims.iter().map(|&d| ((d as f64 - 1.0) / (2.0 * d as f64)).sqrt()).product()
}

/// `∏ √((d_k² - d_k + 2) / (2 d_k²))`.
pub fn multi_canonical_bound(dims: &[usize]) -> f64 {
    dims.iter()
        .map(|&d| {
            let d = d as f64;
            ((d * d - d + 2.0) / (2.0 * d * d)).sqrt()
        })
        .product()
}

/// Separable-state trace-norm bounds for a given system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparableBounds {
    /// Bipartite only.
    pub dv: Option<f64>,
    pub li: Option<f64>,
    pub multi_plain: f64,
    pub multi_canonical: f64,
}

impl SeparableBounds {
    pub fn for_dims(dims: &[usize]) -> Self {
        let (dv, li) = match *dims {
            [d1, d2] => (Some(dv_bound(d1, d2)), Some(li_bound(d1, d2))),
            _ => (None, None),
        };
        SeparableBounds { dv, li, multi_plain: multi_plain_bound(dims), multi_canonical: multi_canonical_bound(dims) }
    }
}

/// How per-unfolding tests combine into one verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnfoldingPolicy {
    /// Violated if any mode's inequality fails.
    #[default]
    AnyMode,
    /// Only the given mode (1-based) counts.
    Mode(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub tol: f64,
    /// Also evaluate the `Ĥ_k` blocks; reported in `detail`, never counted.
    pub include_hk: bool,
    pub policy: UnfoldingPolicy,
}

impl Default for Options {
    fn default() -> Self {
        Options { tol: linalg::DEFAULT_TOL, include_hk: false, policy: UnfoldingPolicy::AnyMode }
    }
}

fn ratio_report(name: CriterionName, m: &MomentVector, bound: f64, tol: f64) -> CriterionReport {
    let (a2, a3) = (m.get(2), m.get(3));
    if a3 == 0.0 {
        // zero correlations: both sides vanish
        return CriterionReport::new(name, 0.0, 0.0);
    }
    CriterionReport::inequality(name, a2 * a2, bound * a3, tol)
}

fn ratio_test(name: CriterionName, sigmas: &[f64], bound: f64, tol: f64) -> Result<CriterionReport> {
    Ok(ratio_report(name, &moment_vector(sigmas, 3, 0.0)?, bound, tol))
}

/// `a2² ≤ dv·a3` (plain) and `b2² ≤ li·b3` (canonical).
pub fn theorem1(rho: &DensityMatrix, tol: f64) -> Result<(CriterionReport, CriterionReport)> {
    let (d1, d2) = rho.bipartite_dims()?;
    let plain = moments_of_state_to_order(rho, false, 3)?;
    let canonical = moments_of_state_to_order(rho, true, 3)?;
    Ok((
        ratio_report(CriterionName::Thm1Plain, &plain, dv_bound(d1, d2), tol),
        ratio_report(CriterionName::Thm1Canonical, &canonical, li_bound(d1, d2), tol),
    ))
}

fn psd_detail(label: String, m: &RealMatrix, tol: f64, counted: bool) -> Result<Detail> {
    let quantity = -min_eigenvalue(m)?;
    let bound = linalg::psd_threshold(m, tol);
    Ok(Detail { label, quantity, bound, margin: quantity - bound, counted })
}

fn hankel_report(name: CriterionName, rho: &DensityMatrix, canonical: bool, bound: f64, opts: &Options) -> Result<CriterionReport> {
    let moments = moments_of_state(rho, canonical)?;
    let pair = hankel_matrices(&moments, bound)?;
    let mut detail = Vec::new();
    for (l, b) in pair.b_hat.iter().enumerate() {
        detail.push(psd_detail(format!("B{}", l + 1), b, opts.tol, true)?);
    }
    if opts.include_hk {
        for (k, h) in pair.h_hat.iter().enumerate() {
            detail.push(psd_detail(format!("H{}", k + 1), h, opts.tol, false)?);
        }
    }
    let worst = detail
        .iter()
        .filter(|d| d.counted)
        .max_by(|a, b| a.margin.total_cmp(&b.margin))
        .expect("at least one B block");
    Ok(CriterionReport::new(name, worst.quantity, worst.bound).with_detail(detail))
}

/// Positivity of the `B̂_l` Hankel blocks with `a1` replaced by its separable
/// bound. `Ĥ_k` blocks are diagnostics only (see [`Options::include_hk`]).
pub fn theorem2(rho: &DensityMatrix, opts: &Options) -> Result<(CriterionReport, CriterionReport)> {
    let (d1, d2) = rho.bipartite_dims()?;
    Ok((
        hankel_report(CriterionName::Thm2Plain, rho, false, dv_bound(d1, d2), opts)?,
        hankel_report(CriterionName::Thm2Canonical, rho, true, li_bound(d1, d2), opts)?,
    ))
}

/// Singular values of each mode unfolding.
fn unfolding_spectra(rho: &DensityMatrix, extended: bool) -> Result<Vec<Vec<f64>>> {
    let t = correlation_tensor(rho, extended)?;
    (1..=t.order()).map(|k| Ok(singular_values(&t.unfold(k)?))).collect()
}

fn select_mode(name: CriterionName, detail: Vec<Detail>, policy: UnfoldingPolicy) -> Result<CriterionReport> {
    let chosen = match policy {
        UnfoldingPolicy::AnyMode => detail.iter().max_by(|a, b| a.margin.total_cmp(&b.margin)),
        UnfoldingPolicy::Mode(k) => detail.get(k.wrapping_sub(1)),
    };
    let chosen = chosen.ok_or(Error::ModeOutOfRange {
        mode: match policy {
            UnfoldingPolicy::Mode(k) => k,
            UnfoldingPolicy::AnyMode => 0,
        },
        order: detail.len(),
    })?;
    Ok(CriterionReport::new(name, chosen.quantity, chosen.bound).with_detail(detail))
}

fn per_mode_ratio(name: CriterionName, spectra: &[Vec<f64>], bound: f64, opts: &Options) -> Result<CriterionReport> {
    let detail = spectra
        .iter()
        .enumerate()
        .map(|(k, sigmas)| {
            let r = ratio_test(name, sigmas, bound, opts.tol)?;
            Ok(Detail { label: format!("mode{}", k + 1), quantity: r.quantity, bound: r.bound, margin: r.margin, counted: true })
        })
        .collect::<Result<Vec<_>>>()?;
    select_mode(name, detail, opts.policy)
}

/// `ā2² ≤ ∏√((d_k-1)/(2d_k))·ā3` and its extended-tensor analogue, tested on
/// every mode unfolding.
pub fn theorem3(rho: &DensityMatrix, opts: &Options) -> Result<(CriterionReport, CriterionReport)> {
    let dims = rho.dims();
    Ok((
        per_mode_ratio(CriterionName::Thm3Plain, &unfolding_spectra(rho, false)?, multi_plain_bound(dims), opts)?,
        per_mode_ratio(CriterionName::Thm3Canonical, &unfolding_spectra(rho, true)?, multi_canonical_bound(dims), opts)?,
    ))
}

fn trace_norm_test(name: CriterionName, rho: &DensityMatrix, canonical: bool, tol: f64) -> Result<CriterionReport> {
    let dims = rho.dims();
    if let [d1, d2] = *dims {
        let m = moments_of_state_to_order(rho, canonical, 1)?;
        let bound = if canonical { li_bound(d1, d2) } else { dv_bound(d1, d2) };
        return Ok(CriterionReport::inequality(name, m.get(1), bound, tol));
    }
    let bound = if canonical { multi_canonical_bound(dims) } else { multi_plain_bound(dims) };
    let detail: Vec<Detail> = unfolding_spectra(rho, canonical)?
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let r = CriterionReport::inequality(name, s.iter().sum(), bound, tol);
            Detail { label: format!("mode{}", k + 1), quantity: r.quantity, bound: r.bound, margin: r.margin, counted: true }
        })
        .collect();
    // max over unfoldings
    select_mode(name, detail, UnfoldingPolicy::AnyMode)
}

/// `‖T‖_tr ≤ dv` (max over unfoldings for more than two parties).
pub fn dv_criterion(rho: &DensityMatrix, tol: f64) -> Result<CriterionReport> {
    trace_norm_test(CriterionName::Dv, rho, false, tol)
}

/// `‖T̃‖_tr ≤ li` (max over unfoldings for more than two parties).
pub fn li_criterion(rho: &DensityMatrix, tol: f64) -> Result<CriterionReport> {
    trace_norm_test(CriterionName::Li, rho, true, tol)
}

pub fn ppt_criterion(rho: &DensityMatrix, tol: f64) -> Result<CriterionReport> {
    let pt = rho.partial_transpose(2)?;
    let quantity = -min_eigenvalue(&pt)?;
    Ok(CriterionReport::new(CriterionName::Ppt, quantity, tol * max_abs(&pt).max(1.0)))
}

pub fn ccnr_criterion(rho: &DensityMatrix, tol: f64) -> Result<CriterionReport> {
    let r = rho.realign()?;
    Ok(CriterionReport::inequality(CriterionName::Ccnr, trace_norm(&r), 1.0, tol))
}

/// Evaluates a single named criterion.
pub fn evaluate(rho: &DensityMatrix, name: CriterionName, opts: &Options) -> Result<CriterionReport> {
    use CriterionName::*;
    match name {
        Ppt => ppt_criterion(rho, opts.tol),
        Ccnr => ccnr_criterion(rho, opts.tol),
        Dv => dv_criterion(rho, opts.tol),
        Li => li_criterion(rho, opts.tol),
        Thm1Plain => theorem1(rho, opts.tol).map(|p| p.0),
        Thm1Canonical => theorem1(rho, opts.tol).map(|p| p.1),
        Thm2Plain => theorem2(rho, opts).map(|p| p.0),
        Thm2Canonical => theorem2(rho, opts).map(|p| p.1),
        Thm3Plain => theorem3(rho, opts).map(|p| p.0),
        Thm3Canonical => theorem3(rho, opts).map(|p| p.1),
    }
}

/// Runs the given criteria in order. Failures become reports carrying an
/// `error` and never abort the batch.
pub fn evaluate_selected(rho: &DensityMatrix, names: &[CriterionName], opts: &Options) -> Vec<CriterionReport> {
    names
        .iter()
        .map(|&name| evaluate(rho, name, opts).unwrap_or_else(|e| CriterionReport::failed(name, &e)))
        .collect()
}

/// Every criterion applicable to the state, in [`CriterionName::applicable`] order.
pub fn evaluate_all(rho: &DensityMatrix, opts: &Options) -> Vec<CriterionReport> {
    evaluate_selected(rho, CriterionName::applicable(rho.parties()), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use approx::assert_abs_diff_eq;

    const TOL: f64 = 1e-9;

    fn opts() -> Options {
        Options::default()
    }

    fn by_name(reports: &[CriterionReport], name: CriterionName) -> &CriterionReport {
        reports.iter().find(|r| r.name == name).unwrap()
    }

    #[test]
    fn bounds() {
        assert_abs_diff_eq!(dv_bound(2, 2), 0.25, epsilon = 1e-16);
        assert_abs_diff_eq!(dv_bound(3, 3), 1.0 / 3.0, epsilon = 1e-16);
        assert_abs_diff_eq!(li_bound(3, 3), 4.0 / 9.0, epsilon = 1e-16);
        assert_abs_diff_eq!(li_bound(2, 2), 0.5, epsilon = 1e-16);
        for d1 in 2..=5 {
            for d2 in 2..=5 {
                let b = SeparableBounds::for_dims(&[d1, d2]);
                assert_abs_diff_eq!(b.multi_plain, b.dv.unwrap(), epsilon = 1e-14);
                assert_abs_diff_eq!(b.multi_canonical, b.li.unwrap(), epsilon = 1e-14);
                assert!(b.multi_plain > 0.0 && b.multi_canonical > 0.0);
            }
        }
        assert_eq!(SeparableBounds::for_dims(&[2, 2, 2]).dv, None);
    }

    #[test]
    fn names_round_trip() {
        for name in CriterionName::BIPARTITE {
            assert_eq!(name.as_str().parse::<CriterionName>().unwrap(), name);
        }
        assert_eq!("nope".parse::<CriterionName>().unwrap_err(), Error::UnknownCriterion("nope".into()));
    }

    #[test]
    fn theorem1_cases() {
        let (p, c) = theorem1(&states::maximally_mixed(&[3, 3]).unwrap(), TOL).unwrap();
        assert!(!p.violated && !c.violated);
        assert_eq!(p.margin, 0.0);
        assert_abs_diff_eq!(c.quantity, 9f64.powi(-4), epsilon = 1e-18);

        // a2²/a3 = |3x - 1| / 6 for Werner d = 3
        let (p, _) = theorem1(&states::werner(3, -0.5).unwrap(), TOL).unwrap();
        assert!(p.violated);
        let m = moments_of_state(&states::werner(3, -0.5).unwrap(), false).unwrap();
        assert_abs_diff_eq!(m.get(2) * m.get(2) / m.get(3), 5.0 / 12.0, epsilon = 1e-12);
        let (p, _) = theorem1(&states::werner(3, 0.0).unwrap(), TOL).unwrap();
        assert!(!p.violated);
    }

    #[test]
    fn theorem2_cases() {
        let (p, c) = theorem2(&states::maximally_mixed(&[2, 2]).unwrap(), &opts()).unwrap();
        assert!(!p.violated && !c.violated);

        let with_hk = Options { include_hk: true, ..opts() };
        let (p, _) = theorem2(&states::maximally_mixed(&[2, 2]).unwrap(), &with_hk).unwrap();
        let h1 = p.detail.iter().find(|d| d.label == "H1").unwrap();
        // [[9, 1/4], [1/4, 0]] is indefinite; reported but not counted
        assert!(h1.margin > 0.0 && !h1.counted);
        assert!(!p.violated);

        let (p, _) = theorem2(&states::werner(3, -0.5).unwrap(), &opts()).unwrap();
        assert!(p.violated);
        let b1 = p.detail.iter().find(|d| d.label == "B1").unwrap();
        assert!(b1.margin > 0.0);

        let (p, _) = theorem2(&states::ket00(), &opts()).unwrap();
        assert!(!p.violated);
        assert!(p.quantity.abs() < 1e-12);
    }

    #[test]
    fn theorem3_cases() {
        let (p, c) = theorem3(&states::maximally_mixed(&[2, 2, 2]).unwrap(), &opts()).unwrap();
        assert!(!p.violated && !c.violated);

        let (p, c) = theorem3(&states::ghz(3).unwrap(), &opts()).unwrap();
        assert!(c.violated);
        assert_eq!(c.detail.len(), 3);
        for d in &c.detail {
            assert!(d.margin > 0.0);
            assert_abs_diff_eq!(d.quantity, 1.0 / 64.0, epsilon = 1e-12);
            assert_abs_diff_eq!(d.bound, 1.0 / 128.0, epsilon = 1e-10);
        }
        // plain unfoldings carry two singular values √2/8 against the bound 1/8
        assert!(p.violated);
        assert_abs_diff_eq!(p.quantity, 1.0 / 256.0, epsilon = 1e-14);
        assert_abs_diff_eq!(p.bound, 0.125 * 2f64.sqrt() / 128.0, epsilon = 1e-11);

        let mode2 = Options { policy: UnfoldingPolicy::Mode(2), ..opts() };
        assert!(theorem3(&states::ghz(3).unwrap(), &mode2).unwrap().1.violated);
        let bad = Options { policy: UnfoldingPolicy::Mode(4), ..opts() };
        assert!(matches!(theorem3(&states::ghz(3).unwrap(), &bad), Err(Error::ModeOutOfRange { .. })));
    }

    #[test]
    fn trace_norm_cases() {
        let r = dv_criterion(&states::ket00(), TOL).unwrap();
        assert_abs_diff_eq!(r.quantity, 0.25, epsilon = 1e-14);
        assert!(!r.violated);
        let r = dv_criterion(&states::bell(), TOL).unwrap();
        assert_abs_diff_eq!(r.quantity, 0.75, epsilon = 1e-14);
        assert!(r.violated);
        let r = li_criterion(&states::maximally_mixed(&[3, 3]).unwrap(), TOL).unwrap();
        assert_abs_diff_eq!(r.quantity, 1.0 / 9.0, epsilon = 1e-14);
        assert!(!r.violated);
    }

    #[test]
    fn baselines() {
        let ppt = ppt_criterion(&states::bell(), TOL).unwrap();
        assert!(ppt.violated);
        assert_abs_diff_eq!(ppt.margin, 0.5 - TOL, epsilon = 1e-12);
        let ccnr = ccnr_criterion(&states::bell(), TOL).unwrap();
        assert!(ccnr.violated);
        assert_abs_diff_eq!(ccnr.quantity, 2.0, epsilon = 1e-12);
        let mixed = states::maximally_mixed(&[2, 2]).unwrap();
        assert!(!ppt_criterion(&mixed, TOL).unwrap().violated);
        assert!(!ccnr_criterion(&mixed, TOL).unwrap().violated);
        for k in 0..=10 {
            let rho = states::mix_white_noise(&states::tiles_ppt(), k as f64 / 10.0).unwrap();
            assert!(!ppt_criterion(&rho, TOL).unwrap().violated);
        }
    }

    #[test]
    fn evaluate_all_orders_and_flags() {
        let reports = evaluate_all(&states::bell(), &opts());
        let names: Vec<_> = reports.iter().map(|r| r.name).collect();
        assert_eq!(names, CriterionName::BIPARTITE.to_vec());
        for name in [
            CriterionName::Ppt,
            CriterionName::Ccnr,
            CriterionName::Dv,
            CriterionName::Li,
            CriterionName::Thm1Plain,
            CriterionName::Thm1Canonical,
        ] {
            assert!(by_name(&reports, name).violated, "{name}");
        }
        assert!(evaluate_all(&states::maximally_mixed(&[2, 2]).unwrap(), &opts()).iter().all(|r| !r.violated));

        let multi = evaluate_all(&states::ghz(3).unwrap(), &opts());
        assert_eq!(multi.iter().map(|r| r.name).collect::<Vec<_>>(), CriterionName::MULTIPARTITE.to_vec());
        assert!(multi.iter().all(|r| r.error.is_none()));

        let forced = evaluate_selected(&states::ghz(3).unwrap(), &[CriterionName::Ppt, CriterionName::Dv], &opts());
        assert!(forced[0].error.is_some() && !forced[0].violated);
        assert!(forced[1].error.is_none());
    }

    #[test]
    fn report_invariant() {
        let mut rng = states::seeded_rng(3);
        for _ in 0..10 {
            let rho = states::random_density(&mut rng, &[2, 3]).unwrap();
            for r in evaluate_all(&rho, &opts()) {
                assert_eq!(r.violated, r.margin > 0.0);
                assert!(r.quantity.is_finite() && r.bound.is_finite());
                assert_abs_diff_eq!(r.margin, r.quantity - r.bound, epsilon = 0.0);
            }
        }
    }
}
