//! Checks of the ladder integral identities and asymptotics.
//!
//! Every check integrates the kernel K_a(φ₁(t) − T) against a measure over
//! the window [φ₁⁻¹(T), φ₁⁻¹(T + π)] and records the ratio to its target
//! together with the bound C·ln ln T / ln T.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kernel::{kernel_unchecked, tau_a};
use crate::ladder::{LadderOptions, LadderTable};
use crate::primes::consecutive_primes;
use crate::quadrature::{
    integrate, integrate_ladder, IntegralResult, LadderMeasure, QuadratureConfig,
};
use crate::zeros::{zero_pair_at, ZeroPair};

pub const DEFAULT_BOUND_C: f64 = 2.0;
pub const DEFAULT_T_MIN: f64 = 1.0e3;
/// Zero gaps must be below this for the a = 1/gap ≥ 2 branch.
pub const ZERO_GAP_MAX: f64 = 0.5;

/// Kernel samples used for sign and nonnegativity assertions.
const SIGN_SAMPLES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Theorem,
    Homogeneous,
    Scaled,
    LargeA,
    ZeroGap,
    PrimeGap,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Theorem,
        Check::Homogeneous,
        Check::Scaled,
        Check::LargeA,
        Check::ZeroGap,
        Check::PrimeGap,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Check::Theorem => "theorem",
            Check::Homogeneous => "homogeneous",
            Check::Scaled => "scaled",
            Check::LargeA => "large-a",
            Check::ZeroGap => "zero-gap",
            Check::PrimeGap => "prime-gap",
        }
    }

    /// Whether the check takes a kernel parameter from the caller.
    pub fn takes_parameter(self) -> bool {
        !matches!(self, Check::ZeroGap | Check::PrimeGap)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub label: String,
    #[serde(rename = "T")]
    pub t: f64,
    pub a: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub bound: f64,
    pub pass: bool,
    pub evaluations: u64,
    /// Below the configured T_min: reported but not gating.
    #[serde(skip)]
    pub advisory: bool,
}

impl VerificationRecord {
    /// Distance from the target: |ratio| for the homogeneous check, |ratio − 1| otherwise.
    pub fn deviation(&self) -> f64 {
        if self.label == Check::Homogeneous.label() {
            self.ratio.abs()
        } else {
            (self.ratio - 1.0).abs()
        }
    }

    /// Counts toward the exit status.
    pub fn gating(&self) -> bool {
        !self.advisory
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub bound_c: f64,
    pub t_min: f64,
    pub measure: LadderMeasure,
    pub quad: QuadratureConfig,
    pub ladder: LadderOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            bound_c: DEFAULT_BOUND_C,
            t_min: DEFAULT_T_MIN,
            measure: LadderMeasure::ZetaSq,
            quad: QuadratureConfig {
                abs_tol: 1e-12,
                rel_tol: 1e-10,
                ..QuadratureConfig::default()
            },
            ladder: LadderOptions::default(),
        }
    }
}

impl VerifyConfig {
    /// Same configuration with the ladder's own weight Z̃² as the measure.
    pub fn exact(mut self) -> Self {
        self.measure = LadderMeasure::Ztilde;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.bound_c > 0.0 && self.bound_c.is_finite()) {
            return Err(domain!(
                "bound constant must be positive, got {}",
                self.bound_c
            ));
        }
        if !(self.t_min.is_finite() && self.t_min > 0.0) {
            return Err(domain!("t_min must be positive, got {}", self.t_min));
        }
        self.quad.validate()
    }

    /// C · ln ln T / ln T
    pub fn bound(&self, t: f64) -> f64 {
        self.bound_c * t.ln().ln() / t.ln()
    }
}

// Ladder-time limits of the window [T, T + π] and its split at T + τ.
struct Window {
    start: f64,
    split: Option<f64>,
    end: f64,
}

fn window(table: &LadderTable, t: f64, split: Option<f64>) -> Result<Window> {
    if !(t.is_finite() && t > 1.0) {
        return Err(domain!("T must be finite and above 1, got {t}"));
    }
    Ok(Window {
        start: table.phi1_inverse(t)?,
        split: split.map(|s| table.phi1_inverse(t + s)).transpose()?,
        end: table.phi1_inverse(t + PI)?,
    })
}

fn kernel_integral(
    table: &LadderTable,
    t: f64,
    a: f64,
    (lo, hi): (f64, f64),
    norm: f64,
    cfg: &VerifyConfig,
) -> Result<IntegralResult> {
    // φ₁(t) − T carries an absolute error of a few ulp of T, which the kernel
    // amplifies by at most max|K_a′| = 2a/|1 − a²|
    let slope = 2.0 * a / (1.0 - a * a).abs();
    let noise = 16.0 * f64::EPSILON * t.abs() * slope * norm;
    let quad = QuadratureConfig {
        abs_tol: cfg.quad.abs_tol.max(cfg.quad.rel_tol * norm).max(noise),
        ..cfg.quad
    };
    integrate_ladder(
        table,
        |x| kernel_unchecked(a, x - t),
        lo,
        hi,
        cfg.measure,
        &quad,
    )
}

fn measure_integral(
    table: &LadderTable,
    lo: f64,
    hi: f64,
    cfg: &VerifyConfig,
) -> Result<IntegralResult> {
    integrate_ladder(table, |_| 1.0, lo, hi, cfg.measure, &cfg.quad)
}

/// K_a < 0 on (0, τ_a) and K_a > 0 on (τ_a, π), sampled.
pub fn sign_contract_holds(a: f64) -> Result<bool> {
    let ta = tau_a(a)?;
    let ok = (1..SIGN_SAMPLES).all(|k| {
        let s = k as f64 / SIGN_SAMPLES as f64;
        kernel_unchecked(a, s * ta) < 0.0 && kernel_unchecked(a, ta + s * (PI - ta)) > 0.0
    });
    Ok(ok)
}

/// K_a ≥ 0 on [0, π], sampled.
pub fn kernel_nonnegative(a: f64) -> bool {
    (0..=SIGN_SAMPLES).all(|k| kernel_unchecked(a, PI * k as f64 / SIGN_SAMPLES as f64) >= 0.0)
}

/// (∫_T^{T+π} K_a(t − T) dt, ∫_0^π K_a(τ) dτ)
pub fn window_identity(t: f64, a: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    crate::kernel::KernelParams::new(a)?;
    let shifted = integrate(|x| kernel_unchecked(a, x - t), t, t + PI, cfg)?;
    let base = integrate(|x| kernel_unchecked(a, x), 0.0, PI, cfg)?;
    Ok((shifted.value, base.value))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    check: Check,
    t: f64,
    a: f64,
    lhs: f64,
    rhs: f64,
    ratio: f64,
    ok: bool,
    evals: u64,
    cfg: &VerifyConfig,
) -> VerificationRecord {
    let bound = cfg.bound(t);
    let mut rec = VerificationRecord {
        label: check.label().to_string(),
        t,
        a,
        lhs,
        rhs,
        ratio,
        bound,
        pass: false,
        evaluations: evals,
        advisory: t < cfg.t_min,
    };
    rec.pass = ok && rec.deviation().is_finite() && rec.deviation() <= bound;
    rec
}

/// Numerator over (T + τ_a, T + π) against minus the denominator over (T, T + τ_a).
pub fn verify_theorem(
    table: &LadderTable,
    t: f64,
    a: f64,
    cfg: &VerifyConfig,
) -> Result<VerificationRecord> {
    cfg.validate()?;
    if !(a > 0.0 && a < 1.0) {
        return Err(domain!("theorem check needs 0 < a < 1, got {a}"));
    }
    let ta = tau_a(a)?;
    let w = window(table, t, Some(ta))?;
    let split = w.split.expect("split requested");
    let norm = measure_integral(table, w.start, w.end, cfg)?;
    let num = kernel_integral(table, t, a, (split, w.end), norm.value, cfg)?;
    let den = kernel_integral(table, t, a, (w.start, split), norm.value, cfg)?;
    let (lhs, rhs) = (num.value, -den.value);
    let ok = lhs > 0.0 && rhs > 0.0 && sign_contract_holds(a)?;
    let evals = norm.evaluations + num.evaluations + den.evaluations;
    Ok(finish(
        Check::Theorem,
        t,
        a,
        lhs,
        rhs,
        lhs / rhs,
        ok,
        evals,
        cfg,
    ))
}

/// Full-window kernel integral normalised by the window's measure; target 0.
pub fn verify_homogeneous(
    table: &LadderTable,
    t: f64,
    a: f64,
    cfg: &VerifyConfig,
) -> Result<VerificationRecord> {
    cfg.validate()?;
    if !(a > 0.0 && a < 1.0) {
        return Err(domain!("homogeneous check needs 0 < a < 1, got {a}"));
    }
    let w = window(table, t, None)?;
    let norm = measure_integral(table, w.start, w.end, cfg)?;
    let num = kernel_integral(table, t, a, (w.start, w.end), norm.value, cfg)?;
    let ok = norm.value > 0.0;
    Ok(finish(
        Check::Homogeneous,
        t,
        a,
        num.value,
        0.0,
        num.value / norm.value,
        ok,
        num.evaluations + norm.evaluations,
        cfg,
    ))
}

/// ∫ K_b against 2 ln b times the window's measure, b > 1.
pub fn verify_scaled(
    table: &LadderTable,
    t: f64,
    b: f64,
    cfg: &VerifyConfig,
) -> Result<VerificationRecord> {
    cfg.validate()?;
    if !(b > 1.0 && b.is_finite()) || (b - 1.0) < crate::kernel::NEAR_ONE {
        return Err(domain!("scaled check needs b > 1 away from 1, got {b}"));
    }
    let w = window(table, t, None)?;
    let norm = measure_integral(table, w.start, w.end, cfg)?;
    let num = kernel_integral(table, t, b, (w.start, w.end), norm.value, cfg)?;
    let rhs = 2.0 * b.ln() * norm.value;
    Ok(finish(
        Check::Scaled,
        t,
        b,
        num.value,
        rhs,
        num.value / rhs,
        rhs > 0.0,
        num.evaluations + norm.evaluations,
        cfg,
    ))
}

fn large_a_record(
    check: Check,
    table: &LadderTable,
    t: f64,
    a: f64,
    cfg: &VerifyConfig,
) -> Result<VerificationRecord> {
    let w = window(table, t, None)?;
    let norm = measure_integral(table, w.start, w.end, cfg)?;
    let num = kernel_integral(table, t, a, (w.start, w.end), norm.value, cfg)?;
    let rhs = 2.0 * PI * a.ln() * t.ln();
    let ok = kernel_nonnegative(a);
    let evals = norm.evaluations + num.evaluations;
    Ok(finish(
        check,
        t,
        a,
        num.value,
        rhs,
        num.value / rhs,
        ok,
        evals,
        cfg,
    ))
}

/// ∫ K_a against 2π ln a ln T, a ≥ 2.
pub fn verify_large_a(
    table: &LadderTable,
    t: f64,
    a: f64,
    cfg: &VerifyConfig,
) -> Result<VerificationRecord> {
    cfg.validate()?;
    if !(a >= 2.0 && a.is_finite()) {
        return Err(domain!("large-a check needs a >= 2, got {a}"));
    }
    large_a_record(Check::LargeA, table, t, a, cfg)
}

/// Large-a check at T = γ with a = 1/(γ′ − γ) for the first zero pair at or above `height`.
pub fn verify_zero_gap(
    table: &LadderTable,
    height: f64,
    cfg: &VerifyConfig,
) -> Result<VerificationRecord> {
    cfg.validate()?;
    let pair = zero_pair_at(height)?;
    if pair.gap >= ZERO_GAP_MAX {
        return Err(gap_hypothesis_error(&pair));
    }
    large_a_record(Check::ZeroGap, table, pair.gamma, 1.0 / pair.gap, cfg)
}

/// Large-a check at T = p with a = p′ − p for the first prime pair at or above `p_lo`.
pub fn verify_prime_gap(
    table: &LadderTable,
    p_lo: u64,
    cfg: &VerifyConfig,
) -> Result<VerificationRecord> {
    cfg.validate()?;
    let pair = consecutive_primes(p_lo)?;
    if pair.gap() < 2 {
        return Err(domain!(
            "prime gap {} at p = {} is below 2",
            pair.gap(),
            pair.p
        ));
    }
    large_a_record(
        Check::PrimeGap,
        table,
        pair.p as f64,
        pair.gap() as f64,
        cfg,
    )
}

/// Height whose window the check integrates over.
fn target_height(check: Check, t: f64) -> Result<f64> {
    match check {
        Check::ZeroGap => {
            let pair = zero_pair_at(t)?;
            if pair.gap >= ZERO_GAP_MAX {
                return Err(gap_hypothesis_error(&pair));
            }
            Ok(pair.gamma)
        }
        Check::PrimeGap => {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(domain!("prime height must be nonnegative, got {t}"));
            }
            Ok(consecutive_primes(t.ceil() as u64)?.p as f64)
        }
        _ => Ok(t),
    }
}

/// A ladder covering the window at `t`, anchored for the given config.
pub fn local_ladder(t: f64, cfg: &VerifyConfig) -> Result<LadderTable> {
    if !(t.is_finite() && t > 1.0) {
        return Err(domain!("T must be finite and above 1, got {t}"));
    }
    LadderTable::covering(t, t + PI, &cfg.ladder, &cfg.quad)
}

/// Run a check on a freshly built local ladder. `a` is ignored by the
/// zero-gap and prime-gap checks.
pub fn run_check(check: Check, t: f64, a: f64, cfg: &VerifyConfig) -> Result<VerificationRecord> {
    cfg.validate()?;
    let height = target_height(check, t)?;
    let table = local_ladder(height, cfg)?;
    match check {
        Check::Theorem => verify_theorem(&table, t, a, cfg),
        Check::Homogeneous => verify_homogeneous(&table, t, a, cfg),
        Check::Scaled => verify_scaled(&table, t, a, cfg),
        Check::LargeA => verify_large_a(&table, t, a, cfg),
        Check::ZeroGap => verify_zero_gap(&table, t, cfg),
        Check::PrimeGap => verify_prime_gap(&table, t.ceil() as u64, cfg),
    }
}

fn gap_hypothesis_error(pair: &ZeroPair) -> Error {
    domain!(
        "zero gap {} at gamma = {} is not below {ZERO_GAP_MAX}; the a = 1/gap >= 2 hypothesis fails",
        pair.gap,
        pair.gamma
    )
}

/// Cells (T, a) of a sweep in output order: T outer, a inner.
pub fn sweep_cells(check: Check, heights: &[f64], params: &[f64]) -> Vec<(f64, f64)> {
    if check.takes_parameter() {
        heights
            .iter()
            .flat_map(|&t| params.iter().map(move |&a| (t, a)))
            .collect()
    } else {
        heights.iter().map(|&t| (t, f64::NAN)).collect()
    }
}

/// Every cell of the sweep, in input order; per-cell failures are kept in place.
pub fn sweep(
    check: Check,
    heights: &[f64],
    params: &[f64],
    cfg: &VerifyConfig,
) -> Vec<Result<VerificationRecord>> {
    sweep_cells(check, heights, params)
        .into_par_iter()
        .map(|(t, a)| run_check(check, t, a, cfg))
        .collect()
}

/// Least-squares slope of ys against xs.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

/// Slope of ln(deviation) against ln T; ≤ 0 means non-increasing under the fit.
pub fn trend_slope(records: &[VerificationRecord]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.deviation() > 0.0)
        .map(|r| (r.t.ln(), r.deviation().ln()))
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
    least_squares_slope(&xs, &ys)
}

/// Fitted exponent of deviation against ln ln T / ln T.
pub fn bound_exponent(records: &[VerificationRecord]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.deviation() > 0.0)
        .map(|r| ((r.t.ln().ln() / r.t.ln()).ln(), r.deviation().ln()))
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
    least_squares_slope(&xs, &ys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_labels_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.label().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }

    #[test]
    fn slope_of_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        assert!((least_squares_slope(&xs, &ys).unwrap() - 2.0).abs() < 1e-14);
        assert!(least_squares_slope(&[1.0], &[1.0]).is_none());
        assert!(least_squares_slope(&[1.0, 1.0], &[1.0, 2.0]).is_none());
    }

    #[test]
    fn sweep_cells_order() {
        let cells = sweep_cells(Check::Theorem, &[1.0, 2.0], &[0.3, 0.5]);
        assert_eq!(cells, vec![(1.0, 0.3), (1.0, 0.5), (2.0, 0.3), (2.0, 0.5)]);
        assert_eq!(sweep_cells(Check::PrimeGap, &[1.0, 2.0], &[]).len(), 2);
        assert!(sweep(Check::Theorem, &[], &[0.5], &VerifyConfig::default()).is_empty());
    }

    #[test]
    fn theorem_at_ztilde_level_is_exact() {
        let cfg = VerifyConfig::default().exact();
        let rec = run_check(Check::Theorem, 1000.0, 0.5, &cfg).unwrap();
        assert!((rec.ratio - 1.0).abs() < 1e-6, "{rec:?}");
        assert!(!rec.advisory && rec.pass);
    }

    #[test]
    fn advisory_below_t_min() {
        let rec = run_check(Check::Theorem, 500.0, 0.5, &VerifyConfig::default()).unwrap();
        assert!(rec.advisory);
    }

    #[test]
    fn domain_errors() {
        let cfg = VerifyConfig::default();
        assert!(matches!(
            run_check(Check::Theorem, 1e3, 1.5, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            run_check(Check::LargeA, 1e3, 1.5, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            run_check(Check::Scaled, 1e3, 0.5, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            run_check(Check::PrimeGap, 2.0, f64::NAN, &cfg),
            Err(Error::Domain(_))
        ));
    }
}
