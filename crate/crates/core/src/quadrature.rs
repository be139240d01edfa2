//! Globally adaptive composite Gauss-Legendre quadrature.
//!
//! Every panel is integrated with the 5-point rule on the whole panel and on
//! its two halves; the difference is the panel's error estimate. The panel
//! with the largest estimate is bisected until the summed estimate meets
//! `max(abs_tol, rel_tol·|value|)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::ladder::LadderTable;
use crate::special_fn::z_function_unchecked;

const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Hard cap on panels kept alive by one integration.
const MAX_PANELS: usize = 200_000;

/// Grid step tied to the local spacing of zeta zeros.
///
/// h(t) = min(max_step, 2π / (samples_per_gap · ln(t/2π))); with the
/// defaults this is min(0.05, π / (4 ln(t/2π))).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct StepPolicy {
    pub max_step: f64,
    pub samples_per_gap: f64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy {
            max_step: 0.05,
            samples_per_gap: 8.0,
        }
    }
}

impl StepPolicy {
    pub fn step_at(&self, t: f64) -> f64 {
        let log = (t / (2.0 * PI)).ln();
        if log <= 0.0 {
            return self.max_step;
        }
        self.max_step.min(2.0 * PI / (self.samples_per_gap * log))
    }

    pub fn describe(&self) -> String {
        format!(
            "min({}, 2pi/({} ln(t/2pi)))",
            self.max_step, self.samples_per_gap
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    pub step: StepPolicy,
}

impl Default for QuadratureConfig {
    /// Tolerances for smooth kernel integrals.
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-9,
            rel_tol: 0.0,
            max_depth: 40,
            step: StepPolicy::default(),
        }
    }
}

impl QuadratureConfig {
    /// Tolerances for integrals weighted by Z² or Z̃².
    pub fn weighted() -> Self {
        QuadratureConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-6,
            ..Self::default()
        }
    }

    pub fn with_abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol >= 0.0) {
            return Err(domain!(
                "quadrature tolerances must satisfy abs_tol > 0, rel_tol >= 0 (got {}, {})",
                self.abs_tol,
                self.rel_tol
            ));
        }
        if self.max_depth < 1 {
            return Err(domain!("max_depth must be at least 1"));
        }
        if !(self.step.max_step > 0.0) || !(self.step.samples_per_gap > 0.0) {
            return Err(domain!("step policy parameters must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
}

impl std::ops::Add for IntegralResult {
    type Output = IntegralResult;
    fn add(self, rhs: Self) -> Self {
        IntegralResult {
            value: self.value + rhs.value,
            error_estimate: self.error_estimate + rhs.error_estimate,
            evaluations: self.evaluations + rhs.evaluations,
        }
    }
}

/// Fixed 5-point Gauss-Legendre rule on [a, b].
pub fn gauss_legendre_5<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    for (x, w) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

/// Nodes of the 5-point rule on [0, h], in increasing order.
pub fn gauss_legendre_5_nodes(h: f64) -> [f64; 5] {
    GL5_NODES.map(|x| 0.5 * h * (1.0 + x))
}

/// Weights of the 5-point rule on [0, h].
pub fn gauss_legendre_5_weights(h: f64) -> [f64; 5] {
    GL5_WEIGHTS.map(|w| 0.5 * h * w)
}

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    roundoff: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn eval_panel<F: FnMut(f64) -> f64>(
    f: &mut F,
    lo: f64,
    hi: f64,
    depth: u32,
    evals: &mut u64,
) -> Panel {
    let mid = 0.5 * (lo + hi);
    let mut abs_sum = 0.0;
    let mut rule = |a: f64, b: f64, abs_sum: &mut f64| {
        let half = 0.5 * (b - a);
        let c = 0.5 * (a + b);
        let mut s = 0.0;
        for (x, w) in GL5_NODES.iter().zip(GL5_WEIGHTS.iter()) {
            let v = f(c + half * x);
            s += w * v;
            *abs_sum += (w * v * half).abs();
        }
        s * half
    };
    let mut ignored = 0.0;
    let coarse = rule(lo, hi, &mut ignored);
    let fine = rule(lo, mid, &mut abs_sum) + rule(mid, hi, &mut abs_sum);
    *evals += 15;
    let roundoff = 50.0 * f64::EPSILON * abs_sum;
    Panel {
        lo,
        hi,
        value: fine,
        error: (fine - coarse).abs().max(roundoff),
        roundoff,
        depth,
    }
}

/// ∫ f over [lo, hi].
pub fn integrate<F: FnMut(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    integrate_with_breaks(f, &[lo, hi], cfg)
}

/// ∫ f over [breaks[0], breaks[last]] with initial panels at the given breakpoints.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    mut f: F,
    breaks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    cfg.validate()?;
    if breaks.len() < 2 {
        return Err(domain!("need at least two breakpoints"));
    }
    if breaks.iter().any(|b| !b.is_finite()) {
        return Err(domain!("integration limits must be finite"));
    }
    if breaks.windows(2).any(|w| w[1] < w[0]) {
        return Err(domain!(
            "integration limits must be nondecreasing: {breaks:?}"
        ));
    }
    let mut evals = 0;
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(eval_panel(&mut f, w[0], w[1], 0, &mut evals));
        }
    }
    if heap.is_empty() {
        return Ok(IntegralResult::default());
    }
    let mut running_value: f64 = heap.iter().map(|p| p.value).sum();
    let mut running_error: f64 = heap.iter().map(|p| p.error).sum();
    let mut running_roundoff: f64 = heap.iter().map(|p| p.roundoff).sum();
    loop {
        // a cancelling integrand can leave only rounding noise above abs_tol
        let tol = cfg.abs_tol.max(cfg.rel_tol * running_value.abs());
        if running_error <= tol.max(2.0 * running_roundoff) {
            let (value, error, roundoff) = totals(&heap);
            if error <= tol.max(2.0 * roundoff) {
                return Ok(IntegralResult {
                    value,
                    error_estimate: error,
                    evaluations: evals,
                });
            }
            running_value = value;
            running_error = error;
            running_roundoff = roundoff;
        }
        let worst = heap.pop().expect("heap is nonempty");
        let mid = 0.5 * (worst.lo + worst.hi);
        let splittable = worst.depth < cfg.max_depth && mid > worst.lo && mid < worst.hi;
        if !splittable || heap.len() + 2 > MAX_PANELS {
            return Err(Error::Convergence(format!(
                "quadrature stalled on [{}, {}] at depth {}: error estimate {running_error:e} > tolerance {tol:e}",
                worst.lo, worst.hi, worst.depth
            )));
        }
        let left = eval_panel(&mut f, worst.lo, mid, worst.depth + 1, &mut evals);
        let right = eval_panel(&mut f, mid, worst.hi, worst.depth + 1, &mut evals);
        running_value += left.value + right.value - worst.value;
        running_error += left.error + right.error - worst.error;
        running_roundoff += left.roundoff + right.roundoff - worst.roundoff;
        heap.push(left);
        heap.push(right);
    }
}

/// Measure paired with f(φ₁(t)) in ladder integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub enum LadderMeasure {
    /// Z̃²(t) dt, the ladder's own derivative.
    #[default]
    Ztilde,
    /// |ζ(½+it)|² dt.
    ZetaSq,
}

/// ∫ f(φ₁(t)) Z̃²(t) dt over [t_lo, t_hi].
pub fn integrate_ladder_weighted<F: FnMut(f64) -> f64>(
    table: &LadderTable,
    f: F,
    t_lo: f64,
    t_hi: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    integrate_ladder(table, f, t_lo, t_hi, LadderMeasure::Ztilde, cfg)
}

/// ∫ f(φ₁(t)) dμ(t) over [t_lo, t_hi], with breakpoints at the table's cells.
pub fn integrate_ladder<F: FnMut(f64) -> f64>(
    table: &LadderTable,
    mut f: F,
    t_lo: f64,
    t_hi: f64,
    measure: LadderMeasure,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    if t_hi < t_lo {
        return Err(domain!("integration limits reversed: [{t_lo}, {t_hi}]"));
    }
    let segments = table.segments(t_lo, t_hi)?;
    if segments.is_empty() {
        return Ok(IntegralResult::default());
    }
    let mut breaks: Vec<f64> = segments.iter().map(|s| s.lo).collect();
    breaks.push(t_hi);
    let weight = table.weight();
    integrate_with_breaks(
        |t| {
            let k = segments.partition_point(|s| s.lo <= t).max(1) - 1;
            let phi = table.phi_in_segment(&segments[k], t);
            let z = z_function_unchecked(t);
            let w = match measure {
                LadderMeasure::Ztilde => z * z / weight.denominator(t),
                LadderMeasure::ZetaSq => z * z,
            };
            f(phi) * w
        },
        &breaks,
        cfg,
    )
}

// Fixed-order reduction so results do not depend on heap layout.
fn totals(heap: &BinaryHeap<Panel>) -> (f64, f64, f64) {
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut value = 0.0;
    let mut comp = 0.0;
    let mut error = 0.0;
    let mut roundoff = 0.0;
    for p in panels {
        // Neumaier summation
        let t = value + p.value;
        if value.abs() >= p.value.abs() {
            comp += (value - t) + p.value;
        } else {
            comp += (p.value - t) + value;
        }
        value = t;
        error += p.error;
        roundoff += p.roundoff;
    }
    (value + comp, error, roundoff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_and_cosine() {
        let cfg = QuadratureConfig::default();
        let r = integrate(|_| 1.0, 0.0, PI, &cfg).unwrap();
        assert!((r.value - PI).abs() < 1e-12);
        let r = integrate(f64::cos, 0.0, PI, &cfg).unwrap();
        assert!(r.value.abs() < 1e-12);
        assert!(r.error_estimate >= 0.0);
    }

    #[test]
    fn empty_interval_is_zero() {
        let r = integrate(|x| x * x, 2.0, 2.0, &QuadratureConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.evaluations, 0);
    }

    #[test]
    fn reversed_limits_rejected() {
        assert!(matches!(
            integrate(|x| x, 1.0, 0.0, &QuadratureConfig::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn endpoint_singularity_converges() {
        // ∫₀¹ ln x dx = −1
        let cfg = QuadratureConfig::default().with_abs_tol(1e-10);
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, &cfg).unwrap();
        assert!((r.value + 1.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn depth_exhaustion_reports_convergence_error() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-14,
            max_depth: 2,
            ..QuadratureConfig::default()
        };
        let r = integrate(|x: f64| (1.0 / x).sin(), 1e-3, 1.0, &cfg);
        assert!(matches!(r, Err(Error::Convergence(_))));
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = QuadratureConfig {
            abs_tol: 0.0,
            ..QuadratureConfig::default()
        };
        assert!(integrate(|x| x, 0.0, 1.0, &cfg).is_err());
    }

    #[test]
    fn step_policy_defaults() {
        let p = StepPolicy::default();
        assert_eq!(p.step_at(1.0), 0.05);
        assert_eq!(p.step_at(1.0e6), 0.05);
        let t = 1.0e9;
        assert!((p.step_at(t) - PI / (4.0 * (t / (2.0 * PI)).ln())).abs() < 1e-15);
    }

    #[test]
    fn gl5_exact_for_degree_nine() {
        let v = gauss_legendre_5(|x: f64| x.powi(9) + x.powi(4), 0.0, 2.0);
        let exact = 2f64.powi(10) / 10.0 + 2f64.powi(5) / 5.0;
        assert!((v - exact).abs() < 1e-11);
        let nodes = gauss_legendre_5_nodes(2.0);
        let weights = gauss_legendre_5_weights(2.0);
        let v2: f64 = nodes
            .iter()
            .zip(weights)
            .map(|(x, w)| w * (x.powi(9) + x.powi(4)))
            .sum();
        assert!((v - v2).abs() < 1e-11);
    }
}
