//! The Poisson-Lobachevsky kernel K_a(τ) = ln(1 + a² − 2a cos τ).

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::quadrature::{integrate_with_breaks, QuadratureConfig};

/// Values of `a` closer than this to 1 are rejected with a dedicated message.
pub const NEAR_ONE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Regime {
    /// 0 < a < 1: the kernel integrates to zero over [0, π].
    Sub,
    /// 1 < a < 2
    Super,
    /// a ≥ 2: the kernel is nonnegative.
    Large,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub a: f64,
    /// arccos(a/2), defined for 0 < a ≤ 2.
    pub tau_a: Option<f64>,
    pub regime: Regime,
}

impl KernelParams {
    pub fn new(a: f64) -> Result<Self> {
        check_a(a)?;
        let regime = if a < 1.0 {
            Regime::Sub
        } else if a < 2.0 {
            Regime::Super
        } else {
            Regime::Large
        };
        Ok(KernelParams {
            a,
            tau_a: tau_a(a).ok(),
            regime,
        })
    }

    /// b = 1/a.
    pub fn reciprocal(&self) -> f64 {
        self.a.recip()
    }

    pub fn eval(&self, tau: f64) -> f64 {
        kernel_unchecked(self.a, tau)
    }
}

fn check_a(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain!(
            "kernel parameter must be finite and positive, got {a}"
        ));
    }
    if a == 1.0 {
        return Err(domain!(
            "kernel parameter a = 1 is excluded: ln(2 - 2cos tau) diverges at tau = 0"
        ));
    }
    if (a - 1.0).abs() < NEAR_ONE {
        return Err(domain!(
            "kernel parameter a = {a} is within {NEAR_ONE:e} of the excluded value 1; \
             the kernel is nearly singular at tau = 0"
        ));
    }
    Ok(())
}

/// K_a(τ) for a > 0, a ≠ 1, τ ∈ [−π, π].
pub fn kernel(a: f64, tau: f64) -> Result<f64> {
    check_a(a)?;
    if !(tau.abs() <= PI) {
        return Err(domain!("kernel argument must lie in [-pi, pi], got {tau}"));
    }
    Ok(kernel_unchecked(a, tau))
}

/// K_a(τ) without argument checks; 2π-periodic and even in τ.
#[inline]
pub fn kernel_unchecked(a: f64, tau: f64) -> f64 {
    let c = tau.abs();
    // 1 + a² − 2a cos τ = (1 − a)² + 4a sin²(τ/2): a sum of nonnegative terms
    let s = (0.5 * c).sin();
    let d = 1.0 - a;
    let arg = d.mul_add(d, 4.0 * a * s * s);
    if !(0.5..2.0).contains(&arg) {
        return arg.ln();
    }
    // Near the zero of K use arg − 1 = a(a − 2cos τ) with
    // 1 − 2cos τ = 4 sin((τ + π/3)/2) sin((τ − π/3)/2), and π/3 split in two
    // words so that τ − π/3 keeps full relative precision.
    const PI_3_HI: f64 = std::f64::consts::FRAC_PI_3;
    const PI_3_LO: f64 = -1.072_081_766_451_091e-16;
    let below = (c - PI_3_HI) - PI_3_LO;
    let above = c + PI_3_HI;
    let q = (a - 1.0) + 4.0 * (0.5 * above).sin() * (0.5 * below).sin();
    (a * q).ln_1p()
}

/// τ_a = arccos(a/2) for 0 < a ≤ 2, the zero of K_a on [0, π].
pub fn tau_a(a: f64) -> Result<f64> {
    if !(a > 0.0 && a <= 2.0) {
        return Err(domain!("tau_a requires 0 < a <= 2, got {a}"));
    }
    Ok((0.5 * a).acos())
}

/// ∫₀^π K_a: 0 for 0 < a < 1 and 2π ln a for a > 1.
pub fn poisson_integral_closed(a: f64) -> Result<f64> {
    check_a(a)?;
    Ok(if a < 1.0 { 0.0 } else { 2.0 * PI * a.ln() })
}

/// ∫₀^π K_a by quadrature, with a breakpoint at τ_a when it exists.
pub fn poisson_integral_numeric(
    a: f64,
    cfg: &QuadratureConfig,
) -> Result<crate::quadrature::IntegralResult> {
    let params = KernelParams::new(a)?;
    let breaks = match params.tau_a {
        Some(t) if t > 0.0 => vec![0.0, t, PI],
        _ => vec![0.0, PI],
    };
    integrate_with_breaks(|x| params.eval(x), &breaks, cfg)
}

/// (∫_{τ_a}^π K_a, ∫₀^{τ_a} K_a) for 0 < a < 1. The two parts cancel.
pub fn kernel_split_check(a: f64, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    if !(a > 0.0 && a < 1.0) {
        return Err(domain!("kernel_split_check requires 0 < a < 1, got {a}"));
    }
    let params = KernelParams::new(a)?;
    let tau = params.tau_a.expect("tau_a exists for a < 1");
    // split the tolerance between the two halves
    let half = QuadratureConfig {
        abs_tol: 0.5 * cfg.abs_tol,
        ..*cfg
    };
    let pos = integrate_with_breaks(|x| params.eval(x), &[tau, PI], &half)?;
    let neg = integrate_with_breaks(|x| params.eval(x), &[0.0, tau], &half)?;
    Ok((pos.value, neg.value))
}
