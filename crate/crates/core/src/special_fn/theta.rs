use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{domain, Result};

/// Smallest height accepted by [`theta`].
pub const THETA_T_MIN: f64 = 1.0;

/// Above this height the asymptotic θ series is used directly.
const ASYMPTOTIC_FROM: f64 = 30.0;

const LN_PI: f64 = 1.144_729_885_849_400_2;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Riemann-Siegel theta function θ(t) = −(t/2) ln π + Im ln Γ(¼ + it/2).
pub fn theta(t: f64) -> Result<f64> {
    if !(t >= THETA_T_MIN) || !t.is_finite() {
        return Err(domain!("theta requires finite t >= {THETA_T_MIN}, got {t}"));
    }
    Ok(theta_unchecked(t))
}

/// θ(t) for any t ≥ 0.
pub(crate) fn theta_unchecked(t: f64) -> f64 {
    if t >= ASYMPTOTIC_FROM {
        theta_asymptotic(t)
    } else {
        -0.5 * t * LN_PI + im_ln_gamma_quarter(t)
    }
}

// (t/2) ln(t/2π) − t/2 − π/8 + Σ c_k / t^(2k−1)
fn theta_asymptotic(t: f64) -> f64 {
    const C: [f64; 5] = [
        1.0 / 48.0,
        7.0 / 5760.0,
        31.0 / 80640.0,
        127.0 / 430080.0,
        511.0 / 1216512.0,
    ];
    let r = t.recip();
    let r2 = r * r;
    let mut tail = 0.0;
    for c in C.iter().rev() {
        tail = tail * r2 + c;
    }
    let half = 0.5 * t;
    // ln(t/2π) split so the dominant term keeps full relative precision
    half * (t.ln() - LN_2 - PI.ln()) - half - PI / 8.0 + tail * r
}

// Im ln Γ(¼ + it/2) by upward recurrence into the Stirling region.
fn im_ln_gamma_quarter(t: f64) -> f64 {
    const SHIFT: usize = 16;
    // B_2k / (2k (2k − 1))
    const STIRLING: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let z = Complex64::new(0.25, 0.5 * t);
    let w = z + SHIFT as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    let ln_gamma_w = (w - 0.5) * w.ln() - w + HALF_LN_2PI + series;
    let correction: f64 = (0..SHIFT).map(|k| (0.5 * t).atan2(0.25 + k as f64)).sum();
    ln_gamma_w.im - correction
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_non_finite_heights() {
        assert!(matches!(theta(0.5), Err(crate::Error::Domain(_))));
        assert!(theta(f64::NAN).is_err());
        assert!(theta(f64::INFINITY).is_err());
        assert!(theta(1.0).is_ok());
    }

    #[test]
    fn branches_agree_at_switch_point() {
        let t = ASYMPTOTIC_FROM;
        let a = theta_asymptotic(t);
        let b = -0.5 * t * LN_PI + im_ln_gamma_quarter(t);
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            theta(100.0).unwrap().to_bits(),
            theta(100.0).unwrap().to_bits()
        );
    }
}
