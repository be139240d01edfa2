//! Critical-line zeros of ζ by sign changes of Z on a uniform scan grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, range, Error, Result};
use crate::quadrature::StepPolicy;
use crate::special_fn::z_function_unchecked;

/// Lowest height accepted by the scanner.
pub const ZEROS_T_MIN: f64 = 10.0;

/// Grid intervals scanned per parallel work item.
const WINDOW_POINTS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroPair {
    pub gamma: f64,
    pub gamma_next: f64,
    pub gap: f64,
}

impl ZeroPair {
    pub fn new(gamma: f64, gamma_next: f64) -> Self {
        ZeroPair {
            gamma,
            gamma_next,
            gap: gamma_next - gamma,
        }
    }
}

fn check_range(t_lo: f64, t_hi: f64) -> Result<()> {
    if !(t_lo >= ZEROS_T_MIN && t_lo < t_hi && t_hi <= crate::T_MAX) {
        return Err(domain!(
            "zero scan needs {ZEROS_T_MIN} <= t_lo < t_hi <= {:e}, got [{t_lo}, {t_hi}]",
            crate::T_MAX
        ));
    }
    Ok(())
}

/// Scan step over [t_lo, t_hi]: the ladder step policy, which stays below
/// π / ln(t/2π) everywhere.
pub fn scan_step(t_hi: f64) -> f64 {
    StepPolicy::default().step_at(t_hi.max(ZEROS_T_MIN))
}

/// Sorted zero ordinates in [t_lo, t_hi].
pub fn find_zeros(t_lo: f64, t_hi: f64) -> Result<Vec<f64>> {
    check_range(t_lo, t_hi)?;
    let h = scan_step(t_hi);
    let n = ((t_hi - t_lo) / h).ceil() as usize;
    let grid = |k: usize| if k >= n { t_hi } else { t_lo + k as f64 * h };
    let windows = n.div_ceil(WINDOW_POINTS);
    let found: Vec<Result<Vec<f64>>> = (0..windows)
        .into_par_iter()
        .map(|w| {
            let k0 = w * WINDOW_POINTS;
            let k1 = ((w + 1) * WINDOW_POINTS).min(n);
            let mut out = Vec::new();
            let mut a = grid(k0);
            let mut za = z_function_unchecked(a);
            if w == 0 && za == 0.0 {
                out.push(a);
            }
            for k in k0 + 1..=k1 {
                let b = grid(k);
                let zb = z_function_unchecked(b);
                if zb == 0.0 {
                    out.push(b);
                } else if za * zb < 0.0 {
                    out.push(refine(a, b, za)?);
                }
                a = b;
                za = zb;
            }
            Ok(out)
        })
        .collect();
    let mut zeros = Vec::new();
    for part in found {
        zeros.extend(part?);
    }
    Ok(zeros)
}

// Bisection on a sign-change bracket down to 1e-10 or adjacent floats.
fn refine(mut lo: f64, mut hi: f64, mut z_lo: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-10 || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let z = z_function_unchecked(mid);
        if z == 0.0 {
            return Ok(mid);
        }
        if !z.is_finite() {
            break;
        }
        if (z < 0.0) == (z_lo < 0.0) {
            lo = mid;
            z_lo = z;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence(format!(
        "zero bracket [{lo}, {hi}] failed to refine"
    )))
}

/// First pair of consecutive zeros with γ ≥ t.
pub fn zero_pair_at(t: f64) -> Result<ZeroPair> {
    if !(ZEROS_T_MIN..crate::T_MAX).contains(&t) {
        return Err(range!(
            "zero pairs are available for {ZEROS_T_MIN} <= t < {:e}, got {t}",
            crate::T_MAX
        ));
    }
    let mut width = 4.0;
    loop {
        let hi = (t + width).min(crate::T_MAX);
        let zeros = find_zeros(t, hi)?;
        if zeros.len() >= 2 {
            return Ok(ZeroPair::new(zeros[0], zeros[1]));
        }
        if hi >= crate::T_MAX {
            return Err(range!("fewer than two zeros in [{t}, {hi}]"));
        }
        width *= 2.0;
    }
}

/// First consecutive pair in [t_lo, t_hi] with gap < `max_gap`.
pub fn find_small_gap(t_lo: f64, t_hi: f64, max_gap: f64) -> Result<Option<ZeroPair>> {
    check_range(t_lo, t_hi)?;
    let chunk = 200.0;
    let mut lo = t_lo;
    let mut prev: Option<f64> = None;
    while lo < t_hi {
        let hi = (lo + chunk).min(t_hi);
        for g in find_zeros(lo, hi)? {
            if let Some(p) = prev {
                if g > p && g - p < max_gap {
                    return Ok(Some(ZeroPair::new(p, g)));
                }
            }
            prev = Some(g);
        }
        lo = hi;
    }
    Ok(None)
}
