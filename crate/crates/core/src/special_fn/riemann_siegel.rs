//! Riemann-Siegel main sum with the C₀…C₄ correction terms.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::rs_coeffs;
use super::theta::theta_unchecked;

/// Precomputed ln n and n^(−½) for every term the main sum can need below
/// [`crate::T_MAX`].
pub(crate) struct TermTable {
    pub ln_n: Vec<f64>,
    pub inv_sqrt_n: Vec<f64>,
}

pub(crate) fn term_table() -> &'static TermTable {
    static TABLE: OnceLock<TermTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let max_n = main_sum_len(crate::T_MAX * 1.1) + 2;
        // index 0 unused so that entry n belongs to term n
        let ln_n = (0..=max_n).map(|n| (n.max(1) as f64).ln()).collect();
        let inv_sqrt_n = (0..=max_n)
            .map(|n| 1.0 / (n.max(1) as f64).sqrt())
            .collect();
        TermTable { ln_n, inv_sqrt_n }
    })
}

/// N = ⌊√(t/2π)⌋.
#[inline]
pub(crate) fn main_sum_len(t: f64) -> usize {
    (t / (2.0 * PI)).sqrt().floor() as usize
}

pub(crate) fn z_riemann_siegel(t: f64) -> f64 {
    let table = term_table();
    let th = theta_unchecked(t);
    let n = main_sum_len(t);
    let mut acc = [0.0f64; 4];
    let mut k = 1;
    while k + 3 <= n {
        for (lane, a) in acc.iter_mut().enumerate() {
            let m = k + lane;
            *a += table.inv_sqrt_n[m] * (th - t * table.ln_n[m]).cos();
        }
        k += 4;
    }
    while k <= n {
        acc[0] += table.inv_sqrt_n[k] * (th - t * table.ln_n[k]).cos();
        k += 1;
    }
    2.0 * (acc[0] + acc[1] + acc[2] + acc[3]) + correction(t)
}

/// (−1)^(N−1) (t/2π)^(−¼) Σ_k C_k(p) (t/2π)^(−k/2).
pub(crate) fn correction(t: f64) -> f64 {
    let a = (t / (2.0 * PI)).sqrt();
    let n = a.floor();
    let x = a - n - 0.5;
    let inv_a = a.recip();
    let c0 = even_series(&rs_coeffs::C0, x);
    let c1 = odd_series(&rs_coeffs::C1, x);
    let c2 = even_series(&rs_coeffs::C2, x);
    let c3 = odd_series(&rs_coeffs::C3, x);
    let c4 = even_series(&rs_coeffs::C4, x);
    let sum = c0 + inv_a * (c1 + inv_a * (c2 + inv_a * (c3 + inv_a * c4)));
    let sign = if (n as u64) % 2 == 1 { 1.0 } else { -1.0 };
    sign * inv_a.sqrt() * sum
}

// Σ c_{2j} x^{2j}; odd entries are zero by symmetry.
fn even_series(c: &[f64], x: f64) -> f64 {
    let x2 = x * x;
    c.iter().step_by(2).rev().fold(0.0, |acc, &v| acc * x2 + v)
}

// Σ c_{2j+1} x^{2j+1}
fn odd_series(c: &[f64], x: f64) -> f64 {
    let x2 = x * x;
    x * c
        .iter()
        .skip(1)
        .step_by(2)
        .rev()
        .fold(0.0, |acc, &v| acc * x2 + v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_have_expected_parity() {
        for (name, c, odd) in [
            ("C0", &rs_coeffs::C0[..], false),
            ("C1", &rs_coeffs::C1[..], true),
            ("C2", &rs_coeffs::C2[..], false),
            ("C3", &rs_coeffs::C3[..], true),
            ("C4", &rs_coeffs::C4[..], false),
        ] {
            let skip = if odd { 0 } else { 1 };
            assert!(
                c.iter().skip(skip).step_by(2).all(|&v| v == 0.0),
                "{name} has nonzero entries of the wrong parity"
            );
        }
    }

    #[test]
    fn c0_at_midpoint_is_psi_half() {
        // Ψ(½) = −cos(5π/8)
        let expected = -(5.0 * PI / 8.0).cos();
        assert!((even_series(&rs_coeffs::C0, 0.0) - expected).abs() < 1e-15);
    }

    #[test]
    fn term_table_covers_t_max() {
        let table = term_table();
        assert!(table.ln_n.len() > main_sum_len(crate::T_MAX));
        assert_eq!(table.ln_n[1], 0.0);
        assert!((table.inv_sqrt_n[4] - 0.5).abs() < 1e-16);
    }
}
