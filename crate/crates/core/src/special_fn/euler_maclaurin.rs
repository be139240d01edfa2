//! Direct Euler-Maclaurin summation of ζ(½ + it) for small heights.

use num_complex::Complex64;

// B_2k / (2k)!
const BERNOULLI_OVER_FACTORIAL: [f64; 14] = [
    8.333_333_333_333_333e-2,
    -1.388_888_888_888_889e-3,
    3.306_878_306_878_307e-5,
    -8.267_195_767_195_768e-7,
    2.087_675_698_786_81e-8,
    -5.284_190_138_687_493e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_582_7e-13,
    8.586_062_056_277_845e-15,
    -2.174_868_698_558_062e-16,
    5.509_002_828_360_229_5e-18,
    -1.395_446_468_581_252_2e-19,
    3.534_707_039_629_467e-21,
    -8.953_517_427_037_546e-23,
];

/// ζ(½ + it) by Euler-Maclaurin with N ≈ t/2 + 15 explicit terms.
pub(crate) fn zeta_critical(t: f64) -> Complex64 {
    let s = Complex64::new(0.5, t);
    let n_terms = (0.5 * t).ceil() as usize + 15;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..n_terms {
        sum += n_pow_minus_s(n as f64, t);
    }
    let big_n = n_terms as f64;
    let n_minus_s = n_pow_minus_s(big_n, t);
    sum += n_minus_s * big_n / (s - 1.0);
    sum += n_minus_s * 0.5;

    // B_2k/(2k)! · s(s+1)…(s+2k−2) · N^(−s−2k+1)
    let inv_n2 = 1.0 / (big_n * big_n);
    let mut rising = s;
    let mut power = n_minus_s / big_n;
    for (k, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = rising * power * *coeff;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
        let j = 2.0 * (k as f64 + 1.0);
        rising *= (s + (j - 1.0)) * (s + j);
        power *= inv_n2;
    }
    sum
}

// n^(−½ − it)
fn n_pow_minus_s(n: f64, t: f64) -> Complex64 {
    let (sin, cos) = (t * n.ln()).sin_cos();
    Complex64::new(cos, -sin) / n.sqrt()
}
