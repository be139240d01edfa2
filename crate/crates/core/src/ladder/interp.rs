//! Monotone piecewise-cubic Hermite interpolation (Fritsch-Carlson).

/// Shape-preserving cubic through strictly increasing abscissae.
///
/// Slopes start from the three-point estimate and are limited so that the
/// interpolant is monotone on every interval where the data are; intervals
/// where limiting cannot guarantee that fall back to linear interpolation.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
    linear: Vec<bool>,
}

impl MonotoneCubic {
    /// Panics if fewer than two points are given or `xs` is not strictly increasing.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert!(
            xs.len() >= 2 && xs.len() == ys.len(),
            "need at least two points"
        );
        assert!(
            xs.windows(2).all(|w| w[1] > w[0]),
            "abscissae must increase"
        );
        let n = xs.len();
        let secant: Vec<f64> = (0..n - 1)
            .map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]))
            .collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = secant[0];
        slopes[n - 1] = secant[n - 2];
        for i in 1..n - 1 {
            slopes[i] = if secant[i - 1] * secant[i] <= 0.0 {
                0.0
            } else {
                0.5 * (secant[i - 1] + secant[i])
            };
        }
        let mut linear = vec![false; n - 1];
        for i in 0..n - 1 {
            let d = secant[i];
            if d == 0.0 {
                slopes[i] = 0.0;
                slopes[i + 1] = 0.0;
                continue;
            }
            let alpha = slopes[i] / d;
            let beta = slopes[i + 1] / d;
            if alpha < 0.0 || beta < 0.0 {
                linear[i] = true;
                continue;
            }
            let r = alpha.hypot(beta);
            if r > 3.0 {
                let tau = 3.0 / r;
                slopes[i] = tau * alpha * d;
                slopes[i + 1] = tau * beta * d;
            }
        }
        MonotoneCubic {
            xs,
            ys,
            slopes,
            linear,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    /// Value at x, clamped to the end values outside the domain.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = self.xs.partition_point(|&v| v <= x) - 1;
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let h = x1 - x0;
        let s = (x - x0) / h;
        if self.linear[i] {
            return y0 + s * (y1 - y0);
        }
        let (m0, m1) = (self.slopes[i] * h, self.slopes[i + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1
    }
}
