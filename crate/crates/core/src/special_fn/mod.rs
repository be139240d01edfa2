//! θ(t), Z(t) and |ζ(½ + it)|² on the critical line.
//!
//! Below [`RS_FROM`] the zeta value comes from Euler-Maclaurin summation and
//! Z = Re(e^{iθ} ζ). From [`RS_FROM`] upward the Riemann-Siegel formula with
//! the C₀…C₄ corrections is used; its truncation error there is below 10⁻⁸.

mod euler_maclaurin;
mod riemann_siegel;
#[allow(clippy::excessive_precision, clippy::unreadable_literal)]
mod rs_coeffs;
mod sweep;
mod theta;

use num_complex::Complex64;

use crate::error::{domain, Result};

pub use sweep::ZSweep;
pub use theta::{theta, THETA_T_MIN};

/// Switch from Euler-Maclaurin to Riemann-Siegel.
pub const RS_FROM: f64 = 200.0;

/// Smallest height accepted by [`z_function`].
pub const Z_T_MIN: f64 = 0.0;

/// A height on the critical line together with θ and Z there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalLinePoint {
    pub t: f64,
    pub theta: f64,
    pub z: f64,
}

impl CriticalLinePoint {
    pub fn at(t: f64) -> Result<Self> {
        Ok(CriticalLinePoint {
            t,
            theta: theta(t)?,
            z: z_function(t)?,
        })
    }

    /// ζ(½ + it) = e^{−iθ} Z.
    pub fn zeta(&self) -> Complex64 {
        Complex64::from_polar(self.z, -self.theta)
    }
}

fn check_z_domain(t: f64) -> Result<()> {
    if !(Z_T_MIN..=crate::T_MAX * 1.1).contains(&t) {
        return Err(domain!(
            "Z(t) is supported for {Z_T_MIN} <= t <= {:e}, got {t}",
            crate::T_MAX * 1.1
        ));
    }
    Ok(())
}

/// Riemann-Siegel Z function.
pub fn z_function(t: f64) -> Result<f64> {
    check_z_domain(t)?;
    Ok(z_function_unchecked(t))
}

/// |ζ(½ + it)|², computed as Z(t)².
pub fn zeta_sq(t: f64) -> Result<f64> {
    let z = z_function(t)?;
    Ok(z * z)
}

pub fn z_function_unchecked(t: f64) -> f64 {
    if t >= RS_FROM {
        riemann_siegel::z_riemann_siegel(t)
    } else {
        let zeta = euler_maclaurin::zeta_critical(t);
        let (sin, cos) = theta::theta_unchecked(t).sin_cos();
        cos * zeta.re - sin * zeta.im
    }
}
