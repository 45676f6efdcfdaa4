//! Complex special functions backing the model Riemann–Hilbert solution:
//! the Gamma function and the parabolic cylinder function D_a(z), together
//! with residual checks of the identities they must satisfy.

mod gamma;
mod pcf;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use gamma::{gamma_complex, recip_gamma};
pub use pcf::{pcf_d, pcf_d_with_derivative, ASYMPTOTIC_RADIUS, MACLAURIN_RADIUS};

/// Absolute and relative error allowance for special-function values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyBudget {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl AccuracyBudget {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        let valid = abs_tol >= 0.0 && rel_tol >= 0.0 && (abs_tol > 0.0 || rel_tol > 0.0);
        if !valid {
            return Err(Error::InvalidArgument(format!(
                "accuracy budget needs non-negative tolerances, one positive (abs {abs_tol}, rel {rel_tol})"
            )));
        }
        Ok(Self { abs_tol, rel_tol })
    }

    /// Allowed deviation around a value of the given magnitude.
    pub fn allowance(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }

    pub fn admits(&self, value: Complex64, reference: Complex64) -> bool {
        (value - reference).norm() <= self.allowance(reference.norm())
    }
}

impl Default for AccuracyBudget {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
        }
    }
}

/// |g'' + (1/2 - z²/4 + a) g| for g = D_a, with g'' from a central second
/// difference of step h along the real direction.
pub fn weber_residual(a: Complex64, z: Complex64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "difference step must be positive, got {h}"
        )));
    }
    let g0 = pcf_d(a, z)?;
    let gp = pcf_d(a, z + h)?;
    let gm = pcf_d(a, z - h)?;
    let second = (gp - 2.0 * g0 + gm) / (h * h);
    Ok((second + (0.5 - z * z / 4.0 + a) * g0).norm())
}

/// Residuals of the derivative recurrence
/// `D_a'(z) + (z/2) D_a(z) - a D_{a-1}(z) = 0`
/// and of the connection formula
/// `D_{a-1}(z) = Γ(a)/√(2π) [e^{iπ(a-1)/2} D_{-a}(iz) + e^{-iπ(a-1)/2} D_{-a}(-iz)]`.
pub fn pcf_identities_residual(a: Complex64, z: Complex64) -> Result<(f64, f64)> {
    let i = Complex64::i();
    let (d, dd) = pcf_d_with_derivative(a, z)?;
    let d_lower = pcf_d(a - 1.0, z)?;
    let recurrence = (dd + z / 2.0 * d - a * d_lower).norm();

    let prefactor = gamma_complex(a)? / (2.0 * PI).sqrt();
    let phase = (i * PI / 2.0 * (a - 1.0)).exp();
    let rhs = prefactor * (phase * pcf_d(-a, i * z)? + pcf_d(-a, -i * z)? / phase);
    let connection = (d_lower - rhs).norm();
    Ok((recurrence, connection))
}
