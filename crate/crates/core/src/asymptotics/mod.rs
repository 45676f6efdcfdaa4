//! Leading-order long-time behaviour u ≈ u_as/√t along rays x = ζt with
//! ζ ∈ (0, M], built from the reflection data at the stationary points ±k0.

mod context;
mod leading;

pub use context::{AsymptoticConfig, AsymptoticContext, StationaryData};
pub(crate) use leading::beta_from as leading_beta;
pub use leading::{beta_factors, eta_factors, u_leading, LeadingOrder};

use num_complex::Complex64;

use crate::error::{Error, Result};
pub use crate::scattering::phase;

/// (−k0, k0) with k0 = √(ζ/12), the zeros of dΦ/dk.
pub fn stationary_points(zeta: f64) -> Result<(f64, f64)> {
    if !(zeta > 0.0 && zeta.is_finite()) {
        return Err(Error::ZetaOutOfRange {
            zeta,
            max: f64::INFINITY,
        });
    }
    let k0 = (zeta / 12.0).sqrt();
    Ok((-k0, k0))
}

/// Sign of Re Φ(ζ, k), from the factored form Re Φ = k_i(24k_r² − 8k_i² − 2ζ).
pub fn signature_sample(zeta: f64, k: Complex64) -> i8 {
    let re = (24.0 * k.re * k.re - 8.0 * k.im * k.im - 2.0 * zeta) * k.im;
    if re > 0.0 {
        1
    } else if re < 0.0 {
        -1
    } else {
        0
    }
}
