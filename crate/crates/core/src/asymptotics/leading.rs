use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use super::AsymptoticContext;
use crate::error::{Error, Result};
use crate::scattering::Row2;
use crate::specfun::gamma_complex;

/// Agreement required between the two evaluation routes.
const ROUTE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingOrder {
    pub u_as_over_sqrt_t: Complex64,
    pub u_as: Complex64,
    /// ln t / t, the size of the neglected remainder.
    pub error_scale: f64,
}

/// ln(192 t k0³), the real log of the (positive) scaling base.
fn log_base(ctx: &AsymptoticContext) -> f64 {
    (192.0 * ctx.t() * ctx.k0().powi(3)).ln()
}

/// η = (192tk0³)^{iν/2} e^{8itk0³ + χ(k0)} and
/// η̂ = (192tk0³)^{−iν/2} e^{−8itk0³ + χ(−k0)}.
pub fn eta_factors(ctx: &AsymptoticContext) -> (Complex64, Complex64) {
    let lb = log_base(ctx);
    let ph = 8.0 * ctx.t() * ctx.k0().powi(3);
    let nu = ctx.nu();
    let eta = (Complex64::new(0.0, 0.5 * nu * lb + ph) + ctx.chi_plus()).exp();
    let eta_hat = (Complex64::new(0.0, -0.5 * nu * lb - ph) + ctx.chi_minus()).exp();
    (eta, eta_hat)
}

/// β^X = νΓ(−iν) e^{iπ/4 − πν/2} ρ(k0)/√(2π) and β^Y = swap(conj β^X).
/// Both vanish when ρ(k0) = 0 (the only way ν = 0 arises).
pub fn beta_factors(ctx: &AsymptoticContext) -> Result<(Row2, Row2)> {
    beta_from(ctx.nu(), &ctx.rho_plus())
}

pub(crate) fn beta_from(nu: f64, rho: &Row2) -> Result<(Row2, Row2)> {
    if *rho == Row2::zeros() {
        return Ok((Row2::zeros(), Row2::zeros()));
    }
    let g = gamma_complex(Complex64::new(0.0, -nu))?;
    let scale = nu * g * Complex64::new(-FRAC_PI_2 * nu, FRAC_PI_4).exp() / (2.0 * PI).sqrt();
    let bx = rho * scale;
    let by = Row2::new(bx[1].conj(), bx[0].conj());
    Ok((bx, by))
}

/// u_as evaluated twice: from the closed formula in terms of s_{ij}(k0), and
/// from the vector 2i(−iη²β^X − iη̂²β^Y)/√(48tk0) = (ū, u)/√t·… whose first
/// entry must be the conjugate of the second. Returns the closed formula.
pub fn u_leading(ctx: &AsymptoticContext, rho_raw: &Row2) -> Result<LeadingOrder> {
    let t = ctx.t();
    let error_scale = t.ln() / t;
    if *rho_raw == Row2::zeros() && ctx.rho_plus() == Row2::zeros() {
        return Ok(LeadingOrder {
            u_as_over_sqrt_t: Complex64::new(0.0, 0.0),
            u_as: Complex64::new(0.0, 0.0),
            error_scale,
        });
    }
    let nu = ctx.nu();
    let k0 = ctx.k0();
    let i = Complex64::new(0.0, 1.0);

    // route (a)
    let lb = log_base(ctx);
    let ph = 16.0 * t * k0.powi(3);
    let g_minus = gamma_complex(-i * nu)?;
    let g_plus = gamma_complex(i * nu)?;
    let first =
        (i * (nu * lb + ph + FRAC_PI_4) + 2.0 * ctx.chi_plus()).exp() * g_minus * rho_raw[1];
    let second = (-i * (nu * lb + ph + FRAC_PI_4) + 2.0 * ctx.chi_minus()).exp()
        * g_plus
        * rho_raw[0].conj();
    let u_as = nu * (-FRAC_PI_2 * nu).exp() / (24.0 * PI * k0).sqrt() * (first + second);

    // route (b)
    let (eta, eta_hat) = eta_factors(ctx);
    let (bx, by) = beta_factors(ctx)?;
    let v = (bx * (-i * eta * eta) + by * (-i * eta_hat * eta_hat))
        * (2.0 * i / (48.0 * t * k0).sqrt());
    let u_b = v[1] * t.sqrt();

    let scale = u_as.norm().max(u_b.norm()).max(f64::MIN_POSITIVE);
    let route_gap = (u_as - u_b).norm() / scale;
    let conj_gap = (v[0] - v[1].conj()).norm() / (v[1].norm().max(f64::MIN_POSITIVE));
    let worst = route_gap.max(conj_gap);
    if !(worst <= ROUTE_TOL) {
        return Err(Error::RouteMismatch(worst));
    }
    Ok(LeadingOrder {
        u_as_over_sqrt_t: u_as / t.sqrt(),
        u_as,
        error_scale,
    })
}
