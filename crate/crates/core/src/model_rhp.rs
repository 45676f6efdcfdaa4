//! Parabolic-cylinder solution Ψ of the model problem dΨ/dz = (iz/2·σ + β)Ψ
//! near a stationary point, in the two sectors arg z ∈ (−3π/4, −π/4) and
//! (−π/4, π/4), together with executable checks of its defining relations.
//!
//! With β = [[0, β12], [β21, 0]], β12 = −β21†, the order is a = iβ21β12 = −iν.
//! Only the scalar and row combinations Ψ22, β21Ψ11, Ψ21 and β21Ψ12 are built.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::asymptotics::leading_beta;
use crate::error::{Error, Result};
use crate::scattering::{nu_of, Row2};
use crate::specfun::pcf_d;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParameters {
    pub nu: f64,
    pub rho0: Row2,
}

impl ModelParameters {
    pub fn new(nu: f64, rho0: Row2) -> Result<Self> {
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "nu must be non-negative, got {nu}"
            )));
        }
        Ok(Self { nu, rho0 })
    }

    /// ν derived from ρ0.
    pub fn consistent(rho0: Row2) -> Self {
        Self {
            nu: nu_of(&rho0),
            rho0,
        }
    }

    /// ρ0 rescaled along its direction so that ν(ρ0) = `nu`.
    pub fn with_direction(nu: f64, direction: Row2) -> Result<Self> {
        let n = direction.norm();
        if !(n > 0.0) || !(nu > 0.0) {
            return Err(Error::InvalidArgument(
                "need a nonzero direction and positive nu".into(),
            ));
        }
        let r = (2.0 * PI * nu).exp_m1().sqrt();
        Ok(Self {
            nu,
            rho0: direction * Complex64::new(r / n, 0.0),
        })
    }

    pub fn a(&self) -> Complex64 {
        Complex64::new(0.0, -self.nu)
    }

    /// |ν − ln(1 + ρ0ρ0†)/2π|; the |β21|² = ν identity needs this small.
    pub fn inconsistency(&self) -> f64 {
        (self.nu - nu_of(&self.rho0)).abs()
    }
}

/// β21 = Γ(−iν)/√(2π)·e^{iπ/4 − πν/2}·ν·ρ0, the same expression as β^X.
pub fn beta21_of(params: &ModelParameters) -> Result<Row2> {
    Ok(leading_beta(params.nu, &params.rho0)?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// arg z ∈ (−3π/4, −π/4)
    Lower,
    /// arg z ∈ (−π/4, π/4)
    LowerRight,
}

impl Sector {
    fn contains(self, z: Complex64) -> bool {
        let t = z.arg();
        let eps = 1e-12;
        match self {
            Sector::Lower => t > -3.0 * FRAC_PI_4 + eps && t < -FRAC_PI_4 - eps,
            Sector::LowerRight => t > -FRAC_PI_4 + eps && t < FRAC_PI_4 - eps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiEntries {
    pub psi22: Complex64,
    pub beta21_psi11: Row2,
    pub psi21: Row2,
    pub beta21_psi12: Complex64,
}

fn rot(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// The sector formulas evaluated without the open-sector check; used for
/// boundary limits.
fn entries_unchecked(
    params: &ModelParameters,
    beta21: &Row2,
    z: Complex64,
    sector: Sector,
) -> Result<PsiEntries> {
    let nu = params.nu;
    let a = params.a();
    let i = Complex64::new(0.0, 1.0);
    let w = rot(FRAC_PI_4) * z;
    let psi22 = (-PI * nu / 4.0).exp() * pcf_d(a, w)?;
    let beta21_psi12 = ((i - nu) * FRAC_PI_4).exp() * a * pcf_d(a - 1.0, w)?;
    let (s, c11, c21) = match sector {
        Sector::Lower => (
            rot(3.0 * FRAC_PI_4) * z,
            Complex64::new((3.0 * PI * nu / 4.0).exp(), 0.0),
            ((i + 3.0 * nu) * FRAC_PI_4).exp(),
        ),
        Sector::LowerRight => (
            rot(-FRAC_PI_4) * z,
            Complex64::new((-PI * nu / 4.0).exp(), 0.0),
            (-(3.0 * i + nu) * FRAC_PI_4).exp(),
        ),
    };
    let d11 = pcf_d(-a, s)?;
    let d21 = pcf_d(-a - 1.0, s)?;
    Ok(PsiEntries {
        psi22,
        beta21_psi11: beta21 * (c11 * d11),
        psi21: beta21 * (c21 * d21),
        beta21_psi12,
    })
}

pub fn psi_entries(params: &ModelParameters, z: Complex64, sector: Sector) -> Result<PsiEntries> {
    if !sector.contains(z) {
        return Err(Error::InvalidArgument(format!(
            "z = {z} (arg {:.6}) is not inside the open {sector:?} sector",
            z.arg()
        )));
    }
    let b = beta21_of_or_zero(params)?;
    entries_unchecked(params, &b, z, sector)
}

fn beta21_of_or_zero(params: &ModelParameters) -> Result<Row2> {
    if params.rho0 == Row2::zeros() {
        Ok(Row2::zeros())
    } else {
        beta21_of(params)
    }
}

/// Both sides of the jump relation on arg z = −π/4 at z = r·e^{−iπ/4}:
/// (β21Ψ11)_lower = (β21Ψ11)_lower-right − (β21Ψ12)ρ0.
fn jump_sides(params: &ModelParameters, r: f64) -> Result<(Row2, Row2)> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "ray radius must be positive, got {r}"
        )));
    }
    let b = beta21_of_or_zero(params)?;
    let z = Complex64::from_polar(r, -FRAC_PI_4);
    let plus = entries_unchecked(params, &b, z, Sector::Lower)?;
    let minus = entries_unchecked(params, &b, z, Sector::LowerRight)?;
    let lhs = plus.beta21_psi11;
    let rhs = minus.beta21_psi11 - params.rho0 * minus.beta21_psi12;
    Ok((lhs, rhs))
}

/// Absolute residual of the ray jump relation.
pub fn jump_residual_ray(params: &ModelParameters, r: f64) -> Result<f64> {
    let (l, r) = jump_sides(params, r)?;
    Ok((l - r).norm())
}

/// Jump residual divided by the size of the largest term; the terms grow
/// like e^{r²/4}, so far out only the relative residual is meaningful.
pub fn jump_residual_ray_relative(params: &ModelParameters, r: f64) -> Result<f64> {
    let (l, rr) = jump_sides(params, r)?;
    let scale = l.norm().max(rr.norm());
    Ok(if scale == 0.0 {
        0.0
    } else {
        (l - rr).norm() / scale
    })
}

/// Max residual of the four first-order relations contained in
/// dΨ/dz = (iz/2·σ + β)Ψ, derivatives by central differences of step h:
///   Ψ22' = −(iz/2)Ψ22 + β21Ψ12,       Ψ21' = −(iz/2)Ψ21 + β21Ψ11,
///   (β21Ψ12)' = (iz/2)β21Ψ12 − νΨ22,  (β21Ψ11)' = (iz/2)β21Ψ11 − νΨ21.
pub fn system_residual(
    params: &ModelParameters,
    z: Complex64,
    sector: Sector,
    h: f64,
) -> Result<f64> {
    let e0 = psi_entries(params, z, sector)?;
    let ep = psi_entries(params, z + h, sector)?;
    let em = psi_entries(params, z - h, sector)?;
    let i_half_z = Complex64::new(0.0, 0.5) * z;
    let nu = params.nu;
    let d = |p: Complex64, m: Complex64| (p - m) / (2.0 * h);
    let dr = |p: Row2, m: Row2| (p - m) / Complex64::new(2.0 * h, 0.0);
    let r1 = (d(ep.psi22, em.psi22) + i_half_z * e0.psi22 - e0.beta21_psi12).norm();
    let r2 =
        (d(ep.beta21_psi12, em.beta21_psi12) - i_half_z * e0.beta21_psi12 + nu * e0.psi22).norm();
    let r3 = (dr(ep.psi21, em.psi21) + e0.psi21 * i_half_z - e0.beta21_psi11).norm();
    let r4 = (dr(ep.beta21_psi11, em.beta21_psi11) - e0.beta21_psi11 * i_half_z
        + e0.psi21 * Complex64::new(nu, 0.0))
    .norm();
    Ok(r1.max(r2).max(r3).max(r4))
}

/// |Ψ22'' − (−i/2 − z²/4 + β21β12)Ψ22| with β21β12 = −ν and a central
/// second difference of step h.
pub fn psi22_weber_residual(
    params: &ModelParameters,
    z: Complex64,
    sector: Sector,
    h: f64,
) -> Result<f64> {
    let f = |w| psi_entries(params, w, sector).map(|e| e.psi22);
    let (p, c, m) = (f(z + h)?, f(z)?, f(z - h)?);
    let second = (p - 2.0 * c + m) / (h * h);
    let coef = Complex64::new(-params.nu, -0.5) - z * z / 4.0;
    Ok((second - coef * c).norm())
}
