use num_complex::Complex64;

use super::stationary_points;
use crate::error::{Error, Result};
use crate::scattering::{
    chi_of, nu_of, reflection, scattering_matrix, swap_conj, DeltaOptions, Endpoint,
    InitialProfile, ReflectionTable, Row2,
};

#[derive(Debug, Clone, Copy)]
pub struct AsymptoticConfig {
    /// Upper end M of the admissible ζ-interval (0, M].
    pub m_max: f64,
    /// Tolerance for the context invariants.
    pub tol: f64,
}

impl Default for AsymptoticConfig {
    fn default() -> Self {
        Self {
            m_max: 10.0,
            tol: 1e-8,
        }
    }
}

/// Time-independent reflection data at the stationary points of one ray.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryData {
    pub zeta: f64,
    pub k0: f64,
    pub nu: f64,
    pub chi_plus: Complex64,
    pub chi_minus: Complex64,
    pub rho_plus: Row2,
    pub rho_minus: Row2,
    /// (s31/s33, s32/s33) at k0 exactly as computed from s(k0).
    pub rho_raw: Row2,
}

impl StationaryData {
    /// ρ(±k0) by direct integration at ±k0, χ(±k0) from `table`.
    /// ρ(−k0) is taken from the symmetry and checked against the direct value.
    pub fn compute(
        profile: &InitialProfile,
        table: &ReflectionTable,
        zeta: f64,
        ode_tol: f64,
        delta: &DeltaOptions,
        cfg: &AsymptoticConfig,
    ) -> Result<Self> {
        check_zeta(zeta, cfg)?;
        let (_, k0) = stationary_points(zeta)?;
        let rho_raw = reflection(&scattering_matrix(profile, k0, ode_tol)?)?;
        let direct_minus = reflection(&scattering_matrix(profile, -k0, ode_tol)?)?;
        let rho_minus = swap_conj(&rho_raw);
        let gap = (rho_minus - direct_minus).norm();
        if gap > cfg.tol {
            return Err(Error::Symmetry {
                what: "rho(-k0) versus swap(conj rho(k0))",
                residual: gap,
                tol: cfg.tol,
            });
        }
        Ok(Self {
            zeta,
            k0,
            nu: nu_of(&rho_raw),
            chi_plus: chi_of(table, k0, Endpoint::Plus, delta)?,
            chi_minus: chi_of(table, k0, Endpoint::Minus, delta)?,
            rho_plus: rho_raw,
            rho_minus,
            rho_raw,
        })
    }

    /// Data from ρ(k0) and χ(k0) alone; the rest follows from the symmetries.
    pub fn from_rho(zeta: f64, rho_plus: Row2, chi_plus: Complex64) -> Result<Self> {
        let (_, k0) = stationary_points(zeta)?;
        Ok(Self {
            zeta,
            k0,
            nu: nu_of(&rho_plus),
            chi_plus,
            chi_minus: -chi_plus,
            rho_plus,
            rho_minus: swap_conj(&rho_plus),
            rho_raw: rho_plus,
        })
    }
}

/// Everything the leading-order formula needs at one (ζ, t).
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticContext {
    data: StationaryData,
    t: f64,
}

fn check_zeta(zeta: f64, cfg: &AsymptoticConfig) -> Result<()> {
    if !(zeta > 0.0 && zeta <= cfg.m_max) {
        return Err(Error::ZetaOutOfRange {
            zeta,
            max: cfg.m_max,
        });
    }
    Ok(())
}

impl AsymptoticContext {
    /// Validates the invariants; k0 is recomputed from ζ.
    pub fn new(data: StationaryData, t: f64, cfg: &AsymptoticConfig) -> Result<Self> {
        check_zeta(data.zeta, cfg)?;
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "time must be positive, got {t}"
            )));
        }
        let (_, k0) = stationary_points(data.zeta)?;
        let mut data = data;
        data.k0 = k0;
        let checks = [
            (
                "nu versus ln(1 + |rho(k0)|^2)/2pi",
                (data.nu - nu_of(&data.rho_plus)).abs(),
            ),
            ("Re chi(k0)", data.chi_plus.re.abs()),
            ("Re chi(-k0)", data.chi_minus.re.abs()),
            (
                "rho(-k0) versus swap(conj rho(k0))",
                (data.rho_minus - swap_conj(&data.rho_plus)).norm(),
            ),
        ];
        for (what, residual) in checks {
            if !(residual <= cfg.tol) {
                return Err(Error::Symmetry {
                    what,
                    residual,
                    tol: cfg.tol,
                });
            }
        }
        Ok(Self { data, t })
    }

    pub fn data(&self) -> &StationaryData {
        &self.data
    }

    pub fn zeta(&self) -> f64 {
        self.data.zeta
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn x(&self) -> f64 {
        self.data.zeta * self.t
    }

    pub fn k0(&self) -> f64 {
        self.data.k0
    }

    pub fn nu(&self) -> f64 {
        self.data.nu
    }

    pub fn chi_plus(&self) -> Complex64 {
        self.data.chi_plus
    }

    pub fn chi_minus(&self) -> Complex64 {
        self.data.chi_minus
    }

    pub fn rho_plus(&self) -> Row2 {
        self.data.rho_plus
    }

    pub fn rho_minus(&self) -> Row2 {
        self.data.rho_minus
    }
}
