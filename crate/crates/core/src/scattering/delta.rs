use std::f64::consts::PI;

use num_complex::Complex64;

use super::ReflectionTable;
use crate::error::{Error, Result};
use crate::interp::ComplexSpline;
use crate::quadrature::{graded_breaks, uniform_breaks, GaussLegendre};

/// Which stationary point χ is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Plus,
    Minus,
}

impl Endpoint {
    pub fn sign(self) -> f64 {
        match self {
            Endpoint::Plus => 1.0,
            Endpoint::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DeltaOptions {
    /// Successive panel doublings must agree to this.
    pub quad_tol: f64,
    /// Largest node spacing tolerated on [−k0, k0].
    pub max_node_spacing: f64,
    /// Allowed |f(k0) − f(−k0)| for f = ln(1 + ρρ†).
    pub evenness_tol: f64,
    /// det δ refuses points closer than this to ±k0.
    pub stationary_cutoff: f64,
}

impl Default for DeltaOptions {
    fn default() -> Self {
        Self {
            quad_tol: 1e-9,
            max_node_spacing: 0.02,
            evenness_tol: 1e-8,
            stationary_cutoff: 1e-8,
        }
    }
}

const GL_ORDER: usize = 16;
const MAX_PANELS: usize = 1 << 12;

/// Spline of f(ξ) = ln(1 + ρρ†(ξ)) checked against the table's resolution
/// on [−k0, k0].
struct LogWeight {
    spline: ComplexSpline,
}

impl LogWeight {
    fn new(table: &ReflectionTable, k0: f64, opts: &DeltaOptions) -> Result<Self> {
        if !(k0 > 0.0 && k0.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "k0 must be positive, got {k0}"
            )));
        }
        let k = table.k_nodes();
        if k[0] > -k0 || k[k.len() - 1] < k0 {
            return Err(Error::TableResolution {
                what: "the interval [-k0, k0]",
                detail: format!("nodes span [{}, {}], k0 = {k0}", k[0], k[k.len() - 1]),
            });
        }
        let h = table
            .rho_norm_sq()
            .iter()
            .map(|r| Complex64::new(r.ln_1p(), 0.0));
        let spline = ComplexSpline::new(k, &h.collect::<Vec<_>>())?;
        let spacing = spline.max_spacing_in(-k0, k0);
        if spacing > opts.max_node_spacing * (1.0 + 1e-9) {
            return Err(Error::TableResolution {
                what: "ln(1 + |rho|^2) near the stationary points",
                detail: format!(
                    "node spacing {spacing:e} exceeds {:e}",
                    opts.max_node_spacing
                ),
            });
        }
        let w = Self { spline };
        let gap = (w.f(k0) - w.f(-k0)).abs();
        if gap > opts.evenness_tol {
            return Err(Error::Symmetry {
                what: "1 + |rho|^2 at +k0 versus -k0",
                residual: gap,
                tol: opts.evenness_tol,
            });
        }
        Ok(w)
    }

    fn f(&self, x: f64) -> f64 {
        self.spline.eval(x).re
    }

    fn df(&self, x: f64) -> f64 {
        self.spline.eval_with_derivative(x).1.re
    }
}

/// Integrates over panel sets from `breaks(level)` with doubling refinement
/// until two successive levels agree to `tol`.
fn refine<B, F>(tol: f64, mut breaks: B, mut f: F) -> Result<Complex64>
where
    B: FnMut(usize) -> Vec<f64>,
    F: FnMut(f64) -> Complex64,
{
    let gl = GaussLegendre::new(GL_ORDER);
    let mut level = 1;
    let mut prev = gl.integrate_panels(&breaks(level), &mut f);
    while level < MAX_PANELS {
        level *= 2;
        let next = gl.integrate_panels(&breaks(level), &mut f);
        if (next - prev).norm() <= tol * (1.0 + next.norm()) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::TableResolution {
        what: "the Cauchy integral",
        detail: format!("no convergence to {tol:e} within {MAX_PANELS} panel refinements"),
    })
}

/// χ(±k0) = (1/2πi) ∫_{−k0}^{k0} ln[(1 + ρρ†)(ξ) / (1 + ρρ†)(±k0)] / (ξ ∓ k0) dξ.
///
/// The integrand is the difference quotient of f = ln(1 + ρρ†), bounded at
/// both ends; the removable point is filled with f'(±k0). The result is
/// purely imaginary by construction.
pub fn chi_of(
    table: &ReflectionTable,
    k0: f64,
    at: Endpoint,
    opts: &DeltaOptions,
) -> Result<Complex64> {
    let w = LogWeight::new(table, k0, opts)?;
    let c = at.sign() * k0;
    let fc = w.f(c);
    let dfc = w.df(c);
    let integrand = |xi: f64| {
        let q = if (xi - c).abs() <= 1e-10 * k0 {
            dfc
        } else {
            (w.f(xi) - fc) / (xi - c)
        };
        Complex64::new(q, 0.0)
    };
    let integral = refine(opts.quad_tol, |m| uniform_breaks(-k0, k0, 4 * m), integrand)?;
    // (1/2πi)·real = −i·real/2π
    Ok(Complex64::new(0.0, -integral.re / (2.0 * PI)))
}

/// det δ(k) = ((k − k0)/(k + k0))^{−iν} e^{χ(k)} for complex k off [−k0, k0],
/// principal branches throughout.
///
/// χ(k) is evaluated after subtracting f(p), p the projection of k onto
/// [−k0, k0], so the remaining integrand is bounded; the subtracted part is
/// integrated in closed form, ∫ dξ/(ξ − k) = ln(k0 − k) − ln(−k0 − k).
pub fn det_delta(
    table: &ReflectionTable,
    k0: f64,
    k: Complex64,
    opts: &DeltaOptions,
) -> Result<Complex64> {
    if !(k.re.is_finite() && k.im.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "det delta at non-finite k = {k}"
        )));
    }
    let near = (k - k0).norm().min((k + k0).norm());
    if near < opts.stationary_cutoff {
        return Err(Error::TooCloseToStationaryPoint {
            k,
            cutoff: opts.stationary_cutoff,
        });
    }
    if k.im == 0.0 && k.re.abs() <= k0 {
        return Err(Error::InvalidArgument(format!(
            "det delta is discontinuous across [-k0, k0]; got k = {k}"
        )));
    }
    let w = LogWeight::new(table, k0, opts)?;
    let fk0 = w.f(k0);
    let nu = fk0 / (2.0 * PI);
    let p = k.re.clamp(-k0, k0);
    let fp = w.f(p);
    let dist = (k - p).norm();
    let integrand = |xi: f64| Complex64::new(w.f(xi) - fp, 0.0) / (xi - k);
    let integral = refine(
        opts.quad_tol,
        |m| graded_breaks(-k0, k0, p, 0.25 * dist, m),
        integrand,
    )?;
    let z0 = Complex64::new(k0, 0.0);
    let log_ratio = (z0 - k).ln() - (-z0 - k).ln();
    let chi = (integral + (fp - fk0) * log_ratio) / Complex64::new(0.0, 2.0 * PI);
    let power = Complex64::new(0.0, -nu) * ((k - z0) / (k + z0)).ln();
    Ok((power + chi).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::{InitialProfile, KGrid, Row2};

    fn flat_table(r: f64) -> ReflectionTable {
        let k: Vec<f64> = (0..201).map(|i| -2.0 + 0.02 * i as f64).collect();
        let rho = k
            .iter()
            .map(|_| Row2::new(Complex64::new(r, 0.0), Complex64::new(0.0, r)))
            .collect();
        ReflectionTable::new(k, rho).unwrap()
    }

    /// Synthetic even profile ρρ†(k) = 0.8 e^{−k²}.
    fn smooth_table(n: usize) -> ReflectionTable {
        let k: Vec<f64> = (0..n)
            .map(|i| -2.0 + 4.0 * i as f64 / (n - 1) as f64)
            .collect();
        let rho = k
            .iter()
            .map(|&q| {
                let a = (0.4 * (-q * q).exp()).sqrt();
                Row2::new(Complex64::new(a, 0.0), Complex64::new(0.0, a))
            })
            .collect();
        ReflectionTable::new(k, rho).unwrap()
    }

    #[test]
    fn constant_weight_gives_zero_chi() {
        let t = flat_table(0.7);
        let o = DeltaOptions::default();
        for at in [Endpoint::Plus, Endpoint::Minus] {
            assert!(chi_of(&t, 0.5, at, &o).unwrap().norm() < 1e-14);
        }
    }

    #[test]
    fn chi_is_imaginary_and_odd() {
        let t = smooth_table(801);
        let o = DeltaOptions::default();
        let p = chi_of(&t, 0.5, Endpoint::Plus, &o).unwrap();
        let m = chi_of(&t, 0.5, Endpoint::Minus, &o).unwrap();
        assert_eq!(p.re, 0.0);
        assert!(p.im.abs() > 1e-3);
        assert!((p + m).norm() < 1e-9, "{p} {m}");
    }

    #[test]
    fn chi_matches_closed_form_for_quadratic_log() {
        // f(ξ) = ln(1 + ρρ†) = c ξ² exactly: χ(k0) = (1/2πi) ∫ c(ξ + k0) dξ = c k0² / πi
        let c = 0.3;
        let k: Vec<f64> = (0..401).map(|i| -2.0 + 0.01 * i as f64).collect();
        let rho = k
            .iter()
            .map(|&q| {
                Row2::new(
                    Complex64::new((c * q * q).exp_m1().sqrt(), 0.0),
                    Complex64::new(0.0, 0.0),
                )
            })
            .collect();
        let t = ReflectionTable::new(k, rho).unwrap();
        let chi = chi_of(&t, 0.5, Endpoint::Plus, &DeltaOptions::default()).unwrap();
        let expected = -c * 0.25 / PI;
        assert!((chi.im - expected).abs() < 1e-9, "{} vs {expected}", chi.im);
    }

    #[test]
    fn coarse_table_is_rejected() {
        let t = smooth_table(41);
        assert!(matches!(
            chi_of(&t, 0.5, Endpoint::Plus, &DeltaOptions::default()),
            Err(Error::TableResolution { .. })
        ));
    }

    #[test]
    fn uneven_table_is_rejected() {
        let k: Vec<f64> = (0..201).map(|i| -2.0 + 0.02 * i as f64).collect();
        let rho = k
            .iter()
            .map(|&q| Row2::new(Complex64::new(0.3 + 0.1 * q, 0.0), Complex64::new(0.0, 0.0)))
            .collect();
        let t = ReflectionTable::new(k, rho).unwrap();
        assert!(matches!(
            chi_of(&t, 0.5, Endpoint::Plus, &DeltaOptions::default()),
            Err(Error::Symmetry { .. })
        ));
    }

    #[test]
    fn det_delta_trivial_cases() {
        let o = DeltaOptions::default();
        let t = flat_table(0.0);
        assert_eq!(
            det_delta(&t, 0.5, Complex64::new(0.3, 0.2), &o).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let t = smooth_table(801);
        let far = det_delta(&t, 0.5, Complex64::new(0.0, 1e4), &o).unwrap();
        assert!((far - 1.0).norm() < 1e-4);
        assert!(matches!(
            det_delta(&t, 0.5, Complex64::new(0.5, 1e-10), &o),
            Err(Error::TooCloseToStationaryPoint { .. })
        ));
        assert!(det_delta(&t, 0.5, Complex64::new(0.1, 0.0), &o).is_err());
    }

    #[test]
    fn det_delta_continuous_across_real_axis_outside() {
        let t = smooth_table(801);
        let o = DeltaOptions::default();
        let up = det_delta(&t, 0.5, Complex64::new(0.9, 1e-9), &o).unwrap();
        let dn = det_delta(&t, 0.5, Complex64::new(0.9, -1e-9), &o).unwrap();
        let on = det_delta(&t, 0.5, Complex64::new(0.9, 0.0), &o).unwrap();
        assert!((up - dn).norm() < 1e-7 && (up - on).norm() < 1e-7);
    }

    #[test]
    fn plemelj_jump() {
        let t = smooth_table(801);
        let o = DeltaOptions::default();
        let k = 0.2;
        let ratio = |e: f64| {
            det_delta(&t, 0.5, Complex64::new(k, e), &o).unwrap()
                / det_delta(&t, 0.5, Complex64::new(k, -e), &o).unwrap()
        };
        let r = richardson(ratio, 1e-3);
        let expected = 1.0 + 0.8 * (-k * k).exp();
        assert!((r - expected).norm() < 1e-6, "{r} vs {expected}");
    }

    /// Second-order Richardson extrapolation of g(ε) to ε = 0.
    fn richardson<G: Fn(f64) -> Complex64>(g: G, e: f64) -> Complex64 {
        let (a, b, c) = (g(e), g(e / 2.0), g(e / 4.0));
        let r1 = 2.0 * b - a;
        let r2 = 2.0 * c - b;
        (4.0 * r2 - r1) / 3.0
    }

    #[test]
    fn gaussian_data_chi_refinement() {
        let p = InitialProfile::gaussian(0.7, 12.0, 2401).unwrap();
        let k0 = 0.5;
        let coarse = ReflectionTable::compute(&p, &KGrid::default_for(k0), 1e-11).unwrap();
        let fine = ReflectionTable::compute(&p, &KGrid::uniform(-2.5, 2.5, 1601), 1e-11).unwrap();
        let mut o = DeltaOptions::default();
        let a = chi_of(&coarse, k0, Endpoint::Plus, &o).unwrap();
        o.quad_tol = 1e-12;
        let b = chi_of(&fine, k0, Endpoint::Plus, &o).unwrap();
        assert!((a - b).norm() < 1e-8, "{a} {b}");
    }
}
