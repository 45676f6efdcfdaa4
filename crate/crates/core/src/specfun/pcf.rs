//! Parabolic cylinder function D_a(z) for complex order and argument.
//!
//! Three regimes, chosen by |z|:
//!
//! * |z| ≤ [`MACLAURIN_RADIUS`]: Maclaurin series built from the even and odd
//!   Weber solutions `e^{-z²/4} M(-a/2, 1/2, z²/2)` and
//!   `z e^{-z²/4} M((1-a)/2, 3/2, z²/2)`, weighted by the exact values
//!   D_a(0) and D_a'(0).
//! * |z| ≥ [`ASYMPTOTIC_RADIUS`]: the large-argument expansions. The single
//!   exponential form `z^a e^{-z²/4}(1 + …)` is used on the closed sector
//!   |arg z| ≤ π/2; outside it the form carrying the `e^{z²/4}` Stokes term
//!   with sign `e^{±aπi}` for the upper/lower half plane.
//! * in between: Taylor continuation of the Weber equation along the ray
//!   through z. The direction is chosen so that D_a is never the recessive
//!   solution along the path: inward from the asymptotic circle where D_a
//!   decays outward (|arg z| < π/4, and the left sector when the Stokes term
//!   vanishes), outward from the Maclaurin disc otherwise.
//!
//! All powers use the principal branch of the logarithm.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::gamma::recip_gamma;
use crate::error::{Error, Result};

/// Radius of the disc on which the Maclaurin series is summed directly.
pub const MACLAURIN_RADIUS: f64 = 2.0;

/// Radius beyond which the asymptotic expansions are used.
pub const ASYMPTOTIC_RADIUS: f64 = 10.0;

const MAX_TERMS: usize = 400;

/// Value and first derivative of D_a at a point.
pub type ValueAndDerivative = (Complex64, Complex64);

/// D_a(z).
pub fn pcf_d(a: Complex64, z: Complex64) -> Result<Complex64> {
    pcf_d_with_derivative(a, z).map(|(v, _)| v)
}

/// D_a(z) together with dD_a/dz.
pub fn pcf_d_with_derivative(a: Complex64, z: Complex64) -> Result<ValueAndDerivative> {
    if !(a.re.is_finite() && a.im.is_finite() && z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "non-finite input to D_a(z): a = {a}, z = {z}"
        )));
    }
    let r = z.norm();
    if r <= MACLAURIN_RADIUS {
        return maclaurin(a, z);
    }
    if r >= ASYMPTOTIC_RADIUS {
        return asymptotic(a, z);
    }
    let dir = z / r;
    if decays_outward(a, z) {
        let start = dir * ASYMPTOTIC_RADIUS;
        let init = asymptotic(a, start)?;
        continue_along(a, start, z, init)
    } else {
        let start = dir * MACLAURIN_RADIUS;
        let init = maclaurin(a, start)?;
        continue_along(a, start, z, init)
    }
}

/// Whether D_a is the recessive Weber solution when moving outward along the
/// ray through z.
fn decays_outward(a: Complex64, z: Complex64) -> bool {
    if z.re > z.im.abs() {
        return true;
    }
    // Left sector: recessive only when the Stokes multiplier 1/Γ(-a) vanishes.
    z.re < -z.im.abs() && recip_gamma(-a).norm() == 0.0
}

fn maclaurin(a: Complex64, z: Complex64) -> Result<ValueAndDerivative> {
    let sqrt_pi = PI.sqrt();
    let two = Complex64::new(2.0, 0.0);
    // D_a(0) = 2^{a/2} √π / Γ((1-a)/2),  D_a'(0) = -2^{(a+1)/2} √π / Γ(-a/2)
    let d0 = two.powc(a / 2.0) * sqrt_pi * recip_gamma((1.0 - a) / 2.0);
    let dp0 = -two.powc((a + 1.0) / 2.0) * sqrt_pi * recip_gamma(-a / 2.0);

    let x = z * z / 2.0;
    let (m_even, dm_even) = kummer_with_derivative(-a / 2.0, 0.5, x, a, z)?;
    let (m_odd, dm_odd) = kummer_with_derivative((1.0 - a) / 2.0, 1.5, x, a, z)?;
    let gauss = (-z * z / 4.0).exp();

    // u1 = e^{-z²/4} M_even,  u2 = z e^{-z²/4} M_odd; dM/dz = z dM/dx.
    let u1 = gauss * m_even;
    let du1 = gauss * (-z / 2.0 * m_even + z * dm_even);
    let u2 = z * gauss * m_odd;
    let du2 = gauss * (m_odd - z * z / 2.0 * m_odd + z * z * dm_odd);
    Ok((d0 * u1 + dp0 * u2, d0 * du1 + dp0 * du2))
}

/// Kummer M(α, β, x) and dM/dx by direct summation.
fn kummer_with_derivative(
    alpha: Complex64,
    beta: f64,
    x: Complex64,
    a: Complex64,
    z: Complex64,
) -> Result<ValueAndDerivative> {
    // coef_n = (α)_n / ((β)_n n!)
    let mut coef = Complex64::new(1.0, 0.0);
    let mut xpow_prev = Complex64::new(0.0, 0.0); // x^{n-1}
    let mut xpow = Complex64::new(1.0, 0.0); // x^n
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    let mut small_run = 0;
    for n in 0..MAX_TERMS {
        let term = coef * xpow;
        value += term;
        if n > 0 {
            deriv += coef * xpow_prev * n as f64;
        }
        if term.norm() <= 1e-17 * value.norm() || (term.norm() == 0.0 && n > 0) {
            small_run += 1;
            if small_run >= 2 {
                return Ok((value, deriv));
            }
        } else {
            small_run = 0;
        }
        let nf = n as f64;
        coef *= (alpha + nf) / ((beta + nf) * (nf + 1.0));
        xpow_prev = xpow;
        xpow *= x;
    }
    Err(Error::AccuracyLoss {
        a,
        z,
        reason: "Maclaurin series did not converge",
    })
}

/// Sum of a large-argument series `Σ c_n s^{-2n}` and of `Σ c_n n s^{-2n}`,
/// truncated at the smallest term.
fn asymptotic_series(
    ratio: impl Fn(f64) -> Complex64,
    a: Complex64,
    z: Complex64,
) -> Result<ValueAndDerivative> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut weighted = Complex64::new(0.0, 0.0);
    let mut last = term.norm();
    for n in 1..MAX_TERMS {
        let next = term * ratio(n as f64);
        let size = next.norm();
        if size > last {
            // Divergence sets in; the remainder is bounded by the last term.
            if last > 1e-15 * sum.norm() {
                return Err(Error::AccuracyLoss {
                    a,
                    z,
                    reason: "asymptotic expansion diverges before reaching the budget",
                });
            }
            return Ok((sum, weighted));
        }
        term = next;
        sum += term;
        weighted += term * n as f64;
        last = size;
        if size <= 1e-17 * sum.norm() {
            return Ok((sum, weighted));
        }
    }
    Ok((sum, weighted))
}

fn asymptotic(a: Complex64, z: Complex64) -> Result<ValueAndDerivative> {
    let z2 = z * z;
    let ln_z = z.ln();
    let inv_z = 1.0 / z;

    // Recessive part: z^a e^{-z²/4} Σ (-1)^n (-a)_{2n} / (n! (2z²)^n)
    let (s1, w1) = asymptotic_series(
        |n| -(a - 2.0 * n + 2.0) * (a - 2.0 * n + 1.0) / (2.0 * n * z2),
        a,
        z,
    )?;
    let e1 = (a * ln_z - z2 / 4.0).exp();
    let mut value = e1 * s1;
    // d/dz of z^{a-2n} e^{-z²/4} = z^{a-2n} e^{-z²/4} ((a - 2n)/z - z/2)
    let mut deriv = e1 * ((a * inv_z - z / 2.0) * s1 - 2.0 * inv_z * w1);

    let arg = z.arg();
    if arg.abs() > FRAC_PI_2 {
        let stokes = recip_gamma(-a);
        if stokes.norm() > 0.0 {
            let sign = if arg > 0.0 { 1.0 } else { -1.0 };
            let (s2, w2) = asymptotic_series(
                |n| (a + 2.0 * n - 1.0) * (a + 2.0 * n) / (2.0 * n * z2),
                a,
                z,
            )?;
            let coef = -(2.0 * PI).sqrt() * stokes * (Complex64::i() * sign * PI * a).exp();
            let e2 = (z2 / 4.0 - (a + 1.0) * ln_z).exp();
            value += coef * e2 * s2;
            deriv += coef * e2 * ((z / 2.0 - (a + 1.0) * inv_z) * s2 - 2.0 * inv_z * w2);
        }
    }
    Ok((value, deriv))
}

/// Integrates g'' = (s²/4 - 1/2 - a) g along the straight segment from
/// `from` to `to` by local Taylor expansions.
fn continue_along(
    a: Complex64,
    from: Complex64,
    to: Complex64,
    init: ValueAndDerivative,
) -> Result<ValueAndDerivative> {
    let (mut g, mut dg) = init;
    let mut s = from;
    let total = (to - from).norm();
    if total == 0.0 {
        return Ok(init);
    }
    let dir = (to - from) / total;
    let mut travelled = 0.0;
    while travelled < total {
        let q = s * s / 4.0 - 0.5 - a;
        let max_step = 1.0 / q.norm().sqrt().max(1.0);
        let len = max_step.min(total - travelled);
        let h = dir * len;
        let (ng, ndg) = taylor_step(a, s, h, g, dg).ok_or(Error::AccuracyLoss {
            a,
            z: to,
            reason: "Taylor continuation did not converge",
        })?;
        g = ng;
        dg = ndg;
        travelled += len;
        s = if travelled >= total {
            to
        } else {
            from + dir * travelled
        };
    }
    Ok((g, dg))
}

/// One Taylor step of the Weber equation from s0 to s0 + h.
///
/// With g(s0 + τ) = Σ c_n τ^n the recurrence is
/// (n+2)(n+1) c_{n+2} = q c_n + (s0/2) c_{n-1} + c_{n-2}/4, q = s0²/4 - 1/2 - a.
/// The scaled coefficients d_n = c_n h^n are carried directly.
fn taylor_step(
    a: Complex64,
    s0: Complex64,
    h: Complex64,
    g: Complex64,
    dg: Complex64,
) -> Option<ValueAndDerivative> {
    let q = s0 * s0 / 4.0 - 0.5 - a;
    let h2 = h * h;
    let h3 = h2 * h;
    let h4 = h2 * h2;
    let zero = Complex64::new(0.0, 0.0);
    let mut d = Vec::with_capacity(64);
    d.push(g);
    d.push(dg * h);
    let mut value = g + d[1];
    let mut deriv_scaled = d[1];
    let mut small_run = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let d_nm1 = if n >= 1 { d[n - 1] } else { zero };
        let d_nm2 = if n >= 2 { d[n - 2] } else { zero };
        let next =
            (q * d[n] * h2 + s0 / 2.0 * d_nm1 * h3 + d_nm2 * h4 / 4.0) / ((nf + 2.0) * (nf + 1.0));
        d.push(next);
        value += next;
        deriv_scaled += next * (nf + 2.0);
        let scale = value.norm() + deriv_scaled.norm();
        if next.norm() * (nf + 2.0) <= 1e-18 * scale {
            small_run += 1;
            if small_run >= 3 {
                return Some((value, deriv_scaled / h));
            }
        } else {
            small_run = 0;
        }
    }
    let _ = a;
    None
}
