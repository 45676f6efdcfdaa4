//! Complex Gamma function.
//!
//! Lanczos approximation (g = 7, nine coefficients) on Re z ≥ 1/2 and the
//! reflection formula Γ(z)Γ(1 − z) = π / sin(πz) elsewhere. Relative error is
//! a few ulps on the strip |Im z| ≤ 4 that the asymptotic formulas need.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Distance below which an argument is treated as sitting on a pole.
const POLE_TOL: f64 = 1e-13;

fn nearest_pole(z: Complex64) -> Option<f64> {
    if z.re > 0.5 {
        return None;
    }
    let n = z.re.round();
    if n <= 0.0 && (z - n).norm() <= POLE_TOL * (1.0 + n.abs()) {
        Some(n)
    } else {
        None
    }
}

/// ln Γ(z) for Re z ≥ 1/2 (principal sheet of the Lanczos form).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut sum = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + sum.ln()
}

/// Γ(z) for complex z. Fails at the non-positive integers.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument(format!("gamma of non-finite {z}")));
    }
    if nearest_pole(z).is_some() {
        return Err(Error::GammaPole(z));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        Ok(PI / (s * ln_gamma_right(1.0 - z).exp()))
    } else {
        Ok(ln_gamma_right(z).exp())
    }
}

/// 1/Γ(z), an entire function: exactly zero at the poles of Γ.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if nearest_pole(z).is_some() {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        (PI * z).sin() * ln_gamma_right(1.0 - z).exp() / PI
    } else {
        (-ln_gamma_right(z)).exp()
    }
}
