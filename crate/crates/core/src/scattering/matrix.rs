use nalgebra::Matrix3;
use num_complex::Complex64;

use super::InitialProfile;
use crate::error::Result;
use crate::ode::{dopri5, Dopri5Options};

pub type CMatrix3 = Matrix3<Complex64>;

/// s(k) at a real spectral node.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix {
    pub k: f64,
    pub s: CMatrix3,
}

/// The (1 ↔ 2) permutation of the conjugation symmetry.
pub fn gamma_perm() -> CMatrix3 {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    Matrix3::new(o, l, o, l, o, o, o, o, l)
}

impl ScatteringMatrix {
    pub fn det_residual(&self) -> f64 {
        (self.s.determinant() - 1.0).norm()
    }

    /// ‖s†s − I‖ in the Frobenius norm.
    pub fn unitarity_residual(&self) -> f64 {
        (self.s.adjoint() * self.s - CMatrix3::identity()).norm()
    }

    /// ‖s(−k) − Γ conj(s(k)) Γ‖ given `minus` computed at −k.
    pub fn conjugation_residual(&self, minus: &ScatteringMatrix) -> f64 {
        let g = gamma_perm();
        (minus.s - g * self.s.map(|z| z.conj()) * g).norm()
    }
}

/// Integrates m' = Ũ(x)m from x_min (m = I) to x_max, where
/// m = e^{ikxσ} μ1 e^{−ikxσ} removes the diagonal part of the x-equation.
/// `tol` is the local error tolerance of the adaptive stepper.
pub fn scattering_matrix(profile: &InitialProfile, k: f64, tol: f64) -> Result<ScatteringMatrix> {
    let zero = Complex64::new(0.0, 0.0);
    if profile.is_zero() {
        return Ok(ScatteringMatrix {
            k,
            s: CMatrix3::identity(),
        });
    }
    let rhs = |x: f64, m: &CMatrix3| -> CMatrix3 {
        let u = profile.eval(x);
        let e = Complex64::from_polar(1.0, 2.0 * k * x);
        let ub = u.conj();
        // Ũ = [[0, 0, u e], [0, 0, ū e], [−ū ē, −u ē, 0]]
        let a = u * e;
        let b = ub * e;
        let c = -ub * e.conj();
        let d = -u * e.conj();
        let mut out = CMatrix3::from_element(zero);
        for j in 0..3 {
            out[(0, j)] = a * m[(2, j)];
            out[(1, j)] = b * m[(2, j)];
            out[(2, j)] = c * m[(0, j)] + d * m[(1, j)];
        }
        out
    };
    let span = profile.x_max() - profile.x_min();
    let mut opts = Dopri5Options::with_tol(tol);
    // keep the stepper from striding over features while the tails are flat
    opts.h_max = (8.0 * profile.dx()).min(span / 16.0);
    opts.h_init = opts.h_max.min(0.1 / (1.0 + k.abs()));
    let (s, _) = dopri5(
        rhs,
        |m| m.norm(),
        profile.x_min(),
        CMatrix3::identity(),
        profile.x_max(),
        opts,
    )?;
    Ok(ScatteringMatrix { k, s })
}
