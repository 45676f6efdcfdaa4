use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::{CMatrix3, Row2};

/// Φ(ζ, k) = 2iζk − 8ik³.
pub fn phase(zeta: f64, k: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    2.0 * i * zeta * k - 8.0 * i * k * k * k
}

/// The jump matrix [[I, ρ†e^{−tΦ}], [ρe^{tΦ}, 1 + ρρ†]] at (x, t; k).
/// Φ depends only on ζ; `x` is accepted for call-site symmetry and checked
/// against ζt in debug builds.
pub fn build_jump(rho: &Row2, x: f64, t: f64, k: Complex64, zeta: f64) -> CMatrix3 {
    debug_assert!(t == 0.0 || (x / t - zeta).abs() <= 1e-9 * (1.0 + zeta.abs()));
    let mut w = t * phase(zeta, k);
    if k.im == 0.0 {
        // Φ is imaginary on the real axis; drop rounding residue so J = J† exactly
        w.re = 0.0;
    }
    let e = w.exp();
    let em = if k.im == 0.0 { e.conj() } else { (-w).exp() };
    let mut j = CMatrix3::identity();
    for c in 0..2 {
        j[(c, 2)] = rho[c].conj() * em;
        j[(2, c)] = rho[c] * e;
    }
    j[(2, 2)] = Complex64::new(1.0 + rho.norm_squared(), 0.0);
    j
}

/// Smallest eigenvalue of a Hermitian 3×3 matrix.
pub fn min_eigenvalue(j: &CMatrix3) -> f64 {
    SymmetricEigen::new(*j)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_reflection_gives_identity() {
        assert_eq!(
            build_jump(&Row2::zeros(), 2.0, 2.0, c(0.4, 0.0), 1.0),
            CMatrix3::identity()
        );
    }

    #[test]
    fn example_is_positive_definite() {
        let rho = Row2::new(c(0.3, 0.0), c(0.0, 0.4));
        let j = build_jump(&rho, 2.0, 2.0, c(0.5, 0.0), 1.0);
        assert_eq!(j, j.adjoint());
        // the block structure forces det J = 1, with eigenvalues 1 and
        // (2 + ρρ† ± √((2 + ρρ†)² − 4))/2 = (2.25 ± √1.0625)/2
        let lam = min_eigenvalue(&j);
        assert!((lam - (2.25 - 1.0625f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(lam > 0.0);
    }

    proptest! {
        #[test]
        fn hermitian_positive_definite_on_real_axis(
            r1 in -3.0f64..3.0, i1 in -3.0f64..3.0, r2 in -3.0f64..3.0, i2 in -3.0f64..3.0,
            t in 0.0f64..100.0, k in -3.0f64..3.0, zeta in 0.01f64..10.0,
        ) {
            let rho = Row2::new(c(r1, i1), c(r2, i2));
            let j = build_jump(&rho, zeta * t, t, c(k, 0.0), zeta);
            prop_assert_eq!(j, j.adjoint());
            prop_assert!(min_eigenvalue(&j) > 0.0);
        }
    }
}
