use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::interp::ComplexSpline;

/// Initial datum sampled on a uniform grid, with a cubic-spline interpolant
/// for evaluation between samples.
#[derive(Debug, Clone)]
pub struct InitialProfile {
    x_min: f64,
    x_max: f64,
    u0: Vec<Complex64>,
    decay_tol: f64,
    spline: ComplexSpline,
}

pub const DEFAULT_DECAY_TOL: f64 = 1e-12;
const MIN_SAMPLES: usize = 16;

impl InitialProfile {
    pub fn new(x_min: f64, x_max: f64, u0: Vec<Complex64>, decay_tol: f64) -> Result<Self> {
        let n = u0.len();
        if n < MIN_SAMPLES {
            return Err(Error::InvalidProfile(format!(
                "need at least {MIN_SAMPLES} samples, got {n}"
            )));
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidProfile(format!(
                "bad interval [{x_min}, {x_max}]"
            )));
        }
        if !(decay_tol >= 0.0) {
            return Err(Error::InvalidProfile(format!(
                "bad decay tolerance {decay_tol}"
            )));
        }
        if let Some(i) = u0
            .iter()
            .position(|u| !(u.re.is_finite() && u.im.is_finite()))
        {
            return Err(Error::InvalidProfile(format!(
                "non-finite sample at index {i}"
            )));
        }
        let x = grid(x_min, x_max, n);
        for (xe, ue) in [(x_min, u0[0]), (x_max, u0[n - 1])] {
            if ue.norm() > decay_tol {
                return Err(Error::BoundaryDecay {
                    x: xe,
                    value: ue.norm(),
                    tol: decay_tol,
                });
            }
        }
        let spline = ComplexSpline::new(&x, &u0)?;
        Ok(Self {
            x_min,
            x_max,
            u0,
            decay_tol,
            spline,
        })
    }

    /// Samples `f` at `n` uniform points on [x_min, x_max].
    pub fn from_fn<F>(x_min: f64, x_max: f64, n: usize, decay_tol: f64, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        if n < 2 {
            return Err(Error::InvalidProfile(format!(
                "need at least {MIN_SAMPLES} samples, got {n}"
            )));
        }
        let u0 = grid(x_min, x_max, n).into_iter().map(f).collect();
        Self::new(x_min, x_max, u0, decay_tol)
    }

    /// A·e^{−x²} on [−half_width, half_width].
    pub fn gaussian(amplitude: f64, half_width: f64, n: usize) -> Result<Self> {
        Self::from_fn(-half_width, half_width, n, DEFAULT_DECAY_TOL, |x| {
            Complex64::new(amplitude * (-x * x).exp(), 0.0)
        })
    }

    /// Builds a profile from (x, u) samples that must sit on a uniform grid.
    pub fn from_samples(x: &[f64], u0: Vec<Complex64>, decay_tol: f64) -> Result<Self> {
        if x.len() != u0.len() {
            return Err(Error::InvalidProfile(format!(
                "{} abscissae for {} samples",
                x.len(),
                u0.len()
            )));
        }
        if x.len() < MIN_SAMPLES {
            return Err(Error::InvalidProfile(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                x.len()
            )));
        }
        if !x.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::InvalidProfile(
                "x must be strictly increasing".into(),
            ));
        }
        let (a, b) = (x[0], x[x.len() - 1]);
        let step = (b - a) / (x.len() - 1) as f64;
        for (i, &xi) in x.iter().enumerate() {
            if (xi - (a + step * i as f64)).abs() > 1e-9 * step.max((b - a).abs()) {
                return Err(Error::InvalidProfile(format!(
                    "grid is not uniform at row {i} (x = {xi})"
                )));
            }
        }
        Self::new(a, b, u0, decay_tol)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n(&self) -> usize {
        self.u0.len()
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n() - 1) as f64
    }

    pub fn decay_tol(&self) -> f64 {
        self.decay_tol
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.u0
    }

    pub fn abscissae(&self) -> Vec<f64> {
        grid(self.x_min, self.x_max, self.n())
    }

    /// u0(x) by spline interpolation; zero outside the sampled interval.
    pub fn eval(&self, x: f64) -> Complex64 {
        if x < self.x_min || x > self.x_max {
            Complex64::new(0.0, 0.0)
        } else {
            self.spline.eval(x)
        }
    }

    /// Same profile multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.x_min,
            self.x_max,
            self.u0.iter().map(|u| u * factor).collect(),
            self.decay_tol,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.u0.iter().all(|u| *u == Complex64::new(0.0, 0.0))
    }
}

fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_profile_is_valid() {
        let p = InitialProfile::gaussian(0.8, 12.0, 241).unwrap();
        assert_eq!(p.n(), 241);
        assert!((p.dx() - 0.1).abs() < 1e-15);
        assert!((p.eval(0.0).re - 0.8).abs() < 1e-15);
        assert!((p.eval(0.55).re - 0.8 * (-0.3025f64).exp()).abs() < 1e-5);
        assert_eq!(p.eval(13.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn boundary_decay_is_enforced() {
        let r = InitialProfile::gaussian(1.0, 3.0, 64);
        assert!(matches!(r, Err(Error::BoundaryDecay { .. })));
    }

    #[test]
    fn too_few_samples() {
        assert!(InitialProfile::gaussian(1.0, 12.0, 8).is_err());
    }

    #[test]
    fn non_uniform_samples_are_rejected() {
        let mut x: Vec<f64> = (0..20).map(|i| i as f64).collect();
        x[5] = 5.3;
        let u = vec![Complex64::new(0.0, 0.0); 20];
        assert!(InitialProfile::from_samples(&x, u, 1e-12).is_err());
    }
}
