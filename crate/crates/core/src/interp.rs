//! Natural cubic splines on strictly increasing nodes.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Cubic spline through complex samples; real and imaginary parts are splined
/// independently with natural end conditions.
#[derive(Debug, Clone)]
pub struct ComplexSpline {
    x: Vec<f64>,
    y: Vec<Complex64>,
    m: Vec<Complex64>,
    uniform: bool,
}

impl ComplexSpline {
    pub fn new(x: &[f64], y: &[Complex64]) -> Result<Self> {
        if x.len() != y.len() || x.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "spline needs matching node and value arrays of length >= 2 (got {} and {})",
                x.len(),
                y.len()
            )));
        }
        if !x.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::InvalidArgument(
                "spline nodes must be strictly increasing".into(),
            ));
        }
        let n = x.len();
        let mut m = vec![Complex64::new(0.0, 0.0); n];
        if n > 2 {
            // tridiagonal solve for interior second derivatives
            let mut c = vec![0.0; n];
            let mut d = vec![Complex64::new(0.0, 0.0); n];
            for i in 1..n - 1 {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                let rhs = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
                let diag = 2.0 * (h0 + h1) - h0 * c[i - 1];
                c[i] = h1 / diag;
                d[i] = (rhs - h0 * d[i - 1]) / diag;
            }
            for i in (1..n - 1).rev() {
                m[i] = d[i] - c[i] * m[i + 1];
            }
        }
        let span = x[n - 1] - x[0];
        let step = span / (n - 1) as f64;
        let uniform = x
            .iter()
            .enumerate()
            .all(|(i, &xi)| (xi - (x[0] + step * i as f64)).abs() <= 1e-12 * span);
        Ok(Self {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
            uniform,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[Complex64] {
        &self.y
    }

    fn interval(&self, t: f64) -> usize {
        let n = self.x.len();
        let i = if self.uniform {
            let step = (self.x[n - 1] - self.x[0]) / (n - 1) as f64;
            ((t - self.x[0]) / step).floor().max(0.0) as usize
        } else {
            self.x.partition_point(|&xi| xi <= t).saturating_sub(1)
        };
        i.min(n - 2)
    }

    /// Spline value; outside the node range the end cubics are extended.
    pub fn eval(&self, t: f64) -> Complex64 {
        self.eval_with_derivative(t).0
    }

    pub fn eval_with_derivative(&self, t: f64) -> (Complex64, Complex64) {
        let i = self.interval(t);
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = x1 - x0;
        let a = (x1 - t) / h;
        let b = (t - x0) / h;
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let v = a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * (h * h / 6.0);
        let d = (self.y[i + 1] - self.y[i]) / h
            + ((1.0 - 3.0 * a * a) * m0 + (3.0 * b * b - 1.0) * m1) * (h / 6.0);
        (v, d)
    }

    /// Largest node spacing among intervals meeting [lo, hi].
    pub fn max_spacing_in(&self, lo: f64, hi: f64) -> f64 {
        self.x
            .windows(2)
            .filter(|w| w[1] >= lo && w[0] <= hi)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }
}
