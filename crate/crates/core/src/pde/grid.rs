use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Periodic grid x_j = −L + j·dx, j = 0..n, on [−L, L).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimGrid {
    half_width: f64,
    n_modes: usize,
}

impl SimGrid {
    pub fn new(half_width: f64, n_modes: usize) -> Result<Self> {
        if n_modes < 64 || !n_modes.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n_modes must be a power of two >= 64, got {n_modes}"
            )));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "half_width must be positive, got {half_width}"
            )));
        }
        Ok(Self {
            half_width,
            n_modes,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.n_modes as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.dx()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n_modes).map(|j| self.x(j)).collect()
    }

    /// Angular wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.n_modes as i64;
        let base = PI / self.half_width;
        (0..n)
            .map(|j| {
                let m = if j < n / 2 {
                    j
                } else if j == n / 2 {
                    0 // Nyquist: no consistent odd derivative
                } else {
                    j - n
                };
                base * m as f64
            })
            .collect()
    }

    /// 2/3-rule mask: keeps |m| < n/3.
    pub fn dealias_mask(&self) -> Vec<bool> {
        let n = self.n_modes as i64;
        (0..n)
            .map(|j| {
                let m = if j <= n / 2 { j } else { n - j };
                3 * m < n && j != n / 2
            })
            .collect()
    }
}
