use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::SimGrid;
use crate::error::{Error, Result};

/// Absorbing layer −γ(x)u with γ = strength·((|x| − (L − width))/width)²
/// inside the outer `width` of each side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sponge {
    pub width: f64,
    pub strength: f64,
}

/// Field samples at time t.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub t: f64,
    pub u: Vec<Complex64>,
    /// ∫₀ᵗ 2∫γ|u|² dx ds, mass removed by the sponge so far.
    pub absorbed: f64,
}

impl FieldState {
    pub fn zero(grid: &SimGrid) -> Self {
        Self {
            t: 0.0,
            u: vec![Complex64::new(0.0, 0.0); grid.n_modes()],
            absorbed: 0.0,
        }
    }

    /// ∫|u|² dx (rectangle rule, exact for band-limited data).
    pub fn mass(&self, grid: &SimGrid) -> f64 {
        grid.dx() * self.u.iter().map(|v| v.norm_sqr()).sum::<f64>()
    }
}

/// Pseudospectral machinery for u_t = u_xxx + 6|u|²u_x + 3u(|u|²)_x.
pub struct Spectral {
    grid: SimGrid,
    k: Vec<f64>,
    mask: Vec<bool>,
    gamma: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl std::fmt::Debug for Spectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Spectral")
            .field("grid", &self.grid)
            .finish()
    }
}

impl Spectral {
    pub fn new(grid: SimGrid, sponge: Option<Sponge>) -> Result<Self> {
        let mut planner = FftPlanner::new();
        let n = grid.n_modes();
        let gamma = match sponge {
            None => vec![0.0; n],
            Some(s) => {
                if !(s.width > 0.0 && s.width < grid.half_width() && s.strength >= 0.0) {
                    return Err(Error::InvalidGrid(format!(
                        "sponge width {} must lie in (0, {}) with non-negative strength",
                        s.width,
                        grid.half_width()
                    )));
                }
                grid.xs()
                    .iter()
                    .map(|&x| {
                        let d = ((x.abs() - (grid.half_width() - s.width)) / s.width).max(0.0);
                        s.strength * d * d
                    })
                    .collect()
            }
        };
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let len = fwd
            .get_inplace_scratch_len()
            .max(inv.get_inplace_scratch_len());
        Ok(Self {
            grid,
            k: grid.wavenumbers(),
            mask: grid.dealias_mask(),
            gamma,
            fwd,
            inv,
            scratch: vec![Complex64::new(0.0, 0.0); len],
        })
    }

    pub fn grid(&self) -> &SimGrid {
        &self.grid
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.k
    }

    pub fn sponge_profile(&self) -> &[f64] {
        &self.gamma
    }

    pub fn forward(&mut self, data: &mut [Complex64]) {
        self.fwd.process_with_scratch(data, &mut self.scratch);
    }

    /// Inverse transform including the 1/n normalisation.
    pub fn inverse(&mut self, data: &mut [Complex64]) {
        self.inv.process_with_scratch(data, &mut self.scratch);
        let s = 1.0 / data.len() as f64;
        data.iter_mut().for_each(|v| *v *= s);
    }

    /// Spectral nonlinear term (plus sponge) for spectral input `uh`.
    /// Returns the spectrum of 6|u|²u_x + 3u(|u|²)_x − γu where u is the
    /// dealiased field.
    pub fn rhs_hat(&mut self, uh: &[Complex64]) -> Vec<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        let mut u: Vec<Complex64> = uh
            .iter()
            .zip(&self.mask)
            .map(|(v, &keep)| if keep { *v } else { Complex64::new(0.0, 0.0) })
            .collect();
        let mut ux: Vec<Complex64> = u.iter().zip(&self.k).map(|(v, &k)| i * k * v).collect();
        self.inverse(&mut u);
        self.inverse(&mut ux);
        let mut m: Vec<Complex64> = u
            .iter()
            .map(|v| Complex64::new(v.norm_sqr(), 0.0))
            .collect();
        self.forward(&mut m);
        for ((v, &k), &keep) in m.iter_mut().zip(&self.k).zip(&self.mask) {
            *v = if keep {
                i * k * *v
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        self.inverse(&mut m);
        let mut out: Vec<Complex64> = u
            .iter()
            .zip(&ux)
            .zip(&m)
            .zip(&self.gamma)
            .map(|(((&v, &vx), &mx), &g)| 6.0 * v.norm_sqr() * vx + 3.0 * v * mx.re - g * v)
            .collect();
        self.forward(&mut out);
        out
    }

    /// 2∫γ|u|² dx for physical samples `u`.
    pub fn absorption_rate(&self, u: &[Complex64]) -> f64 {
        2.0 * self.grid.dx()
            * u.iter()
                .zip(&self.gamma)
                .map(|(v, &g)| g * v.norm_sqr())
                .sum::<f64>()
    }
}

/// 6|u|²u_x + 3u(|u|²)_x on the periodic grid (spectral derivatives,
/// 2/3-rule dealiasing).
pub fn nonlinear_term(u: &[Complex64], grid: &SimGrid) -> Result<Vec<Complex64>> {
    if u.len() != grid.n_modes() {
        return Err(Error::InvalidGrid(format!(
            "field has {} samples for a grid of {}",
            u.len(),
            grid.n_modes()
        )));
    }
    let mut sp = Spectral::new(*grid, None)?;
    let mut uh = u.to_vec();
    sp.forward(&mut uh);
    let mut out = sp.rhs_hat(&uh);
    sp.inverse(&mut out);
    Ok(out)
}

/// Integrating-factor RK4 stepper: the linear flow û ↦ e^{−ik³h}û is exact.
#[derive(Debug)]
pub struct Stepper {
    sp: Spectral,
    /// e^{−ik³h/2} for recently used step sizes
    cache: Vec<(f64, Vec<Complex64>)>,
}

const FACTOR_CACHE: usize = 4;

impl Stepper {
    pub fn new(grid: SimGrid, sponge: Option<Sponge>) -> Result<Self> {
        Ok(Self {
            sp: Spectral::new(grid, sponge)?,
            cache: vec![],
        })
    }

    pub fn spectral(&mut self) -> &mut Spectral {
        &mut self.sp
    }

    fn factors(&mut self, h: f64) -> Vec<Complex64> {
        if let Some(pos) = self.cache.iter().position(|(c, _)| *c == h) {
            let hit = self.cache.remove(pos);
            self.cache.push(hit);
        } else {
            let f = self
                .sp
                .k
                .iter()
                .map(|&k| Complex64::from_polar(1.0, -k * k * k * h / 2.0))
                .collect();
            if self.cache.len() == FACTOR_CACHE {
                self.cache.remove(0);
            }
            self.cache.push((h, f));
        }
        self.cache.last().expect("just inserted").1.clone()
    }

    /// One step of size h on the spectrum `vh`.
    pub fn step_hat(&mut self, vh: &mut [Complex64], h: f64) {
        let e = self.factors(h);
        let n = vh.len();
        let a = self.sp.rhs_hat(vh);
        let mut tmp = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            tmp[j] = e[j] * (vh[j] + h / 2.0 * a[j]);
        }
        let b = self.sp.rhs_hat(&tmp);
        for j in 0..n {
            tmp[j] = e[j] * vh[j] + h / 2.0 * b[j];
        }
        let c = self.sp.rhs_hat(&tmp);
        for j in 0..n {
            tmp[j] = e[j] * e[j] * vh[j] + h * e[j] * c[j];
        }
        let d = self.sp.rhs_hat(&tmp);
        for j in 0..n {
            let e2 = e[j] * e[j];
            vh[j] = e2 * vh[j] + h / 6.0 * (e2 * a[j] + 2.0 * e[j] * (b[j] + c[j]) + d[j]);
        }
    }
}

/// Advances `state` by one step of size dt.
pub fn step(state: &FieldState, dt: f64, grid: &SimGrid) -> Result<FieldState> {
    step_with(state, dt, grid, None)
}

pub fn step_with(
    state: &FieldState,
    dt: f64,
    grid: &SimGrid,
    sponge: Option<Sponge>,
) -> Result<FieldState> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "dt must be positive, got {dt}"
        )));
    }
    if state.u.len() != grid.n_modes() {
        return Err(Error::InvalidGrid(format!(
            "state has {} samples for a grid of {}",
            state.u.len(),
            grid.n_modes()
        )));
    }
    let mut st = Stepper::new(*grid, sponge)?;
    let rate0 = st.sp.absorption_rate(&state.u);
    let mut vh = state.u.clone();
    st.sp.forward(&mut vh);
    st.step_hat(&mut vh, dt);
    st.sp.inverse(&mut vh);
    let t = state.t + dt;
    if vh.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::BlowUp { t });
    }
    let rate1 = st.sp.absorption_rate(&vh);
    Ok(FieldState {
        t,
        u: vh,
        absorbed: state.absorbed + 0.5 * dt * (rate0 + rate1),
    })
}
