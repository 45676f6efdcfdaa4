//! Adaptive Dormand–Prince 5(4) integration.

use nalgebra::{allocator::Allocator, ComplexField, DefaultAllocator, Dim, OMatrix};

use crate::error::{Error, Result};

/// State vectors the integrator can combine.
pub trait OdeState: Clone {
    /// self += a·x
    fn add_scaled(&mut self, a: f64, x: &Self);
    fn scaled(&self, a: f64) -> Self;
}

impl<T, R, C> OdeState for OMatrix<T, R, C>
where
    T: ComplexField<RealField = f64>,
    R: Dim,
    C: Dim,
    DefaultAllocator: Allocator<R, C>,
{
    fn add_scaled(&mut self, a: f64, x: &Self) {
        let a = T::from_real(a);
        for (s, v) in self.iter_mut().zip(x.iter()) {
            *s += v.clone() * a.clone();
        }
    }

    fn scaled(&self, a: f64) -> Self {
        self.map(|v| v * T::from_real(a))
    }
}

/// Butcher tableau of Dormand & Prince (1980).
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct Dopri5Options {
    /// Mixed absolute/relative local error tolerance per step.
    pub tol: f64,
    pub h_init: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Dopri5Options {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            h_init: 1e-2,
            h_max: f64::INFINITY,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Dopri5Stats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrates y' = f(x, y) from x0 to x1 (x1 > x0). `norm` measures the
/// error estimate; the step is accepted when norm(err) ≤ tol·(1 + norm(y)).
pub fn dopri5<Y, F, N>(
    mut f: F,
    norm: N,
    x0: f64,
    y0: Y,
    x1: f64,
    opts: Dopri5Options,
) -> Result<(Y, Dopri5Stats)>
where
    Y: OdeState,
    F: FnMut(f64, &Y) -> Y,
    N: Fn(&Y) -> f64,
{
    if !(x1 > x0) || !(opts.tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "dopri5 needs x1 > x0 and tol > 0 (x0 = {x0}, x1 = {x1}, tol = {})",
            opts.tol
        )));
    }
    let mut stats = Dopri5Stats::default();
    let mut x = x0;
    let mut y = y0;
    let mut h = opts.h_init.min(x1 - x0).min(opts.h_max);
    let h_min = 1e-14 * (x1 - x0).max(x0.abs()).max(x1.abs());
    let mut k1 = f(x, &y);
    while x < x1 {
        if stats.accepted + stats.rejected >= opts.max_steps {
            return Err(Error::StepUnderflow {
                x,
                h,
                tol: opts.tol,
            });
        }
        let last = x + h >= x1;
        if last {
            h = x1 - x;
        }
        let mut k: Vec<Y> = Vec::with_capacity(7);
        k.push(k1.clone());
        for s in 1..7 {
            let mut ys = y.clone();
            for (j, kj) in k.iter().enumerate().take(s) {
                if A[s][j] != 0.0 {
                    ys.add_scaled(h * A[s][j], kj);
                }
            }
            let xs = if s == 6 { x + h } else { x + C[s] * h };
            k.push(f(xs, &ys));
        }
        // y5 is the stage-7 argument (FSAL)
        let mut y5 = y.clone();
        for (j, kj) in k.iter().enumerate().take(6) {
            if A[6][j] != 0.0 {
                y5.add_scaled(h * A[6][j], kj);
            }
        }
        let mut err = k[0].scaled(h * E[0]);
        for (j, kj) in k.iter().enumerate().skip(1) {
            if E[j] != 0.0 {
                err.add_scaled(h * E[j], kj);
            }
        }
        let scale = 1.0 + norm(&y).max(norm(&y5));
        let ratio = norm(&err) / (opts.tol * scale);
        if !ratio.is_finite() {
            return Err(Error::StepUnderflow {
                x,
                h,
                tol: opts.tol,
            });
        }
        if ratio <= 1.0 {
            stats.accepted += 1;
            x = if last { x1 } else { x + h };
            y = y5;
            k1 = k.pop().expect("seven stages");
        } else {
            stats.rejected += 1;
        }
        let factor = if ratio == 0.0 {
            5.0
        } else {
            (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h * factor).min(opts.h_max);
        if h < h_min && x < x1 {
            return Err(Error::StepUnderflow {
                x,
                h,
                tol: opts.tol,
            });
        }
    }
    Ok((y, stats))
}
