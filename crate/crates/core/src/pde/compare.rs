use num_complex::Complex64;

use super::{interpolate_hat, FieldState, SimGrid, Spectral};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub t: f64,
    pub zeta: f64,
    pub x: f64,
    pub u_num: Complex64,
    pub u_as_over_sqrt_t: Complex64,
    pub abs_err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
    /// Fitted p in e ≈ C·t^p per ζ; `None` when undefined (some e = 0).
    pub exponents: Vec<(f64, Option<f64>)>,
}

impl ComparisonTable {
    pub fn rows_for(&self, zeta: f64) -> impl Iterator<Item = &ComparisonRow> {
        self.rows.iter().filter(move |r| r.zeta == zeta)
    }
}

/// Least-squares slope of ln e against ln t.
pub fn fit_exponent(t: &[f64], e: &[f64]) -> Option<f64> {
    if t.len() < 2 || t.len() != e.len() || e.iter().any(|&v| !(v > 0.0)) {
        return None;
    }
    let lx: Vec<f64> = t.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = e.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Compares snapshots with the leading term along each ray x = ζt.
/// `leading(ζ, t)` must return u_as/√t; every ζ must lie in (0, m_max].
pub fn compare_asymptotic<F>(
    snapshots: &[FieldState],
    grid: &SimGrid,
    zetas: &[f64],
    m_max: f64,
    mut leading: F,
) -> Result<ComparisonTable>
where
    F: FnMut(f64, f64) -> Result<Complex64>,
{
    let mut times: Vec<f64> = snapshots.iter().map(|s| s.t).collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    if times.len() < 3 {
        return Err(Error::InsufficientSnapshots {
            needed: 3,
            got: times.len(),
        });
    }
    if let Some(&z) = zetas.iter().find(|&&z| !(z > 0.0 && z <= m_max)) {
        return Err(Error::ZetaOutOfRange {
            zeta: z,
            max: m_max,
        });
    }
    let mut sp = Spectral::new(*grid, None)?;
    let mut rows = vec![];
    for snap in snapshots {
        let mut uh = snap.u.clone();
        sp.forward(&mut uh);
        for &zeta in zetas {
            let x = zeta * snap.t;
            if x.abs() >= grid.half_width() {
                return Err(Error::InvalidGrid(format!(
                    "observation point x = {x} lies outside the box"
                )));
            }
            let u_num = interpolate_hat(&uh, grid, x);
            let u_as = leading(zeta, snap.t)?;
            rows.push(ComparisonRow {
                t: snap.t,
                zeta,
                x,
                u_num,
                u_as_over_sqrt_t: u_as,
                abs_err: (u_num - u_as).norm(),
            });
        }
    }
    let exponents = zetas
        .iter()
        .map(|&z| {
            let (t, e): (Vec<f64>, Vec<f64>) = rows
                .iter()
                .filter(|r| r.zeta == z)
                .map(|r| (r.t, r.abs_err))
                .unzip();
            (z, fit_exponent(&t, &e))
        })
        .collect();
    Ok(ComparisonTable { rows, exponents })
}
