use std::f64::consts::PI;

use nalgebra::RowVector2;
use num_complex::Complex64;
use rayon::prelude::*;

use super::{scattering_matrix, InitialProfile, ScatteringMatrix};
use crate::error::{Error, Result};

pub type Row2 = RowVector2<Complex64>;

/// |s33| below this is treated as a zero of s33 on the real axis.
pub const S33_ZERO_GUARD: f64 = 1e-6;

/// ρ = (s31/s33, s32/s33).
pub fn reflection(s: &ScatteringMatrix) -> Result<Row2> {
    reflection_guarded(s, S33_ZERO_GUARD)
}

pub fn reflection_guarded(s: &ScatteringMatrix, zero_guard: f64) -> Result<Row2> {
    let s33 = s.s[(2, 2)];
    if s33.norm() < zero_guard {
        return Err(Error::NearZeroS33 {
            k: s.k,
            modulus: s33.norm(),
        });
    }
    Ok(Row2::new(s.s[(2, 0)] / s33, s.s[(2, 1)] / s33))
}

/// ρρ† for a row vector.
pub fn norm_sq(rho: &Row2) -> f64 {
    rho[0].norm_sqr() + rho[1].norm_sqr()
}

/// (ρ1, ρ2) ↦ (conj ρ2, conj ρ1): the value at −k implied by the symmetry.
pub fn swap_conj(rho: &Row2) -> Row2 {
    Row2::new(rho[1].conj(), rho[0].conj())
}

/// ν = ln(1 + ρρ†) / 2π.
pub fn nu_of(rho_k0: &Row2) -> f64 {
    norm_sq(rho_k0).ln_1p() / (2.0 * PI)
}

/// Spectral nodes for a reflection table.
#[derive(Debug, Clone, PartialEq)]
pub struct KGrid {
    pub k_min: f64,
    pub k_max: f64,
    pub count: usize,
    /// Optional extra nodes clustered around ±k0: (k0, half-width, count per side).
    pub refine: Option<(f64, f64, usize)>,
}

impl KGrid {
    pub fn uniform(k_min: f64, k_max: f64, count: usize) -> Self {
        Self {
            k_min,
            k_max,
            count,
            refine: None,
        }
    }

    /// 801 nodes on [−3k0 − 1, 3k0 + 1].
    pub fn default_for(k0: f64) -> Self {
        let w = 3.0 * k0 + 1.0;
        Self::uniform(-w, w, 801)
    }

    pub fn nodes(&self) -> Result<Vec<f64>> {
        if self.count < 3 || !(self.k_min < self.k_max) {
            return Err(Error::InvalidArgument(format!(
                "k-grid needs count >= 3 and k_min < k_max (got {} on [{}, {}])",
                self.count, self.k_min, self.k_max
            )));
        }
        let mut k: Vec<f64> = (0..self.count)
            .map(|i| self.k_min + (self.k_max - self.k_min) * i as f64 / (self.count - 1) as f64)
            .collect();
        if let Some((k0, half, m)) = self.refine {
            for c in [-k0, k0] {
                for j in 0..=2 * m {
                    let t = c - half + half * j as f64 / m as f64;
                    if t > self.k_min && t < self.k_max {
                        k.push(t);
                    }
                }
            }
            k.sort_by(f64::total_cmp);
            let span = self.k_max - self.k_min;
            k.dedup_by(|a, b| (*a - *b).abs() < 1e-12 * span);
        }
        Ok(k)
    }
}

/// ρ(k) sampled on real nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionTable {
    k_nodes: Vec<f64>,
    rho: Vec<Row2>,
    rho_norm_sq: Vec<f64>,
}

impl ReflectionTable {
    pub fn new(k_nodes: Vec<f64>, rho: Vec<Row2>) -> Result<Self> {
        if k_nodes.len() != rho.len() || k_nodes.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "reflection table needs >= 3 matching nodes and values (got {} and {})",
                k_nodes.len(),
                rho.len()
            )));
        }
        if !k_nodes.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::InvalidArgument(
                "reflection table nodes must be strictly increasing".into(),
            ));
        }
        let rho_norm_sq = rho.iter().map(norm_sq).collect();
        Ok(Self {
            k_nodes,
            rho,
            rho_norm_sq,
        })
    }

    /// Computes ρ at every node of `grid` (in parallel).
    pub fn compute(profile: &InitialProfile, grid: &KGrid, ode_tol: f64) -> Result<Self> {
        let k = grid.nodes()?;
        let rho = k
            .par_iter()
            .map(|&kk| scattering_matrix(profile, kk, ode_tol).and_then(|s| reflection(&s)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, rho)
    }

    pub fn len(&self) -> usize {
        self.k_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k_nodes.is_empty()
    }

    pub fn k_nodes(&self) -> &[f64] {
        &self.k_nodes
    }

    pub fn rho(&self) -> &[Row2] {
        &self.rho
    }

    pub fn rho_norm_sq(&self) -> &[f64] {
        &self.rho_norm_sq
    }

    /// max ‖ρ(−k) − swap(conj ρ(k))‖ over node pairs mirrored about 0.
    /// Nodes without a mirror partner (to 1e-12) are skipped.
    pub fn symmetry_residual(&self) -> f64 {
        let span = self.k_nodes[self.len() - 1] - self.k_nodes[0];
        let mut worst: f64 = 0.0;
        for (i, &k) in self.k_nodes.iter().enumerate() {
            if k < 0.0 {
                continue;
            }
            let j = self.k_nodes.partition_point(|&q| q < -k - 1e-12 * span);
            if j < self.len() && (self.k_nodes[j] + k).abs() <= 1e-12 * span {
                worst = worst.max((self.rho[j] - swap_conj(&self.rho[i])).norm());
            }
        }
        worst
    }
}
