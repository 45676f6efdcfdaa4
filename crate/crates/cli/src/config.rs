//! Run configuration: a flat text file, one `key = value` per line.
//!
//! Blank lines and everything after `#` are ignored. Lists are
//! comma-separated. Keys may appear at most once; unknown keys are errors.
//! Relative `profile_path` / `reflection_path` values resolve against the
//! directory containing the config file.
//!
//! | key | value | default |
//! |---|---|---|
//! | `profile_path` | path to a `x,re_u0,im_u0` CSV | required by scatter, asym, simulate, compare |
//! | `reflection_path` | cached `reflection.csv` for asym | none (computed) |
//! | `amplitude_scale` | real factor applied to the profile | 1 |
//! | `decay_tol` | allowed \|u0\| at the profile ends | 1e-12 |
//! | `k_window` | `k_min, k_max` | -3, 3 |
//! | `k_count` | nodes of the reflection table (≥ 3) | 801 |
//! | `zeta` | ray ζ = x/t | 1 |
//! | `t_list` | increasing positive times | 20, 40, 80 |
//! | `m_max` | admissible ζ ≤ m_max | 10 |
//! | `sim.half_width`, `sim.n_modes`, `sim.dt` | periodic box | 2000, 32768, 0.01 |
//! | `sim.cfl` | nonlinear step bound, 0 disables | 0.025 |
//! | `sim.sponge_width`, `sim.sponge_strength` | absorbing layer, width 0 disables | 600, 2 |
//! | `sim.mass_tol`, `sim.contamination_tol` | run guards, 0 disables | 1e-10, 1e-4 |
//! | `tol.ode`, `tol.quad` | ODE and Cauchy-integral tolerances | 1e-10, 1e-9 |
//! | `tol.symmetry` | scatter residual threshold | 1e-8 |
//! | `tol.budget` | modelcheck residual threshold | 1e-8 |
//! | `modelcheck.nu`, `modelcheck.r` | (ν, r) grid | 0.1, 0.3, 1 / 0.2, 1, 5 |
//! | `signature.extent`, `signature.count` | square [−e, e]², count² samples | 2, 101 |

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use ss_asymptotics::pde::{SimConfig, SimGrid, Sponge};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SimSettings {
    pub half_width: f64,
    pub n_modes: usize,
    pub dt: f64,
    pub cfl: f64,
    pub sponge_width: f64,
    pub sponge_strength: f64,
    pub mass_tol: f64,
    pub contamination_tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub ode_tol: f64,
    pub quad_tol: f64,
    pub symmetry: f64,
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub profile_path: Option<PathBuf>,
    pub reflection_path: Option<PathBuf>,
    pub amplitude_scale: f64,
    pub decay_tol: f64,
    pub k_window: (f64, f64),
    pub k_count: usize,
    pub zeta: f64,
    pub t_list: Vec<f64>,
    pub m_max: f64,
    pub sim: SimSettings,
    pub tolerances: Tolerances,
    pub model_nu: Vec<f64>,
    pub model_r: Vec<f64>,
    pub signature_extent: f64,
    pub signature_count: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            profile_path: None,
            reflection_path: None,
            amplitude_scale: 1.0,
            decay_tol: ss_asymptotics::scattering::DEFAULT_DECAY_TOL,
            k_window: (-3.0, 3.0),
            k_count: 801,
            zeta: 1.0,
            t_list: vec![20.0, 40.0, 80.0],
            m_max: 10.0,
            sim: SimSettings {
                half_width: 2000.0,
                n_modes: 32768,
                dt: 0.01,
                cfl: 0.025,
                sponge_width: 600.0,
                sponge_strength: 2.0,
                mass_tol: 1e-10,
                contamination_tol: 1e-4,
            },
            tolerances: Tolerances {
                ode_tol: 1e-10,
                quad_tol: 1e-9,
                symmetry: 1e-8,
                budget: 1e-8,
            },
            model_nu: vec![0.1, 0.3, 1.0],
            model_r: vec![0.2, 1.0, 5.0],
            signature_extent: 2.0,
            signature_count: 101,
        }
    }
}

fn parse_f64(line: usize, v: &str) -> Result<f64> {
    let x: f64 = v.parse().map_err(|_| CliError::Config {
        line,
        msg: format!("expected a number, got {v:?}"),
    })?;
    if !x.is_finite() {
        return Err(CliError::Config {
            line,
            msg: format!("non-finite value {v:?}"),
        });
    }
    Ok(x)
}

fn parse_usize(line: usize, v: &str) -> Result<usize> {
    v.parse().map_err(|_| CliError::Config {
        line,
        msg: format!("expected a non-negative integer, got {v:?}"),
    })
}

fn parse_list(line: usize, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|p| parse_f64(line, p.trim())).collect()
}

impl RunConfig {
    /// Parses config text; relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut seen = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| CliError::Config {
                line,
                msg: format!("expected `key = value`, got {content:?}"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(CliError::Config {
                    line,
                    msg: format!("empty value for {key:?}"),
                });
            }
            if !seen.insert(key.to_string()) {
                return Err(CliError::Config {
                    line,
                    msg: format!("duplicate key {key:?}"),
                });
            }
            cfg.set(line, key, value, base)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&text, base)
    }

    fn set(&mut self, line: usize, key: &str, v: &str, base: &Path) -> Result<()> {
        let f = |v| parse_f64(line, v);
        match key {
            "profile_path" => self.profile_path = Some(base.join(v)),
            "reflection_path" => self.reflection_path = Some(base.join(v)),
            "amplitude_scale" => self.amplitude_scale = f(v)?,
            "decay_tol" => self.decay_tol = f(v)?,
            "k_window" => match parse_list(line, v)?.as_slice() {
                &[a, b] => self.k_window = (a, b),
                _ => {
                    return Err(CliError::Config {
                        line,
                        msg: "k_window needs two values".into(),
                    })
                }
            },
            "k_count" => self.k_count = parse_usize(line, v)?,
            "zeta" => self.zeta = f(v)?,
            "t_list" => self.t_list = parse_list(line, v)?,
            "m_max" => self.m_max = f(v)?,
            "sim.half_width" => self.sim.half_width = f(v)?,
            "sim.n_modes" => self.sim.n_modes = parse_usize(line, v)?,
            "sim.dt" => self.sim.dt = f(v)?,
            "sim.cfl" => self.sim.cfl = f(v)?,
            "sim.sponge_width" => self.sim.sponge_width = f(v)?,
            "sim.sponge_strength" => self.sim.sponge_strength = f(v)?,
            "sim.mass_tol" => self.sim.mass_tol = f(v)?,
            "sim.contamination_tol" => self.sim.contamination_tol = f(v)?,
            "tol.ode" => self.tolerances.ode_tol = f(v)?,
            "tol.quad" => self.tolerances.quad_tol = f(v)?,
            "tol.symmetry" => self.tolerances.symmetry = f(v)?,
            "tol.budget" => self.tolerances.budget = f(v)?,
            "modelcheck.nu" => self.model_nu = parse_list(line, v)?,
            "modelcheck.r" => self.model_r = parse_list(line, v)?,
            "signature.extent" => self.signature_extent = f(v)?,
            "signature.count" => self.signature_count = parse_usize(line, v)?,
            _ => {
                return Err(CliError::Config {
                    line,
                    msg: format!("unknown key {key:?}"),
                })
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::Invalid(msg));
        let t = &self.tolerances;
        for (name, v) in [
            ("tol.ode", t.ode_tol),
            ("tol.quad", t.quad_tol),
            ("tol.symmetry", t.symmetry),
            ("tol.budget", t.budget),
            ("decay_tol", self.decay_tol),
        ] {
            if !(v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if self.k_count < 3 {
            return bad(format!("k_count must be at least 3, got {}", self.k_count));
        }
        if !(self.k_window.0 < self.k_window.1) {
            return bad(format!(
                "k_window must be increasing, got {:?}",
                self.k_window
            ));
        }
        if self.t_list.is_empty()
            || self.t_list[0] <= 0.0
            || !self.t_list.windows(2).all(|w| w[1] > w[0])
        {
            return bad("t_list must be positive and strictly increasing".into());
        }
        if !(self.m_max > 0.0) {
            return bad(format!("m_max must be positive, got {}", self.m_max));
        }
        if self.signature_count < 2 || !(self.signature_extent > 0.0) {
            return bad("signature grid needs count ≥ 2 and positive extent".into());
        }
        let s = &self.sim;
        if s.cfl < 0.0
            || s.sponge_width < 0.0
            || s.sponge_strength < 0.0
            || s.mass_tol < 0.0
            || s.contamination_tol < 0.0
        {
            return bad("sim settings must be non-negative".into());
        }
        Ok(())
    }

    pub fn profile_path(&self) -> Result<&Path> {
        self.profile_path
            .as_deref()
            .ok_or(CliError::MissingKey("profile_path"))
    }

    pub fn sim_config(&self) -> Result<SimConfig> {
        let s = &self.sim;
        let positive = |v: f64| (v > 0.0).then_some(v);
        Ok(SimConfig {
            grid: SimGrid::new(s.half_width, s.n_modes)?,
            dt: s.dt,
            cfl: positive(s.cfl),
            sponge: (s.sponge_width > 0.0 && s.sponge_strength > 0.0).then_some(Sponge {
                width: s.sponge_width,
                strength: s.sponge_strength,
            }),
            mass_tol: positive(s.mass_tol),
            contamination_tol: positive(s.contamination_tol),
            edge_fraction: 0.02,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RunConfig> {
        RunConfig::parse(text, Path::new("/data"))
    }

    #[test]
    fn empty_text_gives_defaults() {
        assert_eq!(parse("# nothing\n\n").unwrap(), RunConfig::default());
    }

    #[test]
    fn keys_and_comments() {
        let c = parse(
            "profile_path = g.csv  # relative\nzeta=2\nt_list = 10, 20,40\nk_window = -1.5, 1.5\nsim.n_modes = 1024\n",
        )
        .unwrap();
        assert_eq!(c.profile_path, Some(PathBuf::from("/data/g.csv")));
        assert_eq!(c.zeta, 2.0);
        assert_eq!(c.t_list, vec![10.0, 20.0, 40.0]);
        assert_eq!(c.k_window, (-1.5, 1.5));
        assert_eq!(c.sim.n_modes, 1024);
    }

    #[test]
    fn errors_carry_line_numbers() {
        for (text, line) in [
            ("zeta = 1\nbogus = 3\n", 2),
            ("zeta = one\n", 1),
            ("zeta 1\n", 1),
            ("zeta = 1\nzeta = 2\n", 2),
            ("\n\nk_window = 1\n", 3),
            ("zeta =\n", 1),
            ("zeta = inf\n", 1),
        ] {
            match parse(text) {
                Err(CliError::Config { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn invariants_are_enforced() {
        for text in [
            "k_count = 2",
            "t_list = 20, 10",
            "t_list = 0, 10",
            "tol.ode = 0",
            "k_window = 1, -1",
            "sim.cfl = -1",
        ] {
            assert!(parse(text).is_err(), "{text}");
        }
    }

    #[test]
    fn sim_config_toggles() {
        let c = parse("sim.sponge_width = 0\nsim.cfl = 0\nsim.mass_tol = 0\nsim.half_width = 40\nsim.n_modes = 512").unwrap();
        let s = c.sim_config().unwrap();
        assert!(s.sponge.is_none() && s.cfl.is_none() && s.mass_tol.is_none());
        assert_eq!(s.contamination_tol, Some(1e-4));
        assert!(parse("sim.n_modes = 100").unwrap().sim_config().is_err());
    }

    #[test]
    fn missing_profile() {
        assert!(matches!(
            parse("").unwrap().profile_path(),
            Err(CliError::MissingKey(_))
        ));
    }
}
