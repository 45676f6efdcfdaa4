//! Subcommands. Each writes its CSV artifacts into the output directory and
//! returns summary lines for stdout; a failed check is reported as
//! [`CliError::Guard`] after the outputs are written.

use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use ss_asymptotics::asymptotics::{
    signature_sample, stationary_points, u_leading, AsymptoticConfig, AsymptoticContext,
    StationaryData,
};
use ss_asymptotics::model_rhp::{jump_residual_ray, ModelParameters};
use ss_asymptotics::pde::{compare_asymptotic, initial_state, simulate, FieldState, SimConfig};
use ss_asymptotics::scattering::{
    reflection, scattering_matrix, DeltaOptions, InitialProfile, KGrid, ReflectionTable, Row2,
    ScatteringMatrix,
};

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::io::{
    fmt_f64, read_profile, read_reflection, write_reflection, CsvOut, COMPARISON_HEADER,
    CURVE_HEADER, MODELCHECK_HEADER, SIGNATURE_HEADER, SNAPSHOT_HEADER,
};

pub fn load_profile(cfg: &RunConfig) -> Result<InitialProfile> {
    let p = read_profile(cfg.profile_path()?, cfg.decay_tol)?;
    if cfg.amplitude_scale == 1.0 {
        Ok(p)
    } else {
        Ok(p.scaled(cfg.amplitude_scale)?)
    }
}

fn k_nodes(cfg: &RunConfig) -> Result<Vec<f64>> {
    Ok(KGrid::uniform(cfg.k_window.0, cfg.k_window.1, cfg.k_count).nodes()?)
}

fn asym_config(cfg: &RunConfig) -> AsymptoticConfig {
    AsymptoticConfig {
        m_max: cfg.m_max,
        tol: cfg.tolerances.symmetry,
    }
}

fn delta_options(cfg: &RunConfig) -> DeltaOptions {
    DeltaOptions {
        quad_tol: cfg.tolerances.quad_tol,
        ..DeltaOptions::default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryReport {
    pub det: f64,
    pub unitarity: f64,
    pub conjugation: f64,
    pub rho_symmetry: f64,
}

impl SymmetryReport {
    fn lines(&self) -> Vec<String> {
        vec![
            format!("max_det_residual = {}", fmt_f64(self.det)),
            format!("max_unitarity_residual = {}", fmt_f64(self.unitarity)),
            format!("max_conjugation_residual = {}", fmt_f64(self.conjugation)),
            format!("max_rho_symmetry_residual = {}", fmt_f64(self.rho_symmetry)),
        ]
    }

    fn worst(&self) -> f64 {
        self.det
            .max(self.unitarity)
            .max(self.conjugation)
            .max(self.rho_symmetry)
    }
}

fn matrices(profile: &InitialProfile, k: &[f64], tol: f64) -> Result<Vec<ScatteringMatrix>> {
    Ok(k.par_iter()
        .map(|&q| scattering_matrix(profile, q, tol))
        .collect::<ss_asymptotics::Result<Vec<_>>>()?)
}

/// Writes `reflection.csv` and `scatter_report.txt`.
pub fn scatter(cfg: &RunConfig, out: &Path) -> Result<Vec<String>> {
    let profile = load_profile(cfg)?;
    let k = k_nodes(cfg)?;
    let tol = cfg.tolerances.ode_tol;
    let s = matrices(&profile, &k, tol)?;
    let n = k.len();
    let mirrored = (0..n).all(|i| (k[i] + k[n - 1 - i]).abs() <= 1e-12 * (1.0 + k[i].abs()));
    let minus = if mirrored {
        s.iter().rev().cloned().collect()
    } else {
        let neg: Vec<f64> = k.iter().map(|q| -q).collect();
        matrices(&profile, &neg, tol)?
    };
    let rho = s
        .iter()
        .map(reflection)
        .collect::<ss_asymptotics::Result<Vec<Row2>>>()?;
    let table = ReflectionTable::new(k, rho)?;
    let fold = |f: &dyn Fn(usize) -> f64| (0..n).map(f).fold(0.0, f64::max);
    let report = SymmetryReport {
        det: fold(&|i| s[i].det_residual()),
        unitarity: fold(&|i| s[i].unitarity_residual()),
        conjugation: fold(&|i| s[i].conjugation_residual(&minus[i])),
        rho_symmetry: table.symmetry_residual(),
    };
    let mut lines = report.lines();
    let verdict = report.worst() <= cfg.tolerances.symmetry;
    lines.push(format!(
        "symmetry_check = {}",
        if verdict { "pass" } else { "fail" }
    ));
    write_reflection(&out.join("reflection.csv"), &table, &lines)?;
    let report_path = out.join("scatter_report.txt");
    std::fs::write(&report_path, lines.join("\n") + "\n")
        .map_err(|e| CliError::io(&report_path, e))?;
    if !verdict {
        return Err(CliError::Guard(format!(
            "symmetry residual {:e} exceeds {:e}",
            report.worst(),
            cfg.tolerances.symmetry
        )));
    }
    Ok(lines)
}

/// Stationary-point data for the configured ray, from a cached table when
/// `reflection_path` is set.
pub fn stationary_data(cfg: &RunConfig, profile: &InitialProfile) -> Result<StationaryData> {
    let acfg = asym_config(cfg);
    if !(cfg.zeta > 0.0 && cfg.zeta <= cfg.m_max) {
        return Err(ss_asymptotics::Error::ZetaOutOfRange {
            zeta: cfg.zeta,
            max: cfg.m_max,
        }
        .into());
    }
    let table = match &cfg.reflection_path {
        Some(p) => read_reflection(p)?,
        None => {
            let k = k_nodes(cfg)?;
            let s = matrices(profile, &k, cfg.tolerances.ode_tol)?;
            let rho = s
                .iter()
                .map(reflection)
                .collect::<ss_asymptotics::Result<Vec<Row2>>>()?;
            ReflectionTable::new(k, rho)?
        }
    };
    Ok(StationaryData::compute(
        profile,
        &table,
        cfg.zeta,
        cfg.tolerances.ode_tol,
        &delta_options(cfg),
        &acfg,
    )?)
}

fn leading(
    cfg: &RunConfig,
    data: &StationaryData,
    zeta: f64,
    t: f64,
) -> Result<(Complex64, Complex64)> {
    let ctx = AsymptoticContext::new(
        StationaryData {
            zeta,
            ..data.clone()
        },
        t,
        &asym_config(cfg),
    )?;
    let lo = u_leading(&ctx, &data.rho_raw)?;
    Ok((lo.u_as, lo.u_as_over_sqrt_t))
}

/// Writes `asymptotic.csv` with ν, χ(±k0) and k0 in the comment block.
pub fn asym(cfg: &RunConfig, out: &Path) -> Result<Vec<String>> {
    let profile = load_profile(cfg)?;
    let data = stationary_data(cfg, &profile)?;
    let mut rows = vec![];
    for &t in &cfg.t_list {
        // u_leading fails with RouteMismatch if the two evaluations disagree
        let (u, u_lead) = leading(cfg, &data, cfg.zeta, t)?;
        rows.push([t, cfg.zeta * t, cfg.zeta, u.re, u.im, u_lead.norm()]);
    }
    let lines = vec![
        format!("zeta = {}", fmt_f64(data.zeta)),
        format!("k0 = {}", fmt_f64(data.k0)),
        format!("nu = {}", fmt_f64(data.nu)),
        format!(
            "chi_plus = {} {}i",
            fmt_f64(data.chi_plus.re),
            fmt_f64(data.chi_plus.im)
        ),
        format!(
            "chi_minus = {} {}i",
            fmt_f64(data.chi_minus.re),
            fmt_f64(data.chi_minus.im)
        ),
        "route_check = pass".to_string(),
    ];
    let mut w = CsvOut::create(&out.join("asymptotic.csv"), &lines, &CURVE_HEADER)?;
    for r in &rows {
        w.row(r)?;
    }
    w.finish()?;
    Ok(lines)
}

fn run_simulation(
    cfg: &RunConfig,
    profile: &InitialProfile,
) -> Result<(SimConfig, Vec<FieldState>, f64)> {
    let sim = cfg.sim_config()?;
    let t_end = *cfg.t_list.last().expect("validated non-empty");
    let mass0 = initial_state(profile, &sim.grid)?.mass(&sim.grid);
    let snaps = simulate(profile, &sim, t_end, &cfg.t_list)?;
    Ok((sim, snaps, mass0))
}

/// Writes `snapshots.csv` with every grid point at every time in `t_list`.
pub fn simulate_cmd(cfg: &RunConfig, out: &Path) -> Result<Vec<String>> {
    let profile = load_profile(cfg)?;
    let (sim, snaps, mass0) = run_simulation(cfg, &profile)?;
    let xs = sim.grid.xs();
    let mut w = CsvOut::create(&out.join("snapshots.csv"), &[], &SNAPSHOT_HEADER)?;
    let mut lines = vec![];
    for s in &snaps {
        for (x, u) in xs.iter().zip(&s.u) {
            w.row(&[s.t, *x, u.re, u.im])?;
        }
        let drift = s.mass(&sim.grid) + s.absorbed - mass0;
        lines.push(format!(
            "t = {}: mass drift {drift:.3e}, absorbed {:.3e}",
            s.t, s.absorbed
        ));
    }
    w.finish()?;
    Ok(lines)
}

/// Writes `comparison.csv`; the fitted exponent goes into the comment block
/// (`undefined` when some error is exactly zero).
pub fn compare(cfg: &RunConfig, out: &Path) -> Result<Vec<String>> {
    let profile = load_profile(cfg)?;
    let data = stationary_data(cfg, &profile)?;
    let (sim, snaps, _) = run_simulation(cfg, &profile)?;
    let table = compare_asymptotic(&snaps, &sim.grid, &[cfg.zeta], cfg.m_max, |z, t| {
        leading(cfg, &data, z, t)
            .map(|(_, l)| l)
            .map_err(|e| match e {
                CliError::Numeric(n) => n,
                other => ss_asymptotics::Error::InvalidArgument(other.to_string()),
            })
    })?;
    let lines: Vec<String> = table
        .exponents
        .iter()
        .map(|(z, p)| match p {
            Some(p) => format!("fitted_exponent zeta = {} p = {}", fmt_f64(*z), fmt_f64(*p)),
            None => format!("fitted_exponent zeta = {} p = undefined", fmt_f64(*z)),
        })
        .collect();
    let mut w = CsvOut::create(&out.join("comparison.csv"), &lines, &COMPARISON_HEADER)?;
    for r in &table.rows {
        w.row(&[
            r.t,
            r.zeta,
            r.x,
            r.u_num.norm(),
            r.u_as_over_sqrt_t.norm(),
            r.abs_err,
        ])?;
    }
    w.finish()?;
    Ok(lines)
}

/// Writes `modelcheck.csv` with the ray-jump residual over the (ν, r) grid.
pub fn modelcheck(cfg: &RunConfig, out: &Path) -> Result<Vec<String>> {
    let dir = Row2::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
    let mut w = CsvOut::create(&out.join("modelcheck.csv"), &[], &MODELCHECK_HEADER)?;
    let mut worst = 0.0f64;
    for &nu in &cfg.model_nu {
        let p = ModelParameters::with_direction(nu, dir)?;
        for &r in &cfg.model_r {
            let res = jump_residual_ray(&p, r)?;
            worst = worst.max(res);
            w.row(&[nu, r, res])?;
        }
    }
    w.finish()?;
    let line = format!("max_jump_residual = {}", fmt_f64(worst));
    if !(worst <= cfg.tolerances.budget) {
        return Err(CliError::Guard(format!(
            "{line} exceeds {:e}",
            cfg.tolerances.budget
        )));
    }
    Ok(vec![line])
}

/// Writes `signature.csv`: sign of Re Φ on a square grid in the k-plane.
pub fn signature(cfg: &RunConfig, out: &Path) -> Result<Vec<String>> {
    stationary_points(cfg.zeta)?;
    let n = cfg.signature_count;
    let e = cfg.signature_extent;
    let mut w = CsvOut::create(
        &out.join("signature.csv"),
        &[format!("zeta = {}", fmt_f64(cfg.zeta))],
        &SIGNATURE_HEADER,
    )?;
    let mut counts = [0usize; 3];
    for i in 0..n {
        for j in 0..n {
            let k = Complex64::new(
                -e + 2.0 * e * i as f64 / (n - 1) as f64,
                -e + 2.0 * e * j as f64 / (n - 1) as f64,
            );
            let s = signature_sample(cfg.zeta, k);
            counts[(s + 1) as usize] += 1;
            w.row(&[k.re, k.im, f64::from(s)])?;
        }
    }
    w.finish()?;
    Ok(vec![format!(
        "negative = {}, zero = {}, positive = {}",
        counts[0], counts[1], counts[2]
    )])
}
