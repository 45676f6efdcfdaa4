//! Acceptance suite. Prints one PASS/FAIL line per criterion to stderr
//! (bypassing the test harness capture) and fails if any criterion fails.

use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use ss_asymptotics::asymptotics::{
    beta_factors, signature_sample, stationary_points, u_leading, AsymptoticConfig,
    AsymptoticContext, StationaryData,
};
use ss_asymptotics::model_rhp::{jump_residual_ray, psi22_weber_residual, ModelParameters, Sector};
use ss_asymptotics::pde::{
    compare_asymptotic, initial_state, linear_evolution, simulate, FieldState, SimConfig, SimGrid,
    Stepper,
};
use ss_asymptotics::scattering::{
    chi_of, det_delta, reflection, scattering_matrix, DeltaOptions, Endpoint, InitialProfile,
    KGrid, ReflectionTable, Row2, ScatteringMatrix,
};
use ss_asymptotics::specfun::{pcf_identities_residual, weber_residual};
use ss_asymptotics::Result;

const ODE_TOL: f64 = 1e-10;

struct Outcome {
    id: u8,
    name: &'static str,
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(id: u8, name: &'static str, checks: &[(bool, String)]) -> Self {
        Self {
            id,
            name,
            pass: checks.iter().all(|(ok, _)| *ok),
            detail: checks
                .iter()
                .map(|(_, d)| d.as_str())
                .collect::<Vec<_>>()
                .join("; "),
        }
    }

    fn from_result(id: u8, name: &'static str, r: Result<Vec<(bool, String)>>) -> Self {
        match r {
            Ok(checks) => Self::new(id, name, &checks),
            Err(e) => Self {
                id,
                name,
                pass: false,
                detail: format!("error: {e}"),
            },
        }
    }

    fn emit(&self) {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let mut err = std::io::stderr().lock();
        // the harness leaves "test acceptance ... " open on the current line
        let _ = writeln!(
            err,
            "\ncriterion {} [{verdict}] {}: {}",
            self.id, self.name, self.detail
        );
    }
}

fn check(ok: bool, detail: String) -> (bool, String) {
    (ok, detail)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// s(k) on 801 nodes of [−3, 3] for 0.8·e^{−x²}; the node set is symmetric.
struct SymmetrySuite {
    k: Vec<f64>,
    s: Vec<ScatteringMatrix>,
    seconds: f64,
}

fn symmetry_suite() -> Result<SymmetrySuite> {
    let start = Instant::now();
    let profile = InitialProfile::gaussian(0.8, 12.0, 2401)?;
    let k = KGrid::uniform(-3.0, 3.0, 801).nodes()?;
    let s = k
        .par_iter()
        .map(|&q| scattering_matrix(&profile, q, ODE_TOL))
        .collect::<Result<Vec<_>>>()?;
    Ok(SymmetrySuite {
        k,
        s,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn criterion_1(suite: &SymmetrySuite) -> Vec<(bool, String)> {
    let n = suite.s.len();
    let det = suite.s.iter().map(|s| s.det_residual()).fold(0.0, f64::max);
    let unit = suite
        .s
        .iter()
        .map(|s| s.unitarity_residual())
        .fold(0.0, f64::max);
    let conj = (0..n)
        .map(|i| suite.s[i].conjugation_residual(&suite.s[n - 1 - i]))
        .fold(0.0, f64::max);
    vec![
        check(det <= 1e-8, format!("max |det s - 1| = {det:.2e}")),
        check(unit <= 1e-8, format!("max |s's - I| = {unit:.2e}")),
        check(
            conj <= 1e-8,
            format!("max conjugation residual = {conj:.2e}"),
        ),
        check(suite.seconds <= 120.0, format!("{:.1} s", suite.seconds)),
    ]
}

fn criterion_2() -> Result<Vec<(bool, String)>> {
    let eps = 1e-3;
    let profile = InitialProfile::gaussian(eps, 12.0, 2401)?;
    let k = KGrid::uniform(-2.0, 2.0, 201).nodes()?;
    let worst = k
        .par_iter()
        .map(|&q| {
            let s = scattering_matrix(&profile, q, ODE_TOL)?;
            // ∫ ε e^{−x²} e^{−2ikx} dx = ε√π e^{−k²}
            let born = eps * PI.sqrt() * (-q * q).exp();
            Ok((s.s[(2, 0)] + born).norm())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(vec![check(
        worst <= 5e-6,
        format!("sup |s31 + born| = {worst:.2e}"),
    )])
}

/// Second-order Richardson extrapolation of g(ε) to ε = 0 from ε, ε/2, ε/4.
fn richardson<G: Fn(f64) -> Result<Complex64>>(g: G, e: f64) -> Result<Complex64> {
    let (a, b, cc) = (g(e)?, g(e / 2.0)?, g(e / 4.0)?);
    let r1 = 2.0 * b - a;
    let r2 = 2.0 * cc - b;
    Ok((4.0 * r2 - r1) / 3.0)
}

fn criterion_3(suite: &SymmetrySuite) -> Result<Vec<(bool, String)>> {
    let rho = suite
        .s
        .iter()
        .map(reflection)
        .collect::<Result<Vec<Row2>>>()?;
    let table = ReflectionTable::new(suite.k.clone(), rho)?;
    let opts = DeltaOptions::default();
    let (_, k0) = stationary_points(1.0)?;
    let cp = chi_of(&table, k0, Endpoint::Plus, &opts)?;
    let cm = chi_of(&table, k0, Endpoint::Minus, &opts)?;
    let re = cp.re.abs().max(cm.re.abs());

    let profile = InitialProfile::gaussian(0.8, 12.0, 2401)?;
    let mut jump = 0.0f64;
    for frac in [-0.8, -0.4, 0.0, 0.3, 0.7] {
        let k = frac * k0;
        let ratio = richardson(
            |e| Ok(det_delta(&table, k0, c(k, e), &opts)? / det_delta(&table, k0, c(k, -e), &opts)?),
            1e-3,
        )?;
        let rho = reflection(&scattering_matrix(&profile, k, ODE_TOL)?)?;
        jump = jump.max((ratio - (1.0 + rho.norm_squared())).norm());
    }
    Ok(vec![
        check(re <= 1e-9, format!("max |Re chi(+-k0)| = {re:.2e}")),
        check(jump <= 1e-6, format!("Plemelj ratio error = {jump:.2e}")),
    ])
}

fn criterion_4() -> Result<Vec<(bool, String)>> {
    let cfg = AsymptoticConfig::default();
    let dir = Row2::new(c(0.6, -0.2), c(-0.1, 0.5));
    let mut worst = 0.0f64;
    for nu in [0.05, 0.1, 0.5, 1.0, 2.0] {
        let p = ModelParameters::with_direction(nu, dir)?;
        let data = StationaryData::from_rho(1.0, p.rho0, c(0.0, 0.2))?;
        let ctx = AsymptoticContext::new(data, 30.0, &cfg)?;
        let (bx, _) = beta_factors(&ctx)?;
        let bb = (bx * bx.adjoint())[(0, 0)];
        worst = worst.max((bb - nu).norm());
    }
    Ok(vec![check(
        worst <= 1e-12,
        format!("max |beta beta' - nu| = {worst:.2e}"),
    )])
}

fn criterion_5() -> Result<Vec<(bool, String)>> {
    let dir = Row2::new(c(0.4, 0.0), c(0.0, 0.2));
    let mut jump = 0.0f64;
    let mut psi_weber = 0.0f64;
    for nu in [0.1, 0.3, 1.0] {
        let p = ModelParameters::with_direction(nu, dir)?;
        for r in [0.2, 1.0, 5.0] {
            jump = jump.max(jump_residual_ray(&p, r)?);
        }
        psi_weber = psi_weber
            .max(psi22_weber_residual(
                &p,
                Complex64::from_polar(1.2, -1.3),
                Sector::Lower,
                1e-3,
            )?)
            .max(psi22_weber_residual(
                &p,
                Complex64::from_polar(1.2, 0.2),
                Sector::LowerRight,
                1e-3,
            )?);
    }

    let mut rng = StdRng::seed_from_u64(20_260_101);
    let mut ident = 0.0f64;
    let mut weber = 0.0f64;
    for _ in 0..20 {
        let nu: f64 = rng.random_range(0.05..3.0);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let z = Complex64::from_polar(rng.random_range(0.0..4.0), rng.random_range(-PI..PI));
        let (rec, conn) = pcf_identities_residual(c(0.0, sign * nu), z)?;
        ident = ident.max(rec).max(conn);

        // the second difference carries h²|D''''|/12 ≈ h²|z²/4 − a|²|D|/12,
        // so the Weber checks use the model orders at moderate |z|
        let nu = [0.1, 0.3, 1.0][rng.random_range(0..3)];
        let r = rng.random_range(0.1..1.5);
        let zw = Complex64::from_polar(r, rng.random_range(-PI..PI));
        weber = weber.max(weber_residual(c(0.0, sign * nu), zw, 1e-3)?);
        let p = ModelParameters::with_direction(nu, dir)?;
        let lower = Complex64::from_polar(r, rng.random_range(-2.3..-0.8));
        let right = Complex64::from_polar(r, rng.random_range(-0.75..0.75));
        psi_weber = psi_weber
            .max(psi22_weber_residual(&p, lower, Sector::Lower, 1e-3)?)
            .max(psi22_weber_residual(&p, right, Sector::LowerRight, 1e-3)?);
    }
    Ok(vec![
        check(jump <= 1e-8, format!("max jump residual = {jump:.2e}")),
        check(
            ident <= 1e-9,
            format!("max recurrence/connection residual = {ident:.2e}"),
        ),
        check(
            weber <= 1e-6,
            format!("max Weber residual D_a = {weber:.2e}"),
        ),
        check(
            psi_weber <= 1e-6,
            format!("max Weber residual Psi22 = {psi_weber:.2e}"),
        ),
    ])
}

/// One run of the amplitude-0.7 Gaussian at the default configuration,
/// snapshots at t = 1..10 for the mass check and 20, 40, 80 for the
/// comparison.
struct ModerateRun {
    grid: SimGrid,
    mass0: f64,
    snapshots: Vec<FieldState>,
    seconds: f64,
}

fn moderate_profile() -> Result<InitialProfile> {
    InitialProfile::gaussian(0.7, 12.0, 2401)
}

fn moderate_run() -> Result<ModerateRun> {
    let start = Instant::now();
    let profile = moderate_profile()?;
    let cfg = SimConfig {
        mass_tol: None,
        ..SimConfig::default()
    };
    let mut times: Vec<f64> = (1..=10).map(f64::from).collect();
    times.extend([20.0, 40.0, 80.0]);
    let snapshots = simulate(&profile, &cfg, 80.0, &times)?;
    Ok(ModerateRun {
        grid: cfg.grid,
        mass0: initial_state(&profile, &cfg.grid)?.mass(&cfg.grid),
        snapshots,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn criterion_6(run: &Result<ModerateRun>) -> Result<Vec<(bool, String)>> {
    let mut checks = vec![];
    match run {
        Ok(run) => {
            let drift = run
                .snapshots
                .iter()
                .filter(|s| s.t <= 10.0)
                .map(|s| (s.mass(&run.grid) + s.absorbed - run.mass0).abs())
                .fold(0.0, f64::max);
            checks.push(check(
                drift <= 1e-10,
                format!("mass drift on [0, 10] = {drift:.2e}"),
            ));
        }
        Err(e) => checks.push(check(false, format!("simulation error: {e}"))),
    }

    let cfg = SimConfig::default();
    let small = InitialProfile::gaussian(1e-4, 12.0, 2401)?;
    let s = simulate(&small, &cfg, 1.0, &[1.0])?;
    let exact = linear_evolution(&initial_state(&small, &cfg.grid)?, &cfg.grid, 1.0)?;
    let lin = s[0]
        .u
        .iter()
        .zip(&exact.u)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    checks.push(check(
        lin <= 1e-6,
        format!("linear-limit sup error = {lin:.2e}"),
    ));

    let g = SimGrid::new(20.0, 256)?;
    let u0: Vec<Complex64> = g
        .xs()
        .iter()
        .map(|&x| c(0.7 * (-x * x).exp(), 0.0))
        .collect();
    let run_dt = |dt: f64| -> Result<Vec<Complex64>> {
        let mut st = Stepper::new(g, None)?;
        let mut vh = u0.clone();
        st.spectral().forward(&mut vh);
        for _ in 0..(1.0 / dt).round() as usize {
            st.step_hat(&mut vh, dt);
        }
        Ok(vh)
    };
    let reference = run_dt(1e-4)?;
    let err = |v: Vec<Complex64>| {
        v.iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    };
    let e1 = err(run_dt(2e-3)?);
    let e2 = err(run_dt(1e-3)?);
    let order = (e1 / e2).log2();
    checks.push(check(order >= 3.5, format!("temporal order = {order:.2}")));
    Ok(checks)
}

fn criterion_7(run: &Result<ModerateRun>) -> Result<Vec<(bool, String)>> {
    let run = match run {
        Ok(r) => r,
        Err(e) => return Ok(vec![check(false, format!("simulation error: {e}"))]),
    };
    let start = Instant::now();
    let zeta = 1.0;
    let cfg = AsymptoticConfig::default();
    let profile = moderate_profile()?;
    let (_, k0) = stationary_points(zeta)?;
    let table = ReflectionTable::compute(&profile, &KGrid::default_for(k0), ODE_TOL)?;
    let data = StationaryData::compute(
        &profile,
        &table,
        zeta,
        ODE_TOL,
        &DeltaOptions::default(),
        &cfg,
    )?;
    let late: Vec<FieldState> = run
        .snapshots
        .iter()
        .filter(|s| s.t >= 20.0)
        .cloned()
        .collect();
    let mut u_as_80 = 0.0;
    let table = compare_asymptotic(&late, &run.grid, &[zeta], cfg.m_max, |z, t| {
        let ctx = AsymptoticContext::new(
            StationaryData {
                zeta: z,
                ..data.clone()
            },
            t,
            &cfg,
        )?;
        let lo = u_leading(&ctx, &data.rho_raw)?;
        if t == 80.0 {
            u_as_80 = lo.u_as.norm();
        }
        Ok(lo.u_as_over_sqrt_t)
    })?;
    let seconds = run.seconds + start.elapsed().as_secs_f64();

    let e: Vec<f64> = table.rows_for(zeta).map(|r| r.abs_err).collect();
    let decreasing = e.windows(2).all(|w| w[1] < w[0]);
    let ratio = e[e.len() - 1] * 80f64.sqrt() / u_as_80;
    let p = table.exponents[0].1;
    let in_bracket = p.is_some_and(|p| (-1.5..=-0.75).contains(&p));
    let es = e
        .iter()
        .map(|v| format!("{v:.3e}"))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(vec![
        check(decreasing, format!("e(20, 40, 80) = ({es})")),
        check(ratio <= 0.3, format!("e(80)*sqrt(80)/|u_as| = {ratio:.3}")),
        check(in_bracket, format!("fitted exponent = {p:.3?}")),
        check(
            seconds <= 600.0,
            format!("nu = {:.4}, {seconds:.0} s", data.nu),
        ),
    ])
}

fn criterion_8() -> Vec<(bool, String)> {
    let zeta = 12.0;
    let mut mismatches = 0;
    for i in 0..101 {
        for j in 0..101 {
            let k = c(-2.0 + 0.04 * i as f64, -2.0 + 0.04 * j as f64);
            let i1 = c(0.0, 1.0);
            let re = (2.0 * i1 * zeta * k - 8.0 * i1 * k * k * k).re;
            let expected = if re > 0.0 {
                1
            } else if re < 0.0 {
                -1
            } else {
                0
            };
            if signature_sample(zeta, k) != expected {
                mismatches += 1;
            }
        }
    }
    vec![check(
        mismatches == 0,
        format!("{mismatches} mismatches of 10201"),
    )]
}

/// Criteria selected by `SS_ACCEPTANCE` (comma-separated ids); all by default.
fn selected(id: u8) -> bool {
    match std::env::var("SS_ACCEPTANCE") {
        Ok(list) => list.split(',').any(|v| v.trim().parse() == Ok(id)),
        Err(_) => true,
    }
}

#[test]
fn acceptance() {
    let mut outcomes = vec![];
    let mut record = |o: Outcome| {
        o.emit();
        outcomes.push(o);
    };
    let suite = (selected(1) || selected(3)).then(symmetry_suite);
    if let Some(suite) = &suite {
        if selected(1) {
            record(match suite {
                Ok(s) => Outcome::new(1, "scattering symmetry", &criterion_1(s)),
                Err(e) => Outcome::from_result(1, "scattering symmetry", Err(e.clone())),
            });
        }
        if selected(3) {
            let r = suite.as_ref().map_err(Clone::clone).and_then(criterion_3);
            record(Outcome::from_result(3, "chi reality and Plemelj jump", r));
        }
    }
    if selected(2) {
        record(Outcome::from_result(2, "Born regime", criterion_2()));
    }
    if selected(4) {
        record(Outcome::from_result(4, "beta identity", criterion_4()));
    }
    if selected(5) {
        record(Outcome::from_result(
            5,
            "model problem identities",
            criterion_5(),
        ));
    }
    if selected(6) || selected(7) {
        let run = moderate_run();
        if selected(6) {
            record(Outcome::from_result(
                6,
                "oracle integrity",
                criterion_6(&run),
            ));
        }
        if selected(7) {
            record(Outcome::from_result(
                7,
                "end-to-end leading term",
                criterion_7(&run),
            ));
        }
    }
    if selected(8) {
        record(Outcome::new(8, "signature table", &criterion_8()));
    }

    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
