use std::path::Path;

use anyhow::{Context, Result};
use num_complex::Complex64;
use serde::Serialize;
use voidsurf::bulk::bulk_speeds;
use voidsurf::linalg::fro;
use voidsurf::material::{assess, AdmissibilityReport, Violation};
use voidsurf::secular::{legacy_root, scan_system, solve_system, SolveOptions};
use voidsurf::stroh::{limiting_speed_formula, limiting_speed_scan};
use voidsurf::wavefield::{boundary_residuals, pde_residuals, observed_order, RayleighSolution};
use voidsurf::{MicroVoidParams, StrohSystem};

use crate::config::{Material, RunConfig};
use crate::output::{self, matrix, num, pair, short, vector, Pair};

/// Raised when the material fails the real-wave conditions.
#[derive(Debug)]
pub struct Inadmissible(pub Vec<String>);

impl std::fmt::Display for Inadmissible {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "material is inadmissible: {}", self.0.join(", "))
    }
}

impl std::error::Error for Inadmissible {}

fn violation_line(v: &Violation) -> String {
    format!("{} violated (lhs = {}, rhs = {})", v.name, short(v.lhs), short(v.rhs))
}

fn require_real_waves(report: &AdmissibilityReport) -> Result<()> {
    if report.real_waves_ok {
        return Ok(());
    }
    // real-wave violations come first in the report
    let names = report.violated_conditions.iter().map(|v| format!("{} violated", v.name)).collect();
    Err(Inadmissible(names).into())
}

/// Young's modulus and Poisson ratio of the meso-scale Lamé pair.
fn engineering(p: &MicroVoidParams) -> (f64, f64) {
    let (mu, la) = (p.mu_e, p.lambda_e);
    (mu * (3.0 * la + 2.0 * mu) / (la + mu), la / (2.0 * (la + mu)))
}

pub fn validate(cfg: &RunConfig) -> Result<()> {
    let m = cfg.material()?;
    let p = m.params;
    println!("material from [{}]", m.source);
    println!(
        "  mu_e = {}, lambda_e = {}, alpha = {}, beta = {}, xi = {}, rho0 = {}, kappa_inertia = {}",
        short(p.mu_e),
        short(p.lambda_e),
        short(p.alpha),
        short(p.beta),
        short(p.xi),
        short(p.rho0),
        short(p.kappa_inertia)
    );
    let (e, nu) = engineering(&p);
    println!(
        "derived: kappa_e = {}, kappa_micro = {}, E_e = {}, nu_e = {}, xi = {}",
        short(p.kappa_e()),
        short(m.kappa_micro),
        short(e),
        short(nu),
        short(p.xi)
    );
    let report = assess(&p);
    let rw: Vec<_> = voidsurf::material::check_real_waves(&p).violations;
    let pd: Vec<_> = voidsurf::material::check_positive_definite(&p).violations;
    println!("real-wave conditions: {}", if report.real_waves_ok { "pass" } else { "FAIL" });
    for v in &rw {
        println!("  {}", violation_line(v));
    }
    println!("positive definiteness: {}", if report.positive_definite_ok { "pass" } else { "FAIL" });
    for v in &pd {
        println!("  {}", violation_line(v));
    }
    for w in &report.warnings {
        println!("warning: {w}");
    }
    require_real_waves(&report)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpeedTable {
    pub v_t: f64,
    pub v3: f64,
    pub v4: f64,
    pub v_s: f64,
    pub v_m: f64,
    /// Closed form min(v_s, v_m).
    pub v_hat_formula: f64,
    /// min(v_hat_formula, v_t); the admissible interval is [0, v_hat).
    pub v_hat: f64,
    pub v_hat_scan: f64,
}

fn speed_table(cfg: &RunConfig, p: &MicroVoidParams, s: &StrohSystem) -> voidsurf::Result<SpeedTable> {
    let bulk = bulk_speeds(p)?;
    let limit = limiting_speed_formula(p, cfg.k)?;
    Ok(SpeedTable {
        v_t: bulk.v_t,
        v3: bulk.v3,
        v4: bulk.v4,
        v_s: limit.v_s,
        v_m: limit.v_m,
        v_hat_formula: limit.formula,
        v_hat: s.v_hat(),
        v_hat_scan: limiting_speed_scan(s, cfg.solver.n_theta)?,
    })
}

fn checked_system(cfg: &RunConfig) -> Result<(Material, StrohSystem)> {
    let m = cfg.material()?;
    let report = assess(&m.params);
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    require_real_waves(&report)?;
    let s = StrohSystem::new(&m.params, cfg.k)?;
    Ok((m, s))
}

pub fn speeds(cfg: &RunConfig) -> Result<()> {
    let (m, s) = checked_system(cfg)?;
    let t = speed_table(cfg, &m.params, &s)?;
    println!("{:<14} {:>24}", "quantity", "value");
    for (name, v) in [
        ("v_t", t.v_t),
        ("v3", t.v3),
        ("v4", t.v4),
        ("v_s", t.v_s),
        ("v_m", t.v_m),
        ("v_hat_formula", t.v_hat_formula),
        ("v_hat", t.v_hat),
        ("v_hat_scan", t.v_hat_scan),
    ] {
        println!("{name:<14} {:>24}", num(v));
    }
    if t.v_hat < t.v_hat_formula {
        println!("note: v_t < min(v_s, v_m), so the subsonic limit is v_t");
    }
    Ok(())
}

#[derive(Serialize)]
struct MaterialRecord {
    source: &'static str,
    mu_e: f64,
    lambda_e: f64,
    alpha: f64,
    beta: f64,
    xi: f64,
    rho0: f64,
    kappa_inertia: f64,
    kappa_e: f64,
    kappa_micro: f64,
    positive_definite: bool,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct RootRecord {
    v0: f64,
    det_m_v0: f64,
    det_m_0: f64,
    bracket: [f64; 2],
    iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    legacy_v0: Option<f64>,
}

#[derive(Serialize)]
struct ResidualRecord {
    riccati: f64,
    pencil: f64,
    stroh_boundary: f64,
    null_vector: f64,
    /// Traction-free conditions at x₂ = 0, relative to the largest term.
    traction_relative: f64,
    /// Finite-difference residual of the field equations (step 1e-3),
    /// relative to the largest term, and its observed order.
    pde_relative: f64,
    pde_order: f64,
}

#[derive(Serialize)]
struct Summary {
    k: f64,
    material: MaterialRecord,
    speeds: SpeedTable,
    root: RootRecord,
    impedance: [[Pair; 3]; 3],
    impedance_quad_error: f64,
    decay_matrix: [[Pair; 3]; 3],
    decay_spectrum: [Pair; 3],
    /// Unit-norm null vector of M at v0, phase fixed on its first component.
    y0: [Pair; 3],
    /// Surface amplitude used for the field, scaled to the requested y1.
    amplitude: [Pair; 3],
    residuals: ResidualRecord,
    scan_file: Option<String>,
    field_file: Option<String>,
}

fn probe_points(k: f64, decay: f64) -> Vec<(f64, f64)> {
    let wavelength = 2.0 * std::f64::consts::PI / k;
    [0.1, 0.35, 0.7].iter().map(|f| (f * wavelength, f / decay.max(1e-12))).collect()
}

pub fn solve(cfg: &RunConfig) -> Result<()> {
    let (m, s) = checked_system(cfg)?;
    let p = m.params;
    let quad = cfg.quadrature();
    let speeds = speed_table(cfg, &p, &s)?;
    let root = solve_system(&s, &SolveOptions { tol: cfg.solver.tol, quadrature: quad, ..Default::default() })?;
    let legacy_v0 = if cfg.solver.legacy { Some(legacy_root(&p, cfg.k, s.v_hat(), 1e-12)?) } else { None };

    let y1 = Complex64::new(cfg.output.y1[0], cfg.output.y1[1]);
    let sol = RayleighSolution::new(&s, root.v0, &quad)?.with_first_component(y1)?;

    let wavelength = 2.0 * std::f64::consts::PI / cfg.k;
    let traction = boundary_residuals(&sol, &p, &[0.0, 0.25 * wavelength, 0.5 * wavelength], cfg.output.t);
    let points = probe_points(cfg.k, sol.decay_rate());
    let pde = pde_residuals(&sol, &p, &points, cfg.output.t, 1e-3 / cfg.k);
    let pde_order = observed_order(&sol, &p, &points, cfg.output.t, 1e-3 / cfg.k);
    let rel = |max_abs: [f64; 3], scale: f64| max_abs.iter().copied().fold(0.0, f64::max) / scale.max(f64::MIN_POSITIVE);

    let dir = &cfg.output.dir;
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let scan_file = if cfg.solver.n_scan >= 2 {
        let scan = scan_system(&s, &p, cfg.solver.n_scan, cfg.solver.legacy, &quad)?;
        output::write_scan(&dir.join(&cfg.output.scan), &scan)?;
        Some(cfg.output.scan.clone())
    } else {
        None
    };
    let field_file = match cfg.output.field_grid {
        Some([nx, nz]) => {
            let x1_max = cfg.output.x1_max.unwrap_or(2.0 * wavelength);
            let x2_max = cfg.output.x2_max.unwrap_or(wavelength);
            let grid = |n: usize, max: f64| -> Vec<f64> {
                if n == 1 {
                    vec![0.0]
                } else {
                    (0..n).map(|i| max * i as f64 / (n - 1) as f64).collect()
                }
            };
            let x1s = grid(nx, x1_max);
            let samples: Vec<_> = grid(nz, x2_max)
                .into_iter()
                .flat_map(|x2| sol.field_row(&x1s, x2, cfg.output.t))
                .collect();
            output::write_field(&dir.join(&cfg.output.field), &samples)?;
            Some(cfg.output.field.clone())
        }
        None => None,
    };

    let report = assess(&p);
    let summary = Summary {
        k: cfg.k,
        material: MaterialRecord {
            source: m.source,
            mu_e: p.mu_e,
            lambda_e: p.lambda_e,
            alpha: p.alpha,
            beta: p.beta,
            xi: p.xi,
            rho0: p.rho0,
            kappa_inertia: p.kappa_inertia,
            kappa_e: p.kappa_e(),
            kappa_micro: m.kappa_micro,
            positive_definite: report.positive_definite_ok,
            warnings: report.warnings,
        },
        speeds,
        root: RootRecord {
            v0: root.v0,
            det_m_v0: root.det_v0,
            det_m_0: root.det_0,
            bracket: [root.bracket.0, root.bracket.1],
            iterations: root.iterations,
            legacy_v0,
        },
        impedance: matrix(&sol.impedance.m),
        impedance_quad_error: sol.impedance.quad_error,
        decay_matrix: matrix(&sol.e),
        decay_spectrum: sol.spectrum_e.map(pair),
        y0: vector(&sol.y0),
        amplitude: vector(&sol.amplitude),
        residuals: ResidualRecord {
            riccati: sol.residuals.riccati,
            pencil: sol.residuals.pencil,
            stroh_boundary: sol.residuals.boundary,
            null_vector: sol.residuals.null_vector / fro(&sol.impedance.m),
            traction_relative: rel(traction.max_abs, traction.scale),
            pde_relative: rel(pde.max_abs, pde.scale),
            pde_order,
        },
        scan_file,
        field_file,
    };
    output::write_json(&dir.join(&cfg.output.summary), &summary)?;

    println!("v0 = {}", num(root.v0));
    println!("v_hat = {} (closed form {})", num(speeds.v_hat), num(speeds.v_hat_formula));
    println!("det M(v0) = {:e}, det M(0) = {:e}", root.det_v0, root.det_0);
    if let Some(l) = legacy_v0 {
        println!("legacy root = {} (difference {:e})", num(l), (l - root.v0).abs());
    }
    println!("summary written to {}", dir.join(&cfg.output.summary).display());
    Ok(())
}

pub fn dump_config(cfg: &RunConfig, dir: &Path) -> Result<std::path::PathBuf> {
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let path = dir.join("config.toml");
    std::fs::write(&path, cfg.to_toml()?).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}
