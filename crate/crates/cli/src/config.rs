use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use voidsurf::material::{from_macro, from_relaxed, RelaxedParams};
use voidsurf::quadrature::AdaptiveOptions;
use voidsurf::MicroVoidParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub k: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub micro_voids: Option<MicroVoidsBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relaxed: Option<RelaxedBlock>,
    #[serde(default, rename = "macro", skip_serializing_if = "Option::is_none")]
    pub macro_: Option<MacroBlock>,
    #[serde(default)]
    pub solver: SolverBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MicroVoidsBlock {
    pub mu_e: f64,
    pub lambda_e: f64,
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    pub rho0: f64,
    pub kappa_inertia: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelaxedBlock {
    pub mu_e: f64,
    pub lambda_e: f64,
    pub mu_micro: f64,
    pub lambda_micro: f64,
    pub l_c: f64,
    pub a2: f64,
    pub eta: f64,
    pub tau_c: f64,
    pub rho0: f64,
}

/// Engineering constants; α and ϰ are given directly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MacroBlock {
    pub nu: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub rho0: f64,
    pub micro_scale: f64,
    pub alpha: f64,
    pub kappa_inertia: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverBlock {
    pub tol: f64,
    /// Points in the det M scan; 0 disables the scan.
    pub n_scan: usize,
    pub n_theta: usize,
    pub quad_tol: f64,
    pub legacy: bool,
}

impl Default for SolverBlock {
    fn default() -> Self {
        Self { tol: 1e-10, n_scan: 100, n_theta: 720, quad_tol: 1e-10, legacy: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputBlock {
    pub dir: PathBuf,
    pub summary: String,
    pub scan: String,
    pub field: String,
    /// `[nx, nz]`; the field grid is written only when this is set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_grid: Option<[usize; 2]>,
    /// Extent of the grid in x₁ and depth x₂. Defaults: two wavelengths
    /// along the surface, one into the depth.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x1_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x2_max: Option<f64>,
    pub t: f64,
    /// First component of the surface amplitude as `[re, im]`.
    pub y1: [f64; 2],
}

impl Default for OutputBlock {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("voidsurf-out"),
            summary: "summary.json".into(),
            scan: "scan.csv".into(),
            field: "field.csv".into(),
            field_grid: None,
            x1_max: None,
            x2_max: None,
            t: 1.0,
            y1: [0.0, -1.0],
        }
    }
}

impl Default for RunConfig {
    /// The steel data set: ν = 0.3, E = 210, ρ₀ = 7850, micro moduli twice
    /// the macro ones, α = 10, ϰ = 1.5, k = 1.
    fn default() -> Self {
        Self {
            k: 1.0,
            micro_voids: None,
            relaxed: None,
            macro_: Some(MacroBlock { nu: 0.3, e: 210.0, rho0: 7850.0, micro_scale: 2.0, alpha: 10.0, kappa_inertia: 1.5 }),
            solver: SolverBlock::default(),
            output: OutputBlock::default(),
        }
    }
}

/// Material as resolved from whichever block was given, plus the derived
/// moduli that only some blocks carry.
#[derive(Debug, Clone, Copy)]
pub struct Material {
    pub params: MicroVoidParams,
    pub kappa_micro: f64,
    pub source: &'static str,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).context("cannot parse config")?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn check(&self) -> Result<()> {
        let blocks = [self.micro_voids.is_some(), self.relaxed.is_some(), self.macro_.is_some()];
        match blocks.iter().filter(|b| **b).count() {
            1 => {}
            0 => bail!("config needs one material block: [micro_voids], [relaxed] or [macro]"),
            n => bail!("config has {n} material blocks; exactly one of [micro_voids], [relaxed], [macro] is allowed"),
        }
        if !(self.k.is_finite() && self.k > 0.0) {
            bail!("k must be positive and finite, got {}", self.k);
        }
        let s = &self.solver;
        for (name, v) in [("solver.tol", s.tol), ("solver.quad_tol", s.quad_tol)] {
            if !(v.is_finite() && v > 0.0) {
                bail!("{name} must be positive, got {v}");
            }
        }
        if s.tol < 1e-12 {
            bail!("solver.tol below 1e-12 is not attainable in double precision, got {}", s.tol);
        }
        if s.n_scan == 1 {
            bail!("solver.n_scan must be 0 or at least 2");
        }
        if s.n_theta < 64 {
            bail!("solver.n_theta must be at least 64, got {}", s.n_theta);
        }
        let o = &self.output;
        if let Some([nx, nz]) = o.field_grid {
            if nx < 1 || nz < 1 {
                bail!("output.field_grid needs positive sizes");
            }
        }
        for (name, v) in [("output.x1_max", o.x1_max), ("output.x2_max", o.x2_max)] {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    bail!("{name} must be positive, got {v}");
                }
            }
        }
        if !o.t.is_finite() || !o.y1.iter().all(|x| x.is_finite()) {
            bail!("output.t and output.y1 must be finite");
        }
        Ok(())
    }

    pub fn quadrature(&self) -> AdaptiveOptions {
        AdaptiveOptions { abs_tol: self.solver.quad_tol, rel_tol: self.solver.quad_tol, ..Default::default() }
    }

    /// Resolves the material block. Errors from here are parameter errors
    /// of the core library.
    pub fn material(&self) -> voidsurf::Result<Material> {
        if let Some(m) = self.micro_voids {
            let params = MicroVoidParams::new(m.mu_e, m.lambda_e, m.alpha, m.beta, m.xi, m.rho0, m.kappa_inertia)?;
            // ξ = 9(κ_e + κ_micro) under the micro-voids identification
            return Ok(Material { params, kappa_micro: params.xi / 9.0 - params.kappa_e(), source: "micro_voids" });
        }
        if let Some(r) = self.relaxed {
            let rp = RelaxedParams {
                mu_e: r.mu_e,
                lambda_e: r.lambda_e,
                mu_micro: r.mu_micro,
                lambda_micro: r.lambda_micro,
                l_c: r.l_c,
                a2: r.a2,
                eta: r.eta,
                tau_c: r.tau_c,
                rho0: r.rho0,
            };
            return Ok(Material { params: from_relaxed(&rp)?, kappa_micro: rp.kappa_micro(), source: "relaxed" });
        }
        let m = self.macro_.expect("checked: one block present");
        let split = from_macro(m.nu, m.e, m.rho0, m.micro_scale)?;
        Ok(Material { params: split.micro_voids(m.alpha, m.kappa_inertia)?, kappa_micro: split.kappa_micro, source: "macro" })
    }
}
