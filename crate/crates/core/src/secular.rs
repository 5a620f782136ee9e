//! The secular equation det M_v = 0 on [0, v̂), the explicit legacy secular
//! function R(v) and speed scans of both.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::impedance::compute_with;
use crate::material::MicroVoidParams;
use crate::quadrature::AdaptiveOptions;
use crate::roots::{hybrid_root, RootTolerance};
use crate::stroh::StrohSystem;

/// Fraction of v̂ used as the upper scan/bracket end.
pub const UPPER_FRACTION: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Relative tolerance on the root, in units of v̂.
    pub tol: f64,
    pub quadrature: AdaptiveOptions,
    /// Coarse probes used to bracket the root.
    pub n_bracket: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { tol: 1e-10, quadrature: AdaptiveOptions::default(), n_bracket: 8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularRoot {
    pub v0: f64,
    pub det_v0: f64,
    pub det_0: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub v_hat: f64,
}

pub fn det_m(s: &StrohSystem, v: f64, quad: &AdaptiveOptions) -> Result<f64> {
    Ok(compute_with(s, v, quad)?.det())
}

pub fn solve(p: &MicroVoidParams, k: f64, tol: f64) -> Result<SecularRoot> {
    let s = StrohSystem::new(p, k)?;
    solve_system(&s, &SolveOptions { tol, ..Default::default() })
}

/// The unique zero of v ↦ det M_v in [0, v̂).
///
/// det M_0 must be positive. The upper part of the interval is probed on a
/// coarse grid and then geometrically closer to v̂ until the sign flips.
pub fn solve_system(s: &StrohSystem, opts: &SolveOptions) -> Result<SecularRoot> {
    if !(opts.tol >= 1e-12) {
        return Err(Error::InvalidParameter { name: "tol", value: opts.tol, reason: "tolerance must be at least 1e-12" });
    }
    let v_hat = s.v_hat();
    let f = |v: f64| det_m(s, v, &opts.quadrature);
    let det_0 = f(0.0)?;
    let top = v_hat * UPPER_FRACTION;
    if !(det_0 > 0.0) {
        return Err(Error::NoSignChange { v_low: 0.0, f_low: det_0, v_high: top, f_high: f64::NAN });
    }

    let n = opts.n_bracket.max(1);
    let mut probes: Vec<f64> = (1..=n).map(|j| top * j as f64 / n as f64).collect();
    probes.extend((1..=10).map(|j| v_hat * (1.0 - 1e-6 * 10f64.powf(-0.5 * j as f64))));

    let (mut lo, mut f_lo) = (0.0, det_0);
    let mut bracket = None;
    for &v in &probes {
        let fv = match f(v) {
            Ok(x) => x,
            // quadrature gives up right next to v̂; nothing further to probe
            Err(Error::QuadratureFailure { .. }) if v > top => break,
            Err(e) => return Err(e),
        };
        if fv <= 0.0 {
            bracket = Some((v, fv));
            break;
        }
        lo = v;
        f_lo = fv;
    }
    let (hi, f_hi) = bracket.ok_or(Error::NoSignChange { v_low: lo, f_low: f_lo, v_high: top, f_high: f_lo })?;

    let f_tol = 1e-8 * det_0.abs();
    let root = hybrid_root(f, lo, f_lo, hi, f_hi, RootTolerance { x_tol: opts.tol * v_hat, f_tol, max_iter: 200 })?;
    if root.fx.abs() > f_tol {
        return Err(Error::NonConvergence("secular root (|det M| postcondition)"));
    }
    Ok(SecularRoot {
        v0: root.x,
        det_v0: root.fx,
        det_0,
        bracket: (lo, hi),
        iterations: root.iterations,
        v_hat,
    })
}

/// R(v) with all square roots taken as principal complex roots.
pub fn legacy_r_complex(p: &MicroVoidParams, k: f64, v: f64) -> Complex64 {
    let c = p.longitudinal_modulus();
    let rho = p.rho0;
    let w2 = (k * v) * (k * v);
    let re = |x: f64| Complex64::new(x, 0.0);
    let base = p.beta * p.beta - (p.xi - rho * p.kappa_inertia * w2) * c + p.alpha * rho * w2;
    let inner = -p.beta * p.beta + p.alpha * w2 * rho + (p.xi - rho * p.kappa_inertia * w2) * c;
    let d = re(4.0 * p.alpha * w2 * p.beta * p.beta * rho + inner * inner).sqrt();
    let x1 = (re(base) - d) / (2.0 * p.alpha * c);
    let x2 = (re(base) + d) / (2.0 * p.alpha * c);

    let vt2 = p.mu_e / rho;
    let vs2 = c / rho;
    let a = (2.0 - v * v / vt2).powi(2);
    let t = re(1.0 - v * v / vt2);
    let k2 = k * k;
    let one = re(1.0);
    let term1 = (a - 4.0 * (t * (one - x1 / k2)).sqrt()) * (one - x2 / k2).sqrt() * (x2 / k2 - v * v / vs2);
    let term2 = (a - 4.0 * (t * (one - x2 / k2)).sqrt()) * (one - x1 / k2).sqrt() * (x1 / k2 - v * v / vs2);
    term1 - term2
}

/// Real value of R(v). An imaginary part above 10⁻⁹ of the real part's
/// scale is reported as an error.
pub fn legacy_r(p: &MicroVoidParams, k: f64, v: f64) -> Result<f64> {
    let z = legacy_r_complex(p, k, v);
    if z.im.abs() > 1e-9 * z.re.abs().max(1e-300) && z.im.abs() > 1e-12 {
        return Err(Error::ComplexLegacy { v, imag: z.im });
    }
    Ok(z.re)
}

/// First root of R in (0, v̂). R vanishes identically at v = 0, so the
/// search starts at 10⁻³·v̂.
pub fn legacy_root(p: &MicroVoidParams, k: f64, v_hat: f64, tol: f64) -> Result<f64> {
    let lo = 1e-3 * v_hat;
    let top = v_hat * UPPER_FRACTION;
    let n = 64;
    let f = |v: f64| legacy_r(p, k, v);
    let mut a = lo;
    let mut fa = f(a)?;
    for j in 1..=n {
        let b = lo + (top - lo) * j as f64 / n as f64;
        let fb = f(b)?;
        if fa == 0.0 || fa.signum() != fb.signum() {
            let root = hybrid_root(
                f,
                a,
                fa,
                b,
                fb,
                RootTolerance { x_tol: tol * v_hat, f_tol: f64::INFINITY, max_iter: 200 },
            )?;
            return Ok(root.x);
        }
        a = b;
        fa = fb;
    }
    Err(Error::NoSignChange { v_low: lo, f_low: f(lo)?, v_high: top, f_high: fa })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecularScan {
    pub speeds: Vec<f64>,
    /// `None` where the impedance could not be evaluated.
    pub det_values: Vec<Option<f64>>,
    pub legacy_values: Option<Vec<Option<f64>>>,
    pub v_hat: f64,
}

impl SecularScan {
    /// Sign changes of det M_v between consecutive valid samples.
    pub fn sign_changes(&self) -> usize {
        let vals: Vec<f64> = self.det_values.iter().flatten().copied().collect();
        vals.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count()
    }

    pub fn strictly_decreasing(&self) -> bool {
        let vals: Vec<f64> = self.det_values.iter().flatten().copied().collect();
        vals.len() == self.det_values.len() && vals.windows(2).all(|w| w[1] < w[0])
    }
}

/// `n` equidistant speeds on [0, v̂(1 − 10⁻⁶)].
pub fn scan(p: &MicroVoidParams, k: f64, n: usize, legacy: bool) -> Result<SecularScan> {
    let s = StrohSystem::new(p, k)?;
    scan_system(&s, p, n, legacy, &AdaptiveOptions::default())
}

pub fn scan_system(s: &StrohSystem, p: &MicroVoidParams, n: usize, legacy: bool, quad: &AdaptiveOptions) -> Result<SecularScan> {
    if n < 2 {
        return Err(Error::InvalidParameter { name: "n", value: n as f64, reason: "scan needs at least two points" });
    }
    let v_hat = s.v_hat();
    let top = v_hat * UPPER_FRACTION;
    let speeds: Vec<f64> = (0..n).map(|i| top * i as f64 / (n - 1) as f64).collect();
    let det_values = speeds.par_iter().map(|&v| det_m(s, v, quad).ok()).collect();
    let legacy_values = legacy.then(|| speeds.iter().map(|&v| legacy_r(p, s.k, v).ok()).collect());
    Ok(SecularScan { speeds, det_values, legacy_values, v_hat })
}
