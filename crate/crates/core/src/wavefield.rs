//! Decay matrix, surface amplitude and the reconstructed Rayleigh wave
//! field, together with the residual checks that validate it.

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::impedance::{compute_with, riccati_residual, Impedance};
use crate::linalg::{complex_eigenvalues, fix_phase, fro, largest_singular_value, smallest_singular_pair, to_complex, vec_norm, CMat3, CVec3, I};
use crate::material::MicroVoidParams;
use crate::quadrature::AdaptiveOptions;
use crate::stroh::StrohSystem;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayMatrix {
    pub e: CMat3,
    pub spectrum: [Complex64; 3],
    /// ‖𝒯E² − i(ℛ+ℛᵀ)E − 𝒬 + k²v²·1‖_F.
    pub pencil_residual: f64,
}

/// E = 𝒯⁻¹(M + iℛᵀ); all its eigenvalues must have positive real part.
pub fn decay_matrix(s: &StrohSystem, m: &Impedance) -> Result<DecayMatrix> {
    let t = to_complex(&s.t_mat);
    let e = to_complex(&s.t_inverse()?) * (m.m + to_complex(&s.r_mat.transpose()) * I);
    let mut spectrum = complex_eigenvalues(&e).ok_or(Error::NonConvergence("eigenvalues of E"))?;
    spectrum.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let min_re = spectrum[0].re;
    if !(min_re > 0.0) {
        return Err(Error::SpectrumViolation { min_real_part: min_re });
    }
    let rs = to_complex(&(s.r_mat + s.r_mat.transpose()));
    let pencil = t * e * e - rs * e * I - to_complex(&s.q_tilde(m.v));
    Ok(DecayMatrix { e, spectrum, pencil_residual: fro(&pencil) })
}

/// E assembled from the roots of the sextic: D·diag(−i r_j)·D⁻¹, where the
/// r_j are the three roots with Im r > 0 and the columns of D span the null
/// spaces of r_j²𝒯 + r_j(ℛ+ℛᵀ) + 𝒬̃.
pub fn e_from_roots(s: &StrohSystem, v: f64) -> Result<CMat3> {
    let r = s.upper_roots(v)?;
    let scale = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut sep = f64::INFINITY;
    for i in 0..3 {
        for j in i + 1..3 {
            sep = sep.min((r[i] - r[j]).norm());
        }
    }
    if sep <= 1e-8 * scale {
        return Err(Error::RepeatedRoot { separation: sep });
    }
    let t = to_complex(&s.t_mat);
    let rs = to_complex(&(s.r_mat + s.r_mat.transpose()));
    let qt = to_complex(&s.q_tilde(v));
    let mut d = CMat3::zeros();
    for (j, rj) in r.iter().enumerate() {
        let pencil = t * (rj * rj) + rs * *rj + qt;
        let (_, x) = smallest_singular_pair(&pencil);
        d.set_column(j, &x);
    }
    let lam = CMat3::from_diagonal(&Vector3::new(-I * r[0], -I * r[1], -I * r[2]));
    let d_inv = d.try_inverse().ok_or(Error::SingularMatrix("eigenvector matrix D"))?;
    Ok(d * lam * d_inv)
}

/// Unit vector spanning the numerical kernel of M, phase-fixed so its first
/// non-negligible component is real and positive.
pub fn null_vector(m: &CMat3) -> Result<CVec3> {
    let norm = largest_singular_value(m);
    let (sigma, y) = smallest_singular_pair(m);
    if sigma > 1e-4 * norm {
        return Err(Error::RankDeficiencyAbsent { smallest: sigma, norm });
    }
    Ok(fix_phase(&y))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals {
    pub riccati: f64,
    pub pencil: f64,
    /// ‖(1/k²)𝒯y′(0) + (i/k)ℛᵀy(0)‖ with y′(0) = −kE y(0).
    pub boundary: f64,
    /// ‖M y0‖ for the unit vector y0.
    pub null_vector: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayleighSolution {
    pub system: StrohSystem,
    pub v0: f64,
    pub impedance: Impedance,
    pub e: CMat3,
    pub spectrum_e: [Complex64; 3],
    /// Unit-norm surface amplitude.
    pub y0: CVec3,
    /// Amplitude actually used for fields; y0 unless rescaled.
    pub amplitude: CVec3,
    pub residuals: Residuals,
}

impl RayleighSolution {
    pub fn new(s: &StrohSystem, v0: f64, quad: &AdaptiveOptions) -> Result<Self> {
        let impedance = compute_with(s, v0, quad)?;
        let dm = decay_matrix(s, &impedance)?;
        let y0 = null_vector(&impedance.m)?;
        let riccati = riccati_residual(s, &impedance)?;
        let k = s.k;
        let y_prime = -(dm.e * y0) * c(k);
        let bc = to_complex(&s.t_mat) * y_prime * c(1.0 / (k * k)) + to_complex(&s.r_mat.transpose()) * y0 * (I / k);
        Ok(Self {
            system: *s,
            v0,
            impedance,
            e: dm.e,
            spectrum_e: dm.spectrum,
            y0,
            amplitude: y0,
            residuals: Residuals {
                riccati,
                pencil: dm.pencil_residual,
                boundary: vec_norm(&bc),
                null_vector: vec_norm(&(impedance.m * y0)),
            },
        })
    }

    /// Rescales the amplitude so that its first component equals `y1`.
    pub fn with_first_component(mut self, y1: Complex64) -> Result<Self> {
        let first = self.y0[0];
        if first.norm() <= 1e-12 {
            return Err(Error::InvalidParameter {
                name: "y1",
                value: first.norm(),
                reason: "first surface component vanishes and cannot be prescribed",
            });
        }
        self.amplitude = self.y0 * (y1 / first);
        Ok(self)
    }

    pub fn with_amplitude(mut self, amplitude: CVec3) -> Self {
        self.amplitude = amplitude;
        self
    }

    /// Scaled depth profile y(x₂) = exp(−k x₂ E) y(0).
    pub fn profile(&self, x2: f64) -> CVec3 {
        expm(&(self.e * c(-self.system.k * x2))) * self.amplitude
    }

    /// Physical amplitudes z(x₂) = Î^{-1/2} y(x₂).
    pub fn physical_profile(&self, x2: f64) -> CVec3 {
        to_complex(&self.system.ihat_sqrt_inv) * self.profile(x2)
    }

    pub fn field(&self, x1: f64, x2: f64, t: f64) -> FieldSample {
        sample(&self.physical_profile(x2), self.system.k, self.v0, x1, x2, t)
    }

    /// Field on a row of x₁ values at one depth, sharing the exponential.
    pub fn field_row(&self, x1s: &[f64], x2: f64, t: f64) -> Vec<FieldSample> {
        let z = self.physical_profile(x2);
        x1s.iter().map(|&x1| sample(&z, self.system.k, self.v0, x1, x2, t)).collect()
    }

    /// Smallest decay rate k·min Re spec E.
    pub fn decay_rate(&self) -> f64 {
        self.system.k * self.spectrum_e.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub x1: f64,
    pub x2: f64,
    pub t: f64,
    pub u1: f64,
    pub u2: f64,
    pub zeta: f64,
}

fn sample(z: &CVec3, k: f64, v: f64, x1: f64, x2: f64, t: f64) -> FieldSample {
    let phase = Complex64::from_polar(1.0, k * (x1 - v * t));
    FieldSample {
        x1,
        x2,
        t,
        u1: (z[0] * phase).re,
        u2: (z[1] * phase).re,
        zeta: (I * z[2] * phase).re,
    }
}

/// Finite-difference residuals of the field equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdeResiduals {
    pub h: f64,
    /// Max |residual| of the u₁, u₂ and ζ equations over the points.
    pub max_abs: [f64; 3],
    /// Max magnitude of the individual terms, for relative comparisons.
    pub scale: f64,
}

/// Traction-free boundary residuals at x₂ = 0, from analytic derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryResiduals {
    pub max_abs: [f64; 3],
    pub scale: f64,
}

/// Second-order central differences of the field equations
///
/// ρ₀ u₁,tt = (λ+2μ) u₁,11 + (λ+μ) u₂,12 + μ u₁,22 + β ζ,1
/// ρ₀ u₂,tt = μ u₂,11 + (λ+μ) u₁,12 + (λ+2μ) u₂,22 + β ζ,2
/// ρ₀ϰ ζ,tt = α (ζ,11 + ζ,22) − ξ ζ − β (u₁,1 + u₂,2)
///
/// at interior points (x₁, x₂) with x₂ ≥ h, time `t` and step `h` in every
/// variable (time step h/(k v₀ + 1) to keep the time stencil comparable).
pub fn pde_residuals(sol: &RayleighSolution, p: &MicroVoidParams, points: &[(f64, f64)], t: f64, h: f64) -> PdeResiduals {
    let ht = h / (sol.system.k * sol.v0 + 1.0);
    let (mu, lam, c) = (p.mu_e, p.lambda_e, p.longitudinal_modulus());
    let mut max_abs = [0.0f64; 3];
    let mut scale = 0.0f64;
    for &(x1, x2) in points {
        let f = |dx1: f64, dx2: f64, dt: f64| {
            let s = sol.field(x1 + dx1, x2 + dx2, t + dt);
            [s.u1, s.u2, s.zeta]
        };
        let c0 = f(0.0, 0.0, 0.0);
        let e1p = f(h, 0.0, 0.0);
        let e1m = f(-h, 0.0, 0.0);
        let e2p = f(0.0, h, 0.0);
        let e2m = f(0.0, -h, 0.0);
        let tp = f(0.0, 0.0, ht);
        let tm = f(0.0, 0.0, -ht);
        let pp = f(h, h, 0.0);
        let pm = f(h, -h, 0.0);
        let mp = f(-h, h, 0.0);
        let mm = f(-h, -h, 0.0);
        let d11 = |i: usize| (e1p[i] - 2.0 * c0[i] + e1m[i]) / (h * h);
        let d22 = |i: usize| (e2p[i] - 2.0 * c0[i] + e2m[i]) / (h * h);
        let dtt = |i: usize| (tp[i] - 2.0 * c0[i] + tm[i]) / (ht * ht);
        let d12 = |i: usize| (pp[i] - pm[i] - mp[i] + mm[i]) / (4.0 * h * h);
        let d1 = |i: usize| (e1p[i] - e1m[i]) / (2.0 * h);
        let d2 = |i: usize| (e2p[i] - e2m[i]) / (2.0 * h);

        let eqs: [Vec<f64>; 3] = [
            vec![-p.rho0 * dtt(0), c * d11(0), (lam + mu) * d12(1), mu * d22(0), p.beta * d1(2)],
            vec![-p.rho0 * dtt(1), mu * d11(1), (lam + mu) * d12(0), c * d22(1), p.beta * d2(2)],
            vec![
                -p.rho0 * p.kappa_inertia * dtt(2),
                p.alpha * d11(2),
                p.alpha * d22(2),
                -p.xi * c0[2],
                -p.beta * d1(0),
                -p.beta * d2(1),
            ],
        ];
        for (i, terms) in eqs.iter().enumerate() {
            let r: f64 = terms.iter().sum();
            max_abs[i] = max_abs[i].max(r.abs());
            scale = terms.iter().fold(scale, |m, x| m.max(x.abs()));
        }
    }
    PdeResiduals { h, max_abs, scale }
}

/// log₂ of the residual ratio between steps h and h/2.
pub fn observed_order(sol: &RayleighSolution, p: &MicroVoidParams, points: &[(f64, f64)], t: f64, h: f64) -> f64 {
    let coarse = pde_residuals(sol, p, points, t, h);
    let fine = pde_residuals(sol, p, points, t, 0.5 * h);
    let a: f64 = coarse.max_abs.iter().sum();
    let b: f64 = fine.max_abs.iter().sum();
    (a / b).log2()
}

/// Stress-free conditions at x₂ = 0:
/// μ(u₁,2 + u₂,1) = 0, (λ+2μ)u₂,2 + λu₁,1 + βζ = 0, αζ,2 = 0,
/// evaluated at the given x₁ values with exact derivatives.
pub fn boundary_residuals(sol: &RayleighSolution, p: &MicroVoidParams, x1s: &[f64], t: f64) -> BoundaryResiduals {
    let k = sol.system.k;
    let d = to_complex(&sol.system.ihat_sqrt_inv);
    let z = d * sol.amplitude;
    let zp = d * (-(sol.e * sol.amplitude) * c(k));
    let ik = I * k;
    let a12 = (zp[0] + ik * z[1]) * p.mu_e;
    let a22 = zp[1] * p.longitudinal_modulus() + ik * z[0] * p.lambda_e + I * z[2] * p.beta;
    let a3 = I * zp[2] * p.alpha;
    let terms = [
        (zp[0] * p.mu_e).norm(),
        (ik * z[1] * p.mu_e).norm(),
        (zp[1] * p.longitudinal_modulus()).norm(),
        (ik * z[0] * p.lambda_e).norm(),
        (z[2] * p.beta).norm(),
        (zp[2] * p.alpha).norm(),
    ];
    let mut max_abs = [0.0f64; 3];
    for &x1 in x1s {
        let phase = Complex64::from_polar(1.0, k * (x1 - sol.v0 * t));
        for (slot, amp) in max_abs.iter_mut().zip([a12, a22, a3]) {
            *slot = slot.max((amp * phase).re.abs());
        }
    }
    BoundaryResiduals { max_abs, scale: terms.iter().copied().fold(0.0, f64::max) }
}
