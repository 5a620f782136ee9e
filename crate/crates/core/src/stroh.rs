//! Stroh-type matrix triple of the half-space problem, its rotation in the
//! (x₁, x₂) plane, the sextic characteristic equation and the limiting speed.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix6, Vector3};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::bulk::{acoustic_matrix, symmetric_2x2_eigenvalues};
use crate::error::{Error, Result};
use crate::linalg::{symmetric_min_eigenvalue, Mat3, SCHUR_MAX_ITER};
use crate::material::{check_real_waves, MicroVoidParams};

/// Unscaled coefficient matrices T, R, Q at wave number k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawMatrices {
    pub t: Mat3,
    pub r: Mat3,
    pub q: Mat3,
    pub k: f64,
}

pub fn build_raw(p: &MicroVoidParams, k: f64) -> Result<RawMatrices> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter { name: "k", value: k, reason: "wave number must be positive" });
    }
    let c = p.longitudinal_modulus();
    let k2 = k * k;
    let t = Mat3::from_diagonal(&Vector3::new(k2 * p.mu_e, k2 * c, k2 * p.alpha));
    #[rustfmt::skip]
    let r = Mat3::new(
        0.0,            k2 * p.lambda_e, 0.0,
        k2 * p.mu_e,    0.0,             0.0,
        0.0,            k * p.beta,      0.0,
    );
    #[rustfmt::skip]
    let q = Mat3::new(
        k2 * c,     0.0,         p.beta * k,
        0.0,        k2 * p.mu_e, 0.0,
        p.beta * k, 0.0,         k2 * p.alpha + p.xi,
    );
    Ok(RawMatrices { t, r, q, k })
}

/// Candidate limiting speeds at wave number k.
///
/// `formula` is min(v_s, v_m), the closed-form value built from the
/// longitudinal/void block only. `subsonic` additionally takes the
/// transverse speed v_t into account; it is the infimum of the θ-scan and
/// the bound below which the sextic has no real root. Everything that needs
/// the admissible interval [0, v̂) uses `subsonic`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitingSpeed {
    pub v_t: f64,
    pub v_s: f64,
    pub v_m: f64,
    pub formula: f64,
    pub subsonic: f64,
}

pub fn limiting_speed_formula(p: &MicroVoidParams, k: f64) -> Result<LimitingSpeed> {
    p.validate()?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter { name: "k", value: k, reason: "wave number must be positive" });
    }
    if let Some(v) = check_real_waves(p).violations.first() {
        return Err(Error::Inadmissible { condition: v.name });
    }
    let v_t_sq = p.mu_e / p.rho0;
    let v_s_sq = p.longitudinal_modulus() / p.rho0;
    let (lam_min, _) = symmetric_2x2_eigenvalues(&acoustic_matrix(p, k));
    let v_m_sq = lam_min / (k * k);
    for (quantity, value) in [("v_t^2", v_t_sq), ("v_s^2", v_s_sq), ("v_m^2", v_m_sq)] {
        if !(value > 0.0) {
            return Err(Error::NegativeRadicand { quantity, value });
        }
    }
    let (v_t, v_s, v_m) = (v_t_sq.sqrt(), v_s_sq.sqrt(), v_m_sq.sqrt());
    let formula = v_s.min(v_m);
    Ok(LimitingSpeed { v_t, v_s, v_m, formula, subsonic: formula.min(v_t) })
}

/// Density-scaled matrix triple (𝒯, ℛ, 𝒬).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrohSystem {
    pub t_mat: Mat3,
    pub r_mat: Mat3,
    pub q_mat: Mat3,
    pub k: f64,
    pub ihat_sqrt_inv: Mat3,
    pub limit: LimitingSpeed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedTriple {
    pub t_theta: Mat3,
    pub r_theta: Mat3,
    pub q_theta_tilde: Mat3,
    pub theta: f64,
    pub v: f64,
}

pub fn scale(raw: &RawMatrices, p: &MicroVoidParams) -> Result<StrohSystem> {
    let limit = limiting_speed_formula(p, raw.k)?;
    let a = 1.0 / p.rho0.sqrt();
    let b = 1.0 / (p.rho0 * p.kappa_inertia).sqrt();
    let d = Mat3::from_diagonal(&Vector3::new(a, a, b));
    let sym = |m: Mat3| (m + m.transpose()) * 0.5;
    Ok(StrohSystem {
        t_mat: sym(d * raw.t * d),
        r_mat: d * raw.r * d,
        q_mat: sym(d * raw.q * d),
        k: raw.k,
        ihat_sqrt_inv: d,
        limit,
    })
}

/// A root r of the sextic counts as real when |Im r| < 1e-9·(1 + |r|).
pub fn is_real_root(r: Complex64) -> bool {
    r.im.abs() < 1e-9 * (1.0 + r.norm())
}

impl StrohSystem {
    pub fn new(p: &MicroVoidParams, k: f64) -> Result<Self> {
        scale(&build_raw(p, k)?, p)
    }

    /// Upper end of the admissible speed interval.
    pub fn v_hat(&self) -> f64 {
        self.limit.subsonic
    }

    /// 𝒬̃ = 𝒬 − k²v²·1.
    pub fn q_tilde(&self, v: f64) -> Mat3 {
        self.q_mat - Mat3::identity() * (self.k * self.k * v * v)
    }

    pub fn rotate(&self, v: f64, theta: f64) -> RotatedTriple {
        let (s, c) = theta.sin_cos();
        let t = &self.t_mat;
        let r = &self.r_mat;
        let qt = self.q_tilde(v);
        let rs = r + r.transpose();
        RotatedTriple {
            t_theta: t * (c * c) - rs * (s * c) + qt * (s * s),
            r_theta: r * (c * c) + (t - qt) * (s * c) - r.transpose() * (s * s),
            q_theta_tilde: qt * (c * c) + rs * (s * c) + t * (s * s),
            theta,
            v,
        }
    }

    /// 𝒬_θ = sin²θ 𝒯 + sinθ cosθ (ℛ+ℛᵀ) + cos²θ 𝒬, the acoustic tensor for
    /// propagation along (cosθ, sinθ, 0).
    pub fn q_theta(&self, theta: f64) -> Mat3 {
        let (s, c) = theta.sin_cos();
        self.t_mat * (s * s) + (self.r_mat + self.r_mat.transpose()) * (s * c) + self.q_mat * (c * c)
    }

    pub fn t_inverse(&self) -> Result<Mat3> {
        let d = self.t_mat.diagonal();
        let eps = 1e-12 * d.amax();
        if d.iter().any(|x| x.abs() <= eps) {
            return Err(Error::SingularMatrix("T"));
        }
        Ok(Mat3::from_diagonal(&d.map(|x| 1.0 / x)))
    }

    /// Roots of det[r²𝒯 + r(ℛ+ℛᵀ) + 𝒬 − k²v²·1] = 0 from the 6×6 companion
    /// linearization, sorted by imaginary part then real part.
    pub fn sextic_roots(&self, v: f64) -> Result<[Complex64; 6]> {
        let t_inv = self.t_inverse()?;
        let a = -(t_inv * self.q_tilde(v));
        let b = -(t_inv * (self.r_mat + self.r_mat.transpose()));
        let mut comp = Matrix6::<f64>::zeros();
        for i in 0..3 {
            comp[(i, i + 3)] = 1.0;
            for j in 0..3 {
                comp[(i + 3, j)] = a[(i, j)];
                comp[(i + 3, j + 3)] = b[(i, j)];
            }
        }
        nalgebra::linalg::balancing::balance_parlett_reinsch(&mut comp);
        let ev = [f64::EPSILON, 4.0 * f64::EPSILON, 64.0 * f64::EPSILON]
            .iter()
            .find_map(|&eps| comp.try_schur(eps, SCHUR_MAX_ITER))
            .ok_or(Error::NonConvergence("companion eigenvalues"))?
            .complex_eigenvalues();
        let mut roots = [Complex64::new(0.0, 0.0); 6];
        for (slot, z) in roots.iter_mut().zip(ev.iter()) {
            *slot = *z;
        }
        roots.sort_by(|x, y| x.im.total_cmp(&y.im).then(x.re.total_cmp(&y.re)));
        Ok(roots)
    }

    /// The three roots with Im r > 0, or an error if a root is real.
    pub fn upper_roots(&self, v: f64) -> Result<[Complex64; 3]> {
        let roots = self.sextic_roots(v)?;
        if roots.iter().any(|r| is_real_root(*r)) {
            return Err(Error::OutOfRange { v, v_hat: self.v_hat() });
        }
        Ok([roots[3], roots[4], roots[5]])
    }
}

fn scan_value(s: &StrohSystem, theta: f64) -> f64 {
    let c = theta.cos();
    let lam = symmetric_min_eigenvalue(&s.q_theta(theta)).max(0.0);
    (lam / (s.k * s.k * c * c)).sqrt()
}

/// Numerical limiting speed: minimum over θ ∈ (−π/2, π/2) of
/// √(λ_min(𝒬_θ)/(k² cos²θ)) on a uniform interior grid, refined by golden
/// section search in the two cells around the grid minimizer.
pub fn limiting_speed_scan(s: &StrohSystem, n_theta: usize) -> Result<f64> {
    if n_theta < 64 {
        return Err(Error::InvalidParameter {
            name: "n_theta",
            value: n_theta as f64,
            reason: "scan needs at least 64 grid points",
        });
    }
    let h = PI / n_theta as f64;
    let grid: Vec<(f64, f64)> = (1..n_theta)
        .into_par_iter()
        .map(|i| {
            let th = -FRAC_PI_2 + i as f64 * h;
            (th, scan_value(s, th))
        })
        .collect();
    let &(th_min, f_min) = grid.iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("non-empty grid");

    let (mut a, mut b) = (th_min - h, th_min + h);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = scan_value(s, x1);
    let mut f2 = scan_value(s, x2);
    for _ in 0..40 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = scan_value(s, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = scan_value(s, x2);
        }
    }
    Ok(f_min.min(f1).min(f2))
}
