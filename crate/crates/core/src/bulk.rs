//! Whole-space plane waves: the 2×2 longitudinal/void acoustic matrix, the
//! four bulk speeds and the characteristic amplitude vectors.

use nalgebra::{Matrix2, Vector3, Vector4};

use crate::error::{Error, Result};
use crate::material::MicroVoidParams;

/// Q̃(k) = Î₂^{-1/2} Q₁(k) Î₂^{-1/2}.
pub fn acoustic_matrix(p: &MicroVoidParams, k: f64) -> Matrix2<f64> {
    let off = p.beta * k / (p.rho0 * p.kappa_inertia.sqrt());
    Matrix2::new(
        p.longitudinal_modulus() * k * k / p.rho0,
        off,
        off,
        (p.alpha * k * k + p.xi) / (p.rho0 * p.kappa_inertia),
    )
}

/// Eigenvalues (small, large) of a symmetric 2×2 matrix. The small one is
/// recovered from the determinant so it keeps full relative accuracy.
pub fn symmetric_2x2_eigenvalues(m: &Matrix2<f64>) -> (f64, f64) {
    let (a, b, d) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
    let half_tr = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    let det = a * d - b * b;
    if half_tr >= 0.0 {
        let large = half_tr + rad;
        let small = if large != 0.0 { det / large } else { 0.0 };
        (small, large)
    } else {
        let small = half_tr - rad;
        let large = if small != 0.0 { det / small } else { 0.0 };
        (small, large)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BulkSpeeds {
    pub v_t: f64,
    pub v3: f64,
    pub v4: f64,
}

/// v_t = √(μ_e/ρ₀) and the two longitudinal speeds, which are the roots of
/// det[Q₁(1) − v² diag(ρ₀, ρ₀ϰ)] = 0.
pub fn bulk_speeds(p: &MicroVoidParams) -> Result<BulkSpeeds> {
    p.validate()?;
    if p.mu_e < 0.0 {
        return Err(Error::NegativeRadicand { quantity: "v_t^2", value: p.mu_e / p.rho0 });
    }
    let (v4_sq, v3_sq) = symmetric_2x2_eigenvalues(&acoustic_matrix(p, 1.0));
    if v4_sq < 0.0 {
        return Err(Error::NegativeRadicand { quantity: "v4^2", value: v4_sq });
    }
    Ok(BulkSpeeds {
        v_t: (p.mu_e / p.rho0).sqrt(),
        v3: v3_sq.sqrt(),
        v4: v4_sq.sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BulkModes {
    pub u1_hat: Vector3<f64>,
    pub u2_hat: Vector3<f64>,
    pub u3_hat: Vector4<f64>,
    pub u4_hat: Vector4<f64>,
    pub frak_c: f64,
    pub frak_a: f64,
}

/// Unnormalized characteristic vectors for propagation along the unit
/// vector `m` (k = 1).
pub fn bulk_modes(p: &MicroVoidParams, m: &Vector3<f64>) -> Result<BulkModes> {
    let n = m.norm();
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter { name: "m", value: n, reason: "direction must have unit norm" });
    }
    let s = bulk_speeds(p)?;
    let rk = p.rho0 * p.kappa_inertia;
    let frak_c = rk * s.v3 * s.v3 - p.xi - p.alpha;
    let frak_a = rk * s.v4 * s.v4 - p.xi - p.alpha;
    Ok(BulkModes {
        u1_hat: Vector3::new(-m[2], 0.0, m[0]),
        u2_hat: Vector3::new(-m[1], m[0], 0.0),
        u3_hat: Vector4::new(m[0] * frak_c, m[1] * frak_c, m[2] * frak_c, p.beta),
        u4_hat: Vector4::new(m[0] * frak_a, m[1] * frak_a, m[2] * frak_a, p.beta),
        frak_c,
        frak_a,
    })
}

/// Residual of the plane-wave amplitude system for (û, ζ̂) at wave number
/// `k` and frequency `omega` along `m`. Row r (r = 1..3):
/// (μ_e k² − ρ₀ω²) û_r + (μ_e+λ_e) k² (û·m) m_r + βk ζ̂ m_r;
/// row 4: (αk² + ξ − ρ₀ϰω²) ζ̂ + βk (û·m).
pub fn plane_wave_residual(p: &MicroVoidParams, m: &Vector3<f64>, k: f64, omega: f64, amp: &Vector4<f64>) -> Vector4<f64> {
    let u = Vector3::new(amp[0], amp[1], amp[2]);
    let z = amp[3];
    let um = u.dot(m);
    let w2 = omega * omega;
    let top = u * (p.mu_e * k * k - p.rho0 * w2) + m * ((p.mu_e + p.lambda_e) * k * k * um + p.beta * k * z);
    let bottom = (p.alpha * k * k + p.xi - p.rho0 * p.kappa_inertia * w2) * z + p.beta * k * um;
    Vector4::new(top[0], top[1], top[2], bottom)
}
