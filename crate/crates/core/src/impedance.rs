//! Surface impedance matrix from the angular integral formula
//! M_v = H_v⁻¹ + i H_v⁻¹ S_v with
//! H_v = (1/π)∫₀^π 𝒯_θ⁻¹ dθ and S_v = −(1/π)∫₀^π 𝒯_θ⁻¹ℛ_θᵀ dθ.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::SVector;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{compose, fro, hermitian_eigenvalues, hermitian_part, symmetric_min_eigenvalue, to_complex, CMat3, Mat3, I};
use crate::quadrature::{integrate, AdaptiveOptions};
use crate::stroh::StrohSystem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Impedance {
    /// Hermitian part of H⁻¹ + iH⁻¹S.
    pub m: CMat3,
    pub h: Mat3,
    pub s: Mat3,
    pub v: f64,
    pub quad_error: f64,
    pub panels: usize,
    /// ‖M − Mᴴ‖_F before symmetrization.
    pub hermiticity_defect: f64,
    /// ‖M − (∫𝒯_θ⁻¹)⁻¹(π·1 − i∫𝒯_θ⁻¹ℛ_θᵀ)‖_F before symmetrization.
    pub form_defect: f64,
}

impl Impedance {
    pub fn det_complex(&self) -> Complex64 {
        self.m.determinant()
    }

    /// det M is real for Hermitian M; the rounding-level imaginary part is
    /// dropped.
    pub fn det(&self) -> f64 {
        self.det_complex().re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.m)[0]
    }

    pub fn trace(&self) -> f64 {
        (0..3).map(|i| self.m[(i, i)].re).sum()
    }
}

fn pack(a: &Mat3, b: &Mat3) -> SVector<f64, 18> {
    SVector::<f64, 18>::from_iterator(a.iter().chain(b.iter()).copied())
}

fn unpack(x: &SVector<f64, 18>) -> (Mat3, Mat3) {
    (Mat3::from_iterator(x.iter().take(9).copied()), Mat3::from_iterator(x.iter().skip(9).copied()))
}

/// Angle in (0, π) where 𝒯_θ is closest to singular, located on a grid.
fn weakest_angle(s: &StrohSystem, v: f64) -> f64 {
    let n = 256;
    (1..n)
        .map(|i| {
            let th = PI * i as f64 / n as f64;
            (th, symmetric_min_eigenvalue(&s.rotate(v, th).t_theta))
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(th, _)| th)
        .unwrap_or(FRAC_PI_2)
}

pub fn compute(s: &StrohSystem, v: f64) -> Result<Impedance> {
    compute_with(s, v, &AdaptiveOptions::default())
}

pub fn compute_with(s: &StrohSystem, v: f64, opts: &AdaptiveOptions) -> Result<Impedance> {
    let v_hat = s.v_hat();
    if !(v >= 0.0 && v < v_hat) {
        return Err(Error::OutOfRange { v, v_hat });
    }

    let integrand = |th: f64| {
        let rot = s.rotate(v, th);
        match rot.t_theta.try_inverse() {
            Some(ti) => pack(&ti, &(ti * rot.r_theta.transpose())),
            None => SVector::<f64, 18>::repeat(f64::NAN),
        }
    };
    let mut breaks = vec![0.0, FRAC_PI_2, PI];
    let th = weakest_angle(s, v);
    if (th - FRAC_PI_2).abs() > 1e-9 {
        breaks.push(th);
        breaks.sort_by(f64::total_cmp);
    }
    let out = integrate(integrand, &breaks, opts)?;
    let (int_t, int_tr) = unpack(&out.value);
    let int_t = (int_t + int_t.transpose()) * 0.5;

    let h = int_t / PI;
    let sm = -int_tr / PI;
    let h_inv = h.try_inverse().ok_or(Error::SingularMatrix("H_v"))?;
    let m_raw = compose(&h_inv, &(h_inv * sm));

    let int_inv = int_t.try_inverse().ok_or(Error::SingularMatrix("integral of T_theta^-1"))?;
    let alt = to_complex(&int_inv) * (CMat3::identity() * Complex64::new(PI, 0.0) - to_complex(&int_tr) * I);
    let form_defect = fro(&(m_raw - alt));

    Ok(Impedance {
        m: hermitian_part(&m_raw),
        h,
        s: sm,
        v,
        quad_error: out.error,
        panels: out.panels,
        hermiticity_defect: fro(&(m_raw - m_raw.adjoint())),
        form_defect,
    })
}

/// ‖(M − iℛ)𝒯⁻¹(M + iℛᵀ) − 𝒬 + k²v²·1‖_F.
pub fn riccati_residual_of(s: &StrohSystem, m: &CMat3, v: f64) -> Result<f64> {
    let t_inv = to_complex(&s.t_inverse()?);
    let r = to_complex(&s.r_mat);
    let lhs = (m - r * I) * t_inv * (m + r.transpose() * I);
    Ok(fro(&(lhs - to_complex(&s.q_tilde(v)))))
}

pub fn riccati_residual(s: &StrohSystem, imp: &Impedance) -> Result<f64> {
    riccati_residual_of(s, &imp.m, imp.v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropertyRow {
    pub v: f64,
    pub hermiticity_defect: f64,
    pub m_norm: f64,
    pub min_eigenvalue: f64,
    pub trace: f64,
    pub det: f64,
    pub riccati_residual: f64,
    /// Largest eigenvalue of the central difference (M_{v+h} − M_{v−h})/(2h),
    /// h = 10⁻⁵·v̂. `None` where the stencil leaves [0, v̂).
    pub derivative_max_eigenvalue: Option<f64>,
}

pub fn property_report(s: &StrohSystem, v_grid: &[f64]) -> Result<Vec<PropertyRow>> {
    let h = 1e-5 * s.v_hat();
    v_grid
        .par_iter()
        .map(|&v| {
            let imp = compute(s, v)?;
            let derivative_max_eigenvalue = if v - h >= 0.0 && v + h < s.v_hat() {
                let up = compute(s, v + h)?;
                let down = compute(s, v - h)?;
                let d = (up.m - down.m) * Complex64::new(0.5 / h, 0.0);
                Some(hermitian_eigenvalues(&d)[2])
            } else {
                None
            };
            Ok(PropertyRow {
                v,
                hermiticity_defect: imp.hermiticity_defect,
                m_norm: fro(&imp.m),
                min_eigenvalue: imp.min_eigenvalue(),
                trace: imp.trace(),
                det: imp.det(),
                riccati_residual: riccati_residual(s, &imp)?,
                derivative_max_eigenvalue,
            })
        })
        .collect()
}
