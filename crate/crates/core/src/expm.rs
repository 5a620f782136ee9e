//! Matrix exponential of a complex 3×3 matrix.
//!
//! A diagonalizable matrix with a well-conditioned eigenvector basis goes
//! through `V diag(e^λ) V⁻¹`; anything else falls back to scaling and
//! squaring with a [6/6] Padé approximant.

use num_complex::Complex64;

use crate::linalg::{complex_eigenvalues, smallest_singular_pair, CMat3};

/// Eigenvector condition number above which the eigen path is abandoned.
pub const EIGEN_COND_LIMIT: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpmMethod {
    Eigen,
    Pade,
}

pub fn expm(a: &CMat3) -> CMat3 {
    expm_with_method(a).0
}

pub fn expm_with_method(a: &CMat3) -> (CMat3, ExpmMethod) {
    match expm_eigen(a) {
        Some(e) => (e, ExpmMethod::Eigen),
        None => (expm_pade(a), ExpmMethod::Pade),
    }
}

fn expm_eigen(a: &CMat3) -> Option<CMat3> {
    let scale = a.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
    if scale == 0.0 {
        return Some(CMat3::identity());
    }
    let lam = complex_eigenvalues(a)?;
    for i in 0..3 {
        for j in i + 1..3 {
            if (lam[i] - lam[j]).norm() <= 1e-8 * scale {
                return None;
            }
        }
    }
    let mut v = CMat3::zeros();
    for (j, l) in lam.iter().enumerate() {
        let shifted = a - CMat3::identity() * *l;
        let (_, x) = smallest_singular_pair(&shifted);
        v.set_column(j, &x);
    }
    let sv = v.singular_values();
    let cond = sv.max() / sv.min();
    if !cond.is_finite() || cond >= EIGEN_COND_LIMIT {
        return None;
    }
    let v_inv = v.try_inverse()?;
    let d = CMat3::from_diagonal(&nalgebra::Vector3::new(lam[0].exp(), lam[1].exp(), lam[2].exp()));
    let out = v * d * v_inv;
    out.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(out)
}

/// Scaling and squaring with the diagonal [6/6] Padé approximant.
pub fn expm_pade(a: &CMat3) -> CMat3 {
    const Q: usize = 6;
    let norm1 = (0..3)
        .map(|j| (0..3).map(|i| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0_f64, f64::max);
    let s = if norm1 > 0.5 { (norm1 / 0.5).log2().ceil() as i32 } else { 0 };
    let x = a * Complex64::new(0.5f64.powi(s), 0.0);

    let mut c = 1.0;
    let mut n = CMat3::identity();
    let mut d = CMat3::identity();
    let mut p = CMat3::identity();
    for j in 1..=Q {
        c *= (Q - j + 1) as f64 / (j * (2 * Q - j + 1)) as f64;
        p *= x;
        let term = p * Complex64::new(c, 0.0);
        n += term;
        if j % 2 == 0 {
            d += term;
        } else {
            d -= term;
        }
    }
    let mut r = d.try_inverse().expect("Padé denominator is invertible for ‖X‖ ≤ 1/2") * n;
    for _ in 0..s {
        r = r * r;
    }
    r
}
