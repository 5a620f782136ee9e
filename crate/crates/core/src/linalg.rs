//! Small dense helpers on 3×3 real and complex matrices.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

pub type Mat3 = Matrix3<f64>;
pub type CMat3 = Matrix3<Complex64>;
pub type CVec3 = Vector3<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn to_complex(m: &Mat3) -> CMat3 {
    m.map(|x| Complex64::new(x, 0.0))
}

/// `a + i b` for real `a`, `b`.
pub fn compose(re: &Mat3, im: &Mat3) -> CMat3 {
    CMat3::from_fn(|r, c| Complex64::new(re[(r, c)], im[(r, c)]))
}

pub fn fro(m: &CMat3) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn fro_real(m: &Mat3) -> f64 {
    m.norm()
}

pub fn vec_norm(v: &CVec3) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn hermitian_part(m: &CMat3) -> CMat3 {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat3) -> [f64; 3] {
    let mut ev: Vec<f64> = hermitian_part(m).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    [ev[0], ev[1], ev[2]]
}

pub fn symmetric_min_eigenvalue(m: &Mat3) -> f64 {
    m.symmetric_eigenvalues().min()
}

/// Smallest singular value and the matching right singular vector (unit norm).
pub fn smallest_singular_pair(m: &CMat3) -> (f64, CVec3) {
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let (j, sigma) = svd
        .singular_values
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("three singular values");
    let v = v_t.row(j).adjoint();
    (sigma, CVec3::new(v[0], v[1], v[2]))
}

pub fn largest_singular_value(m: &CMat3) -> f64 {
    m.singular_values().max()
}

/// Iteration cap for Schur decompositions; the unbounded variant can
/// cycle forever on some inputs.
pub const SCHUR_MAX_ITER: usize = 10_000;

/// Eigenvalues of a general complex 3×3 matrix from its Schur form.
pub fn complex_eigenvalues(m: &CMat3) -> Option<[Complex64; 3]> {
    let ev = m.try_schur(f64::EPSILON, SCHUR_MAX_ITER)?.eigenvalues()?;
    Some([ev[0], ev[1], ev[2]])
}

/// Rescales `v` so its first component with modulus above `1e-12·‖v‖` is
/// real and positive.
pub fn fix_phase(v: &CVec3) -> CVec3 {
    let n = vec_norm(v);
    if n == 0.0 {
        return *v;
    }
    match v.iter().find(|z| z.norm() > 1e-12 * n) {
        Some(z) => v * (z.conj() / z.norm()),
        None => *v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_pair_of_diagonal() {
        let m = to_complex(&Mat3::from_diagonal(&Vector3::new(0.0, 1.0, 2.0)));
        let (s, v) = smallest_singular_pair(&m);
        assert!(s.abs() < 1e-15);
        assert!((v[0].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_eigenvalues_sorted() {
        let m = compose(
            &Mat3::new(2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 3.0),
            &Mat3::new(0.0, 0.5, 0.0, -0.5, 0.0, 0.0, 0.0, 0.0, 0.0),
        );
        let ev = hermitian_eigenvalues(&m);
        assert!(ev[0] <= ev[1] && ev[1] <= ev[2]);
        let tr: f64 = ev.iter().sum();
        assert!((tr - 6.0).abs() < 1e-13);
    }

    #[test]
    fn phase_is_fixed_on_first_component() {
        let v = CVec3::new(Complex64::new(0.0, -2.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, 0.0));
        let w = fix_phase(&v);
        assert!(w[0].im.abs() < 1e-15 && w[0].re > 0.0);
        assert!((vec_norm(&w) - vec_norm(&v)).abs() < 1e-14);
    }

    #[test]
    fn schur_eigenvalues_of_triangular() {
        let mut m = CMat3::zeros();
        m[(0, 0)] = Complex64::new(1.0, 1.0);
        m[(1, 1)] = Complex64::new(2.0, 0.0);
        m[(2, 2)] = Complex64::new(0.0, -3.0);
        m[(0, 2)] = Complex64::new(5.0, 0.0);
        let mut ev = complex_eigenvalues(&m).unwrap();
        ev.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((ev[0] - Complex64::new(0.0, -3.0)).norm() < 1e-12);
        assert!((ev[2] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }
}
