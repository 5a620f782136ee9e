#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use voidsurf::material::{check_positive_definite, check_real_waves, from_macro};
use voidsurf::MicroVoidParams;

/// Reference steel data set: ν = 0.3, E = 210, ρ₀ = 7850, micro moduli
/// twice the macro ones, α = 10, ϰ = 1.5.
pub fn steel() -> MicroVoidParams {
    from_macro(0.3, 210.0, 7850.0, 2.0).unwrap().micro_voids(10.0, 1.5).unwrap()
}

pub fn classical_limit() -> MicroVoidParams {
    from_macro(0.3, 210.0, 7850.0, 1e7).unwrap().micro_voids(10.0, 1.5).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A positive-definite material (hence one with real plane waves) with
/// moderate contrast. Real-wave admissibility alone is not enough for the
/// surface-wave results: without positive definiteness M_0 can be indefinite.
pub fn random_admissible(rng: &mut ChaCha8Rng) -> MicroVoidParams {
    loop {
        let mu: f64 = rng.gen_range(50.0..500.0);
        let lambda = rng.gen_range(-0.6 * mu..2.0 * mu);
        let xi: f64 = rng.gen_range(1e3..2e4);
        let b = 3.0 * lambda + 2.0 * mu;
        let beta = -rng.gen_range(0.0..0.95) * (b * xi / 3.0).sqrt();
        let alpha = rng.gen_range(1.0..50.0);
        let rho0 = rng.gen_range(1000.0..10000.0);
        let kappa = rng.gen_range(0.5..3.0);
        let p = MicroVoidParams::new(mu, lambda, alpha, beta, xi, rho0, kappa).unwrap();
        if check_positive_definite(&p).ok && check_real_waves(&p).ok {
            return p;
        }
    }
}
