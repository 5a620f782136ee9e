//! Constitutive parameters of the micro-voids model, their identification
//! from the relaxed micromorphic model and the admissibility checks.
//!
//! All quantities are raw numbers in whatever consistent unit system the
//! caller uses. Nothing here converts units.

use crate::error::{Error, Result};

/// Coefficients of an isotropic elastic material with micro-voids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicroVoidParams {
    pub mu_e: f64,
    pub lambda_e: f64,
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    pub rho0: f64,
    pub kappa_inertia: f64,
}

fn finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value, reason: "must be finite" })
    }
}

impl MicroVoidParams {
    /// Only the densities are constrained here. Sign conditions on the
    /// moduli belong to [`check_real_waves`] and [`check_positive_definite`].
    pub fn new(mu_e: f64, lambda_e: f64, alpha: f64, beta: f64, xi: f64, rho0: f64, kappa_inertia: f64) -> Result<Self> {
        let p = Self { mu_e, lambda_e, alpha, beta, xi, rho0, kappa_inertia };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        finite("mu_e", self.mu_e)?;
        finite("lambda_e", self.lambda_e)?;
        finite("alpha", self.alpha)?;
        finite("beta", self.beta)?;
        finite("xi", self.xi)?;
        finite("rho0", self.rho0)?;
        finite("kappa_inertia", self.kappa_inertia)?;
        if self.rho0 <= 0.0 {
            return Err(Error::InvalidParameter { name: "rho0", value: self.rho0, reason: "density must be positive" });
        }
        if self.kappa_inertia <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "kappa_inertia",
                value: self.kappa_inertia,
                reason: "micro-inertia must be positive",
            });
        }
        Ok(())
    }

    /// λ_e + 2μ_e, the longitudinal modulus.
    pub fn longitudinal_modulus(&self) -> f64 {
        self.lambda_e + 2.0 * self.mu_e
    }

    /// κ_e = (2μ_e + 3λ_e)/3.
    pub fn kappa_e(&self) -> f64 {
        (2.0 * self.mu_e + 3.0 * self.lambda_e) / 3.0
    }
}

/// Coefficients of the parent relaxed micromorphic model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxedParams {
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

impl RelaxedParams {
    pub fn kappa_e(&self) -> f64 {
        (2.0 * self.mu_e + 3.0 * self.lambda_e) / 3.0
    }

    pub fn kappa_micro(&self) -> f64 {
        (2.0 * self.mu_micro + 3.0 * self.lambda_micro) / 3.0
    }
}

/// Identification of the micro-voids coefficients for P = ζ·1.
///
/// Fails only when the resulting densities are not positive (e.g. η = 0 or
/// τ_c = 0 gives ϰ = 0).
pub fn from_relaxed(p: &RelaxedParams) -> Result<MicroVoidParams> {
    let kappa_e = p.kappa_e();
    MicroVoidParams::new(
        p.mu_e,
        p.lambda_e,
        2.0 * p.mu_e * p.l_c * p.l_c * p.a2,
        -3.0 * kappa_e,
        9.0 * (kappa_e + p.kappa_micro()),
        p.rho0,
        3.0 * p.eta * p.tau_c * p.tau_c,
    )
}

/// Macro, micro and meso moduli obtained from engineering constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacroSplit {
    pub mu_macro: f64,
    pub lambda_macro: f64,
    pub kappa_macro: f64,
    pub mu_micro: f64,
    pub lambda_micro: f64,
    pub kappa_micro: f64,
    pub mu_e: f64,
    pub lambda_e: f64,
    pub kappa_e: f64,
    pub rho0: f64,
}

/// Splits macroscopic (ν, E) into meso and micro moduli, with the micro
/// moduli a fixed multiple of the macro ones.
///
/// The shear-type modulus is taken as Eν/((1+ν)(1−2ν)) and the Lamé-type
/// one as E/(2(1+ν)). This is the assignment that reproduces the reference
/// steel data set (μ_e = 242.308, κ_e = 323.077 at ν = 0.3, E = 210, scale 2).
pub fn from_macro(nu_macro: f64, e_macro: f64, rho0: f64, micro_scale: f64) -> Result<MacroSplit> {
    finite("nu_macro", nu_macro)?;
    finite("E_macro", e_macro)?;
    finite("rho0", rho0)?;
    finite("micro_scale", micro_scale)?;
    if nu_macro == -1.0 || nu_macro == 0.5 {
        return Err(Error::InvalidParameter {
            name: "nu_macro",
            value: nu_macro,
            reason: "Poisson ratio -1 and 1/2 are singular",
        });
    }
    let mu_macro = e_macro * nu_macro / ((1.0 + nu_macro) * (1.0 - 2.0 * nu_macro));
    let lambda_macro = e_macro / (2.0 * (1.0 + nu_macro));
    let kappa_macro = (3.0 * lambda_macro + 2.0 * mu_macro) / 3.0;
    let mu_micro = micro_scale * mu_macro;
    let kappa_micro = micro_scale * kappa_macro;
    if mu_macro == mu_micro {
        return Err(Error::SingularLimit("mu_micro equals mu_macro"));
    }
    if kappa_macro == kappa_micro {
        return Err(Error::SingularLimit("kappa_micro equals kappa_macro"));
    }
    let mu_e = -mu_macro * mu_micro / (mu_macro - mu_micro);
    let kappa_e = -kappa_macro * kappa_micro / (kappa_macro - kappa_micro);
    let lambda_e = (3.0 * kappa_e - 2.0 * mu_e) / 3.0;
    Ok(MacroSplit {
        mu_macro,
        lambda_macro,
        kappa_macro,
        mu_micro,
        lambda_micro: kappa_micro - 2.0 * mu_micro / 3.0,
        kappa_micro,
        mu_e,
        lambda_e,
        kappa_e,
        rho0,
    })
}

impl MacroSplit {
    pub fn relaxed(&self, l_c: f64, a2: f64, eta: f64, tau_c: f64) -> RelaxedParams {
        RelaxedParams {
            mu_e: self.mu_e,
            lambda_e: self.lambda_e,
            mu_micro: self.mu_micro,
            lambda_micro: self.lambda_micro,
            l_c,
            a2,
            eta,
            tau_c,
            rho0: self.rho0,
        }
    }

    /// Micro-voids coefficients with α and ϰ supplied directly instead of
    /// through L_c, a₂, η and τ_c.
    pub fn micro_voids(&self, alpha: f64, kappa_inertia: f64) -> Result<MicroVoidParams> {
        MicroVoidParams::new(
            self.mu_e,
            self.lambda_e,
            alpha,
            -3.0 * self.kappa_e,
            9.0 * (self.kappa_e + self.kappa_micro),
            self.rho0,
            kappa_inertia,
        )
    }
}

/// One strict inequality `lhs > rhs` that failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

fn collect(checks: &[(&'static str, f64, f64)]) -> ConditionReport {
    let violations: Vec<Violation> = checks
        .iter()
        .filter(|(_, lhs, rhs)| !(lhs > rhs))
        .map(|&(name, lhs, rhs)| Violation { name, lhs, rhs })
        .collect();
    ConditionReport { ok: violations.is_empty(), violations }
}

/// Real plane waves exist iff μ_e > 0, λ_e+2μ_e > 0, α > 0 and
/// (λ_e+2μ_e)ξ > β².
pub fn check_real_waves(p: &MicroVoidParams) -> ConditionReport {
    let c = p.longitudinal_modulus();
    collect(&[
        ("mu_e>0", p.mu_e, 0.0),
        ("lambda_e+2mu_e>0", c, 0.0),
        ("alpha>0", p.alpha, 0.0),
        ("(lambda_e+2mu_e)xi>beta^2", c * p.xi, p.beta * p.beta),
    ])
}

/// Positive definiteness of the internal energy.
pub fn check_positive_definite(p: &MicroVoidParams) -> ConditionReport {
    let b = 3.0 * p.lambda_e + 2.0 * p.mu_e;
    collect(&[
        ("3lambda_e+2mu_e>0", b, 0.0),
        ("mu_e>0", p.mu_e, 0.0),
        ("xi>0", p.xi, 0.0),
        ("alpha>0", p.alpha, 0.0),
        ("(3lambda_e+2mu_e)xi>3beta^2", b * p.xi, 3.0 * p.beta * p.beta),
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub real_waves_ok: bool,
    pub positive_definite_ok: bool,
    /// Real-wave violations first, then positive-definiteness ones.
    pub violated_conditions: Vec<Violation>,
    pub warnings: Vec<String>,
}

pub fn assess(p: &MicroVoidParams) -> AdmissibilityReport {
    let rw = check_real_waves(p);
    let pd = check_positive_definite(p);
    let mut warnings = Vec::new();
    if p.beta > 0.0 {
        warnings.push(format!(
            "beta = {} > 0: the identification beta = -3 kappa_e makes beta negative for any material with kappa_e > 0",
            p.beta
        ));
    }
    let mut violated_conditions = rw.violations;
    violated_conditions.extend(pd.violations);
    AdmissibilityReport {
        real_waves_ok: rw.ok,
        positive_definite_ok: pd.ok,
        violated_conditions,
        warnings,
    }
}
