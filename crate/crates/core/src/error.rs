use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A squared speed came out negative, so the material admits no real
    /// wave of that kind.
    #[error("negative radicand for {quantity}: {value:e}")]
    NegativeRadicand { quantity: &'static str, value: f64 },

    #[error("material violates {condition}")]
    Inadmissible { condition: &'static str },

    #[error("singular limit: {0}")]
    SingularLimit(&'static str),

    #[error("singular matrix: {0}")]
    SingularMatrix(&'static str),

    #[error("speed {v} is outside the subsonic range [0, {v_hat})")]
    OutOfRange { v: f64, v_hat: f64 },

    #[error(
        "adaptive quadrature failed after {panels} panels \
         (error estimate {estimate:e}, tolerance {tolerance:e})"
    )]
    QuadratureFailure {
        panels: usize,
        estimate: f64,
        tolerance: f64,
    },

    #[error(
        "no sign change of the secular function: f({v_low}) = {f_low:e}, f({v_high}) = {f_high:e}"
    )]
    NoSignChange {
        v_low: f64,
        f_low: f64,
        v_high: f64,
        f_high: f64,
    },

    #[error("legacy secular function is not real at v = {v}: imaginary part {imag:e}")]
    ComplexLegacy { v: f64, imag: f64 },

    #[error("decay matrix has an eigenvalue with real part {min_real_part:e} <= 0")]
    SpectrumViolation { min_real_part: f64 },

    #[error("characteristic roots are not distinct (separation {separation:e})")]
    RepeatedRoot { separation: f64 },

    #[error("impedance is not rank deficient: smallest singular value {smallest:e}, norm {norm:e}")]
    RankDeficiencyAbsent { smallest: f64, norm: f64 },

    #[error("{0} did not converge")]
    NonConvergence(&'static str),
}

impl Error {
    /// True for errors that mean the material data itself is unusable, as
    /// opposed to a numerical failure downstream.
    pub fn is_inadmissible(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::NegativeRadicand { .. }
                | Error::Inadmissible { .. }
                | Error::SingularLimit(_)
        )
    }
}
