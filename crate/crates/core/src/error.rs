use crate::dd::Cdd;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Validation(String),
    #[error("pole of the cot/coth factor at distance {distance:.3e} from the integration segment")]
    NearPole { distance: f64 },
    #[error("non-removable singularity at u = {at}")]
    NonRemovable { at: f64 },
    #[error("tolerance not met: best estimate {best}, error estimate {err:.3e}")]
    ToleranceNotMet { best: Cdd, err: f64 },
    #[error("Bernoulli table too short: need index {needed}, have {available}")]
    TableTooShort { needed: usize, available: usize },
    #[error("cot pole: a*n/K is an integer")]
    CotPole,
    #[error("imaginary residual {residual:.3e} exceeds {bound:.1e}")]
    ImaginaryResidual { residual: f64, bound: f64 },
}

impl Error {
    /// Whether the failure is numerical rather than a rejected input.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Validation(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
