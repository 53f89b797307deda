use thiserror::Error;

use crate::kinematics::Zone;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("energy {0} is below the rest mass (E/m must be >= 1)")]
    InvalidEnergy(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("incidence at E = m carries no momentum; the matching parameter is undefined")]
    DegenerateIncidence,

    #[error("operation requires {expected}, got {got:?}")]
    WrongZone { expected: &'static str, got: Zone },

    #[error("{zone:?} zone is empty for v0 = {v0}")]
    EmptyZone { zone: Zone, v0: f64 },

    #[error("momentum window [{lo}, {hi}] is not contained in a single zone")]
    MixedZone { lo: f64, hi: f64 },

    #[error("region-II spinor is singular at E = V0 - m")]
    SingularSpinor,

    #[error("finite-difference stencil [{lo}, {hi}] crosses a zone boundary")]
    StencilCrossesBoundary { lo: f64, hi: f64 },

    #[error("invalid energy range [{0}, {1}]")]
    InvalidRange(f64, f64),

    #[error("quadrature not converged: doubling the node count moved r(t) by {change:e} (tolerance {tol:e})")]
    NonConvergence { change: f64, tol: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
