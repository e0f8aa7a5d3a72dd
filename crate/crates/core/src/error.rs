use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} is NaN")]
    NotANumber { name: &'static str },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// A violated problem precondition, e.g. `phi0` not strictly inside `(phi2, phi1)`.
    #[error("{0}")]
    Precondition(String),

    #[error("input not convex: {0}")]
    NotConvex(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unbalanced facet list: |sum area*normal| = {residual:e}")]
    Unbalanced { residual: f64 },

    #[error("sampler failed: {0}")]
    Sampler(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by invalid input, as opposed to internal failures.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
