use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Invalid dimensions, ranks or distribution parameters.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Argument outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input failed a structural check (Hermitian, orthonormal columns, ...).
    #[error("validation error: {0}")]
    Validation(String),
    /// A matrix that must be invertible was numerically singular.
    #[error("singular matrix: {0}")]
    Singular(String),
    /// Non-finite values, failed root bracketing and similar numeric trouble.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// Parameters outside the regime where a limit law applies.
    #[error("unsupported regime: {0}")]
    Regime(String),
    /// A computed value violated a property it must satisfy.
    #[error("consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $variant:ident, $($fmt:tt)+) => {
        if !($cond) {
            return Err($crate::error::Error::$variant(format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure;
