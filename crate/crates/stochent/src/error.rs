use thiserror::Error;

/// Error taxonomy shared by every module in the crate.
///
/// `Shape` is a dimension/conformability failure, `Argument` a semantic
/// precondition failure (not stochastic, not Hermitian, bad weights),
/// `Internal` an algorithmic failure that valid inputs should never trigger
/// (non-convergence, no perfect matching on a bistochastic support).
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("argument error: {0}")]
    Argument(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Shape(msg.into()))
}

pub(crate) fn arg_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
