use thiserror::Error;

use crate::{Complex, Evaluation};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(Complex),
    #[error("value exceeds double range in {0}")]
    Overflow(&'static str),
    #[error("argument outside domain: {0}")]
    Domain(String),
    /// The term or panel budget ran out. `best` holds the last estimate.
    #[error("no convergence after {} terms (error estimate {:e})", best.terms_used, best.abs_error_estimate)]
    NoConvergence { best: Box<Evaluation> },
    #[error("integrand tail does not decay as declared: {0}")]
    DivergentTail(String),
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
