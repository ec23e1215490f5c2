use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge after {terms} terms (tail estimate {tail:e})")]
    NonConvergence { terms: usize, tail: f64 },
    #[error("argument outside the Fourier strip: {0}")]
    Strip(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("pole on integration path: {0}")]
    PoleOnPath(String),
    #[error("continued fraction stagnated at depth {depth} (last change {delta:e})")]
    CfStagnation { depth: usize, delta: f64 },
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
