use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("word `{word}` is {class}, not hyperbolic")]
    NotHyperbolic { word: String, class: &'static str },

    #[error("{p}/{q} is not a rotation number in lowest terms with 0 < p < q")]
    InvalidRotation { p: u64, q: u64 },

    #[error("angle {0} is an endpoint of [0,1] and has no finite preimage")]
    DegenerateEndpoint(String),

    #[error("block decomposition failed: {0}")]
    Decomposition(String),

    #[error("exact arithmetic failed: {0}")]
    Inexact(String),

    #[error("singular parameter a = {0}")]
    SingularParameter(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("outside domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
