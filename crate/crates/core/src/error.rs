use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("elements belong to different algebras")]
    HostMismatch,

    #[error("element is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("parse error in {input:?}: {message}")]
    Parse { input: String, message: String },

    #[error("cap exceeded: {what} is {value}, cap is {cap}; raise the cap to proceed")]
    CapExceeded { what: String, value: u64, cap: u64 },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("validation failed:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(input: &str, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            message: message.into(),
        }
    }
}
