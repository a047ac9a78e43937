use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mesh: {0}")]
    Mesh(String),

    #[error("invalid layer layout: {0}")]
    Layout(String),

    #[error("invalid state: {0}")]
    State(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    /// A step produced a non-finite value, a dry cell or an unusable implicit
    /// system. The run is considered unstable from this point on.
    #[error("step failed at t = {t}: {reason}")]
    StepFailure { t: f64, reason: String },

    #[error("eigenvalue solver did not converge for a {0}x{0} matrix")]
    Eigen(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("front not found: {0}")]
    FrontNotFound(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("toml: {0}")]
    TomlDe(#[from] toml::de::Error),

    #[error("toml: {0}")]
    TomlSer(#[from] toml::ser::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
