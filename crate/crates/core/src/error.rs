use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ideals live in different rings")]
    ContextMismatch,

    #[error("{0} must be a proper ideal")]
    ImproperIdeal(&'static str),

    #[error("{0} must be a nonzero ideal")]
    ZeroIdeal(&'static str),

    #[error("{0} must be squarefree")]
    NotSquarefree(&'static str),

    #[error("{0} is not a face of the complex")]
    NotAFace(String),

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("complex invariant violated: {0}")]
    NotAComplex(String),

    #[error("window assumption violated: {0}")]
    WindowViolated(String),

    #[error("scan box too small: nonzero contribution at boundary degree {0:?}")]
    ScanBoxTooSmall(Vec<i32>),

    #[error("unsupported ambient: {0}")]
    UnsupportedAmbient(String),

    #[error("module is zero")]
    ZeroModule,

    #[error("ideal {0} is not contained in ideal {1}")]
    NotContained(String, String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An internal postcondition failed. Always a bug or a counterexample worth reporting.
    #[error("invariant violated: {0}")]
    Invariant(String),
}
