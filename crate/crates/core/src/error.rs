use thiserror::Error;

/// Errors produced by the simulation, analysis and scenario layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("field vector is identically zero")]
    ZeroField,

    #[error("collective eigenvalue X vanishes; no asymptotic limit exists")]
    NoAsymptote,

    #[error("sensitivity formulas do not apply: {0}")]
    SensitivityRegime(String),

    #[error("non-finite value encountered at integration step {step}")]
    NonFinite { step: usize },

    #[error("sample {index} on the winding loop has zero modulus")]
    ZeroModulusOnLoop { index: usize },

    #[error("intensity on the petal ring is identically zero")]
    ZeroIntensityRing,

    #[error("unknown figure id `{0}` (expected one of fig2, fig4, fig6, fig7, fig8)")]
    UnknownFigure(String),

    #[error("validity check failed: {0}")]
    Validity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            Error::Validity(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
