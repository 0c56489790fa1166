use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse error classes; the CLI maps each to a stable exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Io,
    CryptoMismatch,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("image is empty")]
    EmptyImage,
    #[error("image is {width}x{height}; both dimensions must be even (odd sizes are not padded)")]
    OddDimensions { width: usize, height: usize },
    #[error("pixel buffer holds {actual} bytes, expected {expected}")]
    PixelCount { expected: usize, actual: usize },
    #[error("dimension mismatch: {left_width}x{left_height} vs {right_width}x{right_height}")]
    DimensionMismatch {
        left_width: usize,
        left_height: usize,
        right_width: usize,
        right_height: usize,
    },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("orbit diverged: non-finite state at step {step}")]
    OrbitDivergence { step: usize },
    #[error("orbit has {rows} rows, at least {needed} required")]
    OrbitTooShort { rows: usize, needed: usize },
    #[error("orbit length must be at least 1")]
    EmptyOrbit,
    #[error("sequence value at index {0} is not finite")]
    NonFinite(usize),
    #[error("not a permutation: index {0} is out of range or repeated")]
    NotAPermutation(usize),
    #[error("S-box must have 256 entries, got {0}")]
    SBoxLength(usize),
    #[error("S-box is not bijective: value {value} first repeats at index {index}")]
    SBoxDuplicate { value: u8, index: usize },
    #[error("{scheme} needs at least {min} rounds, got {rounds}")]
    TooFewRounds {
        scheme: &'static str,
        min: usize,
        rounds: usize,
    },
    #[error("correlation undefined: sampled pixels have zero variance")]
    UndefinedCorrelation,
    #[error("image too small for {direction} correlation sampling")]
    NotEnoughPixels { direction: &'static str },
    #[error("at least {min} {what} required, got {got}")]
    TooFew {
        what: &'static str,
        min: usize,
        got: usize,
    },
    #[error("unknown dynamical system `{0}`")]
    UnknownSystem(String),
    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),
    #[error("side-channel checksum mismatch at round {round}")]
    ChecksumMismatch { round: usize },
    #[error("side-channel file does not fit this ciphertext: {0}")]
    SideChannelMismatch(String),
    #[error("S-box mismatch: key expects `{expected}`, got `{actual}`")]
    SBoxMismatch { expected: String, actual: String },
    #[error("key envelope is for {found}, expected {expected}")]
    SchemeMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("malformed {what}: {reason}")]
    Parse { what: &'static str, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Io(_) => ErrorClass::Io,
            Error::ChecksumMismatch { .. }
            | Error::SideChannelMismatch(_)
            | Error::SBoxMismatch { .. }
            | Error::SchemeMismatch { .. }
            | Error::UnknownSystem(_) => ErrorClass::CryptoMismatch,
            _ => ErrorClass::Validation,
        }
    }

    pub(crate) fn parse(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            reason: reason.into(),
        }
    }
}
