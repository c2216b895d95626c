use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no simple type {family}{rank}")]
    InvalidType { family: char, rank: usize },

    #[error("expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("restriction of {0:?} is not integral")]
    NonIntegral(Vec<i64>),

    /// The stripping loop hit a negative count. This means the restriction
    /// matrix does not come from an actual subgroup.
    #[error("negative multiplicity {count} at H-weight {weight:?}")]
    NegativeMultiplicity { weight: Vec<i64>, count: i64 },

    #[error("unknown case `{0}`")]
    UnknownCase(String),

    #[error("case {case}: constraint `{constraint}` fails")]
    Constraint { case: String, constraint: String },

    #[error("missing parameter `{0}`")]
    MissingParam(String),

    #[error("cannot parse `{input}`: {message}")]
    Parse { input: String, message: String },

    #[error("index {index} out of range for {what}")]
    IndexOutOfRange { what: String, index: i64 },

    #[error("bound {bound} is below twice the largest expected generator height {height}")]
    BoundTooSmall { bound: u32, height: u32 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("data file: {0}")]
    Data(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(input: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.into(),
            message: message.into(),
        }
    }
}
