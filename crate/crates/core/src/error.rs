use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("zero exponent at position {pos}")]
    ZeroExponent { pos: usize },

    #[error("empty word")]
    EmptyWord,

    #[error("projection onto {{{vars}}} deletes every letter")]
    EmptyProjection { vars: String },

    #[error("variable `{0}` is not mapped")]
    Unmapped(String),

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("invalid table: {0}")]
    Table(String),

    #[error("not associative: ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")]
    NotAssociative {
        a: String,
        b: String,
        c: String,
        left: String,
        right: String,
    },

    #[error("identity law fails for element {0}")]
    IdentityLaw(String),

    #[error("zero law fails for element {0}")]
    ZeroLaw(String),

    #[error("shape set is not closed under factors: {factor} (factor of {shape}) is missing")]
    NotFactorClosed { shape: String, factor: String },

    #[error("variable `{0}` is outside the alphabet of the free algebra")]
    OutOfAlphabet(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// True for budget exhaustion, which callers report apart from verdicts.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
