use thiserror::Error;

/// Errors raised anywhere in the series / Pochhammer / identity stack.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("monomial exponent {exp} exceeds truncation order {trunc}")]
    ExponentExceedsTruncation { exp: i64, trunc: usize },

    #[error("monomial exponent {0} is negative; the power-series ring has no negative powers")]
    NegativeExponent(i64),

    #[error("q-shifted factorial ({param})_{n} needs a negative power of q")]
    NeedsLaurent { param: String, n: i64 },

    #[error("infinite product needs a parameter with exponent >= 1, got {0}")]
    NonPositiveExponent(String),

    #[error("term has a vanishing denominator factor")]
    Pole,

    #[error("result has a nonzero coefficient at negative power q^{0}")]
    NegativeValuation(i64),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parameter error: {0}")]
    Inadmissible(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
