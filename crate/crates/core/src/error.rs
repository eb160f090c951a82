use std::fmt;

use thiserror::Error;

/// Location of a parse failure: the source (file path or `<arg>`), 1-based line and offending token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseLocation {
    pub source: String,
    pub line: usize,
    pub token: String,
}

impl fmt::Display for ParseLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: near `{}`", self.source, self.line, self.token)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{location}: {message}")]
    Parse {
        location: ParseLocation,
        message: String,
    },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("complex has no vertices")]
    EmptyComplex,
    #[error("character is identically zero")]
    ZeroCharacter,
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("subgroup is not full: factor {0} has trivial intersection")]
    NotFullInput(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("subgroup has no nontrivial generators")]
    EmptyGenerators,
    #[error("integer value does not fit in 64 bits")]
    Overflow,
}

impl Error {
    pub(crate) fn parse(
        source: &str,
        line: usize,
        token: &str,
        message: impl Into<String>,
    ) -> Self {
        Error::Parse {
            location: ParseLocation {
                source: source.to_string(),
                line,
                token: token.to_string(),
            },
            message: message.into(),
        }
    }

    /// True for errors raised while reading input text.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
