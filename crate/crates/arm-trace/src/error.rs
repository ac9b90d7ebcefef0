use thiserror::Error;

/// Errors shared by every analysis in the crate.
///
/// `Syntax` and `Semantic` distinguish malformed input text from input that
/// parses but is internally inconsistent (e.g. a transition naming an
/// undeclared state).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("semantic error: {message}")]
    Semantic { message: String },

    #[error("foreign symbol `{symbol}` not in alphabet ({context})")]
    ForeignSymbol { symbol: String, context: String },

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("state budget of {limit} states exceeded during subset construction")]
    BudgetExceeded { limit: usize },
}

impl Error {
    pub fn semantic(message: impl Into<String>) -> Self {
        Error::Semantic {
            message: message.into(),
        }
    }

    pub fn foreign(symbol: impl Into<String>, context: impl Into<String>) -> Self {
        Error::ForeignSymbol {
            symbol: symbol.into(),
            context: context.into(),
        }
    }
}
