use std::fmt;

use crate::poly::VariableSpace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index {index} out of bounds for {space}")]
    Bounds { space: VariableSpace, index: String },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// An expansion would store more terms than the configured cap.
    #[error("term cap exceeded: more than {cap} terms in {context}")]
    Resource { cap: usize, context: &'static str },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Parse(#[from] ParseError),

    /// Something that must never happen did. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Syntax or well-formedness error in polynomial / cycle text, with a
/// caret diagnostic pointing at the offending column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub source_line: String,
}

impl ParseError {
    pub(crate) fn at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let offset = offset.min(src.len());
        let before = &src[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |p| p + 1);
        let line_end = src[offset..].find('\n').map_or(src.len(), |p| offset + p);
        ParseError {
            line,
            column: src[line_start..offset].chars().count() + 1,
            message: message.into(),
            source_line: src[line_start..line_end].to_string(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        writeln!(f, "  {}", self.source_line)?;
        write!(f, "  {}^", " ".repeat(self.column - 1))
    }
}

impl std::error::Error for ParseError {}
