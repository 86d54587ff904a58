//! The declaration language: lexer, parser, pretty-printer and runner.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod runner;

use std::fmt;

pub use ast::{Program, SourceSpan};
pub use parser::parse;
pub use printer::pretty;
pub use runner::{run, RunOptions, RunOutput};

/// A located parse error with the tokens that would have been accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

impl Diagnostic {
    pub fn new(span: SourceSpan, message: impl Into<String>) -> Diagnostic {
        Diagnostic { span, message: message.into(), expected: Vec::new() }
    }

    pub fn expecting(mut self, expected: Vec<String>) -> Diagnostic {
        self.expected = expected;
        self
    }

    /// The message followed by the offending line and a caret.
    pub fn render(&self, source: &str) -> String {
        let line = source.lines().nth(self.span.line - 1).unwrap_or("");
        let width = source.get(self.span.start..self.span.end).map_or(1, |s| s.chars().count().max(1));
        format!("{self}\n  | {line}\n  | {}{}", " ".repeat(self.span.column - 1), "^".repeat(width))
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error at {}: {}", self.span, self.message)?;
        match self.expected.as_slice() {
            [] => Ok(()),
            [one] => write!(f, "; expected {one}"),
            many => write!(f, "; expected one of {}", many.join(", ")),
        }
    }
}

impl std::error::Error for Diagnostic {}
