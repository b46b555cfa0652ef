//! Text formats: the presentation language and graph files.
//!
//! ```text
//! algebra G4
//! field rational            # optional; or gf(101)
//! generators x:1, y:1, z:1, w:1
//! relations [x,y] - [z,w]
//! ```
//!
//! ```text
//! graph C4
//! vertices a b c d
//! edges a-b b-c c-d d-a
//! ```

mod dsl;
mod graph;
mod lexer;

use std::fmt;

use thiserror::Error;

pub use dsl::{parse_expression, parse_presentation, render_presentation, PresentationSource, Relation};
pub use graph::{parse_graph, render_graph, GraphSource};

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

/// A diagnostic tied to a position in the input.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: malformed bracket: {msg}")]
    MalformedBracket { pos: Pos, msg: String },
    #[error("{pos}: unknown generator `{name}`")]
    UnknownGenerator { pos: Pos, name: String },
    #[error("{pos}: duplicate generator `{name}`")]
    DuplicateGenerator { pos: Pos, name: String },
    #[error("{pos}: inhomogeneous relation: terms of degree {first} and {second}")]
    Inhomogeneous { pos: Pos, first: u32, second: u32 },
    #[error("{pos}: characteristic 2 is not supported")]
    CharacteristicTwo { pos: Pos },
    #[error("{pos}: {msg}")]
    InvalidField { pos: Pos, msg: String },
    #[error("{pos}: {msg}")]
    InvalidRelation { pos: Pos, msg: String },
    #[error("{pos}: loop edge at `{name}`")]
    LoopEdge { pos: Pos, name: String },
    #[error("{pos}: undeclared vertex `{name}`")]
    UndeclaredVertex { pos: Pos, name: String },
    #[error("{pos}: duplicate vertex `{name}`")]
    DuplicateVertex { pos: Pos, name: String },
    #[error("{pos}: duplicate edge {a}-{b}")]
    DuplicateEdge { pos: Pos, a: String, b: String },
}

pub(crate) type SyntaxError = ParseError;

impl ParseError {
    pub(crate) fn new(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError::Syntax { pos, msg: msg.into() }
    }

    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::MalformedBracket { pos, .. }
            | ParseError::UnknownGenerator { pos, .. }
            | ParseError::DuplicateGenerator { pos, .. }
            | ParseError::Inhomogeneous { pos, .. }
            | ParseError::CharacteristicTwo { pos }
            | ParseError::InvalidField { pos, .. }
            | ParseError::InvalidRelation { pos, .. }
            | ParseError::LoopEdge { pos, .. }
            | ParseError::UndeclaredVertex { pos, .. }
            | ParseError::DuplicateVertex { pos, .. }
            | ParseError::DuplicateEdge { pos, .. } => *pos,
        }
    }
}
