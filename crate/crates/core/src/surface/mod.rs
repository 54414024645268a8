//! Concrete syntax: lexer, parser and printer for the `.pl0` format.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod printer;

use std::fmt;

use ast::Span;
use thiserror::Error;

pub use parser::{annotation_count, parse_program, parse_type, AtomTable, Program};
pub use printer::{print_directive, print_program, print_query, print_term};

#[derive(Clone, Debug, Error, PartialEq)]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

impl ParseError {
    pub fn new(span: Span, message: impl Into<String>) -> Self {
        ParseError { span, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)
    }
}
