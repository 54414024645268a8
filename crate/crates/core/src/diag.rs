//! Checker diagnostics and instrumentation counters.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::kernel::cover::MeetLog;
use crate::kernel::ty::TypeExpr;
use crate::surface::ast::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeCode {
    Mismatch,
    NotAFunction,
    NotAProduct,
    NotASum,
    Conflict,
    SubtypeFailure,
    PresetViolation,
    IllFormed,
}

impl TypeCode {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeCode::Mismatch => "mismatch",
            TypeCode::NotAFunction => "not-a-function",
            TypeCode::NotAProduct => "not-a-product",
            TypeCode::NotASum => "not-a-sum",
            TypeCode::Conflict => "conflict",
            TypeCode::SubtypeFailure => "subtype-failure",
            TypeCode::PresetViolation => "preset-violation",
            TypeCode::IllFormed => "ill-formed",
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
#[error("{span}: {message}")]
pub struct TypeError {
    pub code: TypeCode,
    pub span: Span,
    pub message: String,
}

impl TypeError {
    pub fn new(code: TypeCode, span: Span, message: impl Into<String>) -> Self {
        TypeError { code, span, message: message.into() }
    }

    pub fn mismatch(span: Span, expected: &TypeExpr, found: impl fmt::Display) -> Self {
        TypeError::new(
            TypeCode::Mismatch,
            span,
            format!("expected `{expected}`, found {found}"),
        )
    }
}

/// Counters threaded through a checker run: merge meets (and how many saw a
/// top-involving argument), annotation reads per rule, and subtype queries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Instr {
    pub meets: MeetLog,
    pub annot_reads: BTreeMap<&'static str, u64>,
    pub subtype_checks: u64,
}

impl Instr {
    pub fn read_annotation(&mut self, rule: &'static str) {
        *self.annot_reads.entry(rule).or_insert(0) += 1;
    }

    pub fn annot_reads_outside(&self, allowed: &[&str]) -> u64 {
        self.annot_reads
            .iter()
            .filter(|(rule, _)| !allowed.contains(*rule))
            .map(|(_, n)| *n)
            .sum()
    }
}
