//! Shared helpers for integration tests: parse a one-query program,
//! elaborate it, and run the matching checker.

#![allow(dead_code)]

use polcheck_core::diag::Instr;
use polcheck_core::lambda::{run_lambda, LambdaOk};
use polcheck_core::scope::{elaborate, Calculus, Query, ScopeError};
use polcheck_core::surface::ast::Directive;
use polcheck_core::surface::parse_program;
use polcheck_core::systeml::{run_systeml, LOk};
use polcheck_core::diag::TypeError;
use polcheck_core::{Preset, StructConfig};

pub fn parse_single(src: &str) -> polcheck_core::surface::ast::RawQuery {
    let prog = parse_program(src).expect("parse");
    prog.directives
        .into_iter()
        .find_map(|d| match d {
            Directive::Query(q) => Some(q),
            _ => None,
        })
        .expect("one query")
}

pub fn elab(src: &str, calculus: Calculus, preset: Preset) -> Result<Query, ScopeError> {
    let raw = parse_single(src);
    elaborate(&raw, calculus, &StructConfig::preset(preset))
}

pub fn lam(
    src: &str,
    calculus: Calculus,
    preset: Preset,
) -> Result<Result<LambdaOk, TypeError>, ScopeError> {
    let q = elab(src, calculus, preset)?;
    let mut instr = Instr::default();
    Ok(run_lambda(&q, &mut instr))
}

pub fn sysl(
    src: &str,
    calculus: Calculus,
    preset: Preset,
) -> Result<Result<LOk, TypeError>, ScopeError> {
    let q = elab(src, calculus, preset)?;
    let mut instr = Instr::default();
    Ok(run_systeml(&q, &StructConfig::preset(preset), &mut instr))
}

/// Renders a typed context the way verdict tests compare it.
pub fn ctx_str(ctx: &polcheck_core::TypedCtx) -> String {
    ctx.to_string()
}
