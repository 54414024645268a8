//! One entry point over both checker families, used by the CLI and the
//! agreement harnesses.

use crate::diag::{Instr, TypeError};
use crate::kernel::config::StructConfig;
use crate::kernel::ctx::TypedCtx;
use crate::kernel::ty::{Family, TypeExpr};
use crate::lambda::run_lambda;
use crate::scope::Query;
use crate::systeml::run_systeml;

/// Runs the checker the query's calculus selects. The context component is
/// the synthesised context where the calculus has one, empty for the
/// standard lambda checker.
pub fn run_query(
    q: &Query,
    cfg: &StructConfig,
    instr: &mut Instr,
) -> Result<(Option<TypeExpr>, TypedCtx), TypeError> {
    match q.calculus.family() {
        Family::Lambda => run_lambda(q, instr).map(|ok| (ok.ty, ok.ctx.unwrap_or_default())),
        Family::SystemL => run_systeml(q, cfg, instr).map(|ok| (ok.ty, ok.sigma)),
    }
}
