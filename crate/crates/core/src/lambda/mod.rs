//! The lambda-calculus checkers: standard contextual bidirectional, and the
//! cocontextual checker shared by the linear and co-de Bruijn calculi.
//!
//! The standard checker consumes a typed context which every hypothesis
//! shares. The cocontextual checker synthesises the typed context: binary
//! nodes merge the contexts of their subterms along the recorded cover,
//! binders consume the last entry of their body's context (or synthesise the
//! top type when the thinning dropped the variable).

use crate::diag::{Instr, TypeCode, TypeError};
use crate::kernel::ctx::{TypedCtx, TypedEntry};
use crate::kernel::cover::{Cover, ThinStep, Thinning};
use crate::kernel::order::subtype;
use crate::kernel::ty::TypeExpr;
use crate::kernel::KernelError;
use crate::scope::{Calculus, Query, Scoped, ScopedKind};
use crate::surface::ast::{QueryKind, Span};

/// Successful verdict: the synthesised type for synth-mode queries, and the
/// synthesised typed context for the cocontextual checkers.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaOk {
    pub ty: Option<TypeExpr>,
    pub ctx: Option<TypedCtx>,
}

pub type LambdaVerdict = Result<LambdaOk, TypeError>;

/// Runs the checker selected by the query's calculus, handling the root
/// thinnings that relate the term to the declared contexts.
pub fn run_lambda(q: &Query, instr: &mut Instr) -> LambdaVerdict {
    match q.calculus {
        Calculus::Stlc => match q.kind {
            QueryKind::LambdaCheck => {
                check_standard(&q.x_typed, q.ty.as_ref().expect("checked query"), &q.term, instr)?;
                Ok(LambdaOk { ty: None, ctx: None })
            }
            QueryKind::LambdaSynth => {
                let ty = synth_standard(&q.x_typed, &q.term, instr)?;
                Ok(LambdaOk { ty: Some(ty), ctx: None })
            }
            _ => unreachable!("lambda query"),
        },
        Calculus::Lin | Calculus::Cdb => {
            let (ty, ctx) = match q.kind {
                QueryKind::LambdaCheck => {
                    let want = q.ty.as_ref().expect("checked query");
                    let ctx = check_cocontextual(want, &q.term, q.calculus, instr)?;
                    (None, ctx)
                }
                QueryKind::LambdaSynth => {
                    let (ty, ctx) = synth_cocontextual(&q.term, q.calculus, instr)?;
                    (Some(ty), ctx)
                }
                _ => unreachable!("lambda query"),
            };
            let full = q
                .thin_s
                .extend_typed(&ctx, &q.s_scope)
                .map_err(|e| internal(q.span, e))?;
            Ok(LambdaOk { ty, ctx: Some(full) })
        }
        _ => unreachable!("lambda calculus"),
    }
}

fn internal(span: Span, e: KernelError) -> TypeError {
    TypeError::new(TypeCode::IllFormed, span, format!("internal witness error: {e}"))
}

fn merge(
    cover: &Cover,
    g1: TypedCtx,
    g2: TypedCtx,
    span: Span,
    instr: &mut Instr,
) -> Result<TypedCtx, TypeError> {
    cover.merge_typed(&g1, &g2, &mut instr.meets).map_err(|e| match e {
        KernelError::MergeConflict { name, left, right } => TypeError::new(
            TypeCode::Conflict,
            span,
            format!("`{name}` is used at `{left}` and `{right}`, which have no meet"),
        ),
        other => internal(span, other),
    })
}

fn sub_check(
    want: &TypeExpr,
    found: &TypeExpr,
    span: Span,
    instr: &mut Instr,
) -> Result<(), TypeError> {
    instr.subtype_checks += 1;
    match subtype(want, found) {
        Ok(true) => Ok(()),
        Ok(false) => Err(TypeError::mismatch(span, want, format!("`{found}`"))),
        Err(e) => Err(internal(span, e)),
    }
}

/// Checks a standard-calculus term against a type under a shared context.
pub fn check_standard(
    ctx: &TypedCtx,
    ty: &TypeExpr,
    t: &Scoped,
    instr: &mut Instr,
) -> Result<(), TypeError> {
    match &t.kind {
        ScopedKind::Lam { binder, body, .. } => match ty {
            TypeExpr::Arrow(a, b) => {
                let mut ext = ctx.clone();
                ext.push(TypedEntry::new(binder.clone(), (**a).clone()));
                check_standard(&ext, b, body, instr)
            }
            _ => Err(TypeError::new(
                TypeCode::NotAFunction,
                t.span,
                format!("checked an abstraction against non-function `{ty}`"),
            )),
        },
        ScopedKind::Emb { body } => {
            let found = synth_standard(ctx, body, instr)?;
            sub_check(ty, &found, t.span, instr)
        }
        ScopedKind::Unit => match ty {
            TypeExpr::Unit => Ok(()),
            _ => Err(TypeError::mismatch(t.span, ty, "the unit `()`")),
        },
        ScopedKind::Pair { left, right, .. } => match ty {
            TypeExpr::Prod(a, b) => {
                check_standard(ctx, a, left, instr)?;
                check_standard(ctx, b, right, instr)
            }
            _ => Err(TypeError::mismatch(t.span, ty, "a pair")),
        },
        ScopedKind::Inj { left, body } => match ty {
            TypeExpr::Sum(a, b) => check_standard(ctx, if *left { a } else { b }, body, instr),
            _ => Err(TypeError::mismatch(t.span, ty, "an injection")),
        },
        ScopedKind::Absurd { body } => check_standard(ctx, &TypeExpr::Empty, body, instr),
        ScopedKind::Case { scrut, left_bind, left, right_bind, right, .. } => {
            let s = synth_standard(ctx, scrut, instr)?;
            match s {
                TypeExpr::Sum(a, b) => {
                    let mut lctx = ctx.clone();
                    lctx.push(TypedEntry::new(left_bind.clone(), *a));
                    check_standard(&lctx, ty, left, instr)?;
                    let mut rctx = ctx.clone();
                    rctx.push(TypedEntry::new(right_bind.clone(), *b));
                    check_standard(&rctx, ty, right, instr)
                }
                other => Err(TypeError::new(
                    TypeCode::NotASum,
                    scrut.span,
                    format!("case scrutinee has type `{other}`, not a sum"),
                )),
            }
        }
        _ => unreachable!("checkable standard node"),
    }
}

/// Synthesises the type of a standard-calculus term.
pub fn synth_standard(
    ctx: &TypedCtx,
    t: &Scoped,
    instr: &mut Instr,
) -> Result<TypeExpr, TypeError> {
    match &t.kind {
        ScopedKind::Var(n) => match ctx.lookup(n) {
            Some(e) => Ok(e.ty.clone()),
            None => Err(TypeError::new(
                TypeCode::IllFormed,
                t.span,
                format!("unbound variable `{n}`"),
            )),
        },
        ScopedKind::Annot { ty, body } => {
            instr.read_annotation("annot");
            check_standard(ctx, ty, body, instr)?;
            Ok(ty.clone())
        }
        ScopedKind::App { fun, arg, .. } => {
            let f = synth_standard(ctx, fun, instr)?;
            match f {
                TypeExpr::Arrow(a, b) => {
                    check_standard(ctx, &a, arg, instr)?;
                    Ok(*b)
                }
                other => Err(TypeError::new(
                    TypeCode::NotAFunction,
                    fun.span,
                    format!("applied a term of type `{other}`"),
                )),
            }
        }
        ScopedKind::Proj { first, body } => {
            let s = synth_standard(ctx, body, instr)?;
            match s {
                TypeExpr::Prod(a, b) => Ok(if *first { *a } else { *b }),
                other => Err(TypeError::new(
                    TypeCode::NotAProduct,
                    body.span,
                    format!("projected from a term of type `{other}`"),
                )),
            }
        }
        _ => unreachable!("synthesisable standard node"),
    }
}

fn fun_of(calculus: Calculus, dom: TypeExpr, cod: TypeExpr) -> TypeExpr {
    match calculus {
        Calculus::Lin => TypeExpr::Lolli(Box::new(dom), Box::new(cod)),
        _ => TypeExpr::Arrow(Box::new(dom), Box::new(cod)),
    }
}

/// Checks a cocontextual term against a type, synthesising its typed
/// context.
pub fn check_cocontextual(
    ty: &TypeExpr,
    t: &Scoped,
    calculus: Calculus,
    instr: &mut Instr,
) -> Result<TypedCtx, TypeError> {
    match &t.kind {
        ScopedKind::Var(n) => {
            Ok([TypedEntry::new(n.clone(), ty.clone())].into_iter().collect())
        }
        ScopedKind::Emb { body } => {
            let (found, ctx) = synth_cocontextual(body, calculus, instr)?;
            sub_check(ty, &found, t.span, instr)?;
            Ok(ctx)
        }
        ScopedKind::App { cover, fun, arg } => {
            let (a, ctx2) = synth_cocontextual(arg, calculus, instr)?;
            let want = fun_of(calculus, a, ty.clone());
            let ctx1 = check_cocontextual(&want, fun, calculus, instr)?;
            merge(cover, ctx1, ctx2, t.span, instr)
        }
        _ => unreachable!("checkable cocontextual node"),
    }
}

/// Synthesises the type and typed context of a cocontextual term.
pub fn synth_cocontextual(
    t: &Scoped,
    calculus: Calculus,
    instr: &mut Instr,
) -> Result<(TypeExpr, TypedCtx), TypeError> {
    match &t.kind {
        ScopedKind::Lam { thin, body, .. } => {
            let (b, mut ctx) = synth_cocontextual(body, calculus, instr)?;
            let dom = pop_binder(&mut ctx, thin, 0);
            Ok((fun_of(calculus, dom, b), ctx))
        }
        ScopedKind::Annot { ty, body } => {
            instr.read_annotation("annot");
            let ctx = check_cocontextual(ty, body, calculus, instr)?;
            Ok((ty.clone(), ctx))
        }
        ScopedKind::Unit => Ok((TypeExpr::Unit, TypedCtx::new())),
        ScopedKind::Pair { cover, left, right } => {
            let (a, c1) = synth_cocontextual(left, calculus, instr)?;
            let (b, c2) = synth_cocontextual(right, calculus, instr)?;
            let ctx = merge(cover, c1, c2, t.span, instr)?;
            Ok((TypeExpr::Prod(Box::new(a), Box::new(b)), ctx))
        }
        ScopedKind::LetUnit { cover, scrut, body } => {
            let c1 = check_cocontextual(&TypeExpr::Unit, scrut, calculus, instr)?;
            let (a, c2) = synth_cocontextual(body, calculus, instr)?;
            let ctx = merge(cover, c1, c2, t.span, instr)?;
            Ok((a, ctx))
        }
        ScopedKind::LetPair { cover, thin, scrut, body, .. } => {
            let (c, mut bctx) = synth_cocontextual(body, calculus, instr)?;
            let b = pop_binder(&mut bctx, thin, 0);
            let a = pop_binder(&mut bctx, thin, 1);
            let want = TypeExpr::Prod(Box::new(a), Box::new(b));
            let sctx = check_cocontextual(&want, scrut, calculus, instr)?;
            let ctx = merge(cover, sctx, bctx, t.span, instr)?;
            Ok((c, ctx))
        }
        _ => unreachable!("synthesisable cocontextual node"),
    }
}

/// Consumes the binder entry a thinning kept, or returns the top type if it
/// was dropped. `back` counts binder steps from the end of the thinning.
fn pop_binder(ctx: &mut TypedCtx, thin: &Thinning, back: usize) -> TypeExpr {
    let idx = thin.len() - 1 - back;
    match thin.0[idx] {
        ThinStep::Keep => ctx.pop().expect("binder entry").ty,
        ThinStep::Drop => TypeExpr::Top,
    }
}
