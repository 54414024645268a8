//! The bicontextual checker for System L: positive and negative fragments,
//! the full polarised calculus, and the adjoint shifts, all in one rule
//! engine parameterised by the structural configuration.
//!
//! Expressions and coexpressions are checked; patterns and copatterns
//! synthesise their type. The typed checkable context X is an input that
//! splits along the recorded covers; the typed synthesisable context is the
//! output, merged along covers (meeting at copies) and extended along
//! thinnings (tops at drops).

pub mod dualize;

use crate::diag::{Instr, TypeCode, TypeError};
use crate::kernel::config::StructConfig;
use crate::kernel::ctx::{TypedCtx, TypedEntry};
use crate::kernel::cover::{meet_counted, Cover, ThinStep, Thinning};
use crate::kernel::order::subtype;
use crate::kernel::ty::{top_of, Polarity, TypeExpr};
use crate::kernel::KernelError;
use crate::scope::{MuKind, Query, Scoped, ScopedKind};
use crate::surface::ast::{QueryKind, Span};

/// Successful verdict: the synthesised type for (co)pattern queries and the
/// synthesised typed context over the query's synthesisable scope.
#[derive(Clone, Debug, PartialEq)]
pub struct LOk {
    pub ty: Option<TypeExpr>,
    pub sigma: TypedCtx,
}

pub type LVerdict = Result<LOk, TypeError>;

pub fn run_systeml(q: &Query, cfg: &StructConfig, instr: &mut Instr) -> LVerdict {
    let x_used = q
        .thin_x
        .restrict_typed(&q.x_typed)
        .map_err(|e| internal(q.span, e))?;
    let (ty, sigma) = match q.kind {
        QueryKind::Command => (None, check_command(cfg, &x_used, &q.term, instr)?),
        QueryKind::Expr => {
            let want = q.ty.as_ref().expect("expr query type");
            (None, check_expr(cfg, &x_used, want, &q.term, instr)?)
        }
        QueryKind::Coexpr => {
            let want = q.ty.as_ref().expect("coexpr query type");
            (None, check_coexpr(cfg, &x_used, want, &q.term, instr)?)
        }
        QueryKind::Pattern => {
            let (t, s) = synth_pattern(cfg, &x_used, &q.term, instr)?;
            (Some(t), s)
        }
        QueryKind::Copattern => {
            let (t, s) = synth_copattern(cfg, &x_used, &q.term, instr)?;
            (Some(t), s)
        }
        _ => unreachable!("System L query"),
    };
    let sigma = q
        .thin_s
        .extend_typed(&sigma, &q.s_scope)
        .map_err(|e| internal(q.span, e))?;
    Ok(LOk { ty, sigma })
}

fn internal(span: Span, e: KernelError) -> TypeError {
    TypeError::new(TypeCode::IllFormed, span, format!("internal witness error: {e}"))
}

fn split_x(cover: &Cover, x: &TypedCtx, span: Span) -> Result<(TypedCtx, TypedCtx), TypeError> {
    cover.split_typed(x).map_err(|e| internal(span, e))
}

fn merge_sigma(
    cover: &Cover,
    s1: TypedCtx,
    s2: TypedCtx,
    span: Span,
    instr: &mut Instr,
) -> Result<TypedCtx, TypeError> {
    cover.merge_typed(&s1, &s2, &mut instr.meets).map_err(|e| match e {
        KernelError::MergeConflict { name, left, right } => TypeError::new(
            TypeCode::Conflict,
            span,
            format!("`{name}` is used at `{left}` and `{right}`, which have no meet"),
        ),
        other => internal(span, other),
    })
}

fn sub_check(
    small: &TypeExpr,
    big: &TypeExpr,
    span: Span,
    instr: &mut Instr,
) -> Result<(), TypeError> {
    instr.subtype_checks += 1;
    match subtype(small, big) {
        Ok(true) => Ok(()),
        Ok(false) => Err(TypeError::new(
            TypeCode::SubtypeFailure,
            span,
            format!("`{small}` is not a subtype of `{big}`"),
        )),
        Err(e) => Err(internal(span, e)),
    }
}

fn gate_up(cfg: &StructConfig, span: Span) -> Result<(), TypeError> {
    if cfg.allow_up_adjoint {
        Ok(())
    } else {
        Err(TypeError::new(
            TypeCode::PresetViolation,
            span,
            format!("the adjoint upshift requires an LNL preset, not {}", cfg.preset),
        ))
    }
}

fn gate_down(cfg: &StructConfig, span: Span) -> Result<(), TypeError> {
    if cfg.allow_down_adjoint {
        Ok(())
    } else {
        Err(TypeError::new(
            TypeCode::PresetViolation,
            span,
            format!("the adjoint downshift requires the lnl-full preset, not {}", cfg.preset),
        ))
    }
}

/// Takes the binder entry off the end of a synthesised context, or returns
/// the top of its polarity if the thinning dropped it. `back` counts binder
/// steps from the end of the thinning.
fn pop_binder(sigma: &mut TypedCtx, thin: &Thinning, back: usize, pol: Polarity) -> TypeExpr {
    let idx = thin.len() - 1 - back;
    match thin.0[idx] {
        ThinStep::Keep => sigma.pop().expect("binder entry").ty,
        ThinStep::Drop => top_of(pol),
    }
}

/// Extends the typed X context with the bound entry when the thinning keeps
/// it.
fn extend_x(x: &TypedCtx, thin: &Thinning, name: &str, ty: &TypeExpr) -> TypedCtx {
    let mut ext = x.clone();
    if thin.0.last() == Some(&ThinStep::Keep) {
        ext.push(TypedEntry::new(name.to_string(), ty.clone()));
    }
    ext
}

/// Checks a positive term (expression) against a positive type, returning
/// the synthesised context over the node's synthesisable scope.
pub fn check_expr(
    cfg: &StructConfig,
    x: &TypedCtx,
    ty: &TypeExpr,
    t: &Scoped,
    instr: &mut Instr,
) -> Result<TypedCtx, TypeError> {
    match &t.kind {
        ScopedKind::Var(n) => {
            debug_assert!(x.is_empty());
            Ok([TypedEntry::new(n.clone(), ty.clone())].into_iter().collect())
        }
        ScopedKind::Mu { kind: MuKind::MuPlus, binder, thin, cmd } => {
            let ext = extend_x(x, thin, binder, ty);
            check_command(cfg, &ext, cmd, instr)
        }
        ScopedKind::UnitI => match ty {
            TypeExpr::TensorUnit => Ok(TypedCtx::new()),
            _ => Err(TypeError::mismatch(t.span, ty, "the unit tuple `()`")),
        },
        ScopedKind::Tuple { cover_x, cover_s, left, right } => match ty {
            TypeExpr::Tensor(a, b) => {
                let (x1, x2) = split_x(cover_x, x, t.span)?;
                let s1 = check_expr(cfg, &x1, a, left, instr)?;
                let s2 = check_expr(cfg, &x2, b, right, instr)?;
                merge_sigma(cover_s, s1, s2, t.span, instr)
            }
            _ => Err(TypeError::mismatch(t.span, ty, "a tuple")),
        },
        ScopedKind::Inj { left, body } => match ty {
            TypeExpr::Plus(a, b) => check_expr(cfg, x, if *left { a } else { b }, body, instr),
            _ => Err(TypeError::mismatch(t.span, ty, "an injection")),
        },
        ScopedKind::Sim { body } => match ty {
            TypeExpr::Sim(n) => check_coexpr(cfg, x, n, body, instr),
            _ => Err(TypeError::mismatch(t.span, ty, "a negation introduction")),
        },
        ScopedKind::DownIntro { body } => match ty {
            TypeExpr::Down(a) => {
                let (b, s) = synth_copattern(cfg, x, body, instr)?;
                sub_check(a, &b, t.span, instr)?;
                Ok(s)
            }
            _ => Err(TypeError::mismatch(t.span, ty, "a downshift introduction")),
        },
        ScopedKind::MatchDownAdj { thin, cmd, .. } => {
            gate_down(cfg, t.span)?;
            match ty {
                TypeExpr::DownAdj(a) => {
                    let mut s = check_command(cfg, x, cmd, instr)?;
                    let b = pop_binder(&mut s, thin, 0, Polarity::Negative);
                    sub_check(a, &b, t.span, instr)?;
                    Ok(s)
                }
                _ => Err(TypeError::mismatch(t.span, ty, "an adjoint downshift match")),
            }
        }
        _ => unreachable!("expression node"),
    }
}

/// Synthesises the type of a positive coterm (pattern).
pub fn synth_pattern(
    cfg: &StructConfig,
    x: &TypedCtx,
    t: &Scoped,
    instr: &mut Instr,
) -> Result<(TypeExpr, TypedCtx), TypeError> {
    match &t.kind {
        ScopedKind::Var(_) => {
            debug_assert_eq!(x.len(), 1);
            Ok((x.0[0].ty.clone(), TypedCtx::new()))
        }
        ScopedKind::Mu { kind: MuKind::MutPlus, thin, cmd, .. } => {
            let mut s = check_command(cfg, x, cmd, instr)?;
            let a = pop_binder(&mut s, thin, 0, Polarity::Positive);
            Ok((a, s))
        }
        ScopedKind::MatchUnit { cmd } => {
            let s = check_command(cfg, x, cmd, instr)?;
            Ok((TypeExpr::TensorUnit, s))
        }
        ScopedKind::MatchPair { thin, cmd, .. } => {
            let mut s = check_command(cfg, x, cmd, instr)?;
            let b = pop_binder(&mut s, thin, 0, Polarity::Positive);
            let a = pop_binder(&mut s, thin, 1, Polarity::Positive);
            Ok((TypeExpr::Tensor(Box::new(a), Box::new(b)), s))
        }
        ScopedKind::MatchZero => Ok((TypeExpr::Zero, TypedCtx::new())),
        ScopedKind::MatchSum { cover_x, thin_l, cl, thin_r, cr, .. } => {
            let (a, b, s) = branch_pair(
                cfg,
                x,
                t,
                cover_x,
                thin_l,
                cl,
                thin_r,
                cr,
                Polarity::Positive,
                instr,
            )?;
            Ok((TypeExpr::Plus(Box::new(a), Box::new(b)), s))
        }
        ScopedKind::MatchSim { thin, cmd, .. } => {
            let mut s = check_command(cfg, x, cmd, instr)?;
            let a = pop_binder(&mut s, thin, 0, Polarity::Negative);
            Ok((TypeExpr::Sim(Box::new(a)), s))
        }
        ScopedKind::MatchDown { ty, thin, cmd, x: binder } => {
            instr.read_annotation("down-match");
            let ext = extend_x(x, thin, binder, ty);
            let s = check_command(cfg, &ext, cmd, instr)?;
            Ok((TypeExpr::Down(Box::new(ty.clone())), s))
        }
        ScopedKind::DownAdjIntro { ty, body } => {
            gate_down(cfg, t.span)?;
            instr.read_annotation("down-adj-intro");
            let s = check_coexpr(cfg, x, ty, body, instr)?;
            Ok((TypeExpr::DownAdj(Box::new(ty.clone())), s))
        }
        _ => unreachable!("pattern node"),
    }
}

/// Synthesises the type of a negative term (copattern).
pub fn synth_copattern(
    cfg: &StructConfig,
    x: &TypedCtx,
    t: &Scoped,
    instr: &mut Instr,
) -> Result<(TypeExpr, TypedCtx), TypeError> {
    match &t.kind {
        ScopedKind::Var(_) => {
            debug_assert_eq!(x.len(), 1);
            Ok((x.0[0].ty.clone(), TypedCtx::new()))
        }
        ScopedKind::Mu { kind: MuKind::MuMinus, thin, cmd, .. } => {
            let mut s = check_command(cfg, x, cmd, instr)?;
            let a = pop_binder(&mut s, thin, 0, Polarity::Negative);
            Ok((a, s))
        }
        ScopedKind::ComatchCounit { cmd } => {
            let s = check_command(cfg, x, cmd, instr)?;
            Ok((TypeExpr::ParUnit, s))
        }
        ScopedKind::ComatchPair { thin, cmd, .. } => {
            let mut s = check_command(cfg, x, cmd, instr)?;
            let b = pop_binder(&mut s, thin, 0, Polarity::Negative);
            let a = pop_binder(&mut s, thin, 1, Polarity::Negative);
            Ok((TypeExpr::Par(Box::new(a), Box::new(b)), s))
        }
        // The nullary comatch synthesises the nullary `&`, printed `1`.
        ScopedKind::ComatchZero => Ok((TypeExpr::WithUnit, TypedCtx::new())),
        ScopedKind::ComatchWith { cover_x, thin_l, cl, thin_r, cr, .. } => {
            let (a, b, s) = branch_pair(
                cfg,
                x,
                t,
                cover_x,
                thin_l,
                cl,
                thin_r,
                cr,
                Polarity::Negative,
                instr,
            )?;
            Ok((TypeExpr::With(Box::new(a), Box::new(b)), s))
        }
        ScopedKind::ComatchNot { thin, cmd, .. } => {
            let mut s = check_command(cfg, x, cmd, instr)?;
            let a = pop_binder(&mut s, thin, 0, Polarity::Positive);
            Ok((TypeExpr::Not(Box::new(a)), s))
        }
        ScopedKind::ComatchUp { ty, thin, cmd, x: binder } => {
            instr.read_annotation("up-comatch");
            let ext = extend_x(x, thin, binder, ty);
            let s = check_command(cfg, &ext, cmd, instr)?;
            Ok((TypeExpr::Up(Box::new(ty.clone())), s))
        }
        ScopedKind::UpAdjIntro { ty, body } => {
            gate_up(cfg, t.span)?;
            instr.read_annotation("up-adj-cointro");
            let s = check_expr(cfg, x, ty, body, instr)?;
            Ok((TypeExpr::UpAdj(Box::new(ty.clone())), s))
        }
        _ => unreachable!("copattern node"),
    }
}

/// Checks a negative coterm (coexpression) against a negative type.
pub fn check_coexpr(
    cfg: &StructConfig,
    x: &TypedCtx,
    ty: &TypeExpr,
    t: &Scoped,
    instr: &mut Instr,
) -> Result<TypedCtx, TypeError> {
    match &t.kind {
        ScopedKind::Var(n) => {
            debug_assert!(x.is_empty());
            Ok([TypedEntry::new(n.clone(), ty.clone())].into_iter().collect())
        }
        ScopedKind::Mu { kind: MuKind::MutMinus, binder, thin, cmd } => {
            let ext = extend_x(x, thin, binder, ty);
            check_command(cfg, &ext, cmd, instr)
        }
        ScopedKind::CounitBot => match ty {
            TypeExpr::ParUnit => Ok(TypedCtx::new()),
            _ => Err(TypeError::mismatch(t.span, ty, "the counit `[]`")),
        },
        ScopedKind::Cotuple { cover_x, cover_s, left, right } => match ty {
            TypeExpr::Par(a, b) => {
                let (x1, x2) = split_x(cover_x, x, t.span)?;
                let s1 = check_coexpr(cfg, &x1, a, left, instr)?;
                let s2 = check_coexpr(cfg, &x2, b, right, instr)?;
                merge_sigma(cover_s, s1, s2, t.span, instr)
            }
            _ => Err(TypeError::mismatch(t.span, ty, "a cotuple")),
        },
        ScopedKind::Proj { first, body } => match ty {
            TypeExpr::With(a, b) => {
                check_coexpr(cfg, x, if *first { a } else { b }, body, instr)
            }
            _ => Err(TypeError::mismatch(t.span, ty, "a projection")),
        },
        ScopedKind::NotC { body } => match ty {
            TypeExpr::Not(a) => check_expr(cfg, x, a, body, instr),
            _ => Err(TypeError::mismatch(t.span, ty, "a negation cointroduction")),
        },
        ScopedKind::UpCointro { body } => match ty {
            TypeExpr::Up(a) => {
                let (b, s) = synth_pattern(cfg, x, body, instr)?;
                sub_check(&b, a, t.span, instr)?;
                Ok(s)
            }
            _ => Err(TypeError::mismatch(t.span, ty, "an upshift cointroduction")),
        },
        ScopedKind::ComatchUpAdj { thin, cmd, .. } => {
            gate_up(cfg, t.span)?;
            match ty {
                TypeExpr::UpAdj(a) => {
                    let mut s = check_command(cfg, x, cmd, instr)?;
                    let b = pop_binder(&mut s, thin, 0, Polarity::Positive);
                    sub_check(&b, a, t.span, instr)?;
                    Ok(s)
                }
                _ => Err(TypeError::mismatch(t.span, ty, "an adjoint upshift comatch")),
            }
        }
        _ => unreachable!("coexpression node"),
    }
}

/// Checks a command: synthesise the consumer-side type, then check the
/// producer side against it, concatenating the synthesised contexts along
/// the recorded cover.
pub fn check_command(
    cfg: &StructConfig,
    x: &TypedCtx,
    t: &Scoped,
    instr: &mut Instr,
) -> Result<TypedCtx, TypeError> {
    match &t.kind {
        ScopedKind::Cut { polarity, cover_x, cover_s, left, right } => {
            let (x1, x2) = split_x(cover_x, x, t.span)?;
            let (a, s2) = match polarity {
                Polarity::Positive => synth_pattern(cfg, &x2, right, instr)?,
                _ => synth_copattern(cfg, &x2, right, instr)?,
            };
            let s1 = match polarity {
                Polarity::Positive => check_expr(cfg, &x1, &a, left, instr)?,
                _ => check_coexpr(cfg, &x1, &a, left, instr)?,
            };
            merge_sigma(cover_s, s1, s2, t.span, instr)
        }
        _ => unreachable!("command node"),
    }
}

/// Shared handling of the two-branch (co)match rules: split the checkable
/// context, synthesise each branch, take the binder types, extend each
/// branch's context over the shared synthesisable scope and meet pointwise.
#[allow(clippy::too_many_arguments)]
fn branch_pair(
    cfg: &StructConfig,
    x: &TypedCtx,
    node: &Scoped,
    cover_x: &Cover,
    thin_l: &Thinning,
    cl: &Scoped,
    thin_r: &Thinning,
    cr: &Scoped,
    binder_pol: Polarity,
    instr: &mut Instr,
) -> Result<(TypeExpr, TypeExpr, TypedCtx), TypeError> {
    let (x1, x2) = split_x(cover_x, x, node.span)?;
    let mut s1 = check_command(cfg, &x1, cl, instr)?;
    let a = pop_binder(&mut s1, thin_l, 0, binder_pol);
    let mut s2 = check_command(cfg, &x2, cr, instr)?;
    let b = pop_binder(&mut s2, thin_r, 0, binder_pol);

    let shared = Thinning(thin_l.0[..thin_l.len() - 1].to_vec());
    let s1 = shared
        .extend_typed(&s1, &node.s_scope)
        .map_err(|e| internal(node.span, e))?;
    let shared = Thinning(thin_r.0[..thin_r.len() - 1].to_vec());
    let s2 = shared
        .extend_typed(&s2, &node.s_scope)
        .map_err(|e| internal(node.span, e))?;

    let mut merged = TypedCtx::new();
    for (e1, e2) in s1.iter().zip(s2.iter()) {
        match meet_counted(&e1.ty, &e2.ty, &mut instr.meets).map_err(|e| internal(node.span, e))? {
            Some(ty) => merged.push(TypedEntry::new(e1.name.clone(), ty)),
            None => {
                return Err(TypeError::new(
                    TypeCode::Conflict,
                    node.span,
                    format!(
                        "`{}` is used at `{}` and `{}` across branches, which have no meet",
                        e1.name, e1.ty, e2.ty
                    ),
                ))
            }
        }
    }
    Ok((a, b, merged))
}
