//! The syntactic dualizer: an involution swapping the positive and negative
//! fragments of System L, on types, terms, directives and verdicts.

use crate::diag::{TypeCode, TypeError};
use crate::kernel::ctx::{TypedCtx, TypedEntry};
use crate::kernel::ty::TypeExpr;
use crate::surface::ast::{
    AtomDecl, ComatchBody, CtxEntry, Directive, MatchBody, QueryKind, RawKind, RawTerm, RawQuery,
};

fn lambda_input(what: &str) -> TypeError {
    TypeError::new(
        TypeCode::IllFormed,
        Default::default(),
        format!("cannot dualize lambda-family {what}"),
    )
}

pub fn dual_type(t: &TypeExpr) -> Result<TypeExpr, TypeError> {
    use TypeExpr::*;
    Ok(match t {
        PosAtom(n) => NegAtom(n.clone()),
        NegAtom(n) => PosAtom(n.clone()),
        TensorUnit => ParUnit,
        ParUnit => TensorUnit,
        Tensor(a, b) => Par(Box::new(dual_type(a)?), Box::new(dual_type(b)?)),
        Par(a, b) => Tensor(Box::new(dual_type(a)?), Box::new(dual_type(b)?)),
        Zero => WithUnit,
        WithUnit => Zero,
        Plus(a, b) => With(Box::new(dual_type(a)?), Box::new(dual_type(b)?)),
        With(a, b) => Plus(Box::new(dual_type(a)?), Box::new(dual_type(b)?)),
        Sim(a) => Not(Box::new(dual_type(a)?)),
        Not(a) => Sim(Box::new(dual_type(a)?)),
        Down(a) => Up(Box::new(dual_type(a)?)),
        Up(a) => Down(Box::new(dual_type(a)?)),
        DownAdj(a) => UpAdj(Box::new(dual_type(a)?)),
        UpAdj(a) => DownAdj(Box::new(dual_type(a)?)),
        TopPos => TopNeg,
        TopNeg => TopPos,
        _ => return Err(lambda_input("type")),
    })
}

pub fn dual_term(t: &RawTerm) -> Result<RawTerm, TypeError> {
    use RawKind::*;
    let b = |t: &RawTerm| dual_term(t).map(Box::new);
    let kind = match &t.kind {
        Var(n) => Var(n.clone()),
        Cut(l, r) => Cut(b(l)?, b(r)?),
        MuPlus(x, c) => MutMinus(x.clone(), b(c)?),
        MutMinus(x, c) => MuPlus(x.clone(), b(c)?),
        MutPlus(x, c) => MuMinus(x.clone(), b(c)?),
        MuMinus(x, c) => MutPlus(x.clone(), b(c)?),
        Tuple(l, r) => Cotuple(b(l)?, b(r)?),
        Cotuple(l, r) => Tuple(b(l)?, b(r)?),
        UnitI => CounitBot,
        CounitBot => UnitI,
        InjL(e) => Pi1(b(e)?),
        Pi1(e) => InjL(b(e)?),
        InjR(e) => Pi2(b(e)?),
        Pi2(e) => InjR(b(e)?),
        Sim(e) => NotC(b(e)?),
        NotC(e) => Sim(b(e)?),
        DownIntro(p) => UpCointro(b(p)?),
        UpCointro(p) => DownIntro(b(p)?),
        DownAdjIntro(e, ty) => UpAdjIntro(b(e)?, dual_type(ty)?),
        UpAdjIntro(e, ty) => DownAdjIntro(b(e)?, dual_type(ty)?),
        Match(m) => Comatch(match m {
            MatchBody::Empty => ComatchBody::Empty,
            MatchBody::Unit(c) => ComatchBody::Counit(b(c)?),
            MatchBody::Pair(x, y, c) => ComatchBody::Pair(b(c)?, x.clone(), y.clone()),
            MatchBody::Sum { xl, cl, yr, cr } => ComatchBody::With {
                cl: b(cl)?,
                xl: xl.clone(),
                cr: b(cr)?,
                yr: yr.clone(),
            },
            MatchBody::Sim(x, c) => ComatchBody::Not(b(c)?, x.clone()),
            MatchBody::Down(x, ty, c) => ComatchBody::Up(b(c)?, x.clone(), dual_type(ty)?),
            MatchBody::DownAdj(x, c) => ComatchBody::UpAdj(b(c)?, x.clone()),
        }),
        Comatch(m) => Match(match m {
            ComatchBody::Empty => MatchBody::Empty,
            ComatchBody::Counit(c) => MatchBody::Unit(b(c)?),
            ComatchBody::Pair(c, x, y) => MatchBody::Pair(x.clone(), y.clone(), b(c)?),
            ComatchBody::With { cl, xl, cr, yr } => MatchBody::Sum {
                xl: xl.clone(),
                cl: b(cl)?,
                yr: yr.clone(),
                cr: b(cr)?,
            },
            ComatchBody::Not(c, x) => MatchBody::Sim(x.clone(), b(c)?),
            ComatchBody::Up(c, x, ty) => MatchBody::Down(x.clone(), dual_type(ty)?, b(c)?),
            ComatchBody::UpAdj(c, x) => MatchBody::DownAdj(x.clone(), b(c)?),
        }),
        _ => return Err(lambda_input("syntax")),
    };
    Ok(RawTerm::new(t.span, kind))
}

pub fn dual_directive(d: &Directive) -> Result<Directive, TypeError> {
    Ok(match d {
        Directive::Atom(a) => Directive::Atom(AtomDecl {
            name: a.name.clone(),
            polarity: match a.polarity {
                crate::kernel::ty::Polarity::Positive => crate::kernel::ty::Polarity::Negative,
                crate::kernel::ty::Polarity::Negative => crate::kernel::ty::Polarity::Positive,
                crate::kernel::ty::Polarity::Unpolarised => {
                    return Err(lambda_input("atom declaration"))
                }
            },
            span: a.span,
        }),
        Directive::Query(q) => Directive::Query(dual_query(q)?),
    })
}

pub fn dual_query(q: &RawQuery) -> Result<RawQuery, TypeError> {
    let kind = match q.kind {
        QueryKind::Expr => QueryKind::Coexpr,
        QueryKind::Coexpr => QueryKind::Expr,
        QueryKind::Pattern => QueryKind::Copattern,
        QueryKind::Copattern => QueryKind::Pattern,
        QueryKind::Command => QueryKind::Command,
        _ => return Err(lambda_input("query")),
    };
    let ctx = q
        .ctx
        .iter()
        .map(|e| {
            Ok(CtxEntry {
                name: e.name.clone(),
                mark: e.mark.map(|m| m.flip()),
                ty: e.ty.as_ref().map(dual_type).transpose()?,
                span: e.span,
            })
        })
        .collect::<Result<Vec<_>, TypeError>>()?;
    Ok(RawQuery {
        kind,
        ctx,
        term: dual_term(&q.term)?,
        ty: q.ty.as_ref().map(dual_type).transpose()?,
        span: q.span,
    })
}

pub fn dual_program(ds: &[Directive]) -> Result<Vec<Directive>, TypeError> {
    ds.iter().map(dual_directive).collect()
}

/// Dualizes a typed context entrywise, preserving names and order.
pub fn dual_typed_ctx(ctx: &TypedCtx) -> Result<TypedCtx, TypeError> {
    ctx.iter()
        .map(|e| Ok(TypedEntry::new(e.name.clone(), dual_type(&e.ty)?)))
        .collect()
}
