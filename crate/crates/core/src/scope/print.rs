//! The annotated scoped-tree printer behind the `elaborate` subcommand, and
//! erasure back to raw syntax.
//!
//! Each node prints as `node-kind [cover: LRB...] [thin: KD...]`, two-space
//! indented, covers before thinnings; System L nodes list the checkable-side
//! cover before the synthesisable-side one.

use std::fmt::Write;

use crate::kernel::cover::{Cover, Thinning};
use crate::surface::ast::{ComatchBody, MatchBody, RawKind, RawTerm, Span};

use super::{Query, Scoped, ScopedKind};

pub fn print_query_tree(q: &Query) -> String {
    let mut out = String::new();
    let _ = write!(out, "{}", q.kind.as_str());
    let _ = write!(out, " [thin: {}]", q.thin_x);
    let _ = write!(out, " [thin: {}]", q.thin_s);
    out.push('\n');
    node(&mut out, &q.term, 1);
    out
}

fn line(out: &mut String, depth: usize, kind: &str, covers: &[&Cover], thins: &[&Thinning]) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push_str(kind);
    for c in covers {
        let _ = write!(out, " [cover: {c}]");
    }
    for t in thins {
        let _ = write!(out, " [thin: {t}]");
    }
    out.push('\n');
}

fn node(out: &mut String, s: &Scoped, depth: usize) {
    use ScopedKind::*;
    match &s.kind {
        Var(n) => line(out, depth, &format!("var({n})"), &[], &[]),
        Lam { binder, thin, body } => {
            line(out, depth, &format!("lam({binder})"), &[], &[thin]);
            node(out, body, depth + 1);
        }
        App { cover, fun, arg } => {
            line(out, depth, "app", &[cover], &[]);
            node(out, fun, depth + 1);
            node(out, arg, depth + 1);
        }
        Annot { ty, body } => {
            line(out, depth, &format!("annot({ty})"), &[], &[]);
            node(out, body, depth + 1);
        }
        Emb { body } => {
            line(out, depth, "emb", &[], &[]);
            node(out, body, depth + 1);
        }
        Unit => line(out, depth, "unit", &[], &[]),
        Pair { cover, left, right } => {
            line(out, depth, "pair", &[cover], &[]);
            node(out, left, depth + 1);
            node(out, right, depth + 1);
        }
        Proj { first, body } => {
            line(out, depth, if *first { "pi1" } else { "pi2" }, &[], &[]);
            node(out, body, depth + 1);
        }
        Inj { left, body } => {
            line(out, depth, if *left { "inl" } else { "inr" }, &[], &[]);
            node(out, body, depth + 1);
        }
        Case { cover, branch_cover, scrut, left_bind, thin_l, left, right_bind, thin_r, right } => {
            line(
                out,
                depth,
                &format!("case({left_bind},{right_bind})"),
                &[cover, branch_cover],
                &[thin_l, thin_r],
            );
            node(out, scrut, depth + 1);
            node(out, left, depth + 1);
            node(out, right, depth + 1);
        }
        Absurd { body } => {
            line(out, depth, "absurd", &[], &[]);
            node(out, body, depth + 1);
        }
        LetUnit { cover, scrut, body } => {
            line(out, depth, "let-unit", &[cover], &[]);
            node(out, scrut, depth + 1);
            node(out, body, depth + 1);
        }
        LetPair { cover, x, y, thin, scrut, body } => {
            line(out, depth, &format!("let-pair({x},{y})"), &[cover], &[thin]);
            node(out, scrut, depth + 1);
            node(out, body, depth + 1);
        }
        Cut { polarity, cover_x, cover_s, left, right } => {
            let k = match polarity {
                crate::kernel::ty::Polarity::Positive => "cut+",
                _ => "cut-",
            };
            line(out, depth, k, &[cover_x, cover_s], &[]);
            node(out, left, depth + 1);
            node(out, right, depth + 1);
        }
        Mu { kind, binder, thin, cmd } => {
            line(out, depth, &format!("{}({binder})", kind.as_str()), &[], &[thin]);
            node(out, cmd, depth + 1);
        }
        Tuple { cover_x, cover_s, left, right } => {
            line(out, depth, "tuple", &[cover_x, cover_s], &[]);
            node(out, left, depth + 1);
            node(out, right, depth + 1);
        }
        Cotuple { cover_x, cover_s, left, right } => {
            line(out, depth, "cotuple", &[cover_x, cover_s], &[]);
            node(out, left, depth + 1);
            node(out, right, depth + 1);
        }
        UnitI => line(out, depth, "unit-i", &[], &[]),
        CounitBot => line(out, depth, "counit-bot", &[], &[]),
        Sim { body } => {
            line(out, depth, "sim", &[], &[]);
            node(out, body, depth + 1);
        }
        NotC { body } => {
            line(out, depth, "not", &[], &[]);
            node(out, body, depth + 1);
        }
        DownIntro { body } => {
            line(out, depth, "down-intro", &[], &[]);
            node(out, body, depth + 1);
        }
        UpCointro { body } => {
            line(out, depth, "up-cointro", &[], &[]);
            node(out, body, depth + 1);
        }
        UpAdjIntro { ty, body } => {
            line(out, depth, &format!("up-adj-intro({ty})"), &[], &[]);
            node(out, body, depth + 1);
        }
        DownAdjIntro { ty, body } => {
            line(out, depth, &format!("down-adj-intro({ty})"), &[], &[]);
            node(out, body, depth + 1);
        }
        MatchUnit { cmd } => {
            line(out, depth, "match-unit", &[], &[]);
            node(out, cmd, depth + 1);
        }
        MatchPair { x, y, thin, cmd } => {
            line(out, depth, &format!("match-pair({x},{y})"), &[], &[thin]);
            node(out, cmd, depth + 1);
        }
        MatchZero => line(out, depth, "match-zero", &[], &[]),
        MatchSum { cover_x, xl, thin_l, cl, yr, thin_r, cr } => {
            line(out, depth, &format!("match-sum({xl},{yr})"), &[cover_x], &[thin_l, thin_r]);
            node(out, cl, depth + 1);
            node(out, cr, depth + 1);
        }
        MatchSim { x, thin, cmd } => {
            line(out, depth, &format!("match-sim({x})"), &[], &[thin]);
            node(out, cmd, depth + 1);
        }
        MatchDown { x, ty, thin, cmd } => {
            line(out, depth, &format!("match-down({x} : {ty})"), &[], &[thin]);
            node(out, cmd, depth + 1);
        }
        MatchDownAdj { x, thin, cmd } => {
            line(out, depth, &format!("match-down-adj({x})"), &[], &[thin]);
            node(out, cmd, depth + 1);
        }
        ComatchCounit { cmd } => {
            line(out, depth, "comatch-counit", &[], &[]);
            node(out, cmd, depth + 1);
        }
        ComatchPair { x, y, thin, cmd } => {
            line(out, depth, &format!("comatch-pair({x},{y})"), &[], &[thin]);
            node(out, cmd, depth + 1);
        }
        ComatchZero => line(out, depth, "comatch-zero", &[], &[]),
        ComatchWith { cover_x, xl, thin_l, cl, yr, thin_r, cr } => {
            line(out, depth, &format!("comatch-with({xl},{yr})"), &[cover_x], &[thin_l, thin_r]);
            node(out, cl, depth + 1);
            node(out, cr, depth + 1);
        }
        ComatchNot { x, thin, cmd } => {
            line(out, depth, &format!("comatch-not({x})"), &[], &[thin]);
            node(out, cmd, depth + 1);
        }
        ComatchUp { x, ty, thin, cmd } => {
            line(out, depth, &format!("comatch-up({x} : {ty})"), &[], &[thin]);
            node(out, cmd, depth + 1);
        }
        ComatchUpAdj { x, thin, cmd } => {
            line(out, depth, &format!("comatch-up-adj({x})"), &[], &[thin]);
            node(out, cmd, depth + 1);
        }
    }
}

/// Erases witnesses and modes back to a raw term. Implicit `emb` nodes
/// vanish, so erasure of an elaborated term is alpha-equal to the input.
pub fn erase(s: &Scoped) -> RawTerm {
    use ScopedKind::*;
    let sp = Span::default();
    let k = |kind| RawTerm::new(sp, kind);
    let b = |s: &Scoped| Box::new(erase(s));
    match &s.kind {
        Var(n) => k(RawKind::Var(n.clone())),
        Emb { body } => erase(body),
        Lam { binder, body, .. } => k(RawKind::Lam(binder.clone(), b(body))),
        App { fun, arg, .. } => k(RawKind::App(b(fun), b(arg))),
        Annot { ty, body } => k(RawKind::Annot(b(body), ty.clone())),
        Unit => k(RawKind::Unit),
        Pair { left, right, .. } => k(RawKind::Pair(b(left), b(right))),
        Proj { first, body } => match (s.class, *first) {
            (super::JudgementClass::Coexpr, true) => k(RawKind::Pi1(b(body))),
            (super::JudgementClass::Coexpr, false) => k(RawKind::Pi2(b(body))),
            (_, true) => k(RawKind::Proj1(b(body))),
            (_, false) => k(RawKind::Proj2(b(body))),
        },
        Inj { left, body } => {
            if s.class == super::JudgementClass::Expr {
                if *left {
                    k(RawKind::InjL(b(body)))
                } else {
                    k(RawKind::InjR(b(body)))
                }
            } else if *left {
                k(RawKind::Inl(b(body)))
            } else {
                k(RawKind::Inr(b(body)))
            }
        }
        Case { scrut, left_bind, left, right_bind, right, .. } => k(RawKind::Case {
            scrut: b(scrut),
            left_bind: left_bind.clone(),
            left: b(left),
            right_bind: right_bind.clone(),
            right: b(right),
        }),
        Absurd { body } => k(RawKind::Absurd(b(body))),
        LetUnit { scrut, body, .. } => k(RawKind::LetUnit { scrut: b(scrut), body: b(body) }),
        LetPair { x, y, scrut, body, .. } => {
            k(RawKind::LetPair { x: x.clone(), y: y.clone(), scrut: b(scrut), body: b(body) })
        }
        Cut { left, right, .. } => k(RawKind::Cut(b(left), b(right))),
        Mu { kind, binder, cmd, .. } => {
            let c = b(cmd);
            k(match kind {
                super::MuKind::MuPlus => RawKind::MuPlus(binder.clone(), c),
                super::MuKind::MutPlus => RawKind::MutPlus(binder.clone(), c),
                super::MuKind::MuMinus => RawKind::MuMinus(binder.clone(), c),
                super::MuKind::MutMinus => RawKind::MutMinus(binder.clone(), c),
            })
        }
        Tuple { left, right, .. } => k(RawKind::Tuple(b(left), b(right))),
        Cotuple { left, right, .. } => k(RawKind::Cotuple(b(left), b(right))),
        UnitI => k(RawKind::UnitI),
        CounitBot => k(RawKind::CounitBot),
        Sim { body } => k(RawKind::Sim(b(body))),
        NotC { body } => k(RawKind::NotC(b(body))),
        DownIntro { body } => k(RawKind::DownIntro(b(body))),
        UpCointro { body } => k(RawKind::UpCointro(b(body))),
        UpAdjIntro { ty, body } => k(RawKind::UpAdjIntro(b(body), ty.clone())),
        DownAdjIntro { ty, body } => k(RawKind::DownAdjIntro(b(body), ty.clone())),
        MatchUnit { cmd } => k(RawKind::Match(MatchBody::Unit(b(cmd)))),
        MatchPair { x, y, cmd, .. } => {
            k(RawKind::Match(MatchBody::Pair(x.clone(), y.clone(), b(cmd))))
        }
        MatchZero => k(RawKind::Match(MatchBody::Empty)),
        MatchSum { xl, cl, yr, cr, .. } => k(RawKind::Match(MatchBody::Sum {
            xl: xl.clone(),
            cl: b(cl),
            yr: yr.clone(),
            cr: b(cr),
        })),
        MatchSim { x, cmd, .. } => k(RawKind::Match(MatchBody::Sim(x.clone(), b(cmd)))),
        MatchDown { x, ty, cmd, .. } => {
            k(RawKind::Match(MatchBody::Down(x.clone(), ty.clone(), b(cmd))))
        }
        MatchDownAdj { x, cmd, .. } => k(RawKind::Match(MatchBody::DownAdj(x.clone(), b(cmd)))),
        ComatchCounit { cmd } => k(RawKind::Comatch(ComatchBody::Counit(b(cmd)))),
        ComatchPair { x, y, cmd, .. } => {
            k(RawKind::Comatch(ComatchBody::Pair(b(cmd), x.clone(), y.clone())))
        }
        ComatchZero => k(RawKind::Comatch(ComatchBody::Empty)),
        ComatchWith { xl, cl, yr, cr, .. } => k(RawKind::Comatch(ComatchBody::With {
            cl: b(cl),
            xl: xl.clone(),
            cr: b(cr),
            yr: yr.clone(),
        })),
        ComatchNot { x, cmd, .. } => k(RawKind::Comatch(ComatchBody::Not(b(cmd), x.clone()))),
        ComatchUp { x, ty, cmd, .. } => {
            k(RawKind::Comatch(ComatchBody::Up(b(cmd), x.clone(), ty.clone())))
        }
        ComatchUpAdj { x, cmd, .. } => {
            k(RawKind::Comatch(ComatchBody::UpAdj(b(cmd), x.clone())))
        }
    }
}
