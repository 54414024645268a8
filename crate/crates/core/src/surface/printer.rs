//! Printing raw syntax back to concrete text. Printed output re-parses to
//! the same tree; self-delimiting forms stay bare, everything else is
//! parenthesised in child position.

use std::fmt::Write;

use super::ast::*;

fn self_delimiting(t: &RawTerm) -> bool {
    use RawKind::*;
    matches!(
        &t.kind,
        Var(_)
            | Unit
            | UnitI
            | CounitBot
            | Annot(..)
            | Pair(..)
            | Tuple(..)
            | Cotuple(..)
            | Cut(..)
            | Match(_)
            | Comatch(_)
            | UpAdjIntro(..)
            | DownAdjIntro(..)
    )
}

fn child(out: &mut String, t: &RawTerm) {
    if self_delimiting(t) {
        term(out, t);
    } else {
        out.push('(');
        term(out, t);
        out.push(')');
    }
}

fn term(out: &mut String, t: &RawTerm) {
    use RawKind::*;
    match &t.kind {
        Var(n) => out.push_str(n),
        Lam(x, b) => {
            let _ = write!(out, "\\{x}. ");
            term(out, b);
        }
        App(f, a) => {
            // Application chains stay bare on the left.
            if matches!(f.kind, App(..)) || self_delimiting(f) {
                term(out, f);
            } else {
                child(out, f);
            }
            out.push(' ');
            child(out, a);
        }
        Annot(b, ty) => {
            out.push('(');
            term(out, b);
            let _ = write!(out, " : {ty})");
        }
        Pair(a, b) | Tuple(a, b) => {
            out.push('(');
            term(out, a);
            out.push_str(", ");
            term(out, b);
            out.push(')');
        }
        Cotuple(a, b) => {
            out.push('[');
            term(out, a);
            out.push_str(", ");
            term(out, b);
            out.push(']');
        }
        Unit | UnitI => out.push_str("()"),
        CounitBot => out.push_str("[]"),
        Proj1(a) => un(out, "pi1", a),
        Proj2(a) => un(out, "pi2", a),
        Inl(a) => un(out, "inl", a),
        Inr(a) => un(out, "inr", a),
        Absurd(a) => un(out, "absurd", a),
        Case { scrut, left_bind, left, right_bind, right } => {
            out.push_str("case ");
            term(out, scrut);
            let _ = write!(out, " of {{ inl {left_bind} => ");
            term(out, left);
            let _ = write!(out, "; inr {right_bind} => ");
            term(out, right);
            out.push_str(" }");
        }
        LetUnit { scrut, body } => {
            out.push_str("let () = ");
            term(out, scrut);
            out.push_str(" in ");
            term(out, body);
        }
        LetPair { x, y, scrut, body } => {
            let _ = write!(out, "let ({x}, {y}) = ");
            term(out, scrut);
            out.push_str(" in ");
            term(out, body);
        }
        Cut(l, r) => {
            out.push_str("< ");
            term(out, l);
            out.push_str(" | ");
            term(out, r);
            out.push_str(" >");
        }
        MuPlus(x, c) => mu(out, "mu+", x, c),
        MuMinus(x, c) => mu(out, "mu-", x, c),
        MutPlus(x, c) => mu(out, "mut+", x, c),
        MutMinus(x, c) => mu(out, "mut-", x, c),
        InjL(a) => un(out, "inl", a),
        InjR(a) => un(out, "inr", a),
        Pi1(a) => un(out, "pi1", a),
        Pi2(a) => un(out, "pi2", a),
        Sim(a) => un(out, "~", a),
        NotC(a) => un(out, "not", a),
        DownIntro(a) => un(out, "down", a),
        UpCointro(a) => un(out, "up", a),
        UpAdjIntro(a, ty) => {
            out.push_str("Up(");
            term(out, a);
            let _ = write!(out, " : {ty})");
        }
        DownAdjIntro(a, ty) => {
            out.push_str("Down(");
            term(out, a);
            let _ = write!(out, " : {ty})");
        }
        Match(m) => {
            out.push_str("match { ");
            match m {
                MatchBody::Empty => {
                    out.pop();
                }
                MatchBody::Unit(c) => {
                    out.push_str("() => ");
                    term(out, c);
                    out.push(' ');
                }
                MatchBody::Pair(x, y, c) => {
                    let _ = write!(out, "({x}, {y}) => ");
                    term(out, c);
                    out.push(' ');
                }
                MatchBody::Sum { xl, cl, yr, cr } => {
                    let _ = write!(out, "inl {xl} => ");
                    term(out, cl);
                    let _ = write!(out, "; inr {yr} => ");
                    term(out, cr);
                    out.push(' ');
                }
                MatchBody::Sim(x, c) => {
                    let _ = write!(out, "~{x} => ");
                    term(out, c);
                    out.push(' ');
                }
                MatchBody::Down(x, ty, c) => {
                    let _ = write!(out, "down({x} : {ty}) => ");
                    term(out, c);
                    out.push(' ');
                }
                MatchBody::DownAdj(x, c) => {
                    let _ = write!(out, "Down {x} => ");
                    term(out, c);
                    out.push(' ');
                }
            }
            out.push('}');
        }
        Comatch(m) => {
            out.push_str("comatch { ");
            match m {
                ComatchBody::Empty => {
                    out.pop();
                }
                ComatchBody::Counit(c) => {
                    term(out, c);
                    out.push_str(" => [] ");
                }
                ComatchBody::Pair(c, x, y) => {
                    term(out, c);
                    let _ = write!(out, " => [{x}, {y}] ");
                }
                ComatchBody::With { cl, xl, cr, yr } => {
                    term(out, cl);
                    let _ = write!(out, " => pi1 {xl}; ");
                    term(out, cr);
                    let _ = write!(out, " => pi2 {yr} ");
                }
                ComatchBody::Not(c, x) => {
                    term(out, c);
                    let _ = write!(out, " => not {x} ");
                }
                ComatchBody::Up(c, x, ty) => {
                    term(out, c);
                    let _ = write!(out, " => up({x} : {ty}) ");
                }
                ComatchBody::UpAdj(c, x) => {
                    term(out, c);
                    let _ = write!(out, " => Up {x} ");
                }
            }
            out.push('}');
        }
    }
}

fn un(out: &mut String, op: &str, a: &RawTerm) {
    out.push_str(op);
    if op != "~" {
        out.push(' ');
    }
    child(out, a);
}

fn mu(out: &mut String, op: &str, x: &str, c: &RawTerm) {
    let _ = write!(out, "{op} {x} . ");
    term(out, c);
}

pub fn print_term(t: &RawTerm) -> String {
    let mut s = String::new();
    term(&mut s, t);
    s
}

pub fn print_query(q: &RawQuery) -> String {
    let mut s = String::new();
    s.push_str(q.kind.as_str());
    if !q.ctx.is_empty() {
        s.push_str(" [");
        for (i, e) in q.ctx.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(&e.name);
            if let Some(m) = e.mark {
                s.push_str(m.mark());
            }
            if let Some(t) = &e.ty {
                let _ = write!(s, " : {t}");
            }
        }
        s.push(']');
    }
    s.push(' ');
    term(&mut s, &q.term);
    if let Some(t) = &q.ty {
        let _ = write!(s, " : {t}");
    }
    s.push_str(" ;");
    s
}

pub fn print_directive(d: &Directive) -> String {
    match d {
        Directive::Atom(a) => {
            let pol = match a.polarity {
                crate::kernel::ty::Polarity::Positive => "positive",
                crate::kernel::ty::Polarity::Negative => "negative",
                crate::kernel::ty::Polarity::Unpolarised => "plain",
            };
            format!("atom {} {pol} ;", a.name)
        }
        Directive::Query(q) => print_query(q),
    }
}

pub fn print_program(ds: &[Directive]) -> String {
    let mut s = String::new();
    for d in ds {
        s.push_str(&print_directive(d));
        s.push('\n');
    }
    s
}
