//! Recursive-descent parser for the `.pl0` directive format.
//!
//! Lambda-family payloads (`lambda-check`, `lambda-synth`) and System L
//! payloads (`expr`, `pattern`, `copattern`, `coexpr`, `command`) are parsed
//! in separate dialects of the term grammar; the type grammar is shared but
//! family-checked. Type annotations are grammatically possible only at the
//! five annotation sites, so annotation-site exclusivity holds by
//! construction.

use std::collections::HashMap;

use super::ast::*;
use super::lexer::{lex, Tok};
use super::ParseError;
use crate::kernel::ty::{contains_top, polarity_of, Family, Polarity, TypeExpr};

/// Declared atoms and their polarity; `Unpolarised` marks a plain atom.
#[derive(Clone, Debug, Default)]
pub struct AtomTable(pub HashMap<String, Polarity>);

impl AtomTable {
    pub fn get(&self, name: &str) -> Option<Polarity> {
        self.0.get(name).copied()
    }
}

/// A parsed program together with its atom declarations.
#[derive(Clone, Debug, PartialEq)]
pub struct Program {
    pub directives: Vec<Directive>,
}

impl Program {
    pub fn atoms(&self) -> AtomTable {
        let mut t = AtomTable::default();
        for d in &self.directives {
            if let Directive::Atom(a) = d {
                t.0.insert(a.name.clone(), a.polarity);
            }
        }
        t
    }

    pub fn queries(&self) -> impl Iterator<Item = &RawQuery> {
        self.directives.iter().filter_map(|d| match d {
            Directive::Query(q) => Some(q),
            Directive::Atom(_) => None,
        })
    }
}

pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let toks = lex(text)?;
    let mut p = P { toks, pos: 0, atoms: AtomTable::default(), eof: end_span(text) };
    let mut directives = Vec::new();
    while !p.at_end() {
        directives.push(p.directive()?);
    }
    Ok(Program { directives })
}

/// Parses a single type in the given family. Unlike [`parse_program`] this
/// accepts the checker-internal tops, so printed types round-trip.
pub fn parse_type(text: &str, fam: Family, atoms: &AtomTable) -> Result<TypeExpr, ParseError> {
    let toks = lex(text)?;
    let mut p = P { toks, pos: 0, atoms: atoms.clone(), eof: end_span(text) };
    let t = p.ty(fam)?;
    if !p.at_end() {
        return Err(ParseError::new(p.span(), "trailing input after type"));
    }
    Ok(t)
}

fn end_span(text: &str) -> Span {
    let line = text.bytes().filter(|b| *b == b'\n').count() as u32 + 1;
    let col = text.bytes().rev().take_while(|b| *b != b'\n').count() as u32 + 1;
    Span { offset: text.len(), line, col }
}

struct P {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    atoms: AtomTable,
    eof: Span,
}

impl P {
    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map(|(_, s)| *s).unwrap_or(self.eof)
    }

    fn bump(&mut self) -> (Tok, Span) {
        let r = self.toks[self.pos].clone();
        self.pos += 1;
        r
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<Span, ParseError> {
        if self.peek() == Some(&t) {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        match self.toks.get(self.pos) {
            Some((t, s)) => ParseError::new(*s, format!("expected {what}, found {}", t.describe())),
            None => ParseError::new(self.eof, format!("expected {what}, found end of input")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Span), ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let (t, s) = self.bump();
                match t {
                    Tok::Ident(n) => Ok((n, s)),
                    _ => unreachable!(),
                }
            }
            _ => Err(self.unexpected(what)),
        }
    }

    // ----- directives -----

    fn directive(&mut self) -> Result<Directive, ParseError> {
        match self.peek() {
            Some(Tok::Atom) => {
                let (_, span) = self.bump();
                let (name, nspan) = self.ident("an atom name")?;
                let polarity = match self.peek() {
                    Some(Tok::Positive) => Polarity::Positive,
                    Some(Tok::Negative) => Polarity::Negative,
                    Some(Tok::Plain) => Polarity::Unpolarised,
                    _ => return Err(self.unexpected("`positive`, `negative` or `plain`")),
                };
                self.bump();
                self.expect(Tok::Semi, "`;`")?;
                if self.atoms.get(&name).is_some() {
                    return Err(ParseError::new(nspan, format!("duplicate atom `{name}`")));
                }
                self.atoms.0.insert(name.clone(), polarity);
                Ok(Directive::Atom(AtomDecl { name, polarity, span }))
            }
            Some(
                Tok::LambdaCheck
                | Tok::LambdaSynth
                | Tok::Expr
                | Tok::Pattern
                | Tok::Copattern
                | Tok::Coexpr
                | Tok::Command,
            ) => {
                let (kt, span) = self.bump();
                let kind = match kt {
                    Tok::LambdaCheck => QueryKind::LambdaCheck,
                    Tok::LambdaSynth => QueryKind::LambdaSynth,
                    Tok::Expr => QueryKind::Expr,
                    Tok::Pattern => QueryKind::Pattern,
                    Tok::Copattern => QueryKind::Copattern,
                    Tok::Coexpr => QueryKind::Coexpr,
                    Tok::Command => QueryKind::Command,
                    _ => unreachable!(),
                };
                let fam = if kind.is_lambda() { Family::Lambda } else { Family::SystemL };
                let ctx = if self.bracket_is_ctx() {
                    self.ctx_entries(fam)?
                } else {
                    Vec::new()
                };
                let term = if fam == Family::Lambda { self.lam_term()? } else { self.l_term()? };
                let ty = if self.eat(&Tok::Colon) { Some(self.ty(fam)?) } else { None };
                let semi = self.span();
                self.expect(Tok::Semi, "`;`")?;
                if kind.takes_type() && ty.is_none() {
                    return Err(ParseError::new(
                        semi,
                        format!("`{}` queries require `: type`", kind.as_str()),
                    ));
                }
                if !kind.takes_type() && ty.is_some() {
                    return Err(ParseError::new(
                        semi,
                        format!("`{}` queries do not take a type", kind.as_str()),
                    ));
                }
                let q = RawQuery { kind, ctx, term, ty, span };
                reject_internal_tops(&q)?;
                Ok(Directive::Query(q))
            }
            _ => Err(self.unexpected("a directive (`atom` or a query kind)")),
        }
    }

    /// A leading bracket group is a context unless the token after its
    /// matching `]` ends the payload, in which case it must be the counit
    /// or a cotuple term.
    fn bracket_is_ctx(&self) -> bool {
        if self.peek() != Some(&Tok::LBrack) {
            return false;
        }
        let mut depth = 0usize;
        let mut i = self.pos;
        while let Some((t, _)) = self.toks.get(i) {
            match t {
                Tok::LBrack => depth += 1,
                Tok::RBrack => {
                    depth -= 1;
                    if depth == 0 {
                        return !matches!(
                            self.toks.get(i + 1).map(|(t, _)| t),
                            Some(Tok::Colon) | Some(Tok::Semi) | None
                        );
                    }
                }
                _ => {}
            }
            i += 1;
        }
        true
    }

    fn ctx_entries(&mut self, fam: Family) -> Result<Vec<CtxEntry>, ParseError> {
        self.expect(Tok::LBrack, "`[`")?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrack) {
            return Ok(out);
        }
        loop {
            let (name, span) = self.ident("a context entry name")?;
            let mark = match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    Some(Polarity::Positive)
                }
                Some(Tok::Minus) => {
                    self.bump();
                    Some(Polarity::Negative)
                }
                _ => None,
            };
            if mark.is_some() && fam == Family::Lambda {
                return Err(ParseError::new(span, "polarity marks are System L syntax"));
            }
            let ty = if self.eat(&Tok::Colon) { Some(self.ty(fam)?) } else { None };
            if let (Some(m), Some(t)) = (&mark, &ty) {
                if *m != polarity_of(t) {
                    return Err(ParseError::new(
                        span,
                        format!("polarity mark on `{name}` disagrees with its type `{t}`"),
                    ));
                }
            }
            out.push(CtxEntry { name, mark, ty, span });
            if self.eat(&Tok::RBrack) {
                return Ok(out);
            }
            self.expect(Tok::Comma, "`,` or `]`")?;
        }
    }

    // ----- types -----

    fn ty(&mut self, fam: Family) -> Result<TypeExpr, ParseError> {
        let lhs = self.ty_sum(fam)?;
        match self.peek() {
            Some(Tok::Arrow) | Some(Tok::Lolli) => {
                let (op, span) = self.bump();
                if fam == Family::SystemL {
                    return Err(ParseError::new(span, "function types are not System L types"));
                }
                let rhs = self.ty(fam)?;
                Ok(match op {
                    Tok::Arrow => TypeExpr::Arrow(Box::new(lhs), Box::new(rhs)),
                    _ => TypeExpr::Lolli(Box::new(lhs), Box::new(rhs)),
                })
            }
            _ => Ok(lhs),
        }
    }

    fn ty_sum(&mut self, fam: Family) -> Result<TypeExpr, ParseError> {
        let mut t = self.ty_prod(fam)?;
        while self.peek() == Some(&Tok::Plus) {
            let (_, span) = self.bump();
            let r = self.ty_prod(fam)?;
            t = match fam {
                Family::Lambda => TypeExpr::Sum(Box::new(t), Box::new(r)),
                Family::SystemL => {
                    require_pol(&t, Polarity::Positive, "+", span)?;
                    require_pol(&r, Polarity::Positive, "+", span)?;
                    TypeExpr::Plus(Box::new(t), Box::new(r))
                }
            };
        }
        Ok(t)
    }

    fn ty_prod(&mut self, fam: Family) -> Result<TypeExpr, ParseError> {
        let mut t = self.ty_unary(fam)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    let (_, span) = self.bump();
                    let r = self.ty_unary(fam)?;
                    t = match fam {
                        Family::Lambda => TypeExpr::Prod(Box::new(t), Box::new(r)),
                        Family::SystemL => {
                            require_pol(&t, Polarity::Positive, "*", span)?;
                            require_pol(&r, Polarity::Positive, "*", span)?;
                            TypeExpr::Tensor(Box::new(t), Box::new(r))
                        }
                    };
                }
                Some(Tok::Par) => {
                    let (_, span) = self.bump();
                    self.require_l(fam, "par", span)?;
                    let r = self.ty_unary(fam)?;
                    require_pol(&t, Polarity::Negative, "par", span)?;
                    require_pol(&r, Polarity::Negative, "par", span)?;
                    t = TypeExpr::Par(Box::new(t), Box::new(r));
                }
                Some(Tok::Amp) => {
                    let (_, span) = self.bump();
                    self.require_l(fam, "&", span)?;
                    let r = self.ty_unary(fam)?;
                    require_pol(&t, Polarity::Negative, "&", span)?;
                    require_pol(&r, Polarity::Negative, "&", span)?;
                    t = TypeExpr::With(Box::new(t), Box::new(r));
                }
                _ => return Ok(t),
            }
        }
    }

    fn ty_unary(&mut self, fam: Family) -> Result<TypeExpr, ParseError> {
        let unop = match self.peek() {
            Some(
                t @ (Tok::Tilde
                | Tok::Not
                | Tok::Down
                | Tok::Up
                | Tok::DownAdj
                | Tok::UpAdj
                | Tok::Bang
                | Tok::Question),
            ) => Some(t.clone()),
            _ => None,
        };
        let Some(op) = unop else { return self.ty_atom(fam) };
        let (_, span) = self.bump();
        self.require_l(fam, &format!("{:?}", op), span)?;
        let inner = self.ty_unary(fam)?;
        let want = match op {
            Tok::Tilde | Tok::Down | Tok::DownAdj | Tok::Question => Polarity::Negative,
            _ => Polarity::Positive,
        };
        let opname = match op {
            Tok::Tilde => "~",
            Tok::Not => "not",
            Tok::Down => "down",
            Tok::Up => "up",
            Tok::DownAdj => "Down",
            Tok::UpAdj => "Up",
            Tok::Bang => "!",
            _ => "?",
        };
        require_pol(&inner, want, opname, span)?;
        Ok(match op {
            Tok::Tilde => TypeExpr::Sim(Box::new(inner)),
            Tok::Not => TypeExpr::Not(Box::new(inner)),
            Tok::Down => TypeExpr::Down(Box::new(inner)),
            Tok::Up => TypeExpr::Up(Box::new(inner)),
            Tok::DownAdj => TypeExpr::DownAdj(Box::new(inner)),
            Tok::UpAdj => TypeExpr::UpAdj(Box::new(inner)),
            // `!A` and `?A` are sugar for the adjoint decompositions.
            Tok::Bang => TypeExpr::Down(Box::new(TypeExpr::UpAdj(Box::new(inner)))),
            _ => TypeExpr::Up(Box::new(TypeExpr::DownAdj(Box::new(inner)))),
        })
    }

    fn ty_atom(&mut self, fam: Family) -> Result<TypeExpr, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let (name, span) = self.ident("a type")?;
                match self.atoms.get(&name) {
                    None => Err(ParseError::new(span, format!("unknown atom `{name}`"))),
                    Some(Polarity::Unpolarised) => {
                        if fam == Family::SystemL {
                            Err(ParseError::new(
                                span,
                                format!("atom `{name}` is plain, not a System L atom"),
                            ))
                        } else {
                            Ok(TypeExpr::Atom(name))
                        }
                    }
                    Some(p) => {
                        if fam == Family::Lambda {
                            Err(ParseError::new(
                                span,
                                format!("atom `{name}` is polarised, not a lambda atom"),
                            ))
                        } else if p == Polarity::Positive {
                            Ok(TypeExpr::PosAtom(name))
                        } else {
                            Ok(TypeExpr::NegAtom(name))
                        }
                    }
                }
            }
            Some(Tok::Zero) => {
                self.bump();
                Ok(match fam {
                    Family::Lambda => TypeExpr::Empty,
                    Family::SystemL => TypeExpr::Zero,
                })
            }
            Some(Tok::One) => {
                self.bump();
                Ok(match fam {
                    Family::Lambda => TypeExpr::Unit,
                    Family::SystemL => TypeExpr::WithUnit,
                })
            }
            Some(Tok::TensorUnit) => {
                let (_, span) = self.bump();
                self.require_l(fam, "I", span)?;
                Ok(TypeExpr::TensorUnit)
            }
            Some(Tok::Bot) => {
                let (_, span) = self.bump();
                self.require_l(fam, "bot", span)?;
                Ok(TypeExpr::ParUnit)
            }
            Some(Tok::Top) => {
                let (_, span) = self.bump();
                if fam == Family::SystemL {
                    return Err(ParseError::new(span, "`Top` is a lambda type; use Top+ or Top-"));
                }
                Ok(TypeExpr::Top)
            }
            Some(Tok::TopPos) => {
                let (_, span) = self.bump();
                self.require_l(fam, "Top+", span)?;
                Ok(TypeExpr::TopPos)
            }
            Some(Tok::TopNeg) => {
                let (_, span) = self.bump();
                self.require_l(fam, "Top-", span)?;
                Ok(TypeExpr::TopNeg)
            }
            Some(Tok::LParen) => {
                self.bump();
                let t = self.ty(fam)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.unexpected("a type")),
        }
    }

    fn require_l(&self, fam: Family, what: &str, span: Span) -> Result<(), ParseError> {
        if fam == Family::Lambda {
            Err(ParseError::new(span, format!("`{what}` is not lambda-family syntax")))
        } else {
            Ok(())
        }
    }

    // ----- lambda terms -----

    fn lam_term(&mut self) -> Result<RawTerm, ParseError> {
        match self.peek() {
            Some(Tok::Backslash) => {
                let (_, span) = self.bump();
                let (x, _) = self.ident("a binder name")?;
                self.expect(Tok::Dot, "`.`")?;
                let body = self.lam_term()?;
                Ok(RawTerm::new(span, RawKind::Lam(x, Box::new(body))))
            }
            Some(Tok::Case) => {
                let (_, span) = self.bump();
                let scrut = self.lam_term()?;
                self.expect(Tok::Of, "`of`")?;
                self.expect(Tok::LBrace, "`{`")?;
                self.expect(Tok::Inl, "`inl`")?;
                let (xl, _) = self.ident("a binder name")?;
                self.expect(Tok::FatArrow, "`=>`")?;
                let left = self.lam_term()?;
                self.expect(Tok::Semi, "`;`")?;
                self.expect(Tok::Inr, "`inr`")?;
                let (yr, _) = self.ident("a binder name")?;
                self.expect(Tok::FatArrow, "`=>`")?;
                let right = self.lam_term()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(RawTerm::new(
                    span,
                    RawKind::Case {
                        scrut: Box::new(scrut),
                        left_bind: xl,
                        left: Box::new(left),
                        right_bind: yr,
                        right: Box::new(right),
                    },
                ))
            }
            Some(Tok::Let) => {
                let (_, span) = self.bump();
                self.expect(Tok::LParen, "`(`")?;
                if self.eat(&Tok::RParen) {
                    self.expect(Tok::Eq, "`=`")?;
                    let scrut = self.lam_term()?;
                    self.expect(Tok::In, "`in`")?;
                    let body = self.lam_term()?;
                    Ok(RawTerm::new(
                        span,
                        RawKind::LetUnit { scrut: Box::new(scrut), body: Box::new(body) },
                    ))
                } else {
                    let (x, _) = self.ident("a binder name")?;
                    self.expect(Tok::Comma, "`,`")?;
                    let (y, _) = self.ident("a binder name")?;
                    self.expect(Tok::RParen, "`)`")?;
                    self.expect(Tok::Eq, "`=`")?;
                    let scrut = self.lam_term()?;
                    self.expect(Tok::In, "`in`")?;
                    let body = self.lam_term()?;
                    Ok(RawTerm::new(
                        span,
                        RawKind::LetPair { x, y, scrut: Box::new(scrut), body: Box::new(body) },
                    ))
                }
            }
            _ => self.lam_app(),
        }
    }

    fn lam_app(&mut self) -> Result<RawTerm, ParseError> {
        let mut t = self.lam_unary()?;
        while matches!(
            self.peek(),
            Some(
                Tok::Ident(_)
                    | Tok::LParen
                    | Tok::Pi1
                    | Tok::Pi2
                    | Tok::Inl
                    | Tok::Inr
                    | Tok::Absurd
            )
        ) {
            let arg = self.lam_unary()?;
            let span = t.span;
            t = RawTerm::new(span, RawKind::App(Box::new(t), Box::new(arg)));
        }
        Ok(t)
    }

    fn lam_unary(&mut self) -> Result<RawTerm, ParseError> {
        let mk = |span, k| Ok(RawTerm::new(span, k));
        match self.peek() {
            Some(Tok::Pi1) => {
                let (_, span) = self.bump();
                mk(span, RawKind::Proj1(Box::new(self.lam_unary()?)))
            }
            Some(Tok::Pi2) => {
                let (_, span) = self.bump();
                mk(span, RawKind::Proj2(Box::new(self.lam_unary()?)))
            }
            Some(Tok::Inl) => {
                let (_, span) = self.bump();
                mk(span, RawKind::Inl(Box::new(self.lam_unary()?)))
            }
            Some(Tok::Inr) => {
                let (_, span) = self.bump();
                mk(span, RawKind::Inr(Box::new(self.lam_unary()?)))
            }
            Some(Tok::Absurd) => {
                let (_, span) = self.bump();
                mk(span, RawKind::Absurd(Box::new(self.lam_unary()?)))
            }
            _ => self.lam_atom(),
        }
    }

    fn lam_atom(&mut self) -> Result<RawTerm, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let (n, span) = self.ident("a term")?;
                Ok(RawTerm::new(span, RawKind::Var(n)))
            }
            Some(Tok::LParen) => {
                let (_, span) = self.bump();
                if self.eat(&Tok::RParen) {
                    return Ok(RawTerm::new(span, RawKind::Unit));
                }
                let t = self.lam_term()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.bump();
                        Ok(t)
                    }
                    Some(Tok::Colon) => {
                        self.bump();
                        let ty = self.ty(Family::Lambda)?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(RawTerm::new(span, RawKind::Annot(Box::new(t), ty)))
                    }
                    Some(Tok::Comma) => {
                        self.bump();
                        let u = self.lam_term()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(RawTerm::new(span, RawKind::Pair(Box::new(t), Box::new(u))))
                    }
                    _ => Err(self.unexpected("`)`, `:` or `,`")),
                }
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    // ----- System L terms -----

    fn l_term(&mut self) -> Result<RawTerm, ParseError> {
        match self.peek() {
            Some(Tok::Lt) => {
                let (_, span) = self.bump();
                let l = self.l_term()?;
                self.expect(Tok::Pipe, "`|`")?;
                let r = self.l_term()?;
                self.expect(Tok::Gt, "`>`")?;
                Ok(RawTerm::new(span, RawKind::Cut(Box::new(l), Box::new(r))))
            }
            Some(Tok::MuPlus | Tok::MuMinus | Tok::MutPlus | Tok::MutMinus) => {
                let (op, span) = self.bump();
                let (x, _) = self.ident("a binder name")?;
                self.expect(Tok::Dot, "`.`")?;
                let body = Box::new(self.l_term()?);
                let kind = match op {
                    Tok::MuPlus => RawKind::MuPlus(x, body),
                    Tok::MuMinus => RawKind::MuMinus(x, body),
                    Tok::MutPlus => RawKind::MutPlus(x, body),
                    _ => RawKind::MutMinus(x, body),
                };
                Ok(RawTerm::new(span, kind))
            }
            Some(Tok::Match) => {
                let (_, span) = self.bump();
                self.expect(Tok::LBrace, "`{`")?;
                let body = self.match_body()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(RawTerm::new(span, RawKind::Match(body)))
            }
            Some(Tok::Comatch) => {
                let (_, span) = self.bump();
                self.expect(Tok::LBrace, "`{`")?;
                let body = self.comatch_body()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(RawTerm::new(span, RawKind::Comatch(body)))
            }
            _ => self.l_unary(),
        }
    }

    fn l_unary(&mut self) -> Result<RawTerm, ParseError> {
        let op = match self.peek() {
            Some(
                t @ (Tok::Inl | Tok::Inr | Tok::Pi1 | Tok::Pi2 | Tok::Tilde | Tok::Not
                | Tok::Down | Tok::Up),
            ) => t.clone(),
            _ => return self.l_atom(),
        };
        let (_, span) = self.bump();
        let arg = Box::new(self.l_term()?);
        let kind = match op {
            Tok::Inl => RawKind::InjL(arg),
            Tok::Inr => RawKind::InjR(arg),
            Tok::Pi1 => RawKind::Pi1(arg),
            Tok::Pi2 => RawKind::Pi2(arg),
            Tok::Tilde => RawKind::Sim(arg),
            Tok::Not => RawKind::NotC(arg),
            Tok::Down => RawKind::DownIntro(arg),
            _ => RawKind::UpCointro(arg),
        };
        Ok(RawTerm::new(span, kind))
    }

    fn l_atom(&mut self) -> Result<RawTerm, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                let (n, span) = self.ident("a term")?;
                Ok(RawTerm::new(span, RawKind::Var(n)))
            }
            Some(Tok::UpAdj) => {
                let (_, span) = self.bump();
                let (t, ty) = self.annotated_term(Polarity::Positive, "Up")?;
                Ok(RawTerm::new(span, RawKind::UpAdjIntro(Box::new(t), ty)))
            }
            Some(Tok::DownAdj) => {
                let (_, span) = self.bump();
                let (t, ty) = self.annotated_term(Polarity::Negative, "Down")?;
                Ok(RawTerm::new(span, RawKind::DownAdjIntro(Box::new(t), ty)))
            }
            Some(Tok::LParen) => {
                let (_, span) = self.bump();
                if self.eat(&Tok::RParen) {
                    return Ok(RawTerm::new(span, RawKind::UnitI));
                }
                let t = self.l_term()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.bump();
                        Ok(t)
                    }
                    Some(Tok::Comma) => {
                        self.bump();
                        let u = self.l_term()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(RawTerm::new(span, RawKind::Tuple(Box::new(t), Box::new(u))))
                    }
                    Some(Tok::Colon) => Err(ParseError::new(
                        self.span(),
                        "bare type annotations are not System L syntax",
                    )),
                    _ => Err(self.unexpected("`)` or `,`")),
                }
            }
            Some(Tok::LBrack) => {
                let (_, span) = self.bump();
                if self.eat(&Tok::RBrack) {
                    return Ok(RawTerm::new(span, RawKind::CounitBot));
                }
                let t = self.l_term()?;
                self.expect(Tok::Comma, "`,`")?;
                let u = self.l_term()?;
                self.expect(Tok::RBrack, "`]`")?;
                Ok(RawTerm::new(span, RawKind::Cotuple(Box::new(t), Box::new(u))))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    /// `( term : type )` payload of the adjoint shifts.
    fn annotated_term(
        &mut self,
        want: Polarity,
        what: &str,
    ) -> Result<(RawTerm, TypeExpr), ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let t = self.l_term()?;
        let cspan = self.span();
        self.expect(Tok::Colon, "`:`")?;
        let ty = self.ty(Family::SystemL)?;
        require_pol_where(&ty, want, what, cspan)?;
        self.expect(Tok::RParen, "`)`")?;
        Ok((t, ty))
    }

    fn match_body(&mut self) -> Result<MatchBody, ParseError> {
        match self.peek() {
            Some(Tok::RBrace) => Ok(MatchBody::Empty),
            Some(Tok::LParen) => {
                self.bump();
                if self.eat(&Tok::RParen) {
                    self.expect(Tok::FatArrow, "`=>`")?;
                    let c = self.l_term()?;
                    Ok(MatchBody::Unit(Box::new(c)))
                } else {
                    let (x, _) = self.ident("a binder name")?;
                    self.expect(Tok::Comma, "`,`")?;
                    let (y, _) = self.ident("a binder name")?;
                    self.expect(Tok::RParen, "`)`")?;
                    self.expect(Tok::FatArrow, "`=>`")?;
                    let c = self.l_term()?;
                    Ok(MatchBody::Pair(x, y, Box::new(c)))
                }
            }
            Some(Tok::Inl) => {
                self.bump();
                let (xl, _) = self.ident("a binder name")?;
                self.expect(Tok::FatArrow, "`=>`")?;
                let cl = self.l_term()?;
                self.expect(Tok::Semi, "`;`")?;
                self.expect(Tok::Inr, "`inr`")?;
                let (yr, _) = self.ident("a binder name")?;
                self.expect(Tok::FatArrow, "`=>`")?;
                let cr = self.l_term()?;
                Ok(MatchBody::Sum { xl, cl: Box::new(cl), yr, cr: Box::new(cr) })
            }
            Some(Tok::Tilde) => {
                self.bump();
                let (x, _) = self.ident("a binder name")?;
                self.expect(Tok::FatArrow, "`=>`")?;
                let c = self.l_term()?;
                Ok(MatchBody::Sim(x, Box::new(c)))
            }
            Some(Tok::Down) => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let (x, _) = self.ident("a binder name")?;
                let cspan = self.span();
                self.expect(Tok::Colon, "`:` (downshift matches require an annotation)")?;
                let ty = self.ty(Family::SystemL)?;
                require_pol_where(&ty, Polarity::Negative, "down", cspan)?;
                self.expect(Tok::RParen, "`)`")?;
                self.expect(Tok::FatArrow, "`=>`")?;
                let c = self.l_term()?;
                Ok(MatchBody::Down(x, ty, Box::new(c)))
            }
            Some(Tok::DownAdj) => {
                self.bump();
                let (x, _) = self.ident("a binder name")?;
                self.expect(Tok::FatArrow, "`=>`")?;
                let c = self.l_term()?;
                Ok(MatchBody::DownAdj(x, Box::new(c)))
            }
            _ => Err(self.unexpected("a match branch or `}`")),
        }
    }

    fn comatch_body(&mut self) -> Result<ComatchBody, ParseError> {
        if self.peek() == Some(&Tok::RBrace) {
            return Ok(ComatchBody::Empty);
        }
        let c = self.l_term()?;
        self.expect(Tok::FatArrow, "`=>`")?;
        match self.peek() {
            Some(Tok::LBrack) => {
                self.bump();
                if self.eat(&Tok::RBrack) {
                    return Ok(ComatchBody::Counit(Box::new(c)));
                }
                let (x, _) = self.ident("a binder name")?;
                self.expect(Tok::Comma, "`,`")?;
                let (y, _) = self.ident("a binder name")?;
                self.expect(Tok::RBrack, "`]`")?;
                Ok(ComatchBody::Pair(Box::new(c), x, y))
            }
            Some(Tok::Pi1) => {
                self.bump();
                let (xl, _) = self.ident("a binder name")?;
                self.expect(Tok::Semi, "`;`")?;
                let d = self.l_term()?;
                self.expect(Tok::FatArrow, "`=>`")?;
                self.expect(Tok::Pi2, "`pi2`")?;
                let (yr, _) = self.ident("a binder name")?;
                Ok(ComatchBody::With { cl: Box::new(c), xl, cr: Box::new(d), yr })
            }
            Some(Tok::Not) => {
                self.bump();
                let (x, _) = self.ident("a binder name")?;
                Ok(ComatchBody::Not(Box::new(c), x))
            }
            Some(Tok::Up) => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let (x, _) = self.ident("a binder name")?;
                let cspan = self.span();
                self.expect(Tok::Colon, "`:` (upshift comatches require an annotation)")?;
                let ty = self.ty(Family::SystemL)?;
                require_pol_where(&ty, Polarity::Positive, "up", cspan)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(ComatchBody::Up(Box::new(c), x, ty))
            }
            Some(Tok::UpAdj) => {
                self.bump();
                let (x, _) = self.ident("a binder name")?;
                Ok(ComatchBody::UpAdj(Box::new(c), x))
            }
            _ => Err(self.unexpected("a comatch copattern (`[`, `pi1`, `not`, `up`, `Up`)")),
        }
    }
}

fn require_pol(t: &TypeExpr, want: Polarity, op: &str, span: Span) -> Result<(), ParseError> {
    require_pol_where(t, want, op, span)
}

fn require_pol_where(
    t: &TypeExpr,
    want: Polarity,
    op: &str,
    span: Span,
) -> Result<(), ParseError> {
    if polarity_of(t) != want {
        let w = if want == Polarity::Positive { "positive" } else { "negative" };
        Err(ParseError::new(span, format!("`{op}` expects a {w} type but `{t}` is not")))
    } else {
        Ok(())
    }
}

/// Tops are checker-internal: programs may not write them, although the
/// bare type parser accepts them so printed types round-trip.
fn reject_internal_tops(q: &RawQuery) -> Result<(), ParseError> {
    fn check(t: &TypeExpr, span: Span) -> Result<(), ParseError> {
        if contains_top(t) {
            Err(ParseError::new(span, format!("internal top types cannot be written: `{t}`")))
        } else {
            Ok(())
        }
    }
    for e in &q.ctx {
        if let Some(t) = &e.ty {
            check(t, e.span)?;
        }
    }
    if let Some(t) = &q.ty {
        check(t, q.span)?;
    }
    walk_annotations(&q.term, &mut |t, span| check(t, span))
}

/// Visits every annotation payload in a raw term, in source order.
pub fn walk_annotations(
    t: &RawTerm,
    f: &mut impl FnMut(&TypeExpr, Span) -> Result<(), ParseError>,
) -> Result<(), ParseError> {
    use RawKind::*;
    match &t.kind {
        Var(_) | Unit | UnitI | CounitBot => Ok(()),
        Annot(inner, ty) => {
            f(ty, t.span)?;
            walk_annotations(inner, f)
        }
        UpAdjIntro(inner, ty) | DownAdjIntro(inner, ty) => {
            f(ty, t.span)?;
            walk_annotations(inner, f)
        }
        Lam(_, a) | Proj1(a) | Proj2(a) | Inl(a) | Inr(a) | Absurd(a) | MuPlus(_, a)
        | MutPlus(_, a) | MuMinus(_, a) | MutMinus(_, a) | InjL(a) | InjR(a) | Pi1(a)
        | Pi2(a) | Sim(a) | NotC(a) | DownIntro(a) | UpCointro(a) => walk_annotations(a, f),
        App(a, b) | Pair(a, b) | Cut(a, b) | Tuple(a, b) | Cotuple(a, b) => {
            walk_annotations(a, f)?;
            walk_annotations(b, f)
        }
        LetUnit { scrut, body } => {
            walk_annotations(scrut, f)?;
            walk_annotations(body, f)
        }
        LetPair { scrut, body, .. } => {
            walk_annotations(scrut, f)?;
            walk_annotations(body, f)
        }
        Case { scrut, left, right, .. } => {
            walk_annotations(scrut, f)?;
            walk_annotations(left, f)?;
            walk_annotations(right, f)
        }
        Match(m) => match m {
            MatchBody::Empty => Ok(()),
            MatchBody::Unit(c) | MatchBody::Sim(_, c) | MatchBody::DownAdj(_, c) => {
                walk_annotations(c, f)
            }
            MatchBody::Pair(_, _, c) => walk_annotations(c, f),
            MatchBody::Sum { cl, cr, .. } => {
                walk_annotations(cl, f)?;
                walk_annotations(cr, f)
            }
            MatchBody::Down(_, ty, c) => {
                f(ty, t.span)?;
                walk_annotations(c, f)
            }
        },
        Comatch(m) => match m {
            ComatchBody::Empty => Ok(()),
            ComatchBody::Counit(c) | ComatchBody::Not(c, _) | ComatchBody::UpAdj(c, _) => {
                walk_annotations(c, f)
            }
            ComatchBody::Pair(c, _, _) => walk_annotations(c, f),
            ComatchBody::With { cl, cr, .. } => {
                walk_annotations(cl, f)?;
                walk_annotations(cr, f)
            }
            ComatchBody::Up(c, _, ty) => {
                f(ty, t.span)?;
                walk_annotations(c, f)
            }
        },
    }
}

/// Number of annotation payloads in a term, counting all five sites.
pub fn annotation_count(t: &RawTerm) -> usize {
    let mut n = 0usize;
    let _ = walk_annotations(t, &mut |_, _| {
        n += 1;
        Ok(())
    });
    n
}
