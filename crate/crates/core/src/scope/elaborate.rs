//! Elaboration from raw named terms to scoped co-de Bruijn syntax.
//!
//! Works in three passes: a restriction walk that rejects constructs outside
//! the selected calculus, a resolution pass that binds every variable and
//! computes per-node usage sets, and an assignment pass that orders each
//! node's scoped contexts (projected down from the directive order) and
//! builds the covers and thinnings, checking structural legality as each
//! witness is created.

use crate::kernel::config::{Side, StructConfig};
use crate::kernel::ctx::{ScopedCtx, ScopedEntry, TypedCtx, TypedEntry};
use crate::kernel::cover::{Cover, CoverStep, ThinStep, Thinning};
use crate::kernel::ty::{polarity_of, Polarity, TypeExpr};
use crate::surface::ast::{
    ComatchBody, CtxEntry, MatchBody, QueryKind, RawKind, RawTerm, Span,
};

use super::{
    Calculus, JudgementClass, MuKind, Query, Scoped, ScopedKind, ScopeCode, ScopeError,
};

type VarId = usize;

/// A bound command: binder id, whether it was used, the elaborated command,
/// and the command's usage sets with the binder stripped.
type BoundCmd = (VarId, bool, Pre, Vec<VarId>, Vec<VarId>);

#[derive(Clone, Debug)]
struct VarInfo {
    name: String,
    side: Side,
    pol: Option<Polarity>,
    span: Span,
}

struct Pre {
    class: JudgementClass,
    span: Span,
    x_uses: Vec<VarId>,
    s_uses: Vec<VarId>,
    kind: PreKind,
}

enum PreKind {
    Var(VarId),
    Lam { binder: VarId, kept: bool, body: Box<Pre> },
    App { fun: Box<Pre>, arg: Box<Pre> },
    Annot { ty: TypeExpr, body: Box<Pre> },
    Emb { body: Box<Pre> },
    Unit,
    Pair { left: Box<Pre>, right: Box<Pre> },
    Proj { first: bool, body: Box<Pre> },
    Inj { left: bool, body: Box<Pre> },
    Case {
        scrut: Box<Pre>,
        lb: VarId,
        lkept: bool,
        left: Box<Pre>,
        rb: VarId,
        rkept: bool,
        right: Box<Pre>,
    },
    Absurd { body: Box<Pre> },
    LetUnit { scrut: Box<Pre>, body: Box<Pre> },
    LetPair { x: VarId, xk: bool, y: VarId, yk: bool, scrut: Box<Pre>, body: Box<Pre> },
    Cut { polarity: Polarity, left: Box<Pre>, right: Box<Pre> },
    Mu { kind: MuKind, binder: VarId, kept: bool, cmd: Box<Pre> },
    Tuple { left: Box<Pre>, right: Box<Pre> },
    Cotuple { left: Box<Pre>, right: Box<Pre> },
    UnitI,
    CounitBot,
    Sim { body: Box<Pre> },
    NotC { body: Box<Pre> },
    DownIntro { body: Box<Pre> },
    UpCointro { body: Box<Pre> },
    UpAdjIntro { ty: TypeExpr, body: Box<Pre> },
    DownAdjIntro { ty: TypeExpr, body: Box<Pre> },
    MatchUnit { cmd: Box<Pre> },
    MatchPair { x: VarId, xk: bool, y: VarId, yk: bool, cmd: Box<Pre> },
    MatchZero,
    MatchSum { xl: VarId, xlk: bool, cl: Box<Pre>, yr: VarId, yrk: bool, cr: Box<Pre> },
    MatchSim { x: VarId, kept: bool, cmd: Box<Pre> },
    MatchDown { x: VarId, kept: bool, ty: TypeExpr, cmd: Box<Pre> },
    MatchDownAdj { x: VarId, kept: bool, cmd: Box<Pre> },
    ComatchCounit { cmd: Box<Pre> },
    ComatchPair { x: VarId, xk: bool, y: VarId, yk: bool, cmd: Box<Pre> },
    ComatchZero,
    ComatchWith { xl: VarId, xlk: bool, cl: Box<Pre>, yr: VarId, yrk: bool, cr: Box<Pre> },
    ComatchNot { x: VarId, kept: bool, cmd: Box<Pre> },
    ComatchUp { x: VarId, kept: bool, ty: TypeExpr, cmd: Box<Pre> },
    ComatchUpAdj { x: VarId, kept: bool, cmd: Box<Pre> },
}

pub fn elaborate(
    q: &crate::surface::ast::RawQuery,
    calculus: Calculus,
    cfg: &StructConfig,
) -> Result<Query, ScopeError> {
    let mut e = Elab {
        calculus,
        cfg: *cfg,
        vars: Vec::new(),
        stack: Vec::new(),
        directive: Vec::new(),
        collected: Vec::new(),
    };
    e.check_kind(q)?;
    e.restrict_types_and_terms(q)?;

    let (x_typed, dir_typed, dir_scoped) = e.declare_context(q)?;

    let root_class = match q.kind {
        QueryKind::LambdaCheck => JudgementClass::Chk,
        QueryKind::LambdaSynth => JudgementClass::Syn,
        QueryKind::Expr => JudgementClass::Expr,
        QueryKind::Pattern => JudgementClass::Pattern,
        QueryKind::Copattern => JudgementClass::Copattern,
        QueryKind::Coexpr => JudgementClass::Coexpr,
        QueryKind::Command => JudgementClass::Command,
    };
    e.check_query_type(q)?;

    let pre = if calculus.family() == crate::kernel::ty::Family::Lambda {
        let want = match root_class {
            JudgementClass::Chk => LamMode::Chk,
            _ => LamMode::Syn,
        };
        e.elab_lambda(&q.term, want)?
    } else {
        e.elab_l(&q.term, root_class)?
    };

    // Root thinnings: which declared entries the term actually uses.
    let mut thin_x = Thinning::default();
    for &id in &dir_typed {
        let used = pre.x_uses.binary_search(&id).is_ok();
        if !used {
            e.require_drop(Side::Checkable, id)?;
        }
        thin_x.0.push(if used { ThinStep::Keep } else { ThinStep::Drop });
    }
    let mut thin_s = Thinning::default();
    let mut s_scope = ScopedCtx::new();
    for &id in dir_scoped.iter().chain(e.collected.iter()) {
        let used = pre.s_uses.binary_search(&id).is_ok();
        if !used {
            let v = &e.vars[id];
            if v.pol.is_none() {
                return Err(ScopeError::new(
                    ScopeCode::UnresolvedPolarity,
                    v.span,
                    format!("scoped variable `{}` is unused and carries no polarity mark", v.name),
                ));
            }
            e.require_drop(Side::Synthesisable, id)?;
        }
        thin_s.0.push(if used { ThinStep::Keep } else { ThinStep::Drop });
        s_scope.push(e.entry(id));
    }

    let x_ord: Vec<VarId> =
        dir_typed.iter().copied().filter(|id| pre.x_uses.binary_search(id).is_ok()).collect();
    let s_ord: Vec<VarId> = dir_scoped
        .iter()
        .chain(e.collected.iter())
        .copied()
        .filter(|id| pre.s_uses.binary_search(id).is_ok())
        .collect();

    let term = e.assign(pre, &x_ord, &s_ord)?;

    Ok(Query {
        kind: q.kind,
        calculus,
        x_typed,
        s_scope,
        ty: q.ty.clone(),
        thin_x,
        thin_s,
        term,
        span: q.span,
    })
}

#[derive(Clone, Copy, PartialEq)]
enum LamMode {
    Chk,
    Syn,
}

struct Elab {
    calculus: Calculus,
    cfg: StructConfig,
    vars: Vec<VarInfo>,
    stack: Vec<(String, VarId)>,
    directive: Vec<VarId>,
    collected: Vec<VarId>,
}

impl Elab {
    fn entry(&self, id: VarId) -> ScopedEntry {
        let v = &self.vars[id];
        ScopedEntry::new(v.name.clone(), v.pol.expect("polarity resolved"))
    }

    fn require_drop(&self, side: Side, id: VarId) -> Result<(), ScopeError> {
        let v = &self.vars[id];
        let pol = v.pol.expect("polarity resolved");
        if self.cfg.structural(side, pol) {
            Ok(())
        } else {
            Err(ScopeError::new(
                ScopeCode::UnusedVariable,
                v.span,
                format!(
                    "variable `{}` is unused, which the {} preset does not permit",
                    v.name, self.cfg.preset
                ),
            ))
        }
    }

    // ----- validation -----

    fn check_kind(&self, q: &crate::surface::ast::RawQuery) -> Result<(), ScopeError> {
        let ok = match self.calculus {
            Calculus::Stlc | Calculus::Lin | Calculus::Cdb => q.kind.is_lambda(),
            Calculus::Pos => {
                matches!(q.kind, QueryKind::Expr | QueryKind::Pattern | QueryKind::Command)
            }
            Calculus::Neg => {
                matches!(q.kind, QueryKind::Copattern | QueryKind::Coexpr | QueryKind::Command)
            }
            Calculus::Pol | Calculus::Lnl => !q.kind.is_lambda(),
        };
        if ok {
            Ok(())
        } else {
            Err(ScopeError::new(
                ScopeCode::CalculusRestriction,
                q.span,
                format!("`{}` queries are not part of calculus {}", q.kind.as_str(), self.calculus),
            ))
        }
    }

    fn check_type(&self, t: &TypeExpr, span: Span) -> Result<(), ScopeError> {
        if super::type_allowed_in(self.calculus, t) {
            Ok(())
        } else {
            Err(ScopeError::new(
                ScopeCode::CalculusRestriction,
                span,
                format!("type `{t}` is not part of calculus {}", self.calculus),
            ))
        }
    }

    fn restrict_types_and_terms(
        &self,
        q: &crate::surface::ast::RawQuery,
    ) -> Result<(), ScopeError> {
        for e in &q.ctx {
            if let Some(t) = &e.ty {
                self.check_type(t, e.span)?;
            }
            if let Some(m) = e.mark {
                let bad = (self.calculus == Calculus::Pos && m == Polarity::Negative)
                    || (self.calculus == Calculus::Neg && m == Polarity::Positive);
                if bad {
                    return Err(ScopeError::new(
                        ScopeCode::CalculusRestriction,
                        e.span,
                        format!("polarity mark `{}` is outside calculus {}", m.mark(), self.calculus),
                    ));
                }
            }
        }
        if let Some(t) = &q.ty {
            self.check_type(t, q.span)?;
        }
        crate::surface::parser::walk_annotations(&q.term, &mut |t, span| {
            self.check_type(t, span)
                .map_err(|e| crate::surface::ParseError::new(e.span, e.message))
        })
        .map_err(|pe| ScopeError::new(ScopeCode::CalculusRestriction, pe.span, pe.message))?;
        self.restrict_term(&q.term)
    }

    fn restrict_term(&self, t: &RawTerm) -> Result<(), ScopeError> {
        use RawKind::*;
        let bad: Option<&str> = match (&t.kind, self.calculus) {
            (LetUnit { .. } | LetPair { .. }, Calculus::Stlc) => {
                Some("let-eliminators belong to the cocontextual calculi")
            }
            (
                Proj1(_) | Proj2(_) | Inl(_) | Inr(_) | Case { .. } | Absurd(_),
                Calculus::Lin | Calculus::Cdb,
            ) => Some("additive and projection forms are not cocontextual"),
            (
                MuMinus(..) | MutMinus(..) | Cotuple(..) | CounitBot | Pi1(_) | Pi2(_)
                | Sim(_) | NotC(_) | DownIntro(_) | UpCointro(_) | UpAdjIntro(..)
                | DownAdjIntro(..) | Comatch(_),
                Calculus::Pos,
            ) => Some("negative-fragment syntax is outside calculus pos"),
            (
                Match(MatchBody::Sim(..) | MatchBody::Down(..) | MatchBody::DownAdj(..)),
                Calculus::Pos,
            ) => Some("mixed-fragment match branches are outside calculus pos"),
            (
                MuPlus(..) | MutPlus(..) | Tuple(..) | UnitI | InjL(_) | InjR(_) | Sim(_)
                | NotC(_) | DownIntro(_) | UpCointro(_) | UpAdjIntro(..) | DownAdjIntro(..)
                | Match(_),
                Calculus::Neg,
            ) => Some("positive-fragment syntax is outside calculus neg"),
            (
                Comatch(ComatchBody::Not(..) | ComatchBody::Up(..) | ComatchBody::UpAdj(..)),
                Calculus::Neg,
            ) => Some("mixed-fragment comatch branches are outside calculus neg"),
            (UpAdjIntro(..) | DownAdjIntro(..), Calculus::Pol) => {
                Some("adjoint shifts require calculus lnl")
            }
            (Match(MatchBody::DownAdj(..)) | Comatch(ComatchBody::UpAdj(..)), Calculus::Pol) => {
                Some("adjoint shifts require calculus lnl")
            }
            _ => None,
        };
        if let Some(msg) = bad {
            return Err(ScopeError::new(ScopeCode::CalculusRestriction, t.span, msg));
        }
        match &t.kind {
            Var(_) | Unit | UnitI | CounitBot => Ok(()),
            Lam(_, a) | Annot(a, _) | Proj1(a) | Proj2(a) | Inl(a) | Inr(a) | Absurd(a)
            | MuPlus(_, a) | MutPlus(_, a) | MuMinus(_, a) | MutMinus(_, a) | InjL(a)
            | InjR(a) | Pi1(a) | Pi2(a) | Sim(a) | NotC(a) | DownIntro(a) | UpCointro(a)
            | UpAdjIntro(a, _) | DownAdjIntro(a, _) => self.restrict_term(a),
            App(a, b) | Pair(a, b) | Cut(a, b) | Tuple(a, b) | Cotuple(a, b) => {
                self.restrict_term(a)?;
                self.restrict_term(b)
            }
            LetUnit { scrut, body } | LetPair { scrut, body, .. } => {
                self.restrict_term(scrut)?;
                self.restrict_term(body)
            }
            Case { scrut, left, right, .. } => {
                self.restrict_term(scrut)?;
                self.restrict_term(left)?;
                self.restrict_term(right)
            }
            Match(m) => match m {
                MatchBody::Empty => Ok(()),
                MatchBody::Unit(c)
                | MatchBody::Pair(_, _, c)
                | MatchBody::Sim(_, c)
                | MatchBody::Down(_, _, c)
                | MatchBody::DownAdj(_, c) => self.restrict_term(c),
                MatchBody::Sum { cl, cr, .. } => {
                    self.restrict_term(cl)?;
                    self.restrict_term(cr)
                }
            },
            Comatch(m) => match m {
                ComatchBody::Empty => Ok(()),
                ComatchBody::Counit(c)
                | ComatchBody::Pair(c, _, _)
                | ComatchBody::Not(c, _)
                | ComatchBody::Up(c, _, _)
                | ComatchBody::UpAdj(c, _) => self.restrict_term(c),
                ComatchBody::With { cl, cr, .. } => {
                    self.restrict_term(cl)?;
                    self.restrict_term(cr)
                }
            },
        }
    }

    fn check_query_type(&self, q: &crate::surface::ast::RawQuery) -> Result<(), ScopeError> {
        if let Some(t) = &q.ty {
            let want = match q.kind {
                QueryKind::Expr => Some(Polarity::Positive),
                QueryKind::Coexpr => Some(Polarity::Negative),
                _ => None,
            };
            if let Some(w) = want {
                if polarity_of(t) != w {
                    return Err(ScopeError::new(
                        ScopeCode::PolarityMismatch,
                        q.span,
                        format!(
                            "`{}` queries take a {} type, but `{t}` is not",
                            q.kind.as_str(),
                            if w == Polarity::Positive { "positive" } else { "negative" }
                        ),
                    ));
                }
            }
        }
        Ok(())
    }

    fn declare_context(
        &mut self,
        q: &crate::surface::ast::RawQuery,
    ) -> Result<(TypedCtx, Vec<VarId>, Vec<VarId>), ScopeError> {
        let mut x_typed = TypedCtx::new();
        let mut dir_typed = Vec::new();
        let mut dir_scoped = Vec::new();
        let lambda = self.calculus.family() == crate::kernel::ty::Family::Lambda;
        for e in &q.ctx {
            self.check_entry_unique(e)?;
            match (&e.ty, lambda, self.calculus) {
                (Some(ty), true, Calculus::Stlc) => {
                    let id = self.fresh(e.name.clone(), Side::Checkable, Some(Polarity::Unpolarised), e.span);
                    dir_typed.push(id);
                    x_typed.push(TypedEntry::new(e.name.clone(), ty.clone()));
                }
                (None, true, Calculus::Stlc) => {
                    return Err(ScopeError::new(
                        ScopeCode::ContextShape,
                        e.span,
                        "standard lambda contexts are typed; write `x : A`",
                    ));
                }
                (None, true, _) => {
                    let id = self.fresh(
                        e.name.clone(),
                        Side::Synthesisable,
                        Some(Polarity::Unpolarised),
                        e.span,
                    );
                    dir_scoped.push(id);
                }
                (Some(_), true, _) => {
                    return Err(ScopeError::new(
                        ScopeCode::ContextShape,
                        e.span,
                        "cocontextual contexts are scoped-only; the typed context is synthesised",
                    ));
                }
                (Some(ty), false, _) => {
                    let id =
                        self.fresh(e.name.clone(), Side::Checkable, Some(polarity_of(ty)), e.span);
                    dir_typed.push(id);
                    x_typed.push(TypedEntry::new(e.name.clone(), ty.clone()));
                }
                (None, false, _) => {
                    let id = self.fresh(e.name.clone(), Side::Synthesisable, e.mark, e.span);
                    dir_scoped.push(id);
                }
            }
        }
        self.directive = dir_typed.iter().chain(dir_scoped.iter()).copied().collect();
        Ok((x_typed, dir_typed, dir_scoped))
    }

    fn check_entry_unique(&self, e: &CtxEntry) -> Result<(), ScopeError> {
        for &id in &self.directive {
            let v = &self.vars[id];
            if v.name != e.name {
                continue;
            }
            let e_side = if e.ty.is_some() { Side::Checkable } else { Side::Synthesisable };
            let e_pol = e.ty.as_ref().map(polarity_of).or(e.mark);
            let clash = v.side == e_side
                && (v.pol.is_none() || e_pol.is_none() || v.pol == e_pol);
            if clash {
                return Err(ScopeError::new(
                    ScopeCode::DuplicateEntry,
                    e.span,
                    format!("duplicate context entry `{}`", e.name),
                ));
            }
        }
        Ok(())
    }

    // ----- variable handling -----

    fn fresh(&mut self, name: String, side: Side, pol: Option<Polarity>, span: Span) -> VarId {
        self.vars.push(VarInfo { name, side, pol, span });
        self.vars.len() - 1
    }

    fn bind(&mut self, name: &str, side: Side, pol: Polarity, span: Span) -> VarId {
        let id = self.fresh(name.to_string(), side, Some(pol), span);
        self.stack.push((name.to_string(), id));
        id
    }

    fn unbind(&mut self) {
        self.stack.pop();
    }

    fn side_name(side: Side, pol: Polarity) -> &'static str {
        match (side, pol) {
            (_, Polarity::Unpolarised) => "the lambda context",
            (Side::Synthesisable, Polarity::Positive) => "the positive input context",
            (Side::Checkable, Polarity::Positive) => "the positive output context",
            (Side::Checkable, Polarity::Negative) => "the negative input context",
            (Side::Synthesisable, Polarity::Negative) => "the negative output context",
        }
    }

    fn resolve(
        &mut self,
        name: &str,
        side: Side,
        pol: Polarity,
        span: Span,
    ) -> Result<VarId, ScopeError> {
        if let Some(&(_, id)) = self.stack.iter().rev().find(|(n, _)| n == name) {
            let v = &self.vars[id];
            if v.side == side && v.pol == Some(pol) {
                return Ok(id);
            }
            return Err(ScopeError::new(
                ScopeCode::WrongContext,
                span,
                format!(
                    "`{name}` is bound in {} but used in {}",
                    Self::side_name(v.side, v.pol.unwrap_or(Polarity::Unpolarised)),
                    Self::side_name(side, pol)
                ),
            ));
        }
        let candidates: Vec<VarId> = self
            .directive
            .iter()
            .copied()
            .filter(|&id| self.vars[id].name == name)
            .collect();
        if !candidates.is_empty() {
            for id in candidates {
                let v = &self.vars[id];
                if v.side == side && (v.pol.is_none() || v.pol == Some(pol)) {
                    self.vars[id].pol = Some(pol);
                    return Ok(id);
                }
            }
            return Err(ScopeError::new(
                ScopeCode::WrongContext,
                span,
                format!(
                    "`{name}` is declared for a different context than {}",
                    Self::side_name(side, pol)
                ),
            ));
        }
        if let Some(&id) = self
            .collected
            .iter()
            .find(|&&id| self.vars[id].name == name && self.vars[id].pol == Some(pol))
        {
            return Ok(id);
        }
        if side == Side::Synthesisable {
            let id = self.fresh(name.to_string(), side, Some(pol), span);
            self.collected.push(id);
            Ok(id)
        } else {
            Err(ScopeError::new(
                ScopeCode::UnboundVariable,
                span,
                format!("unbound variable `{name}`"),
            ))
        }
    }

    /// Class a raw term commits to by its head form, if any. Used to resolve
    /// cut polarity before elaborating the sides.
    fn classify(&self, t: &RawTerm) -> Option<JudgementClass> {
        use RawKind::*;
        match &t.kind {
            Var(n) => {
                let info = self
                    .stack
                    .iter()
                    .rev()
                    .find(|(m, _)| m == n)
                    .map(|&(_, id)| id)
                    .or_else(|| {
                        let c: Vec<VarId> = self
                            .directive
                            .iter()
                            .chain(self.collected.iter())
                            .copied()
                            .filter(|&id| self.vars[id].name == *n)
                            .collect();
                        if c.len() == 1 { Some(c[0]) } else { None }
                    })?;
                let v = &self.vars[info];
                match (v.side, v.pol?) {
                    (Side::Synthesisable, Polarity::Positive) => Some(JudgementClass::Expr),
                    (Side::Checkable, Polarity::Positive) => Some(JudgementClass::Pattern),
                    (Side::Checkable, Polarity::Negative) => Some(JudgementClass::Copattern),
                    (Side::Synthesisable, Polarity::Negative) => Some(JudgementClass::Coexpr),
                    _ => None,
                }
            }
            MuPlus(..) | UnitI | Tuple(..) | InjL(_) | InjR(_) | Sim(_) | DownIntro(_) => {
                Some(JudgementClass::Expr)
            }
            Match(MatchBody::DownAdj(..)) => Some(JudgementClass::Expr),
            Match(_) | MutPlus(..) | DownAdjIntro(..) => Some(JudgementClass::Pattern),
            Comatch(ComatchBody::UpAdj(..)) => Some(JudgementClass::Coexpr),
            MutMinus(..) | CounitBot | Cotuple(..) | Pi1(_) | Pi2(_) | NotC(_)
            | UpCointro(_) => Some(JudgementClass::Coexpr),
            Comatch(_) | MuMinus(..) | UpAdjIntro(..) => Some(JudgementClass::Copattern),
            Cut(..) => Some(JudgementClass::Command),
            _ => None,
        }
    }

    // ----- System L resolution -----

    fn elab_l(&mut self, t: &RawTerm, want: JudgementClass) -> Result<Pre, ScopeError> {
        use RawKind::*;
        let mode_err = |got: &str| {
            Err(ScopeError::new(
                ScopeCode::ModeError,
                t.span,
                format!("{got} cannot appear where a {} is required", want.as_str()),
            ))
        };
        let wrap = |class: JudgementClass, kind, x_uses, s_uses| Pre {
            class,
            span: t.span,
            x_uses,
            s_uses,
            kind,
        };
        macro_rules! demand {
            ($cls:expr, $name:expr) => {
                if want != $cls {
                    return mode_err($name);
                }
            };
        }
        match &t.kind {
            Var(n) => {
                let (side, pol) = match want.var_side() {
                    Some(sp) => sp,
                    None => return mode_err("a variable"),
                };
                let id = self.resolve(n, side, pol, t.span)?;
                let (x, s) = match side {
                    Side::Checkable => (vec![id], vec![]),
                    Side::Synthesisable => (vec![], vec![id]),
                };
                Ok(wrap(want, PreKind::Var(id), x, s))
            }
            Cut(l, r) => {
                demand!(JudgementClass::Command, "a command");
                let lc = self.classify(l);
                let rc = self.classify(r);
                let from_l = match lc {
                    Some(JudgementClass::Expr) => Some(Polarity::Positive),
                    Some(JudgementClass::Coexpr) => Some(Polarity::Negative),
                    Some(c) if c != JudgementClass::Expr && c != JudgementClass::Coexpr => {
                        return Err(ScopeError::new(
                            ScopeCode::ModeError,
                            l.span,
                            format!(
                                "the producer side of a cut must be an expression or coexpression, not a {}",
                                c.as_str()
                            ),
                        ))
                    }
                    _ => None,
                };
                let from_r = match rc {
                    Some(JudgementClass::Pattern) => Some(Polarity::Positive),
                    Some(JudgementClass::Copattern) => Some(Polarity::Negative),
                    Some(c) if c != JudgementClass::Pattern && c != JudgementClass::Copattern => {
                        return Err(ScopeError::new(
                            ScopeCode::ModeError,
                            r.span,
                            format!(
                                "the consumer side of a cut must be a pattern or copattern, not a {}",
                                c.as_str()
                            ),
                        ))
                    }
                    _ => None,
                };
                let polarity = match (from_l, from_r) {
                    (Some(a), Some(b)) if a == b => a,
                    (Some(_), Some(_)) => {
                        return Err(ScopeError::new(
                            ScopeCode::PolarityMismatch,
                            t.span,
                            "the two sides of this cut have different polarities",
                        ))
                    }
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => {
                        return Err(ScopeError::new(
                            ScopeCode::AmbiguousCut,
                            t.span,
                            "cannot determine the polarity of this cut; no side commits",
                        ))
                    }
                };
                let (lw, rw) = if polarity == Polarity::Positive {
                    (JudgementClass::Expr, JudgementClass::Pattern)
                } else {
                    (JudgementClass::Coexpr, JudgementClass::Copattern)
                };
                let left = self.elab_l(l, lw)?;
                let right = self.elab_l(r, rw)?;
                let x = merge_uses(&left.x_uses, &right.x_uses);
                let s = merge_uses(&left.s_uses, &right.s_uses);
                Ok(wrap(
                    JudgementClass::Command,
                    PreKind::Cut { polarity, left: Box::new(left), right: Box::new(right) },
                    x,
                    s,
                ))
            }
            MuPlus(x, c) => self.mu(t.span, want, MuKind::MuPlus, x, c),
            MutPlus(x, c) => self.mu(t.span, want, MuKind::MutPlus, x, c),
            MuMinus(x, c) => self.mu(t.span, want, MuKind::MuMinus, x, c),
            MutMinus(x, c) => self.mu(t.span, want, MuKind::MutMinus, x, c),
            UnitI => {
                demand!(JudgementClass::Expr, "the unit tuple");
                Ok(wrap(want, PreKind::UnitI, vec![], vec![]))
            }
            CounitBot => {
                demand!(JudgementClass::Coexpr, "the counit");
                Ok(wrap(want, PreKind::CounitBot, vec![], vec![]))
            }
            Tuple(a, b) => {
                demand!(JudgementClass::Expr, "a tuple");
                let left = self.elab_l(a, JudgementClass::Expr)?;
                let right = self.elab_l(b, JudgementClass::Expr)?;
                let x = merge_uses(&left.x_uses, &right.x_uses);
                let s = merge_uses(&left.s_uses, &right.s_uses);
                Ok(wrap(want, PreKind::Tuple { left: Box::new(left), right: Box::new(right) }, x, s))
            }
            Cotuple(a, b) => {
                demand!(JudgementClass::Coexpr, "a cotuple");
                let left = self.elab_l(a, JudgementClass::Coexpr)?;
                let right = self.elab_l(b, JudgementClass::Coexpr)?;
                let x = merge_uses(&left.x_uses, &right.x_uses);
                let s = merge_uses(&left.s_uses, &right.s_uses);
                Ok(wrap(
                    want,
                    PreKind::Cotuple { left: Box::new(left), right: Box::new(right) },
                    x,
                    s,
                ))
            }
            InjL(a) | InjR(a) => {
                demand!(JudgementClass::Expr, "an injection");
                let body = self.elab_l(a, JudgementClass::Expr)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                let left = matches!(&t.kind, InjL(_));
                Ok(wrap(want, PreKind::Inj { left, body: Box::new(body) }, x, s))
            }
            Pi1(a) | Pi2(a) => {
                demand!(JudgementClass::Coexpr, "a projection");
                let body = self.elab_l(a, JudgementClass::Coexpr)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                let first = matches!(&t.kind, Pi1(_));
                Ok(wrap(want, PreKind::Proj { first, body: Box::new(body) }, x, s))
            }
            Sim(a) => {
                demand!(JudgementClass::Expr, "a negation introduction");
                let body = self.elab_l(a, JudgementClass::Coexpr)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                Ok(wrap(want, PreKind::Sim { body: Box::new(body) }, x, s))
            }
            NotC(a) => {
                demand!(JudgementClass::Coexpr, "a negation cointroduction");
                let body = self.elab_l(a, JudgementClass::Expr)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                Ok(wrap(want, PreKind::NotC { body: Box::new(body) }, x, s))
            }
            DownIntro(a) => {
                demand!(JudgementClass::Expr, "a downshift introduction");
                let body = self.elab_l(a, JudgementClass::Copattern)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                Ok(wrap(want, PreKind::DownIntro { body: Box::new(body) }, x, s))
            }
            UpCointro(a) => {
                demand!(JudgementClass::Coexpr, "an upshift cointroduction");
                let body = self.elab_l(a, JudgementClass::Pattern)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                Ok(wrap(want, PreKind::UpCointro { body: Box::new(body) }, x, s))
            }
            UpAdjIntro(a, ty) => {
                demand!(JudgementClass::Copattern, "an adjoint upshift");
                let body = self.elab_l(a, JudgementClass::Expr)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                Ok(wrap(
                    want,
                    PreKind::UpAdjIntro { ty: ty.clone(), body: Box::new(body) },
                    x,
                    s,
                ))
            }
            DownAdjIntro(a, ty) => {
                demand!(JudgementClass::Pattern, "an adjoint downshift");
                let body = self.elab_l(a, JudgementClass::Coexpr)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                Ok(wrap(
                    want,
                    PreKind::DownAdjIntro { ty: ty.clone(), body: Box::new(body) },
                    x,
                    s,
                ))
            }
            Match(m) => self.match_body(t.span, want, m),
            Comatch(m) => self.comatch_body(t.span, want, m),
            _ => Err(ScopeError::new(
                ScopeCode::ModeError,
                t.span,
                "lambda syntax cannot appear in a System L query",
            )),
        }
    }

    fn mu(
        &mut self,
        span: Span,
        want: JudgementClass,
        kind: MuKind,
        x: &str,
        c: &RawTerm,
    ) -> Result<Pre, ScopeError> {
        if want != kind.class() {
            return Err(ScopeError::new(
                ScopeCode::ModeError,
                span,
                format!(
                    "`{}` forms a {} but a {} is required",
                    kind.as_str(),
                    kind.class().as_str(),
                    want.as_str()
                ),
            ));
        }
        let (side, pol) = kind.binder_class();
        let id = self.bind(x, side, pol, span);
        let cmd = self.elab_l(c, JudgementClass::Command)?;
        self.unbind();
        let mut x_uses = cmd.x_uses.clone();
        let mut s_uses = cmd.s_uses.clone();
        let kept = match side {
            Side::Checkable => strip(&mut x_uses, id),
            Side::Synthesisable => strip(&mut s_uses, id),
        };
        if !kept {
            self.require_binder_drop(side, pol, x, span)?;
        }
        Ok(Pre {
            class: want,
            span,
            x_uses,
            s_uses,
            kind: PreKind::Mu { kind, binder: id, kept, cmd: Box::new(cmd) },
        })
    }

    fn require_binder_drop(
        &self,
        side: Side,
        pol: Polarity,
        name: &str,
        span: Span,
    ) -> Result<(), ScopeError> {
        if self.cfg.structural(side, pol) {
            Ok(())
        } else {
            Err(ScopeError::new(
                ScopeCode::UnusedVariable,
                span,
                format!(
                    "bound variable `{name}` is unused, which the {} preset does not permit",
                    self.cfg.preset
                ),
            ))
        }
    }

    fn one_binder_cmd(
        &mut self,
        span: Span,
        name: &str,
        side: Side,
        pol: Polarity,
        c: &RawTerm,
    ) -> Result<BoundCmd, ScopeError> {
        let id = self.bind(name, side, pol, span);
        let cmd = self.elab_l(c, JudgementClass::Command)?;
        self.unbind();
        let mut x_uses = cmd.x_uses.clone();
        let mut s_uses = cmd.s_uses.clone();
        let kept = match side {
            Side::Checkable => strip(&mut x_uses, id),
            Side::Synthesisable => strip(&mut s_uses, id),
        };
        if !kept {
            self.require_binder_drop(side, pol, name, span)?;
        }
        Ok((id, kept, cmd, x_uses, s_uses))
    }

    fn match_body(
        &mut self,
        span: Span,
        want: JudgementClass,
        m: &MatchBody,
    ) -> Result<Pre, ScopeError> {
        let class = match m {
            MatchBody::DownAdj(..) => JudgementClass::Expr,
            _ => JudgementClass::Pattern,
        };
        if want != class {
            return Err(ScopeError::new(
                ScopeCode::ModeError,
                span,
                format!("this match forms a {} but a {} is required", class.as_str(), want.as_str()),
            ));
        }
        match m {
            MatchBody::Empty => Ok(Pre {
                class,
                span,
                x_uses: vec![],
                s_uses: vec![],
                kind: PreKind::MatchZero,
            }),
            MatchBody::Unit(c) => {
                let cmd = self.elab_l(c, JudgementClass::Command)?;
                let (x, s) = (cmd.x_uses.clone(), cmd.s_uses.clone());
                Ok(Pre { class, span, x_uses: x, s_uses: s, kind: PreKind::MatchUnit { cmd: Box::new(cmd) } })
            }
            MatchBody::Pair(x, y, c) => {
                let xid = self.bind(x, Side::Synthesisable, Polarity::Positive, span);
                let yid = self.bind(y, Side::Synthesisable, Polarity::Positive, span);
                let cmd = self.elab_l(c, JudgementClass::Command)?;
                self.unbind();
                self.unbind();
                let x_uses = cmd.x_uses.clone();
                let mut s_uses = cmd.s_uses.clone();
                let yk = strip(&mut s_uses, yid);
                let xk = strip(&mut s_uses, xid);
                if !xk {
                    self.require_binder_drop(Side::Synthesisable, Polarity::Positive, x, span)?;
                }
                if !yk {
                    self.require_binder_drop(Side::Synthesisable, Polarity::Positive, y, span)?;
                }
                Ok(Pre {
                    class,
                    span,
                    x_uses,
                    s_uses,
                    kind: PreKind::MatchPair { x: xid, xk, y: yid, yk, cmd: Box::new(cmd) },
                })
            }
            MatchBody::Sum { xl, cl, yr, cr } => {
                let (lid, lk, lcmd, lx, ls) =
                    self.one_binder_cmd(span, xl, Side::Synthesisable, Polarity::Positive, cl)?;
                let (rid, rk, rcmd, rx, rs) =
                    self.one_binder_cmd(span, yr, Side::Synthesisable, Polarity::Positive, cr)?;
                let x_uses = merge_uses(&lx, &rx);
                let s_uses = merge_uses(&ls, &rs);
                Ok(Pre {
                    class,
                    span,
                    x_uses,
                    s_uses,
                    kind: PreKind::MatchSum {
                        xl: lid,
                        xlk: lk,
                        cl: Box::new(lcmd),
                        yr: rid,
                        yrk: rk,
                        cr: Box::new(rcmd),
                    },
                })
            }
            MatchBody::Sim(x, c) => {
                let (id, kept, cmd, xs, ss) =
                    self.one_binder_cmd(span, x, Side::Synthesisable, Polarity::Negative, c)?;
                Ok(Pre {
                    class,
                    span,
                    x_uses: xs,
                    s_uses: ss,
                    kind: PreKind::MatchSim { x: id, kept, cmd: Box::new(cmd) },
                })
            }
            MatchBody::Down(x, ty, c) => {
                let (id, kept, cmd, xs, ss) =
                    self.one_binder_cmd(span, x, Side::Checkable, Polarity::Negative, c)?;
                Ok(Pre {
                    class,
                    span,
                    x_uses: xs,
                    s_uses: ss,
                    kind: PreKind::MatchDown { x: id, kept, ty: ty.clone(), cmd: Box::new(cmd) },
                })
            }
            MatchBody::DownAdj(x, c) => {
                if !self.cfg_allows_down_adj() {
                    // Scope admits the form; the checker enforces the preset
                    // gate so the error carries a type-level code.
                }
                let (id, kept, cmd, xs, ss) =
                    self.one_binder_cmd(span, x, Side::Synthesisable, Polarity::Negative, c)?;
                Ok(Pre {
                    class,
                    span,
                    x_uses: xs,
                    s_uses: ss,
                    kind: PreKind::MatchDownAdj { x: id, kept, cmd: Box::new(cmd) },
                })
            }
        }
    }

    fn cfg_allows_down_adj(&self) -> bool {
        self.cfg.allow_down_adjoint
    }

    fn comatch_body(
        &mut self,
        span: Span,
        want: JudgementClass,
        m: &ComatchBody,
    ) -> Result<Pre, ScopeError> {
        let class = match m {
            ComatchBody::UpAdj(..) => JudgementClass::Coexpr,
            _ => JudgementClass::Copattern,
        };
        if want != class {
            return Err(ScopeError::new(
                ScopeCode::ModeError,
                span,
                format!(
                    "this comatch forms a {} but a {} is required",
                    class.as_str(),
                    want.as_str()
                ),
            ));
        }
        match m {
            ComatchBody::Empty => Ok(Pre {
                class,
                span,
                x_uses: vec![],
                s_uses: vec![],
                kind: PreKind::ComatchZero,
            }),
            ComatchBody::Counit(c) => {
                let cmd = self.elab_l(c, JudgementClass::Command)?;
                let (x, s) = (cmd.x_uses.clone(), cmd.s_uses.clone());
                Ok(Pre {
                    class,
                    span,
                    x_uses: x,
                    s_uses: s,
                    kind: PreKind::ComatchCounit { cmd: Box::new(cmd) },
                })
            }
            ComatchBody::Pair(c, x, y) => {
                let xid = self.bind(x, Side::Synthesisable, Polarity::Negative, span);
                let yid = self.bind(y, Side::Synthesisable, Polarity::Negative, span);
                let cmd = self.elab_l(c, JudgementClass::Command)?;
                self.unbind();
                self.unbind();
                let x_uses = cmd.x_uses.clone();
                let mut s_uses = cmd.s_uses.clone();
                let yk = strip(&mut s_uses, yid);
                let xk = strip(&mut s_uses, xid);
                if !xk {
                    self.require_binder_drop(Side::Synthesisable, Polarity::Negative, x, span)?;
                }
                if !yk {
                    self.require_binder_drop(Side::Synthesisable, Polarity::Negative, y, span)?;
                }
                Ok(Pre {
                    class,
                    span,
                    x_uses,
                    s_uses,
                    kind: PreKind::ComatchPair { x: xid, xk, y: yid, yk, cmd: Box::new(cmd) },
                })
            }
            ComatchBody::With { cl, xl, cr, yr } => {
                let (lid, lk, lcmd, lx, ls) =
                    self.one_binder_cmd(span, xl, Side::Synthesisable, Polarity::Negative, cl)?;
                let (rid, rk, rcmd, rx, rs) =
                    self.one_binder_cmd(span, yr, Side::Synthesisable, Polarity::Negative, cr)?;
                let x_uses = merge_uses(&lx, &rx);
                let s_uses = merge_uses(&ls, &rs);
                Ok(Pre {
                    class,
                    span,
                    x_uses,
                    s_uses,
                    kind: PreKind::ComatchWith {
                        xl: lid,
                        xlk: lk,
                        cl: Box::new(lcmd),
                        yr: rid,
                        yrk: rk,
                        cr: Box::new(rcmd),
                    },
                })
            }
            ComatchBody::Not(c, x) => {
                let (id, kept, cmd, xs, ss) =
                    self.one_binder_cmd(span, x, Side::Synthesisable, Polarity::Positive, c)?;
                Ok(Pre {
                    class,
                    span,
                    x_uses: xs,
                    s_uses: ss,
                    kind: PreKind::ComatchNot { x: id, kept, cmd: Box::new(cmd) },
                })
            }
            ComatchBody::Up(c, x, ty) => {
                let (id, kept, cmd, xs, ss) =
                    self.one_binder_cmd(span, x, Side::Checkable, Polarity::Positive, c)?;
                Ok(Pre {
                    class,
                    span,
                    x_uses: xs,
                    s_uses: ss,
                    kind: PreKind::ComatchUp { x: id, kept, ty: ty.clone(), cmd: Box::new(cmd) },
                })
            }
            ComatchBody::UpAdj(c, x) => {
                let (id, kept, cmd, xs, ss) =
                    self.one_binder_cmd(span, x, Side::Synthesisable, Polarity::Positive, c)?;
                Ok(Pre {
                    class,
                    span,
                    x_uses: xs,
                    s_uses: ss,
                    kind: PreKind::ComatchUpAdj { x: id, kept, cmd: Box::new(cmd) },
                })
            }
        }
    }

    // ----- lambda resolution -----

    fn lambda_natural(&self, t: &RawTerm) -> LamMode {
        use RawKind::*;
        let standard = self.calculus == Calculus::Stlc;
        match &t.kind {
            Var(_) => {
                if standard {
                    LamMode::Syn
                } else {
                    LamMode::Chk
                }
            }
            Lam(..) => {
                if standard {
                    LamMode::Chk
                } else {
                    LamMode::Syn
                }
            }
            App(..) => {
                if standard {
                    LamMode::Syn
                } else {
                    LamMode::Chk
                }
            }
            Annot(..) => LamMode::Syn,
            Unit => {
                if standard {
                    LamMode::Chk
                } else {
                    LamMode::Syn
                }
            }
            Pair(..) => {
                if standard {
                    LamMode::Chk
                } else {
                    LamMode::Syn
                }
            }
            Proj1(_) | Proj2(_) => LamMode::Syn,
            Inl(_) | Inr(_) | Case { .. } | Absurd(_) => LamMode::Chk,
            LetUnit { .. } | LetPair { .. } => LamMode::Syn,
            _ => LamMode::Chk, // unreachable: System L forms are rejected earlier
        }
    }

    fn elab_lambda(&mut self, t: &RawTerm, want: LamMode) -> Result<Pre, ScopeError> {
        let natural = self.lambda_natural(t);
        if natural == LamMode::Syn && want == LamMode::Chk {
            let body = self.elab_lambda(t, LamMode::Syn)?;
            let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
            return Ok(Pre {
                class: JudgementClass::Chk,
                span: t.span,
                x_uses: x,
                s_uses: s,
                kind: PreKind::Emb { body: Box::new(body) },
            });
        }
        if natural == LamMode::Chk && want == LamMode::Syn {
            return Err(ScopeError::new(
                ScopeCode::ModeError,
                t.span,
                "checkable term in synthesising position requires an annotation",
            ));
        }
        let class = if want == LamMode::Chk { JudgementClass::Chk } else { JudgementClass::Syn };
        let side = self.calculus.lambda_side();
        let uses_of = |id: VarId| match side {
            Side::Checkable => (vec![id], vec![]),
            Side::Synthesisable => (vec![], vec![id]),
        };
        use RawKind::*;
        match &t.kind {
            Var(n) => {
                let id = self.resolve(n, side, Polarity::Unpolarised, t.span)?;
                let (x, s) = uses_of(id);
                Ok(Pre { class, span: t.span, x_uses: x, s_uses: s, kind: PreKind::Var(id) })
            }
            Lam(x, b) => {
                let id = self.bind(x, side, Polarity::Unpolarised, t.span);
                // Standard lambda bodies are checkable; cocontextual ones
                // synthesise.
                let bw = if self.calculus == Calculus::Stlc { LamMode::Chk } else { LamMode::Syn };
                let body = self.elab_lambda(b, bw)?;
                self.unbind();
                let mut xs = body.x_uses.clone();
                let mut ss = body.s_uses.clone();
                let kept = match side {
                    Side::Checkable => strip(&mut xs, id),
                    Side::Synthesisable => strip(&mut ss, id),
                };
                if !kept {
                    self.require_binder_drop(side, Polarity::Unpolarised, x, t.span)?;
                }
                Ok(Pre {
                    class,
                    span: t.span,
                    x_uses: xs,
                    s_uses: ss,
                    kind: PreKind::Lam { binder: id, kept, body: Box::new(body) },
                })
            }
            App(f, a) => {
                let (fw, aw) = if self.calculus == Calculus::Stlc {
                    (LamMode::Syn, LamMode::Chk)
                } else {
                    (LamMode::Chk, LamMode::Syn)
                };
                let fun = self.elab_lambda(f, fw)?;
                let arg = self.elab_lambda(a, aw)?;
                let x = merge_uses(&fun.x_uses, &arg.x_uses);
                let s = merge_uses(&fun.s_uses, &arg.s_uses);
                Ok(Pre {
                    class,
                    span: t.span,
                    x_uses: x,
                    s_uses: s,
                    kind: PreKind::App { fun: Box::new(fun), arg: Box::new(arg) },
                })
            }
            Annot(b, ty) => {
                let body = self.elab_lambda(b, LamMode::Chk)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                Ok(Pre {
                    class,
                    span: t.span,
                    x_uses: x,
                    s_uses: s,
                    kind: PreKind::Annot { ty: ty.clone(), body: Box::new(body) },
                })
            }
            Unit => Ok(Pre { class, span: t.span, x_uses: vec![], s_uses: vec![], kind: PreKind::Unit }),
            Pair(a, b) => {
                let cw = if self.calculus == Calculus::Stlc { LamMode::Chk } else { LamMode::Syn };
                let left = self.elab_lambda(a, cw)?;
                let right = self.elab_lambda(b, cw)?;
                let x = merge_uses(&left.x_uses, &right.x_uses);
                let s = merge_uses(&left.s_uses, &right.s_uses);
                Ok(Pre {
                    class,
                    span: t.span,
                    x_uses: x,
                    s_uses: s,
                    kind: PreKind::Pair { left: Box::new(left), right: Box::new(right) },
                })
            }
            Proj1(a) | Proj2(a) => {
                let body = self.elab_lambda(a, LamMode::Syn)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                let first = matches!(&t.kind, Proj1(_));
                Ok(Pre {
                    class,
                    span: t.span,
                    x_uses: x,
                    s_uses: s,
                    kind: PreKind::Proj { first, body: Box::new(body) },
                })
            }
            Inl(a) | Inr(a) => {
                let body = self.elab_lambda(a, LamMode::Chk)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                let left = matches!(&t.kind, Inl(_));
                Ok(Pre {
                    class,
                    span: t.span,
                    x_uses: x,
                    s_uses: s,
                    kind: PreKind::Inj { left, body: Box::new(body) },
                })
            }
            Absurd(a) => {
                let body = self.elab_lambda(a, LamMode::Chk)?;
                let (x, s) = (body.x_uses.clone(), body.s_uses.clone());
                Ok(Pre {
                    class,
                    span: t.span,
                    x_uses: x,
                    s_uses: s,
                    kind: PreKind::Absurd { body: Box::new(body) },
                })
            }
            Case { scrut, left_bind, left, right_bind, right } => {
                let sc = self.elab_lambda(scrut, LamMode::Syn)?;
                let lb = self.bind(left_bind, side, Polarity::Unpolarised, t.span);
                let l = self.elab_lambda(left, LamMode::Chk)?;
                self.unbind();
                let rb = self.bind(right_bind, side, Polarity::Unpolarised, t.span);
                let r = self.elab_lambda(right, LamMode::Chk)?;
                self.unbind();
                let mut lxs = l.x_uses.clone();
                let lkept = strip(&mut lxs, lb);
                let mut rxs = r.x_uses.clone();
                let rkept = strip(&mut rxs, rb);
                if !lkept {
                    self.require_binder_drop(side, Polarity::Unpolarised, left_bind, t.span)?;
                }
                if !rkept {
                    self.require_binder_drop(side, Polarity::Unpolarised, right_bind, t.span)?;
                }
                let x = merge_uses(&sc.x_uses, &merge_uses(&lxs, &rxs));
                Ok(Pre {
                    class,
                    span: t.span,
                    x_uses: x,
                    s_uses: vec![],
                    kind: PreKind::Case {
                        scrut: Box::new(sc),
                        lb,
                        lkept,
                        left: Box::new(l),
                        rb,
                        rkept,
                        right: Box::new(r),
                    },
                })
            }
            LetUnit { scrut, body } => {
                let sc = self.elab_lambda(scrut, LamMode::Chk)?;
                let b = self.elab_lambda(body, LamMode::Syn)?;
                let x = merge_uses(&sc.x_uses, &b.x_uses);
                let s = merge_uses(&sc.s_uses, &b.s_uses);
                Ok(Pre {
                    class,
                    span: t.span,
                    x_uses: x,
                    s_uses: s,
                    kind: PreKind::LetUnit { scrut: Box::new(sc), body: Box::new(b) },
                })
            }
            LetPair { x, y, scrut, body } => {
                let sc = self.elab_lambda(scrut, LamMode::Chk)?;
                let xid = self.bind(x, side, Polarity::Unpolarised, t.span);
                let yid = self.bind(y, side, Polarity::Unpolarised, t.span);
                let b = self.elab_lambda(body, LamMode::Syn)?;
                self.unbind();
                self.unbind();
                let mut ss = b.s_uses.clone();
                let yk = strip(&mut ss, yid);
                let xk = strip(&mut ss, xid);
                if !xk {
                    self.require_binder_drop(side, Polarity::Unpolarised, x, t.span)?;
                }
                if !yk {
                    self.require_binder_drop(side, Polarity::Unpolarised, y, t.span)?;
                }
                let s = merge_uses(&sc.s_uses, &ss);
                Ok(Pre {
                    class,
                    span: t.span,
                    x_uses: vec![],
                    s_uses: s,
                    kind: PreKind::LetPair {
                        x: xid,
                        xk,
                        y: yid,
                        yk,
                        scrut: Box::new(sc),
                        body: Box::new(b),
                    },
                })
            }
            _ => Err(ScopeError::new(
                ScopeCode::ModeError,
                t.span,
                "System L syntax cannot appear in a lambda query",
            )),
        }
    }

    // ----- context assignment -----

    fn scoped_of(&self, ids: &[VarId]) -> ScopedCtx {
        ids.iter().map(|&id| self.entry(id)).collect()
    }

    /// Builds the cover splitting `ord` into the left and right usage sets,
    /// checking copy legality, and returns the projected child orders.
    fn split(
        &self,
        ord: &[VarId],
        lu: &[VarId],
        ru: &[VarId],
        side: Side,
        span: Span,
    ) -> Result<(Cover, Vec<VarId>, Vec<VarId>), ScopeError> {
        let mut cover = Cover::default();
        let mut lo = Vec::new();
        let mut ro = Vec::new();
        for &id in ord {
            let inl = lu.binary_search(&id).is_ok();
            let inr = ru.binary_search(&id).is_ok();
            match (inl, inr) {
                (true, false) => {
                    cover.0.push(CoverStep::Left);
                    lo.push(id);
                }
                (false, true) => {
                    cover.0.push(CoverStep::Right);
                    ro.push(id);
                }
                (true, true) => {
                    let v = &self.vars[id];
                    let pol = v.pol.expect("polarity resolved");
                    if !self.cfg.structural(side, pol) {
                        return Err(ScopeError::new(
                            ScopeCode::DuplicatedVariable,
                            span,
                            format!(
                                "variable `{}` is used more than once, which the {} preset does not permit",
                                v.name, self.cfg.preset
                            ),
                        ));
                    }
                    cover.0.push(CoverStep::Both);
                    lo.push(id);
                    ro.push(id);
                }
                (false, false) => unreachable!("context entry outside both children"),
            }
        }
        Ok((cover, lo, ro))
    }

    /// Thinning over `ord ++ binders` where every inherited entry is kept.
    fn binder_thin(&self, ord_len: usize, binders: &[bool]) -> Thinning {
        let mut t = Thinning(vec![ThinStep::Keep; ord_len]);
        for &k in binders {
            t.0.push(if k { ThinStep::Keep } else { ThinStep::Drop });
        }
        t
    }

    /// Thinning over shared `ord ++ [binder]` for one branch of a two-branch
    /// (co)match: inherited entries are dropped when the branch does not use
    /// them, which needs the structural rule for their class.
    fn shared_thin(
        &self,
        ord: &[VarId],
        uses: &[VarId],
        binder_kept: bool,
        span: Span,
    ) -> Result<(Thinning, Vec<VarId>), ScopeError> {
        let mut t = Thinning::default();
        let mut kept = Vec::new();
        for &id in ord {
            if uses.binary_search(&id).is_ok() {
                t.0.push(ThinStep::Keep);
                kept.push(id);
            } else {
                let v = &self.vars[id];
                let pol = v.pol.expect("polarity resolved");
                if !self.cfg.structural(Side::Synthesisable, pol) {
                    return Err(ScopeError::new(
                        ScopeCode::UnusedVariable,
                        span,
                        format!(
                            "variable `{}` is not used in this branch, which the {} preset does not permit",
                            v.name, self.cfg.preset
                        ),
                    ));
                }
                t.0.push(ThinStep::Drop);
            }
        }
        t.0.push(if binder_kept { ThinStep::Keep } else { ThinStep::Drop });
        Ok((t, kept))
    }

    fn assign(&self, pre: Pre, x_ord: &[VarId], s_ord: &[VarId]) -> Result<Scoped, ScopeError> {
        let Pre { class, span, kind, .. } = pre;
        let x_scope = self.scoped_of(x_ord);
        let s_scope = self.scoped_of(s_ord);
        let side = self.calculus.lambda_side();
        let (lam_ord, is_x) = match side {
            Side::Checkable => (x_ord, true),
            Side::Synthesisable => (s_ord, false),
        };
        let mk = |kind| Scoped { class, span, x_scope: x_scope.clone(), s_scope: s_scope.clone(), kind };

        // Projects the lambda-side order into child x/s orders.
        let lam_child = |ord: Vec<VarId>| -> (Vec<VarId>, Vec<VarId>) {
            if is_x {
                (ord, Vec::new())
            } else {
                (Vec::new(), ord)
            }
        };

        let kind = match kind {
            PreKind::Var(id) => ScopedKind::Var(self.vars[id].name.clone()),
            PreKind::Unit => ScopedKind::Unit,
            PreKind::UnitI => ScopedKind::UnitI,
            PreKind::CounitBot => ScopedKind::CounitBot,
            PreKind::MatchZero => ScopedKind::MatchZero,
            PreKind::ComatchZero => ScopedKind::ComatchZero,
            PreKind::Emb { body } => {
                let b = self.assign(*body, x_ord, s_ord)?;
                ScopedKind::Emb { body: Box::new(b) }
            }
            PreKind::Annot { ty, body } => {
                let b = self.assign(*body, x_ord, s_ord)?;
                ScopedKind::Annot { ty, body: Box::new(b) }
            }
            PreKind::Lam { binder, kept, body } => {
                let thin = self.binder_thin(lam_ord.len(), &[kept]);
                let mut child = lam_ord.to_vec();
                if kept {
                    child.push(binder);
                }
                let (cx, cs) = lam_child(child);
                let b = self.assign(*body, &cx, &cs)?;
                ScopedKind::Lam { binder: self.vars[binder].name.clone(), thin, body: Box::new(b) }
            }
            PreKind::App { fun, arg } => {
                let (cover, lo, ro) = self.split(lam_ord, &fun.x_or_s(is_x), &arg.x_or_s(is_x), side, span)?;
                let (lx, ls) = lam_child(lo);
                let (rx, rs) = lam_child(ro);
                let f = self.assign(*fun, &lx, &ls)?;
                let a = self.assign(*arg, &rx, &rs)?;
                ScopedKind::App { cover, fun: Box::new(f), arg: Box::new(a) }
            }
            PreKind::Pair { left, right } => {
                let (cover, lo, ro) =
                    self.split(lam_ord, &left.x_or_s(is_x), &right.x_or_s(is_x), side, span)?;
                let (lx, ls) = lam_child(lo);
                let (rx, rs) = lam_child(ro);
                let l = self.assign(*left, &lx, &ls)?;
                let r = self.assign(*right, &rx, &rs)?;
                ScopedKind::Pair { cover, left: Box::new(l), right: Box::new(r) }
            }
            PreKind::Proj { first, body } => {
                let b = self.assign(*body, x_ord, s_ord)?;
                ScopedKind::Proj { first, body: Box::new(b) }
            }
            PreKind::Inj { left, body } => {
                let b = self.assign(*body, x_ord, s_ord)?;
                ScopedKind::Inj { left, body: Box::new(b) }
            }
            PreKind::Absurd { body } => {
                let b = self.assign(*body, x_ord, s_ord)?;
                ScopedKind::Absurd { body: Box::new(b) }
            }
            PreKind::Case { scrut, lb, lkept, left, rb, rkept, right } => {
                let mut lu = left.x_or_s(is_x);
                strip(&mut lu, lb);
                let mut ru = right.x_or_s(is_x);
                strip(&mut ru, rb);
                let branches = merge_uses(&lu, &ru);
                let (cover, so, bo) =
                    self.split(lam_ord, &scrut.x_or_s(is_x), &branches, side, span)?;
                let (branch_cover, lo, ro) = self.split(&bo, &lu, &ru, side, span)?;
                let thin_l = self.binder_thin(lo.len(), &[lkept]);
                let thin_r = self.binder_thin(ro.len(), &[rkept]);
                let (sx, ss) = lam_child(so);
                let sc = self.assign(*scrut, &sx, &ss)?;
                let mut lchild = lo;
                if lkept {
                    lchild.push(lb);
                }
                let (lx, ls) = lam_child(lchild);
                let l = self.assign(*left, &lx, &ls)?;
                let mut rchild = ro;
                if rkept {
                    rchild.push(rb);
                }
                let (rx, rs) = lam_child(rchild);
                let r = self.assign(*right, &rx, &rs)?;
                ScopedKind::Case {
                    cover,
                    branch_cover,
                    scrut: Box::new(sc),
                    left_bind: self.vars[lb].name.clone(),
                    thin_l,
                    left: Box::new(l),
                    right_bind: self.vars[rb].name.clone(),
                    thin_r,
                    right: Box::new(r),
                }
            }
            PreKind::LetUnit { scrut, body } => {
                let (cover, so, bo) =
                    self.split(lam_ord, &scrut.x_or_s(is_x), &body.x_or_s(is_x), side, span)?;
                let (sx, ss) = lam_child(so);
                let sc = self.assign(*scrut, &sx, &ss)?;
                let (bx, bs) = lam_child(bo);
                let b = self.assign(*body, &bx, &bs)?;
                ScopedKind::LetUnit { cover, scrut: Box::new(sc), body: Box::new(b) }
            }
            PreKind::LetPair { x, xk, y, yk, scrut, body } => {
                let mut bu = body.x_or_s(is_x);
                strip(&mut bu, x);
                strip(&mut bu, y);
                let (cover, so, bo) = self.split(lam_ord, &scrut.x_or_s(is_x), &bu, side, span)?;
                let thin = self.binder_thin(bo.len(), &[xk, yk]);
                let (sx, ss) = lam_child(so);
                let sc = self.assign(*scrut, &sx, &ss)?;
                let mut child = bo;
                if xk {
                    child.push(x);
                }
                if yk {
                    child.push(y);
                }
                let (bx, bs) = lam_child(child);
                let b = self.assign(*body, &bx, &bs)?;
                ScopedKind::LetPair {
                    cover,
                    x: self.vars[x].name.clone(),
                    y: self.vars[y].name.clone(),
                    thin,
                    scrut: Box::new(sc),
                    body: Box::new(b),
                }
            }
            PreKind::Cut { polarity, left, right } => {
                let (cover_x, lxo, rxo) =
                    self.split(x_ord, &left.x_uses, &right.x_uses, Side::Checkable, span)?;
                let (cover_s, lso, rso) =
                    self.split(s_ord, &left.s_uses, &right.s_uses, Side::Synthesisable, span)?;
                let l = self.assign(*left, &lxo, &lso)?;
                let r = self.assign(*right, &rxo, &rso)?;
                ScopedKind::Cut { polarity, cover_x, cover_s, left: Box::new(l), right: Box::new(r) }
            }
            PreKind::Tuple { left, right } | PreKind::Cotuple { left, right } => {
                let cot = class == JudgementClass::Coexpr;
                let (cover_x, lxo, rxo) =
                    self.split(x_ord, &left.x_uses, &right.x_uses, Side::Checkable, span)?;
                let (cover_s, lso, rso) =
                    self.split(s_ord, &left.s_uses, &right.s_uses, Side::Synthesisable, span)?;
                let l = self.assign(*left, &lxo, &lso)?;
                let r = self.assign(*right, &rxo, &rso)?;
                if cot {
                    ScopedKind::Cotuple { cover_x, cover_s, left: Box::new(l), right: Box::new(r) }
                } else {
                    ScopedKind::Tuple { cover_x, cover_s, left: Box::new(l), right: Box::new(r) }
                }
            }
            PreKind::Mu { kind, binder, kept, cmd } => {
                let (bside, _) = kind.binder_class();
                let (thin, cx, cs) = match bside {
                    Side::Checkable => {
                        let thin = self.binder_thin(x_ord.len(), &[kept]);
                        let mut child = x_ord.to_vec();
                        if kept {
                            child.push(binder);
                        }
                        (thin, child, s_ord.to_vec())
                    }
                    Side::Synthesisable => {
                        let thin = self.binder_thin(s_ord.len(), &[kept]);
                        let mut child = s_ord.to_vec();
                        if kept {
                            child.push(binder);
                        }
                        (thin, x_ord.to_vec(), child)
                    }
                };
                let c = self.assign(*cmd, &cx, &cs)?;
                ScopedKind::Mu {
                    kind,
                    binder: self.vars[binder].name.clone(),
                    thin,
                    cmd: Box::new(c),
                }
            }
            PreKind::Sim { body } => {
                ScopedKind::Sim { body: Box::new(self.assign(*body, x_ord, s_ord)?) }
            }
            PreKind::NotC { body } => {
                ScopedKind::NotC { body: Box::new(self.assign(*body, x_ord, s_ord)?) }
            }
            PreKind::DownIntro { body } => {
                ScopedKind::DownIntro { body: Box::new(self.assign(*body, x_ord, s_ord)?) }
            }
            PreKind::UpCointro { body } => {
                ScopedKind::UpCointro { body: Box::new(self.assign(*body, x_ord, s_ord)?) }
            }
            PreKind::UpAdjIntro { ty, body } => {
                ScopedKind::UpAdjIntro { ty, body: Box::new(self.assign(*body, x_ord, s_ord)?) }
            }
            PreKind::DownAdjIntro { ty, body } => {
                ScopedKind::DownAdjIntro { ty, body: Box::new(self.assign(*body, x_ord, s_ord)?) }
            }
            PreKind::MatchUnit { cmd } => {
                ScopedKind::MatchUnit { cmd: Box::new(self.assign(*cmd, x_ord, s_ord)?) }
            }
            PreKind::ComatchCounit { cmd } => {
                ScopedKind::ComatchCounit { cmd: Box::new(self.assign(*cmd, x_ord, s_ord)?) }
            }
            PreKind::MatchPair { x, xk, y, yk, cmd } | PreKind::ComatchPair { x, xk, y, yk, cmd } => {
                let com = class == JudgementClass::Copattern;
                let thin = self.binder_thin(s_ord.len(), &[xk, yk]);
                let mut child = s_ord.to_vec();
                if xk {
                    child.push(x);
                }
                if yk {
                    child.push(y);
                }
                let c = self.assign(*cmd, x_ord, &child)?;
                let (xn, yn) = (self.vars[x].name.clone(), self.vars[y].name.clone());
                if com {
                    ScopedKind::ComatchPair { x: xn, y: yn, thin, cmd: Box::new(c) }
                } else {
                    ScopedKind::MatchPair { x: xn, y: yn, thin, cmd: Box::new(c) }
                }
            }
            PreKind::MatchSim { x, kept, cmd } => {
                let thin = self.binder_thin(s_ord.len(), &[kept]);
                let mut child = s_ord.to_vec();
                if kept {
                    child.push(x);
                }
                let c = self.assign(*cmd, x_ord, &child)?;
                ScopedKind::MatchSim { x: self.vars[x].name.clone(), thin, cmd: Box::new(c) }
            }
            PreKind::ComatchNot { x, kept, cmd } => {
                let thin = self.binder_thin(s_ord.len(), &[kept]);
                let mut child = s_ord.to_vec();
                if kept {
                    child.push(x);
                }
                let c = self.assign(*cmd, x_ord, &child)?;
                ScopedKind::ComatchNot { x: self.vars[x].name.clone(), thin, cmd: Box::new(c) }
            }
            PreKind::MatchDownAdj { x, kept, cmd } => {
                let thin = self.binder_thin(s_ord.len(), &[kept]);
                let mut child = s_ord.to_vec();
                if kept {
                    child.push(x);
                }
                let c = self.assign(*cmd, x_ord, &child)?;
                ScopedKind::MatchDownAdj { x: self.vars[x].name.clone(), thin, cmd: Box::new(c) }
            }
            PreKind::ComatchUpAdj { x, kept, cmd } => {
                let thin = self.binder_thin(s_ord.len(), &[kept]);
                let mut child = s_ord.to_vec();
                if kept {
                    child.push(x);
                }
                let c = self.assign(*cmd, x_ord, &child)?;
                ScopedKind::ComatchUpAdj { x: self.vars[x].name.clone(), thin, cmd: Box::new(c) }
            }
            PreKind::MatchDown { x, kept, ty, cmd } => {
                let thin = self.binder_thin(x_ord.len(), &[kept]);
                let mut child = x_ord.to_vec();
                if kept {
                    child.push(x);
                }
                let c = self.assign(*cmd, &child, s_ord)?;
                ScopedKind::MatchDown { x: self.vars[x].name.clone(), ty, thin, cmd: Box::new(c) }
            }
            PreKind::ComatchUp { x, kept, ty, cmd } => {
                let thin = self.binder_thin(x_ord.len(), &[kept]);
                let mut child = x_ord.to_vec();
                if kept {
                    child.push(x);
                }
                let c = self.assign(*cmd, &child, s_ord)?;
                ScopedKind::ComatchUp { x: self.vars[x].name.clone(), ty, thin, cmd: Box::new(c) }
            }
            PreKind::MatchSum { xl, xlk, cl, yr, yrk, cr } | PreKind::ComatchWith { xl, xlk, cl, yr, yrk, cr } => {
                let with = class == JudgementClass::Copattern;
                let (cover_x, lxo, rxo) =
                    self.split(x_ord, &cl.x_uses, &cr.x_uses, Side::Checkable, span)?;
                let mut lsu = cl.s_uses.clone();
                strip(&mut lsu, xl);
                let mut rsu = cr.s_uses.clone();
                strip(&mut rsu, yr);
                let (thin_l, mut lso) = self.shared_thin(s_ord, &lsu, xlk, span)?;
                if xlk {
                    lso.push(xl);
                }
                let (thin_r, mut rso) = self.shared_thin(s_ord, &rsu, yrk, span)?;
                if yrk {
                    rso.push(yr);
                }
                let l = self.assign(*cl, &lxo, &lso)?;
                let r = self.assign(*cr, &rxo, &rso)?;
                let (xn, yn) = (self.vars[xl].name.clone(), self.vars[yr].name.clone());
                if with {
                    ScopedKind::ComatchWith {
                        cover_x,
                        xl: xn,
                        thin_l,
                        cl: Box::new(l),
                        yr: yn,
                        thin_r,
                        cr: Box::new(r),
                    }
                } else {
                    ScopedKind::MatchSum {
                        cover_x,
                        xl: xn,
                        thin_l,
                        cl: Box::new(l),
                        yr: yn,
                        thin_r,
                        cr: Box::new(r),
                    }
                }
            }
        };
        Ok(mk(kind))
    }
}

impl Pre {
    fn x_or_s(&self, x: bool) -> Vec<VarId> {
        if x {
            self.x_uses.clone()
        } else {
            self.s_uses.clone()
        }
    }
}

fn merge_uses(a: &[VarId], b: &[VarId]) -> Vec<VarId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn strip(uses: &mut Vec<VarId>, id: VarId) -> bool {
    match uses.binary_search(&id) {
        Ok(i) => {
            uses.remove(i);
            true
        }
        Err(_) => false,
    }
}
