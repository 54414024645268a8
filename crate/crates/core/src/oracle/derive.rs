//! Declarative, annotation-blind derivation by exhaustive relational search.
//!
//! This is the independent ground truth the bidirectional checkers are
//! verified against. The rules are read non-directionally: checkable nodes
//! map a demanded type to the set of synthesisable-context assignments that
//! derive it, synthesisable nodes enumerate every (type, assignment) pair.
//! Annotation payloads do not steer the search; they filter it, and an
//! annotation outside the universe makes its judgements underivable, which
//! is indistinguishable from a genuinely underivable term.

use std::collections::{BTreeSet, HashMap};

use crate::kernel::config::StructConfig;
use crate::kernel::ctx::{TypedCtx, TypedEntry};
use crate::kernel::cover::{Cover, CoverStep, ThinStep, Thinning};
use crate::kernel::order::{meet, subtype};
use crate::kernel::ty::{top_of, Polarity, TypeExpr};
use crate::scope::{Calculus, MuKind, Query, Scoped, ScopedKind};
use crate::surface::ast::QueryKind;

use super::enumerate::TypeUniverse;

/// One derivable judgement: the focus (checked or synthesised) type, when
/// the judgement class has one, and the synthesised typed context over the
/// query's synthesisable scope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Judgement {
    pub ty: Option<TypeExpr>,
    pub sigma: TypedCtx,
}

pub type JudgementSet = BTreeSet<Judgement>;

/// Positional context assignment over a node's synthesisable scope.
type Sig = Vec<TypeExpr>;
type SigSet = BTreeSet<Sig>;
type TySigSet = BTreeSet<(TypeExpr, Sig)>;

pub struct Oracle<'a> {
    u: &'a TypeUniverse,
    cfg: StructConfig,
    calculus: Calculus,
    chk_memo: HashMap<(usize, Vec<TypeExpr>, TypeExpr), SigSet>,
    syn_memo: HashMap<(usize, Vec<TypeExpr>), TySigSet>,
    cmd_memo: HashMap<(usize, Vec<TypeExpr>), SigSet>,
}

impl<'a> Oracle<'a> {
    pub fn new(u: &'a TypeUniverse, cfg: &StructConfig, calculus: Calculus) -> Self {
        Oracle {
            u,
            cfg: *cfg,
            calculus,
            chk_memo: HashMap::new(),
            syn_memo: HashMap::new(),
            cmd_memo: HashMap::new(),
        }
    }

    /// The set of judgements derivable for the query's fixed inputs. For
    /// checkable kinds the query type restricts the set; synthesisable kinds
    /// enumerate every derivable focus.
    pub fn derive_query(&mut self, q: &Query) -> JudgementSet {
        let mut out = JudgementSet::new();
        match self.calculus {
            Calculus::Stlc => {
                match q.kind {
                    QueryKind::LambdaCheck => {
                        let ty = q.ty.as_ref().expect("checked query");
                        if self.std_chk(&q.x_typed, ty, &q.term) {
                            out.insert(Judgement { ty: Some(ty.clone()), sigma: TypedCtx::new() });
                        }
                    }
                    QueryKind::LambdaSynth => {
                        for t in self.std_syn(&q.x_typed, &q.term) {
                            out.insert(Judgement { ty: Some(t), sigma: TypedCtx::new() });
                        }
                    }
                    _ => unreachable!("standard lambda query"),
                }
                out
            }
            Calculus::Lin | Calculus::Cdb => {
                let sets: Vec<(Option<TypeExpr>, Sig)> = match q.kind {
                    QueryKind::LambdaCheck => {
                        let ty = q.ty.as_ref().expect("checked query");
                        self.coc_chk(&q.term, ty)
                            .into_iter()
                            .map(|s| (Some(ty.clone()), s))
                            .collect()
                    }
                    QueryKind::LambdaSynth => self
                        .coc_syn(&q.term)
                        .into_iter()
                        .map(|(t, s)| (Some(t), s))
                        .collect(),
                    _ => unreachable!("cocontextual lambda query"),
                };
                self.package(q, sets)
            }
            _ => {
                let x_used = q.thin_x.restrict_typed(&q.x_typed).expect("root thinning");
                let sets: Vec<(Option<TypeExpr>, Sig)> = match q.kind {
                    QueryKind::Command => self
                        .l_cmd(&q.term, &x_used)
                        .into_iter()
                        .map(|s| (None, s))
                        .collect(),
                    QueryKind::Expr | QueryKind::Coexpr => {
                        let ty = q.ty.as_ref().expect("checked query type");
                        self.l_chk(&q.term, &x_used, ty)
                            .into_iter()
                            .map(|s| (Some(ty.clone()), s))
                            .collect()
                    }
                    QueryKind::Pattern | QueryKind::Copattern => self
                        .l_syn(&q.term, &x_used)
                        .into_iter()
                        .map(|(t, s)| (Some(t), s))
                        .collect(),
                    _ => unreachable!("System L query"),
                };
                self.package(q, sets)
            }
        }
    }

    /// Extends each assignment over the query's full synthesisable scope
    /// along the root thinning and packages it as a typed context.
    fn package(&self, q: &Query, sets: Vec<(Option<TypeExpr>, Sig)>) -> JudgementSet {
        let mut out = JudgementSet::new();
        for (ty, sig) in sets {
            let kept: TypedCtx = q
                .term
                .s_scope
                .iter()
                .zip(sig.iter())
                .map(|(e, t)| TypedEntry::new(e.name.clone(), t.clone()))
                .collect();
            let sigma = q.thin_s.extend_typed(&kept, &q.s_scope).expect("root thinning");
            out.insert(Judgement { ty, sigma });
        }
        out
    }

    fn fits(&self, t: &TypeExpr) -> bool {
        self.u.fits(t)
    }

    // ----- standard lambda -----

    fn std_chk(&mut self, ctx: &TypedCtx, ty: &TypeExpr, t: &Scoped) -> bool {
        match &t.kind {
            ScopedKind::Lam { binder, body, .. } => match ty {
                TypeExpr::Arrow(a, b) => {
                    let mut ext = ctx.clone();
                    ext.push(TypedEntry::new(binder.clone(), (**a).clone()));
                    self.std_chk(&ext, b, body)
                }
                _ => false,
            },
            ScopedKind::Emb { body } => self
                .std_syn(ctx, body)
                .iter()
                .any(|b| subtype(ty, b).unwrap_or(false)),
            ScopedKind::Unit => *ty == TypeExpr::Unit,
            ScopedKind::Pair { left, right, .. } => match ty {
                TypeExpr::Prod(a, b) => {
                    self.std_chk(ctx, a, left) && self.std_chk(ctx, b, right)
                }
                _ => false,
            },
            ScopedKind::Inj { left, body } => match ty {
                TypeExpr::Sum(a, b) => self.std_chk(ctx, if *left { a } else { b }, body),
                _ => false,
            },
            ScopedKind::Absurd { body } => self.std_chk(ctx, &TypeExpr::Empty, body),
            ScopedKind::Case { scrut, left_bind, left, right_bind, right, .. } => {
                self.std_syn(ctx, scrut).into_iter().any(|s| match s {
                    TypeExpr::Sum(a, b) => {
                        let mut l = ctx.clone();
                        l.push(TypedEntry::new(left_bind.clone(), *a));
                        let mut r = ctx.clone();
                        r.push(TypedEntry::new(right_bind.clone(), *b));
                        self.std_chk(&l, ty, left) && self.std_chk(&r, ty, right)
                    }
                    _ => false,
                })
            }
            _ => unreachable!("checkable standard node"),
        }
    }

    fn std_syn(&mut self, ctx: &TypedCtx, t: &Scoped) -> BTreeSet<TypeExpr> {
        let mut out = BTreeSet::new();
        match &t.kind {
            ScopedKind::Var(n) => {
                if let Some(e) = ctx.lookup(n) {
                    out.insert(e.ty.clone());
                }
            }
            ScopedKind::Annot { ty, body } => {
                if self.fits(ty) && self.std_chk(ctx, ty, body) {
                    out.insert(ty.clone());
                }
            }
            ScopedKind::App { fun, arg, .. } => {
                for f in self.std_syn(ctx, fun) {
                    if let TypeExpr::Arrow(a, b) = f {
                        if self.std_chk(ctx, &a, arg) {
                            out.insert(*b);
                        }
                    }
                }
            }
            ScopedKind::Proj { first, body } => {
                for s in self.std_syn(ctx, body) {
                    if let TypeExpr::Prod(a, b) = s {
                        out.insert(if *first { *a } else { *b });
                    }
                }
            }
            _ => unreachable!("synthesisable standard node"),
        }
        out
    }

    // ----- cocontextual lambda -----

    fn fun_of(&self, dom: TypeExpr, cod: TypeExpr) -> TypeExpr {
        match self.calculus {
            Calculus::Lin => TypeExpr::Lolli(Box::new(dom), Box::new(cod)),
            _ => TypeExpr::Arrow(Box::new(dom), Box::new(cod)),
        }
    }

    fn coc_chk(&mut self, t: &Scoped, ty: &TypeExpr) -> SigSet {
        let key = (t as *const Scoped as usize, Vec::new(), ty.clone());
        if let Some(s) = self.chk_memo.get(&key) {
            return s.clone();
        }
        let mut out = SigSet::new();
        match &t.kind {
            ScopedKind::Var(_) => {
                out.insert(vec![ty.clone()]);
            }
            ScopedKind::Emb { body } => {
                for (b, s) in self.coc_syn(body) {
                    if subtype(ty, &b).unwrap_or(false) {
                        out.insert(s);
                    }
                }
            }
            ScopedKind::App { cover, fun, arg } => {
                for (a, s2) in self.coc_syn(arg) {
                    let want = self.fun_of(a, ty.clone());
                    for s1 in self.coc_chk(fun, &want) {
                        if let Some(s) = merge_sig(cover, &s1, &s2) {
                            out.insert(s);
                        }
                    }
                }
            }
            _ => unreachable!("checkable cocontextual node"),
        }
        self.chk_memo.insert(key, out.clone());
        out
    }

    fn coc_syn(&mut self, t: &Scoped) -> TySigSet {
        let key = (t as *const Scoped as usize, Vec::new());
        if let Some(s) = self.syn_memo.get(&key) {
            return s.clone();
        }
        let mut out = TySigSet::new();
        match &t.kind {
            ScopedKind::Lam { thin, body, .. } => {
                for (b, mut s) in self.coc_syn(body) {
                    let dom = pop_sig(&mut s, thin, 0, Polarity::Unpolarised);
                    out.insert((self.fun_of(dom, b), s));
                }
            }
            ScopedKind::Annot { ty, body } => {
                if self.fits(ty) {
                    for s in self.coc_chk(body, ty) {
                        out.insert((ty.clone(), s));
                    }
                }
            }
            ScopedKind::Unit => {
                out.insert((TypeExpr::Unit, Vec::new()));
            }
            ScopedKind::Pair { cover, left, right } => {
                for (a, s1) in self.coc_syn(left) {
                    for (b, s2) in self.coc_syn(right) {
                        if let Some(s) = merge_sig(cover, &s1, &s2) {
                            out.insert((
                                TypeExpr::Prod(Box::new(a.clone()), Box::new(b)),
                                s,
                            ));
                        }
                    }
                }
            }
            ScopedKind::LetUnit { cover, scrut, body } => {
                for s1 in self.coc_chk(scrut, &TypeExpr::Unit) {
                    for (a, s2) in self.coc_syn(body) {
                        if let Some(s) = merge_sig(cover, &s1, &s2) {
                            out.insert((a, s));
                        }
                    }
                }
            }
            ScopedKind::LetPair { cover, thin, scrut, body, .. } => {
                for (c, mut s2) in self.coc_syn(body) {
                    let b = pop_sig(&mut s2, thin, 0, Polarity::Unpolarised);
                    let a = pop_sig(&mut s2, thin, 1, Polarity::Unpolarised);
                    let want = TypeExpr::Prod(Box::new(a), Box::new(b));
                    for s1 in self.coc_chk(scrut, &want) {
                        if let Some(s) = merge_sig(cover, &s1, &s2) {
                            out.insert((c.clone(), s));
                        }
                    }
                }
            }
            _ => unreachable!("synthesisable cocontextual node"),
        }
        self.syn_memo.insert(key, out.clone());
        out
    }

    // ----- System L -----

    fn xkey(x: &TypedCtx) -> Vec<TypeExpr> {
        x.iter().map(|e| e.ty.clone()).collect()
    }

    /// Checkable System L judgements (expressions and coexpressions).
    fn l_chk(&mut self, t: &Scoped, x: &TypedCtx, ty: &TypeExpr) -> SigSet {
        let key = (t as *const Scoped as usize, Self::xkey(x), ty.clone());
        if let Some(s) = self.chk_memo.get(&key) {
            return s.clone();
        }
        let mut out = SigSet::new();
        match &t.kind {
            ScopedKind::Var(_) => {
                out.insert(vec![ty.clone()]);
            }
            ScopedKind::Mu { kind: MuKind::MuPlus | MuKind::MutMinus, thin, cmd, .. } => {
                let ext = extend_x(x, thin, &cmd_binder_name(t), ty);
                out = self.l_cmd(cmd, &ext);
            }
            ScopedKind::UnitI => {
                if *ty == TypeExpr::TensorUnit {
                    out.insert(Vec::new());
                }
            }
            ScopedKind::CounitBot => {
                if *ty == TypeExpr::ParUnit {
                    out.insert(Vec::new());
                }
            }
            ScopedKind::Tuple { cover_x, cover_s, left, right } => {
                if let TypeExpr::Tensor(a, b) = ty {
                    out = self.l_chk_binary(x, cover_x, cover_s, left, a, right, b);
                }
            }
            ScopedKind::Cotuple { cover_x, cover_s, left, right } => {
                if let TypeExpr::Par(a, b) = ty {
                    out = self.l_chk_binary(x, cover_x, cover_s, left, a, right, b);
                }
            }
            ScopedKind::Inj { left, body } => {
                if let TypeExpr::Plus(a, b) = ty {
                    out = self.l_chk(body, x, if *left { a } else { b });
                }
            }
            ScopedKind::Proj { first, body } => {
                if let TypeExpr::With(a, b) = ty {
                    out = self.l_chk(body, x, if *first { a } else { b });
                }
            }
            ScopedKind::Sim { body } => {
                if let TypeExpr::Sim(n) = ty {
                    out = self.l_chk(body, x, n);
                }
            }
            ScopedKind::NotC { body } => {
                if let TypeExpr::Not(a) = ty {
                    out = self.l_chk(body, x, a);
                }
            }
            ScopedKind::DownIntro { body } => {
                if let TypeExpr::Down(a) = ty {
                    for (b, s) in self.l_syn(body, x) {
                        if subtype(a, &b).unwrap_or(false) {
                            out.insert(s);
                        }
                    }
                }
            }
            ScopedKind::UpCointro { body } => {
                if let TypeExpr::Up(a) = ty {
                    for (b, s) in self.l_syn(body, x) {
                        if subtype(&b, a).unwrap_or(false) {
                            out.insert(s);
                        }
                    }
                }
            }
            ScopedKind::MatchDownAdj { thin, cmd, .. } => {
                if self.cfg.allow_down_adjoint {
                    if let TypeExpr::DownAdj(a) = ty {
                        for mut s in self.l_cmd(cmd, x) {
                            let b = pop_sig(&mut s, thin, 0, Polarity::Negative);
                            if subtype(a, &b).unwrap_or(false) {
                                out.insert(s);
                            }
                        }
                    }
                }
            }
            ScopedKind::ComatchUpAdj { thin, cmd, .. } => {
                if self.cfg.allow_up_adjoint {
                    if let TypeExpr::UpAdj(a) = ty {
                        for mut s in self.l_cmd(cmd, x) {
                            let b = pop_sig(&mut s, thin, 0, Polarity::Positive);
                            if subtype(&b, a).unwrap_or(false) {
                                out.insert(s);
                            }
                        }
                    }
                }
            }
            _ => unreachable!("checkable System L node"),
        }
        self.chk_memo.insert(key, out.clone());
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn l_chk_binary(
        &mut self,
        x: &TypedCtx,
        cover_x: &Cover,
        cover_s: &Cover,
        left: &Scoped,
        a: &TypeExpr,
        right: &Scoped,
        b: &TypeExpr,
    ) -> SigSet {
        let mut out = SigSet::new();
        let Ok((x1, x2)) = cover_x.split_typed(x) else { return out };
        for s1 in self.l_chk(left, &x1, a) {
            for s2 in self.l_chk(right, &x2, b) {
                if let Some(s) = merge_sig(cover_s, &s1, &s2) {
                    out.insert(s);
                }
            }
        }
        out
    }

    /// Synthesisable System L judgements (patterns and copatterns).
    fn l_syn(&mut self, t: &Scoped, x: &TypedCtx) -> TySigSet {
        let key = (t as *const Scoped as usize, Self::xkey(x));
        if let Some(s) = self.syn_memo.get(&key) {
            return s.clone();
        }
        let mut out = TySigSet::new();
        match &t.kind {
            ScopedKind::Var(_) => {
                debug_assert_eq!(x.len(), 1);
                out.insert((x.0[0].ty.clone(), Vec::new()));
            }
            ScopedKind::Mu { kind: MuKind::MutPlus, thin, cmd, .. } => {
                for mut s in self.l_cmd(cmd, x) {
                    let a = pop_sig(&mut s, thin, 0, Polarity::Positive);
                    out.insert((a, s));
                }
            }
            ScopedKind::Mu { kind: MuKind::MuMinus, thin, cmd, .. } => {
                for mut s in self.l_cmd(cmd, x) {
                    let a = pop_sig(&mut s, thin, 0, Polarity::Negative);
                    out.insert((a, s));
                }
            }
            ScopedKind::MatchUnit { cmd } => {
                for s in self.l_cmd(cmd, x) {
                    out.insert((TypeExpr::TensorUnit, s));
                }
            }
            ScopedKind::ComatchCounit { cmd } => {
                for s in self.l_cmd(cmd, x) {
                    out.insert((TypeExpr::ParUnit, s));
                }
            }
            ScopedKind::MatchPair { thin, cmd, .. } => {
                for mut s in self.l_cmd(cmd, x) {
                    let b = pop_sig(&mut s, thin, 0, Polarity::Positive);
                    let a = pop_sig(&mut s, thin, 1, Polarity::Positive);
                    out.insert((TypeExpr::Tensor(Box::new(a), Box::new(b)), s));
                }
            }
            ScopedKind::ComatchPair { thin, cmd, .. } => {
                for mut s in self.l_cmd(cmd, x) {
                    let b = pop_sig(&mut s, thin, 0, Polarity::Negative);
                    let a = pop_sig(&mut s, thin, 1, Polarity::Negative);
                    out.insert((TypeExpr::Par(Box::new(a), Box::new(b)), s));
                }
            }
            ScopedKind::MatchZero => {
                out.insert((TypeExpr::Zero, Vec::new()));
            }
            ScopedKind::ComatchZero => {
                out.insert((TypeExpr::WithUnit, Vec::new()));
            }
            ScopedKind::MatchSum { cover_x, thin_l, cl, thin_r, cr, .. } => {
                for (a, b, s) in
                    self.l_branches(t, x, cover_x, thin_l, cl, thin_r, cr, Polarity::Positive)
                {
                    out.insert((TypeExpr::Plus(Box::new(a), Box::new(b)), s));
                }
            }
            ScopedKind::ComatchWith { cover_x, thin_l, cl, thin_r, cr, .. } => {
                for (a, b, s) in
                    self.l_branches(t, x, cover_x, thin_l, cl, thin_r, cr, Polarity::Negative)
                {
                    out.insert((TypeExpr::With(Box::new(a), Box::new(b)), s));
                }
            }
            ScopedKind::MatchSim { thin, cmd, .. } => {
                for mut s in self.l_cmd(cmd, x) {
                    let a = pop_sig(&mut s, thin, 0, Polarity::Negative);
                    out.insert((TypeExpr::Sim(Box::new(a)), s));
                }
            }
            ScopedKind::ComatchNot { thin, cmd, .. } => {
                for mut s in self.l_cmd(cmd, x) {
                    let a = pop_sig(&mut s, thin, 0, Polarity::Positive);
                    out.insert((TypeExpr::Not(Box::new(a)), s));
                }
            }
            ScopedKind::MatchDown { ty, thin, cmd, x: binder } => {
                if self.fits(ty) {
                    let ext = extend_x(x, thin, binder, ty);
                    for s in self.l_cmd(cmd, &ext) {
                        out.insert((TypeExpr::Down(Box::new(ty.clone())), s));
                    }
                }
            }
            ScopedKind::ComatchUp { ty, thin, cmd, x: binder } => {
                if self.fits(ty) {
                    let ext = extend_x(x, thin, binder, ty);
                    for s in self.l_cmd(cmd, &ext) {
                        out.insert((TypeExpr::Up(Box::new(ty.clone())), s));
                    }
                }
            }
            ScopedKind::DownAdjIntro { ty, body } => {
                if self.cfg.allow_down_adjoint && self.fits(ty) {
                    for s in self.l_chk(body, x, ty) {
                        out.insert((TypeExpr::DownAdj(Box::new(ty.clone())), s));
                    }
                }
            }
            ScopedKind::UpAdjIntro { ty, body } => {
                if self.cfg.allow_up_adjoint && self.fits(ty) {
                    for s in self.l_chk(body, x, ty) {
                        out.insert((TypeExpr::UpAdj(Box::new(ty.clone())), s));
                    }
                }
            }
            _ => unreachable!("synthesisable System L node"),
        }
        self.syn_memo.insert(key, out.clone());
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn l_branches(
        &mut self,
        node: &Scoped,
        x: &TypedCtx,
        cover_x: &Cover,
        thin_l: &Thinning,
        cl: &Scoped,
        thin_r: &Thinning,
        cr: &Scoped,
        pol: Polarity,
    ) -> Vec<(TypeExpr, TypeExpr, Sig)> {
        let mut out = Vec::new();
        let Ok((x1, x2)) = cover_x.split_typed(x) else { return out };
        let pols: Vec<Polarity> = node.s_scope.iter().map(|e| e.polarity).collect();
        let lefts: Vec<(TypeExpr, Sig)> = self
            .l_cmd(cl, &x1)
            .into_iter()
            .map(|mut s| {
                let a = pop_sig(&mut s, thin_l, 0, pol);
                (a, extend_sig(thin_l, &s, &pols))
            })
            .collect();
        let rights: Vec<(TypeExpr, Sig)> = self
            .l_cmd(cr, &x2)
            .into_iter()
            .map(|mut s| {
                let b = pop_sig(&mut s, thin_r, 0, pol);
                (b, extend_sig(thin_r, &s, &pols))
            })
            .collect();
        for (a, s1) in &lefts {
            for (b, s2) in &rights {
                let mut merged = Sig::with_capacity(s1.len());
                let mut ok = true;
                for (t1, t2) in s1.iter().zip(s2.iter()) {
                    match meet(t1, t2).unwrap_or(None) {
                        Some(t) => merged.push(t),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    out.push((a.clone(), b.clone(), merged));
                }
            }
        }
        out
    }

    fn l_cmd(&mut self, t: &Scoped, x: &TypedCtx) -> SigSet {
        let key = (t as *const Scoped as usize, Self::xkey(x));
        if let Some(s) = self.cmd_memo.get(&key) {
            return s.clone();
        }
        let mut out = SigSet::new();
        if let ScopedKind::Cut { cover_x, cover_s, left, right, .. } = &t.kind {
            if let Ok((x1, x2)) = cover_x.split_typed(x) {
                for (a, s2) in self.l_syn(right, &x2) {
                    for s1 in self.l_chk(left, &x1, &a) {
                        if let Some(s) = merge_sig(cover_s, &s1, &s2) {
                            out.insert(s);
                        }
                    }
                }
            }
        } else {
            unreachable!("command node");
        }
        self.cmd_memo.insert(key, out.clone());
        out
    }
}

fn cmd_binder_name(t: &Scoped) -> String {
    match &t.kind {
        ScopedKind::Mu { binder, .. } => binder.clone(),
        _ => unreachable!(),
    }
}

fn extend_x(x: &TypedCtx, thin: &Thinning, name: &str, ty: &TypeExpr) -> TypedCtx {
    let mut ext = x.clone();
    if thin.0.last() == Some(&ThinStep::Keep) {
        ext.push(TypedEntry::new(name.to_string(), ty.clone()));
    }
    ext
}

fn pop_sig(s: &mut Sig, thin: &Thinning, back: usize, pol: Polarity) -> TypeExpr {
    let idx = thin.len() - 1 - back;
    match thin.0[idx] {
        ThinStep::Keep => s.pop().expect("binder assignment"),
        ThinStep::Drop => top_of(pol),
    }
}

/// Extends a branch assignment over the shared scope: tops at the dropped
/// positions of the branch thinning (excluding its final binder step).
fn extend_sig(thin: &Thinning, s: &Sig, pols: &[Polarity]) -> Sig {
    let mut it = s.iter();
    thin.0[..thin.len() - 1]
        .iter()
        .zip(pols)
        .map(|(step, pol)| match step {
            ThinStep::Keep => it.next().expect("kept assignment").clone(),
            ThinStep::Drop => top_of(*pol),
        })
        .collect()
}

fn merge_sig(cover: &Cover, s1: &Sig, s2: &Sig) -> Option<Sig> {
    let mut out = Sig::with_capacity(cover.len());
    let mut i1 = s1.iter();
    let mut i2 = s2.iter();
    for step in &cover.0 {
        match step {
            CoverStep::Left => out.push(i1.next()?.clone()),
            CoverStep::Right => out.push(i2.next()?.clone()),
            CoverStep::Both => {
                let a = i1.next()?;
                let b = i2.next()?;
                out.push(meet(a, b).ok()??);
            }
        }
    }
    Some(out)
}

/// Agreement between a checker outcome and the oracle's judgement set, per
/// the declarative contract: a successful verdict must be in the set, a
/// failing one requires the set to contain nothing for the query's fixed
/// inputs.
pub fn agree(
    outcome: &Result<(Option<TypeExpr>, TypedCtx), crate::diag::TypeError>,
    all: &JudgementSet,
    q: &Query,
) -> bool {
    match outcome {
        Ok((ty, sigma)) => {
            let focus = match q.kind {
                QueryKind::LambdaCheck | QueryKind::Expr | QueryKind::Coexpr => q.ty.clone(),
                QueryKind::Command => None,
                _ => ty.clone(),
            };
            all.contains(&Judgement { ty: focus, sigma: sigma.clone() })
        }
        Err(_) => match q.kind {
            QueryKind::LambdaCheck | QueryKind::Expr | QueryKind::Coexpr => {
                all.iter().all(|j| j.ty.as_ref() != q.ty.as_ref())
            }
            _ => all.is_empty(),
        },
    }
}
