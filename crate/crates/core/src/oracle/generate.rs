//! Deterministic pseudo-random corpus generation.
//!
//! Terms are generated mode-correct by construction (each constructor is
//! produced only in its judgement class) and scope-correct for the given
//! structural configuration: under linear classes every available variable
//! is threaded to exactly one leaf, branch commands share their
//! synthesisable variables, and fresh synthesisable names are minted only
//! where the discipline allows a branch to drop them. Types are sampled
//! freely, so the corpus contains both well-typed and ill-typed directives.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::kernel::config::StructConfig;
use crate::kernel::ty::{Polarity, TypeExpr};
use crate::scope::Calculus;
use crate::surface::ast::{
    AtomDecl, ComatchBody, CtxEntry, Directive, MatchBody, QueryKind, RawKind, RawTerm, Span,
};

use super::enumerate::{enumerate_types, TypeUniverse};

/// Generates `count` well-scoped query directives, preceded by the standard
/// atom declarations for the calculus. Identical inputs yield identical
/// output.
pub fn generate_corpus(
    seed: u64,
    size_bound: usize,
    kind: QueryKind,
    calculus: Calculus,
    cfg: &StructConfig,
    count: usize,
) -> Vec<Directive> {
    let mut g = Gen::new(seed, calculus, cfg);
    let mut out = prelude(calculus);
    let mut made = 0usize;
    let mut attempts = 0usize;
    while made < count {
        attempts += 1;
        assert!(attempts < count * 1000 + 10_000, "generator starved");
        if let Some(q) = g.query(kind, size_bound) {
            out.push(Directive::Query(q));
            made += 1;
        }
    }
    out
}

/// The atom declarations every generated corpus begins with.
pub fn prelude(calculus: Calculus) -> Vec<Directive> {
    let sp = Span::default();
    let decl = |name: &str, polarity| {
        Directive::Atom(AtomDecl { name: name.into(), polarity, span: sp })
    };
    match calculus.family() {
        crate::kernel::ty::Family::Lambda => vec![
            decl("P", Polarity::Unpolarised),
            decl("Q", Polarity::Unpolarised),
        ],
        crate::kernel::ty::Family::SystemL => vec![
            decl("P", Polarity::Positive),
            decl("Q", Polarity::Positive),
            decl("N", Polarity::Negative),
            decl("M", Polarity::Negative),
        ],
    }
}

/// Variables a subterm must consume (linear classes) or may consume
/// (structural classes), per context class.
#[derive(Clone, Debug, Default)]
struct Pools {
    /// Checkable positive entries: consumed by pattern-side variable leaves.
    xp_must: Vec<String>,
    xp_avail: Vec<String>,
    /// Checkable negative entries: consumed by copattern variable leaves.
    xn_must: Vec<String>,
    xn_avail: Vec<String>,
    /// Synthesisable positive binders: consumed by expression variables.
    sp_must: Vec<String>,
    sp_avail: Vec<String>,
    /// Synthesisable negative binders: consumed by coexpression variables.
    sn_must: Vec<String>,
    sn_avail: Vec<String>,
    /// Whether fresh synthesisable names may be minted (disabled inside the
    /// branches of a two-branch (co)match when the class is linear).
    fresh_sp: bool,
    fresh_sn: bool,
}

impl Pools {
    fn musts(&self) -> usize {
        self.xp_must.len() + self.xn_must.len() + self.sp_must.len() + self.sn_must.len()
    }

    /// Splits the must-pools randomly between the two sides of a cover;
    /// avail pools are shared.
    fn split(&self, rng: &mut ChaCha8Rng) -> (Pools, Pools) {
        let mut l = Pools {
            fresh_sp: self.fresh_sp,
            fresh_sn: self.fresh_sn,
            xp_avail: self.xp_avail.clone(),
            xn_avail: self.xn_avail.clone(),
            sp_avail: self.sp_avail.clone(),
            sn_avail: self.sn_avail.clone(),
            ..Default::default()
        };
        let mut r = l.clone();
        let mut deal = |src: &[String], dl: &mut Vec<String>, dr: &mut Vec<String>| {
            for n in src {
                if rng.gen_bool(0.5) {
                    dl.push(n.clone());
                } else {
                    dr.push(n.clone());
                }
            }
        };
        deal(&self.xp_must, &mut l.xp_must, &mut r.xp_must);
        deal(&self.xn_must, &mut l.xn_must, &mut r.xn_must);
        deal(&self.sp_must, &mut l.sp_must, &mut r.sp_must);
        deal(&self.sn_must, &mut l.sn_must, &mut r.sn_must);
        (l, r)
    }

    /// Pools for the two branches of a shared-context (co)match: checkable
    /// musts split between the branches, synthesisable musts go to both
    /// whole, and fresh minting stops where a branch could not drop the
    /// other branch's variables.
    fn branches(&self, rng: &mut ChaCha8Rng, cfg: &StructConfig) -> (Pools, Pools) {
        let mut xl = (Vec::new(), Vec::new());
        let mut xr = (Vec::new(), Vec::new());
        for n in &self.xp_must {
            if rng.gen_bool(0.5) {
                xl.0.push(n.clone());
            } else {
                xr.0.push(n.clone());
            }
        }
        for n in &self.xn_must {
            if rng.gen_bool(0.5) {
                xl.1.push(n.clone());
            } else {
                xr.1.push(n.clone());
            }
        }
        let mk = |(xp, xn): (Vec<String>, Vec<String>)| Pools {
            xp_must: xp,
            xn_must: xn,
            xp_avail: self.xp_avail.clone(),
            xn_avail: self.xn_avail.clone(),
            sp_must: self.sp_must.clone(),
            sn_must: self.sn_must.clone(),
            sp_avail: self.sp_avail.clone(),
            sn_avail: self.sn_avail.clone(),
            fresh_sp: self.fresh_sp && cfg.gamma_pos,
            fresh_sn: self.fresh_sn && cfg.delta_neg,
        };
        (mk(xl), mk(xr))
    }
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    calculus: Calculus,
    cfg: &'a StructConfig,
    pos_pool: Vec<TypeExpr>,
    neg_pool: Vec<TypeExpr>,
    lam_pool: Vec<TypeExpr>,
    fresh: usize,
}

const SP: Span = Span { offset: 0, line: 1, col: 1 };

fn t(kind: RawKind) -> RawTerm {
    RawTerm::new(SP, kind)
}

impl<'a> Gen<'a> {
    fn new(seed: u64, calculus: Calculus, cfg: &'a StructConfig) -> Self {
        let lam_u = TypeUniverse::lambda(&["P", "Q"], 1);
        let l_u = TypeUniverse::system_l(&["P", "Q"], &["N", "M"], 1);
        let only = |ts: Vec<TypeExpr>| -> Vec<TypeExpr> {
            ts.into_iter().filter(|t| crate::scope::type_allowed_in(calculus, t)).collect()
        };
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            calculus,
            cfg,
            pos_pool: only(enumerate_types(&l_u, Polarity::Positive)),
            neg_pool: only(enumerate_types(&l_u, Polarity::Negative)),
            lam_pool: only(enumerate_types(&lam_u, Polarity::Unpolarised)),
            fresh: 0,
        }
    }

    fn name(&mut self, prefix: &str) -> String {
        self.fresh += 1;
        format!("{prefix}{}", self.fresh)
    }

    fn pick<T: Clone>(&mut self, pool: &[T]) -> T {
        pool[self.rng.gen_range(0..pool.len())].clone()
    }

    fn sample_type(&mut self, pol: Polarity) -> TypeExpr {
        let pool = match pol {
            Polarity::Positive => &self.pos_pool,
            Polarity::Negative => &self.neg_pool,
            Polarity::Unpolarised => &self.lam_pool,
        };
        pool[self.rng.gen_range(0..pool.len())].clone()
    }

    /// Splits a budget of `b - 1` between two children, at least one each.
    fn halve(&mut self, b: usize) -> (usize, usize) {
        let inner = b - 1;
        let bl = self.rng.gen_range(1..inner.max(2));
        (bl, inner.saturating_sub(bl).max(1))
    }

    fn query(&mut self, kind: QueryKind, size_bound: usize) -> Option<crate::surface::ast::RawQuery> {
        self.fresh = 0;
        let min = if kind == QueryKind::Command { 3 } else { 1 };
        let budget = self.rng.gen_range(min..=size_bound.max(min));
        if kind.is_lambda() {
            return self.lambda_query(kind, budget);
        }

        let n = self.rng.gen_range(0..=2usize);
        let mut ctx = Vec::new();
        let mut pools = Pools { fresh_sp: true, fresh_sn: true, ..Default::default() };
        for _ in 0..n {
            let pol = match self.calculus {
                Calculus::Pos => Polarity::Positive,
                Calculus::Neg => Polarity::Negative,
                _ => {
                    if self.rng.gen_bool(0.5) {
                        Polarity::Positive
                    } else {
                        Polarity::Negative
                    }
                }
            };
            let name = self.name("k");
            let ty = self.sample_type(pol);
            ctx.push(CtxEntry { name: name.clone(), mark: None, ty: Some(ty), span: SP });
            match pol {
                Polarity::Positive => {
                    if self.cfg.delta_pos {
                        pools.xp_avail.push(name);
                    } else {
                        pools.xp_must.push(name);
                    }
                }
                _ => {
                    if self.cfg.gamma_neg {
                        pools.xn_avail.push(name);
                    } else {
                        pools.xn_must.push(name);
                    }
                }
            }
        }

        let term = match kind {
            QueryKind::Command => self.command(budget, &pools),
            QueryKind::Expr => self.expr(budget, &pools),
            QueryKind::Pattern => self.pattern(budget, &pools),
            QueryKind::Copattern => self.copattern(budget, &pools),
            QueryKind::Coexpr => self.coexpr(budget, &pools),
            _ => unreachable!(),
        }?;
        let ty = match kind {
            QueryKind::Expr => Some(self.sample_type(Polarity::Positive)),
            QueryKind::Coexpr => Some(self.sample_type(Polarity::Negative)),
            _ => None,
        };
        Some(crate::surface::ast::RawQuery { kind, ctx, term, ty, span: SP })
    }

    fn mixed(&self) -> bool {
        matches!(self.calculus, Calculus::Pol | Calculus::Lnl)
    }

    // ----- System L generation -----

    fn command(&mut self, budget: usize, pools: &Pools) -> Option<RawTerm> {
        if budget < 3 || pools.musts() + 2 > budget {
            return None;
        }
        for _ in 0..16 {
            let positive = match self.calculus {
                Calculus::Pos => true,
                Calculus::Neg => false,
                _ => self.rng.gen_bool(0.5),
            };
            let (lp, rp) = pools.split(&mut self.rng);
            let (bl, br) = self.halve(budget);
            let made = if positive {
                self.expr(bl, &lp).zip(self.pattern(br, &rp))
            } else {
                self.coexpr(bl, &lp).zip(self.copattern(br, &rp))
            };
            if let Some((l, r)) = made {
                return Some(t(RawKind::Cut(Box::new(l), Box::new(r))));
            }
        }
        None
    }

    /// Binds a fresh variable into the right pool according to the
    /// structural flag of its class.
    fn bind_into(
        &mut self,
        pools: &mut Pools,
        side_pos: bool,
        synthesisable: bool,
        structural: bool,
    ) -> String {
        let n = self.name("b");
        let dest = match (synthesisable, side_pos, structural) {
            (true, true, false) => &mut pools.sp_must,
            (true, true, true) => &mut pools.sp_avail,
            (true, false, false) => &mut pools.sn_must,
            (true, false, true) => &mut pools.sn_avail,
            (false, true, false) => &mut pools.xp_must,
            (false, true, true) => &mut pools.xp_avail,
            (false, false, false) => &mut pools.xn_must,
            (false, false, true) => &mut pools.xn_avail,
        };
        dest.push(n.clone());
        n
    }

    fn expr(&mut self, budget: usize, pools: &Pools) -> Option<RawTerm> {
        // Non-leaf musts route through a binder and a cut, so they need
        // several nodes each; prune clearly hopeless budgets early.
        let heavy = pools.musts() - pools.sp_must.len().min(pools.musts());
        if pools.musts() > budget || 3 * heavy > budget {
            return None;
        }
        for _ in 0..16 {
            let musts = pools.musts();
            match self.rng.gen_range(0..10u32) {
                0..=2 if musts == 0 || (musts == 1 && pools.sp_must.len() == 1) => {
                    let name = if let Some(n) = pools.sp_must.first() {
                        n.clone()
                    } else if !pools.sp_avail.is_empty() && self.rng.gen_bool(0.4) {
                        self.pick(&pools.sp_avail.clone())
                    } else if pools.fresh_sp {
                        self.name("v")
                    } else {
                        continue;
                    };
                    return Some(t(RawKind::Var(name)));
                }
                3 if musts == 0 => return Some(t(RawKind::UnitI)),
                4 if budget >= 3 => {
                    let (lp, rp) = pools.split(&mut self.rng);
                    let (bl, br) = self.halve(budget);
                    let Some(l) = self.expr(bl, &lp) else { continue };
                    let Some(r) = self.expr(br, &rp) else { continue };
                    return Some(t(RawKind::Tuple(Box::new(l), Box::new(r))));
                }
                5 if budget >= 2 => {
                    let Some(inner) = self.expr(budget - 1, pools) else { continue };
                    return Some(if self.rng.gen_bool(0.5) {
                        t(RawKind::InjL(Box::new(inner)))
                    } else {
                        t(RawKind::InjR(Box::new(inner)))
                    });
                }
                6 if budget >= 4 => {
                    let mut p = pools.clone();
                    let binder = self.bind_into(&mut p, true, false, self.cfg.delta_pos);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::MuPlus(binder, Box::new(cmd))));
                }
                7 if self.mixed() && budget >= 2 => {
                    let Some(inner) = self.coexpr(budget - 1, pools) else { continue };
                    return Some(t(RawKind::Sim(Box::new(inner))));
                }
                8 if self.mixed() && budget >= 2 => {
                    let Some(inner) = self.copattern(budget - 1, pools) else { continue };
                    return Some(t(RawKind::DownIntro(Box::new(inner))));
                }
                9 if self.cfg.allow_down_adjoint && budget >= 4 => {
                    let mut p = pools.clone();
                    let binder = self.bind_into(&mut p, false, true, self.cfg.delta_neg);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::Match(MatchBody::DownAdj(binder, Box::new(cmd)))));
                }
                _ => continue,
            }
        }
        None
    }

    fn coexpr(&mut self, budget: usize, pools: &Pools) -> Option<RawTerm> {
        // Non-leaf musts route through a binder and a cut, so they need
        // several nodes each; prune clearly hopeless budgets early.
        let heavy = pools.musts() - pools.sn_must.len().min(pools.musts());
        if pools.musts() > budget || 3 * heavy > budget {
            return None;
        }
        for _ in 0..16 {
            let musts = pools.musts();
            match self.rng.gen_range(0..10u32) {
                0..=2 if musts == 0 || (musts == 1 && pools.sn_must.len() == 1) => {
                    let name = if let Some(n) = pools.sn_must.first() {
                        n.clone()
                    } else if !pools.sn_avail.is_empty() && self.rng.gen_bool(0.4) {
                        self.pick(&pools.sn_avail.clone())
                    } else if pools.fresh_sn {
                        self.name("v")
                    } else {
                        continue;
                    };
                    return Some(t(RawKind::Var(name)));
                }
                3 if musts == 0 => return Some(t(RawKind::CounitBot)),
                4 if budget >= 3 => {
                    let (lp, rp) = pools.split(&mut self.rng);
                    let (bl, br) = self.halve(budget);
                    let Some(l) = self.coexpr(bl, &lp) else { continue };
                    let Some(r) = self.coexpr(br, &rp) else { continue };
                    return Some(t(RawKind::Cotuple(Box::new(l), Box::new(r))));
                }
                5 if budget >= 2 => {
                    let Some(inner) = self.coexpr(budget - 1, pools) else { continue };
                    return Some(if self.rng.gen_bool(0.5) {
                        t(RawKind::Pi1(Box::new(inner)))
                    } else {
                        t(RawKind::Pi2(Box::new(inner)))
                    });
                }
                6 if budget >= 4 => {
                    let mut p = pools.clone();
                    let binder = self.bind_into(&mut p, false, false, self.cfg.gamma_neg);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::MutMinus(binder, Box::new(cmd))));
                }
                7 if self.mixed() && budget >= 2 => {
                    let Some(inner) = self.expr(budget - 1, pools) else { continue };
                    return Some(t(RawKind::NotC(Box::new(inner))));
                }
                8 if self.mixed() && budget >= 2 => {
                    let Some(inner) = self.pattern(budget - 1, pools) else { continue };
                    return Some(t(RawKind::UpCointro(Box::new(inner))));
                }
                9 if self.cfg.allow_up_adjoint && budget >= 4 => {
                    let mut p = pools.clone();
                    let binder = self.bind_into(&mut p, true, true, self.cfg.gamma_pos);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::Comatch(ComatchBody::UpAdj(Box::new(cmd), binder))));
                }
                _ => continue,
            }
        }
        None
    }

    fn pattern(&mut self, budget: usize, pools: &Pools) -> Option<RawTerm> {
        let heavy = pools.musts() - pools.xp_must.len().min(pools.musts());
        if pools.musts() > budget || 3 * heavy > budget {
            return None;
        }
        for _ in 0..16 {
            let musts = pools.musts();
            match self.rng.gen_range(0..10u32) {
                0..=1 if musts == 1 && pools.xp_must.len() == 1 => {
                    return Some(t(RawKind::Var(pools.xp_must[0].clone())));
                }
                0..=1 if musts == 0 && !pools.xp_avail.is_empty() => {
                    let p = pools.xp_avail.clone();
                    return Some(t(RawKind::Var(self.pick(&p))));
                }
                2 if budget >= 4 => {
                    let mut p = pools.clone();
                    let binder = self.bind_into(&mut p, true, true, self.cfg.gamma_pos);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::MutPlus(binder, Box::new(cmd))));
                }
                3 if budget >= 4 => {
                    let Some(cmd) = self.command(budget - 1, pools) else { continue };
                    return Some(t(RawKind::Match(MatchBody::Unit(Box::new(cmd)))));
                }
                4 if budget >= 4 => {
                    let mut p = pools.clone();
                    let x = self.bind_into(&mut p, true, true, self.cfg.gamma_pos);
                    let y = self.bind_into(&mut p, true, true, self.cfg.gamma_pos);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::Match(MatchBody::Pair(x, y, Box::new(cmd)))));
                }
                5 if musts == 0 => return Some(t(RawKind::Match(MatchBody::Empty))),
                6 if budget >= 7 => {
                    let (mut lp, mut rp) = pools.branches(&mut self.rng, self.cfg);
                    let xl = self.bind_into(&mut lp, true, true, self.cfg.gamma_pos);
                    let yr = self.bind_into(&mut rp, true, true, self.cfg.gamma_pos);
                    let b = (budget - 1) / 2;
                    let Some(cl) = self.command(b, &lp) else { continue };
                    let Some(cr) = self.command(b, &rp) else { continue };
                    return Some(t(RawKind::Match(MatchBody::Sum {
                        xl,
                        cl: Box::new(cl),
                        yr,
                        cr: Box::new(cr),
                    })));
                }
                7 if self.mixed() && budget >= 4 => {
                    let mut p = pools.clone();
                    let binder = self.bind_into(&mut p, false, true, self.cfg.delta_neg);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::Match(MatchBody::Sim(binder, Box::new(cmd)))));
                }
                8 if self.mixed() && budget >= 4 => {
                    let mut p = pools.clone();
                    let binder = self.bind_into(&mut p, false, false, self.cfg.gamma_neg);
                    let ty = self.sample_type(Polarity::Negative);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::Match(MatchBody::Down(binder, ty, Box::new(cmd)))));
                }
                9 if self.cfg.allow_down_adjoint && budget >= 2 => {
                    let ty = self.sample_type(Polarity::Negative);
                    let Some(inner) = self.coexpr(budget - 1, pools) else { continue };
                    return Some(t(RawKind::DownAdjIntro(Box::new(inner), ty)));
                }
                _ => continue,
            }
        }
        None
    }

    fn copattern(&mut self, budget: usize, pools: &Pools) -> Option<RawTerm> {
        let heavy = pools.musts() - pools.xn_must.len().min(pools.musts());
        if pools.musts() > budget || 3 * heavy > budget {
            return None;
        }
        for _ in 0..16 {
            let musts = pools.musts();
            match self.rng.gen_range(0..10u32) {
                0..=1 if musts == 1 && pools.xn_must.len() == 1 => {
                    return Some(t(RawKind::Var(pools.xn_must[0].clone())));
                }
                0..=1 if musts == 0 && !pools.xn_avail.is_empty() => {
                    let p = pools.xn_avail.clone();
                    return Some(t(RawKind::Var(self.pick(&p))));
                }
                2 if budget >= 4 => {
                    let mut p = pools.clone();
                    let binder = self.bind_into(&mut p, false, true, self.cfg.delta_neg);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::MuMinus(binder, Box::new(cmd))));
                }
                3 if budget >= 4 => {
                    let Some(cmd) = self.command(budget - 1, pools) else { continue };
                    return Some(t(RawKind::Comatch(ComatchBody::Counit(Box::new(cmd)))));
                }
                4 if budget >= 4 => {
                    let mut p = pools.clone();
                    let x = self.bind_into(&mut p, false, true, self.cfg.delta_neg);
                    let y = self.bind_into(&mut p, false, true, self.cfg.delta_neg);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::Comatch(ComatchBody::Pair(Box::new(cmd), x, y))));
                }
                5 if musts == 0 => return Some(t(RawKind::Comatch(ComatchBody::Empty))),
                6 if budget >= 7 => {
                    let (mut lp, mut rp) = pools.branches(&mut self.rng, self.cfg);
                    let xl = self.bind_into(&mut lp, false, true, self.cfg.delta_neg);
                    let yr = self.bind_into(&mut rp, false, true, self.cfg.delta_neg);
                    let b = (budget - 1) / 2;
                    let Some(cl) = self.command(b, &lp) else { continue };
                    let Some(cr) = self.command(b, &rp) else { continue };
                    return Some(t(RawKind::Comatch(ComatchBody::With {
                        cl: Box::new(cl),
                        xl,
                        cr: Box::new(cr),
                        yr,
                    })));
                }
                7 if self.mixed() && budget >= 4 => {
                    let mut p = pools.clone();
                    let binder = self.bind_into(&mut p, true, true, self.cfg.gamma_pos);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::Comatch(ComatchBody::Not(Box::new(cmd), binder))));
                }
                8 if self.mixed() && budget >= 4 => {
                    let mut p = pools.clone();
                    let binder = self.bind_into(&mut p, true, false, self.cfg.delta_pos);
                    let ty = self.sample_type(Polarity::Positive);
                    let Some(cmd) = self.command(budget - 1, &p) else { continue };
                    return Some(t(RawKind::Comatch(ComatchBody::Up(Box::new(cmd), binder, ty))));
                }
                9 if self.cfg.allow_up_adjoint && budget >= 2 => {
                    let ty = self.sample_type(Polarity::Positive);
                    let Some(inner) = self.expr(budget - 1, pools) else { continue };
                    return Some(t(RawKind::UpAdjIntro(Box::new(inner), ty)));
                }
                _ => continue,
            }
        }
        None
    }

    // ----- lambda generation -----

    fn lambda_query(
        &mut self,
        kind: QueryKind,
        budget: usize,
    ) -> Option<crate::surface::ast::RawQuery> {
        let cap = if self.cfg.lambda_cartesian { 2 } else { 2usize.min(budget / 2) };
        let n = self.rng.gen_range(0..=cap);
        let mut ctx = Vec::new();
        let mut scope =
            LamScope { fresh: self.calculus != Calculus::Stlc, ..Default::default() };
        for _ in 0..n {
            let name = self.name("k");
            if self.calculus == Calculus::Stlc {
                let ty = self.sample_type(Polarity::Unpolarised);
                ctx.push(CtxEntry { name: name.clone(), mark: None, ty: Some(ty), span: SP });
                scope.avail.push(name);
            } else {
                ctx.push(CtxEntry { name: name.clone(), mark: None, ty: None, span: SP });
                if self.cfg.lambda_cartesian {
                    scope.avail.push(name);
                } else {
                    scope.must.push(name);
                }
            }
        }
        let term = match kind {
            QueryKind::LambdaCheck => self.lam_chk(budget, &scope)?,
            QueryKind::LambdaSynth => self.lam_syn(budget, &scope)?,
            _ => unreachable!(),
        };
        let ty = match kind {
            QueryKind::LambdaCheck => Some(self.sample_type(Polarity::Unpolarised)),
            _ => None,
        };
        Some(crate::surface::ast::RawQuery { kind, ctx, term, ty, span: SP })
    }

    fn lam_var(&mut self, scope: &LamScope) -> Option<String> {
        if let Some(n) = scope.must.first() {
            return Some(n.clone());
        }
        if !scope.avail.is_empty() && self.rng.gen_bool(0.6) {
            return Some(self.pick(&scope.avail.clone()));
        }
        if scope.fresh {
            return Some(self.name("v"));
        }
        if !scope.avail.is_empty() {
            return Some(self.pick(&scope.avail.clone()));
        }
        None
    }

    fn lam_bind(&mut self, scope: &mut LamScope) -> String {
        let binder = self.name("b");
        if self.cfg.lambda_cartesian || self.calculus == Calculus::Stlc {
            scope.avail.push(binder.clone());
        } else {
            scope.must.push(binder.clone());
        }
        binder
    }

    fn lam_chk(&mut self, budget: usize, scope: &LamScope) -> Option<RawTerm> {
        let standard = self.calculus == Calculus::Stlc;
        if 2 * scope.must.len() > budget + 1 {
            return None;
        }
        for _ in 0..24 {
            let musts = scope.must.len();
            match self.rng.gen_range(0..9u32) {
                0..=2 if musts <= 1 => {
                    // Standard variables are synthesisable and get embedded;
                    // cocontextual variables are the checkable leaf.
                    let Some(n) = self.lam_var(scope) else { continue };
                    return Some(t(RawKind::Var(n)));
                }
                3 if standard && budget >= 2 => {
                    let mut s = scope.clone();
                    let binder = self.lam_bind(&mut s);
                    let Some(body) = self.lam_chk(budget - 1, &s) else { continue };
                    return Some(t(RawKind::Lam(binder, Box::new(body))));
                }
                4 if standard && musts == 0 => return Some(t(RawKind::Unit)),
                5 if standard && budget >= 3 => {
                    let (l, r) = scope.split(&mut self.rng);
                    let (bl, br) = self.halve(budget);
                    let Some(left) = self.lam_chk(bl, &l) else { continue };
                    let Some(right) = self.lam_chk(br, &r) else { continue };
                    return Some(t(RawKind::Pair(Box::new(left), Box::new(right))));
                }
                6 if standard && budget >= 2 => {
                    let Some(inner) = self.lam_chk(budget - 1, scope) else { continue };
                    return Some(if self.rng.gen_bool(0.5) {
                        t(RawKind::Inl(Box::new(inner)))
                    } else {
                        t(RawKind::Inr(Box::new(inner)))
                    });
                }
                7 if !standard && budget >= 3 => {
                    let (l, r) = scope.split(&mut self.rng);
                    let (bl, br) = self.halve(budget);
                    let Some(fun) = self.lam_chk(bl, &l) else { continue };
                    let Some(arg) = self.lam_syn(br, &r) else { continue };
                    return Some(t(RawKind::App(Box::new(fun), Box::new(arg))));
                }
                8 if budget >= 2 => {
                    let Some(s) = self.lam_syn(budget, scope) else { continue };
                    return Some(s);
                }
                _ => continue,
            }
        }
        None
    }

    fn lam_syn(&mut self, budget: usize, scope: &LamScope) -> Option<RawTerm> {
        let standard = self.calculus == Calculus::Stlc;
        if 2 * scope.must.len() > budget {
            return None;
        }
        for _ in 0..24 {
            let musts = scope.must.len();
            match self.rng.gen_range(0..9u32) {
                0 if standard && musts == 0 => {
                    let Some(n) = self.lam_var(scope) else { continue };
                    return Some(t(RawKind::Var(n)));
                }
                1..=2 if budget >= 2 => {
                    let ty = self.sample_type(Polarity::Unpolarised);
                    let Some(inner) = self.lam_chk(budget - 1, scope) else { continue };
                    return Some(t(RawKind::Annot(Box::new(inner), ty)));
                }
                3 if standard && budget >= 3 => {
                    let (l, r) = scope.split(&mut self.rng);
                    let (bl, br) = self.halve(budget);
                    let Some(fun) = self.lam_syn(bl, &l) else { continue };
                    let Some(arg) = self.lam_chk(br, &r) else { continue };
                    return Some(t(RawKind::App(Box::new(fun), Box::new(arg))));
                }
                4 if standard && budget >= 2 => {
                    let Some(inner) = self.lam_syn(budget - 1, scope) else { continue };
                    return Some(if self.rng.gen_bool(0.5) {
                        t(RawKind::Proj1(Box::new(inner)))
                    } else {
                        t(RawKind::Proj2(Box::new(inner)))
                    });
                }
                5 if !standard
                    && budget >= 2
                    && (self.cfg.lambda_cartesian || budget > 2 * (musts + 1)) =>
                {
                    let mut s = scope.clone();
                    let binder = self.lam_bind(&mut s);
                    let Some(body) = self.lam_syn(budget - 1, &s) else { continue };
                    return Some(t(RawKind::Lam(binder, Box::new(body))));
                }
                6 if !standard && musts == 0 => return Some(t(RawKind::Unit)),
                7 if !standard && budget >= 3 => {
                    let (l, r) = scope.split(&mut self.rng);
                    let (bl, br) = self.halve(budget);
                    let Some(left) = self.lam_syn(bl, &l) else { continue };
                    let Some(right) = self.lam_syn(br, &r) else { continue };
                    return Some(t(RawKind::Pair(Box::new(left), Box::new(right))));
                }
                8 if !standard && budget >= 4 => {
                    let (l, mut r) = scope.split(&mut self.rng);
                    let (bl, br) = self.halve(budget);
                    if self.rng.gen_bool(0.5) {
                        let Some(scrut) = self.lam_chk(bl, &l) else { continue };
                        let Some(body) = self.lam_syn(br, &r) else { continue };
                        return Some(t(RawKind::LetUnit {
                            scrut: Box::new(scrut),
                            body: Box::new(body),
                        }));
                    }
                    let x = self.name("b");
                    let y = self.name("b");
                    if self.cfg.lambda_cartesian {
                        r.avail.push(x.clone());
                        r.avail.push(y.clone());
                    } else {
                        r.must.push(x.clone());
                        r.must.push(y.clone());
                    }
                    let Some(scrut) = self.lam_chk(bl, &l) else { continue };
                    let Some(body) = self.lam_syn(br, &r) else { continue };
                    return Some(t(RawKind::LetPair {
                        x,
                        y,
                        scrut: Box::new(scrut),
                        body: Box::new(body),
                    }));
                }
                _ => continue,
            }
        }
        None
    }
}

#[derive(Clone, Debug, Default)]
struct LamScope {
    must: Vec<String>,
    avail: Vec<String>,
    fresh: bool,
}

impl LamScope {
    /// Splits must-variables between two children; the avail pool is usable
    /// on both sides.
    fn split(&self, rng: &mut ChaCha8Rng) -> (LamScope, LamScope) {
        let mut l = LamScope { avail: self.avail.clone(), fresh: self.fresh, ..Default::default() };
        let mut r = l.clone();
        for n in &self.must {
            if rng.gen_bool(0.5) {
                l.must.push(n.clone());
            } else {
                r.must.push(n.clone());
            }
        }
        (l, r)
    }
}
