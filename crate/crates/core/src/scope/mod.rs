//! Intrinsically scoped co-de Bruijn syntax and the elaborator that produces
//! it from raw named terms.
//!
//! Elaboration resolves every variable to its binder or directive entry,
//! enforces the checkable/synthesisable mode table of each calculus, and
//! computes the canonical usage-driven witnesses: a cover at every node that
//! splits a context and a thinning at every binder, with `Both` exactly
//! where both subterms use a variable and `Drop` exactly where a bound or
//! declared variable is unused. The structural configuration decides which
//! of those witnesses are legal.

mod elaborate;
mod print;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kernel::config::{Preset, Side};
use crate::kernel::ctx::{ScopedCtx, TypedCtx};
use crate::kernel::cover::{Cover, Thinning};
use crate::kernel::ty::{Family, Polarity, TypeExpr};
use crate::surface::ast::{QueryKind, Span};

pub use elaborate::elaborate;
pub use print::{erase, print_query_tree};

/// Whether a type's connectives all belong to the calculus fragment. The
/// written types of a query (context entries, payload type, annotations)
/// must satisfy this; checker-internal tops never do.
pub fn type_allowed_in(calculus: Calculus, t: &TypeExpr) -> bool {
    use TypeExpr::*;
    let head = match (calculus, t) {
        (Calculus::Stlc, Atom(_) | Unit | Empty | Arrow(..) | Prod(..) | Sum(..)) => true,
        (Calculus::Lin, Atom(_) | Unit | Prod(..) | Lolli(..)) => true,
        (Calculus::Cdb, Atom(_) | Unit | Prod(..) | Arrow(..)) => true,
        (Calculus::Pos, PosAtom(_) | TensorUnit | Zero | Tensor(..) | Plus(..)) => true,
        (Calculus::Neg, NegAtom(_) | ParUnit | WithUnit | Par(..) | With(..)) => true,
        (Calculus::Pol | Calculus::Lnl, UpAdj(_) | DownAdj(_)) => calculus == Calculus::Lnl,
        (
            Calculus::Pol | Calculus::Lnl,
            Atom(_) | Unit | Empty | Top | Arrow(..) | Lolli(..) | Prod(..) | Sum(..),
        ) => false,
        (Calculus::Pol | Calculus::Lnl, _) => true,
        _ => false,
    };
    head && match t {
        Arrow(a, b) | Lolli(a, b) | Prod(a, b) | Sum(a, b) | Tensor(a, b) | Plus(a, b)
        | Par(a, b) | With(a, b) => type_allowed_in(calculus, a) && type_allowed_in(calculus, b),
        Sim(a) | Down(a) | DownAdj(a) | Not(a) | Up(a) | UpAdj(a) => type_allowed_in(calculus, a),
        _ => true,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Calculus {
    /// Standard bidirectional simply-typed lambda calculus.
    Stlc,
    /// Cocontextual linear lambda calculus.
    Lin,
    /// Cocontextual cartesian co-de Bruijn lambda calculus.
    Cdb,
    /// Positive fragment of System L.
    Pos,
    /// Negative fragment of System L.
    Neg,
    /// Full polarised System L.
    Pol,
    /// System L with the adjoint shifts.
    Lnl,
}

impl Calculus {
    pub fn family(self) -> Family {
        match self {
            Calculus::Stlc | Calculus::Lin | Calculus::Cdb => Family::Lambda,
            _ => Family::SystemL,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Calculus::Stlc => "stlc",
            Calculus::Lin => "lin",
            Calculus::Cdb => "cdb",
            Calculus::Pos => "pos",
            Calculus::Neg => "neg",
            Calculus::Pol => "pol",
            Calculus::Lnl => "lnl",
        }
    }

    pub fn default_preset(self) -> Preset {
        match self {
            Calculus::Stlc | Calculus::Cdb => Preset::Cartesian,
            Calculus::Lin | Calculus::Pos | Calculus::Neg | Calculus::Pol => Preset::Linear,
            Calculus::Lnl => Preset::LnlFull,
        }
    }

    pub fn allows_preset(self, p: Preset) -> bool {
        match self {
            Calculus::Stlc => p == Preset::Cartesian,
            Calculus::Lin => p == Preset::Linear,
            Calculus::Cdb => matches!(p, Preset::Linear | Preset::Cartesian),
            _ => true,
        }
    }

    /// Which context side the single lambda context lives on.
    pub fn lambda_side(self) -> Side {
        match self {
            Calculus::Stlc => Side::Checkable,
            _ => Side::Synthesisable,
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Calculus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "stlc" => Ok(Calculus::Stlc),
            "lin" => Ok(Calculus::Lin),
            "cdb" => Ok(Calculus::Cdb),
            "pos" => Ok(Calculus::Pos),
            "neg" => Ok(Calculus::Neg),
            "pol" => Ok(Calculus::Pol),
            "lnl" => Ok(Calculus::Lnl),
            other => Err(format!("unknown calculus `{other}`")),
        }
    }
}

/// Judgement class of an elaborated node: bidirectional mode for the lambda
/// calculi, the polarity-chirality table for System L.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JudgementClass {
    Chk,
    Syn,
    Expr,
    Pattern,
    Copattern,
    Coexpr,
    Command,
}

impl JudgementClass {
    pub fn as_str(self) -> &'static str {
        match self {
            JudgementClass::Chk => "chk",
            JudgementClass::Syn => "syn",
            JudgementClass::Expr => "expr",
            JudgementClass::Pattern => "pattern",
            JudgementClass::Copattern => "copattern",
            JudgementClass::Coexpr => "coexpr",
            JudgementClass::Command => "command",
        }
    }

    /// Synthesisable classes produce their type; checkable ones consume it.
    pub fn synthesises(self) -> bool {
        matches!(
            self,
            JudgementClass::Syn | JudgementClass::Pattern | JudgementClass::Copattern
        )
    }

    /// Where a variable leaf of this class lives: the side it consumes.
    pub fn var_side(self) -> Option<(Side, Polarity)> {
        match self {
            JudgementClass::Expr => Some((Side::Synthesisable, Polarity::Positive)),
            JudgementClass::Pattern => Some((Side::Checkable, Polarity::Positive)),
            JudgementClass::Copattern => Some((Side::Checkable, Polarity::Negative)),
            JudgementClass::Coexpr => Some((Side::Synthesisable, Polarity::Negative)),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuKind {
    /// `mu+`: binds a positive output variable, forms an expression.
    MuPlus,
    /// `mut+`: binds a positive input variable, forms a pattern.
    MutPlus,
    /// `mu-`: binds a negative output variable, forms a copattern.
    MuMinus,
    /// `mut-`: binds a negative input variable, forms a coexpression.
    MutMinus,
}

impl MuKind {
    pub fn class(self) -> JudgementClass {
        match self {
            MuKind::MuPlus => JudgementClass::Expr,
            MuKind::MutPlus => JudgementClass::Pattern,
            MuKind::MuMinus => JudgementClass::Copattern,
            MuKind::MutMinus => JudgementClass::Coexpr,
        }
    }

    /// Side and polarity of the bound variable.
    pub fn binder_class(self) -> (Side, Polarity) {
        match self {
            MuKind::MuPlus => (Side::Checkable, Polarity::Positive),
            MuKind::MutPlus => (Side::Synthesisable, Polarity::Positive),
            MuKind::MuMinus => (Side::Synthesisable, Polarity::Negative),
            MuKind::MutMinus => (Side::Checkable, Polarity::Negative),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MuKind::MuPlus => "mu+",
            MuKind::MutPlus => "mut+",
            MuKind::MuMinus => "mu-",
            MuKind::MutMinus => "mut-",
        }
    }
}

/// An elaborated node. `x_scope` is the checkable-side scoped context and
/// `s_scope` the synthesisable-side one; the lambda calculi use only the
/// side given by [`Calculus::lambda_side`].
#[derive(Clone, Debug, PartialEq)]
pub struct Scoped {
    pub class: JudgementClass,
    pub span: Span,
    pub x_scope: ScopedCtx,
    pub s_scope: ScopedCtx,
    pub kind: ScopedKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScopedKind {
    Var(String),

    // Lambda family. Binder thinnings run over the extended context
    // `scope ++ binders`, all inherited positions kept.
    Lam { binder: String, thin: Thinning, body: Box<Scoped> },
    App { cover: Cover, fun: Box<Scoped>, arg: Box<Scoped> },
    Annot { ty: TypeExpr, body: Box<Scoped> },
    /// Implicit downshift inserted where a synthesisable term sits in a
    /// checkable position.
    Emb { body: Box<Scoped> },
    Unit,
    Pair { cover: Cover, left: Box<Scoped>, right: Box<Scoped> },
    Proj { first: bool, body: Box<Scoped> },
    Inj { left: bool, body: Box<Scoped> },
    Case {
        cover: Cover,
        branch_cover: Cover,
        scrut: Box<Scoped>,
        left_bind: String,
        thin_l: Thinning,
        left: Box<Scoped>,
        right_bind: String,
        thin_r: Thinning,
        right: Box<Scoped>,
    },
    Absurd { body: Box<Scoped> },
    LetUnit { cover: Cover, scrut: Box<Scoped>, body: Box<Scoped> },
    LetPair {
        cover: Cover,
        x: String,
        y: String,
        thin: Thinning,
        scrut: Box<Scoped>,
        body: Box<Scoped>,
    },

    // System L. Binary nodes split both context classes; binder thinnings
    // run over the extended context of the class their variable lives in.
    Cut { polarity: Polarity, cover_x: Cover, cover_s: Cover, left: Box<Scoped>, right: Box<Scoped> },
    Mu { kind: MuKind, binder: String, thin: Thinning, cmd: Box<Scoped> },
    Tuple { cover_x: Cover, cover_s: Cover, left: Box<Scoped>, right: Box<Scoped> },
    Cotuple { cover_x: Cover, cover_s: Cover, left: Box<Scoped>, right: Box<Scoped> },
    UnitI,
    CounitBot,
    Sim { body: Box<Scoped> },
    NotC { body: Box<Scoped> },
    DownIntro { body: Box<Scoped> },
    UpCointro { body: Box<Scoped> },
    UpAdjIntro { ty: TypeExpr, body: Box<Scoped> },
    DownAdjIntro { ty: TypeExpr, body: Box<Scoped> },
    MatchUnit { cmd: Box<Scoped> },
    MatchPair { x: String, y: String, thin: Thinning, cmd: Box<Scoped> },
    MatchZero,
    /// Two-branch match: the checkable context splits along `cover_x`, the
    /// synthesisable context is shared and each branch carries a thinning
    /// over `s_scope ++ [binder]`.
    MatchSum {
        cover_x: Cover,
        xl: String,
        thin_l: Thinning,
        cl: Box<Scoped>,
        yr: String,
        thin_r: Thinning,
        cr: Box<Scoped>,
    },
    MatchSim { x: String, thin: Thinning, cmd: Box<Scoped> },
    MatchDown { x: String, ty: TypeExpr, thin: Thinning, cmd: Box<Scoped> },
    MatchDownAdj { x: String, thin: Thinning, cmd: Box<Scoped> },
    ComatchCounit { cmd: Box<Scoped> },
    ComatchPair { x: String, y: String, thin: Thinning, cmd: Box<Scoped> },
    ComatchZero,
    ComatchWith {
        cover_x: Cover,
        xl: String,
        thin_l: Thinning,
        cl: Box<Scoped>,
        yr: String,
        thin_r: Thinning,
        cr: Box<Scoped>,
    },
    ComatchNot { x: String, thin: Thinning, cmd: Box<Scoped> },
    ComatchUp { x: String, ty: TypeExpr, thin: Thinning, cmd: Box<Scoped> },
    ComatchUpAdj { x: String, thin: Thinning, cmd: Box<Scoped> },
}

/// The judgement class of an elaborated node.
pub fn mode_of(s: &Scoped) -> JudgementClass {
    s.class
}

/// A fully elaborated query, ready for a checker.
#[derive(Clone, Debug, PartialEq)]
pub struct Query {
    pub kind: QueryKind,
    pub calculus: Calculus,
    /// Typed entries in directive order (standard lambda context or X).
    pub x_typed: TypedCtx,
    /// Declared scoped entries followed by collected free variables.
    pub s_scope: ScopedCtx,
    pub ty: Option<TypeExpr>,
    /// Root thinning over `x_typed`: which typed entries the term uses.
    pub thin_x: Thinning,
    /// Root thinning over `s_scope`: which scoped entries the term uses.
    pub thin_s: Thinning,
    pub term: Scoped,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScopeCode {
    UnboundVariable,
    UnusedVariable,
    DuplicatedVariable,
    ModeError,
    PolarityMismatch,
    WrongContext,
    AmbiguousCut,
    CalculusRestriction,
    ContextShape,
    DuplicateEntry,
    UnresolvedPolarity,
}

impl ScopeCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScopeCode::UnboundVariable => "unbound-variable",
            ScopeCode::UnusedVariable => "unused-variable",
            ScopeCode::DuplicatedVariable => "duplicated-variable",
            ScopeCode::ModeError => "mode-error",
            ScopeCode::PolarityMismatch => "polarity-mismatch",
            ScopeCode::WrongContext => "wrong-context",
            ScopeCode::AmbiguousCut => "ambiguous-cut",
            ScopeCode::CalculusRestriction => "calculus-restriction",
            ScopeCode::ContextShape => "context-shape",
            ScopeCode::DuplicateEntry => "duplicate-entry",
            ScopeCode::UnresolvedPolarity => "unresolved-polarity",
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
#[error("{span}: {message}")]
pub struct ScopeError {
    pub code: ScopeCode,
    pub span: Span,
    pub message: String,
}

impl ScopeError {
    pub fn new(code: ScopeCode, span: Span, message: impl Into<String>) -> Self {
        ScopeError { code, span, message: message.into() }
    }
}
