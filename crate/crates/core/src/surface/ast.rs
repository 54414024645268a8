//! Raw named syntax produced by the parser, before scope elaboration.

use std::fmt;

use crate::kernel::ty::{Polarity, TypeExpr};

/// Source position, 1-based line and column plus byte offset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub offset: usize,
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// A raw term. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct RawTerm {
    pub span: Span,
    pub kind: RawKind,
}

impl PartialEq for RawTerm {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}
impl Eq for RawTerm {}

impl RawTerm {
    pub fn new(span: Span, kind: RawKind) -> Self {
        RawTerm { span, kind }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawKind {
    Var(String),

    // Lambda family.
    Lam(String, Box<RawTerm>),
    App(Box<RawTerm>, Box<RawTerm>),
    /// `(t : A)`, the explicit shift from checkable to synthesisable.
    Annot(Box<RawTerm>, TypeExpr),
    Pair(Box<RawTerm>, Box<RawTerm>),
    Unit,
    Proj1(Box<RawTerm>),
    Proj2(Box<RawTerm>),
    Inl(Box<RawTerm>),
    Inr(Box<RawTerm>),
    Case {
        scrut: Box<RawTerm>,
        left_bind: String,
        left: Box<RawTerm>,
        right_bind: String,
        right: Box<RawTerm>,
    },
    Absurd(Box<RawTerm>),
    LetUnit {
        scrut: Box<RawTerm>,
        body: Box<RawTerm>,
    },
    LetPair {
        x: String,
        y: String,
        scrut: Box<RawTerm>,
        body: Box<RawTerm>,
    },

    // System L family.
    Cut(Box<RawTerm>, Box<RawTerm>),
    MuPlus(String, Box<RawTerm>),
    MutPlus(String, Box<RawTerm>),
    MuMinus(String, Box<RawTerm>),
    MutMinus(String, Box<RawTerm>),
    Tuple(Box<RawTerm>, Box<RawTerm>),
    Cotuple(Box<RawTerm>, Box<RawTerm>),
    UnitI,
    CounitBot,
    InjL(Box<RawTerm>),
    InjR(Box<RawTerm>),
    Pi1(Box<RawTerm>),
    Pi2(Box<RawTerm>),
    /// `~e`, positive negation introduction.
    Sim(Box<RawTerm>),
    /// `not e`, negative negation cointroduction.
    NotC(Box<RawTerm>),
    /// `down p`, downshift introduction.
    DownIntro(Box<RawTerm>),
    /// `up p`, upshift cointroduction.
    UpCointro(Box<RawTerm>),
    /// `Up(e : A)`, adjoint upshift cointroduction; annotated.
    UpAdjIntro(Box<RawTerm>, TypeExpr),
    /// `Down(e : A)`, adjoint downshift introduction; annotated.
    DownAdjIntro(Box<RawTerm>, TypeExpr),
    Match(MatchBody),
    Comatch(ComatchBody),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchBody {
    /// `match { }`
    Empty,
    /// `match { () => c }`
    Unit(Box<RawTerm>),
    /// `match { (x, y) => c }`
    Pair(String, String, Box<RawTerm>),
    /// `match { inl x => c; inr y => d }`
    Sum {
        xl: String,
        cl: Box<RawTerm>,
        yr: String,
        cr: Box<RawTerm>,
    },
    /// `match { ~x => c }`
    Sim(String, Box<RawTerm>),
    /// `match { down(x : A) => c }`; annotated.
    Down(String, TypeExpr, Box<RawTerm>),
    /// `match { Down x => c }`
    DownAdj(String, Box<RawTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComatchBody {
    /// `comatch { }`
    Empty,
    /// `comatch { c => [] }`
    Counit(Box<RawTerm>),
    /// `comatch { c => [x, y] }`
    Pair(Box<RawTerm>, String, String),
    /// `comatch { c => pi1 x; d => pi2 y }`
    With {
        cl: Box<RawTerm>,
        xl: String,
        cr: Box<RawTerm>,
        yr: String,
    },
    /// `comatch { c => not x }`
    Not(Box<RawTerm>, String),
    /// `comatch { c => up(x : A) }`; annotated.
    Up(Box<RawTerm>, String, TypeExpr),
    /// `comatch { c => Up x }`
    UpAdj(Box<RawTerm>, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QueryKind {
    LambdaCheck,
    LambdaSynth,
    Expr,
    Pattern,
    Copattern,
    Coexpr,
    Command,
}

impl QueryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QueryKind::LambdaCheck => "lambda-check",
            QueryKind::LambdaSynth => "lambda-synth",
            QueryKind::Expr => "expr",
            QueryKind::Pattern => "pattern",
            QueryKind::Copattern => "copattern",
            QueryKind::Coexpr => "coexpr",
            QueryKind::Command => "command",
        }
    }

    pub fn is_lambda(self) -> bool {
        matches!(self, QueryKind::LambdaCheck | QueryKind::LambdaSynth)
    }

    /// Whether the payload carries a mandatory `: type`.
    pub fn takes_type(self) -> bool {
        matches!(self, QueryKind::LambdaCheck | QueryKind::Expr | QueryKind::Coexpr)
    }
}

/// One context entry in a query header: `x`, `x+`, `x : P` or `x+ : P`.
#[derive(Clone, Debug)]
pub struct CtxEntry {
    pub name: String,
    pub mark: Option<Polarity>,
    pub ty: Option<TypeExpr>,
    pub span: Span,
}

impl PartialEq for CtxEntry {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.mark == other.mark && self.ty == other.ty
    }
}
impl Eq for CtxEntry {}

#[derive(Clone, Debug)]
pub struct RawQuery {
    pub kind: QueryKind,
    pub ctx: Vec<CtxEntry>,
    pub term: RawTerm,
    pub ty: Option<TypeExpr>,
    pub span: Span,
}

impl PartialEq for RawQuery {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.ctx == other.ctx
            && self.term == other.term
            && self.ty == other.ty
    }
}
impl Eq for RawQuery {}

#[derive(Clone, Debug)]
pub struct AtomDecl {
    pub name: String,
    pub polarity: Polarity,
    pub span: Span,
}

impl PartialEq for AtomDecl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.polarity == other.polarity
    }
}
impl Eq for AtomDecl {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    Atom(AtomDecl),
    Query(RawQuery),
}
