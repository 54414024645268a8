//! The type language shared by every calculus in the workbench.
//!
//! Lambda-family connectives and System L connectives live in one enum but
//! never mix inside a single type; [`family`] and [`polarity_of`] classify
//! every constructor. The three `Top` forms are checker-internal: they are
//! synthesised for discarded variables and never written by users.

use std::fmt;

/// Polarity of a type or judgement. Lambda-family types are `Unpolarised`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
    Unpolarised,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
            Polarity::Unpolarised => Polarity::Unpolarised,
        }
    }

    /// Short suffix used when printing context entries (`x+ : P`).
    pub fn mark(self) -> &'static str {
        match self {
            Polarity::Positive => "+",
            Polarity::Negative => "-",
            Polarity::Unpolarised => "",
        }
    }
}

/// Which calculus family a type belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Lambda,
    SystemL,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeExpr {
    // Lambda family.
    Atom(String),
    /// Nullary product, printed `1`.
    Unit,
    /// Nullary coproduct, printed `0`.
    Empty,
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
    Lolli(Box<TypeExpr>, Box<TypeExpr>),
    Prod(Box<TypeExpr>, Box<TypeExpr>),
    Sum(Box<TypeExpr>, Box<TypeExpr>),
    /// Type of a discarded lambda variable; never user-written.
    Top,

    // System L, positive.
    PosAtom(String),
    /// Tensor unit, printed `I`.
    TensorUnit,
    Tensor(Box<TypeExpr>, Box<TypeExpr>),
    /// Plus unit, printed `0`.
    Zero,
    Plus(Box<TypeExpr>, Box<TypeExpr>),
    /// Positive negation of a negative type, printed `~A`.
    Sim(Box<TypeExpr>),
    /// Downshift of a negative type, printed `down A`.
    Down(Box<TypeExpr>),
    /// Adjoint downshift of a negative type, printed `Down A`.
    DownAdj(Box<TypeExpr>),
    TopPos,

    // System L, negative.
    NegAtom(String),
    /// Par unit, printed `bot`.
    ParUnit,
    Par(Box<TypeExpr>, Box<TypeExpr>),
    /// With unit, printed `1`.
    WithUnit,
    With(Box<TypeExpr>, Box<TypeExpr>),
    /// Negative negation of a positive type, printed `not A`.
    Not(Box<TypeExpr>),
    /// Upshift of a positive type, printed `up A`.
    Up(Box<TypeExpr>),
    /// Adjoint upshift of a positive type, printed `Up A`.
    UpAdj(Box<TypeExpr>),
    TopNeg,
}

use TypeExpr::*;

/// Total polarity assignment over the type grammar.
pub fn polarity_of(t: &TypeExpr) -> Polarity {
    match t {
        Atom(_) | Unit | Empty | Arrow(..) | Lolli(..) | Prod(..) | Sum(..) | Top => {
            Polarity::Unpolarised
        }
        PosAtom(_) | TensorUnit | Tensor(..) | Zero | Plus(..) | Sim(_) | Down(_) | DownAdj(_)
        | TopPos => Polarity::Positive,
        NegAtom(_) | ParUnit | Par(..) | WithUnit | With(..) | Not(_) | Up(_) | UpAdj(_)
        | TopNeg => Polarity::Negative,
    }
}

pub fn family(t: &TypeExpr) -> Family {
    match polarity_of(t) {
        Polarity::Unpolarised => Family::Lambda,
        _ => Family::SystemL,
    }
}

/// The internal top of the given polarity, used for discarded variables.
pub fn top_of(p: Polarity) -> TypeExpr {
    match p {
        Polarity::Positive => TopPos,
        Polarity::Negative => TopNeg,
        Polarity::Unpolarised => Top,
    }
}

pub fn is_top(t: &TypeExpr) -> bool {
    matches!(t, Top | TopPos | TopNeg)
}

/// Whether a checker-internal top occurs anywhere inside `t`.
pub fn contains_top(t: &TypeExpr) -> bool {
    match t {
        Top | TopPos | TopNeg => true,
        Atom(_) | Unit | Empty | PosAtom(_) | TensorUnit | Zero | NegAtom(_) | ParUnit
        | WithUnit => false,
        Arrow(a, b) | Lolli(a, b) | Prod(a, b) | Sum(a, b) | Tensor(a, b) | Plus(a, b)
        | Par(a, b) | With(a, b) => contains_top(a) || contains_top(b),
        Sim(a) | Down(a) | DownAdj(a) | Not(a) | Up(a) | UpAdj(a) => contains_top(a),
    }
}

/// Polarity well-formedness: every argument of a connective has the polarity
/// the grammar row demands. User types reaching the checkers satisfy this by
/// construction; the oracle and generators rely on it.
pub fn well_formed(t: &TypeExpr) -> bool {
    match t {
        Atom(_) | Unit | Empty | Top | PosAtom(_) | TensorUnit | Zero | TopPos | NegAtom(_)
        | ParUnit | WithUnit | TopNeg => true,
        Arrow(a, b) | Lolli(a, b) | Prod(a, b) | Sum(a, b) => {
            polarity_of(a) == Polarity::Unpolarised
                && polarity_of(b) == Polarity::Unpolarised
                && well_formed(a)
                && well_formed(b)
        }
        Tensor(a, b) | Plus(a, b) => {
            polarity_of(a) == Polarity::Positive
                && polarity_of(b) == Polarity::Positive
                && well_formed(a)
                && well_formed(b)
        }
        Par(a, b) | With(a, b) => {
            polarity_of(a) == Polarity::Negative
                && polarity_of(b) == Polarity::Negative
                && well_formed(a)
                && well_formed(b)
        }
        Sim(a) | Down(a) | DownAdj(a) => polarity_of(a) == Polarity::Negative && well_formed(a),
        Not(a) | Up(a) | UpAdj(a) => polarity_of(a) == Polarity::Positive && well_formed(a),
    }
}

/// Connective depth: atoms and nullary connectives are depth 0.
pub fn depth(t: &TypeExpr) -> usize {
    match t {
        Atom(_) | Unit | Empty | Top | PosAtom(_) | TensorUnit | Zero | TopPos | NegAtom(_)
        | ParUnit | WithUnit | TopNeg => 0,
        Arrow(a, b) | Lolli(a, b) | Prod(a, b) | Sum(a, b) | Tensor(a, b) | Plus(a, b)
        | Par(a, b) | With(a, b) => 1 + depth(a).max(depth(b)),
        Sim(a) | Down(a) | DownAdj(a) | Not(a) | Up(a) | UpAdj(a) => 1 + depth(a),
    }
}

impl TypeExpr {
    fn is_atomic(&self) -> bool {
        matches!(
            self,
            Atom(_)
                | Unit
                | Empty
                | Top
                | PosAtom(_)
                | TensorUnit
                | Zero
                | TopPos
                | NegAtom(_)
                | ParUnit
                | WithUnit
                | TopNeg
        )
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, t: &TypeExpr) -> fmt::Result {
    if t.is_atomic() {
        write!(f, "{t}")
    } else {
        write!(f, "({t})")
    }
}

/// Prints in the concrete grammar. Compound subterms are always
/// parenthesised, so output re-parses to the same tree.
impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom(n) | PosAtom(n) | NegAtom(n) => write!(f, "{n}"),
            Unit | WithUnit => write!(f, "1"),
            Empty | Zero => write!(f, "0"),
            Top => write!(f, "Top"),
            TopPos => write!(f, "Top+"),
            TopNeg => write!(f, "Top-"),
            TensorUnit => write!(f, "I"),
            ParUnit => write!(f, "bot"),
            Arrow(a, b) => {
                write_child(f, a)?;
                write!(f, " -> ")?;
                write_child(f, b)
            }
            Lolli(a, b) => {
                write_child(f, a)?;
                write!(f, " -o ")?;
                write_child(f, b)
            }
            Prod(a, b) | Tensor(a, b) => {
                write_child(f, a)?;
                write!(f, " * ")?;
                write_child(f, b)
            }
            Sum(a, b) | Plus(a, b) => {
                write_child(f, a)?;
                write!(f, " + ")?;
                write_child(f, b)
            }
            Par(a, b) => {
                write_child(f, a)?;
                write!(f, " par ")?;
                write_child(f, b)
            }
            With(a, b) => {
                write_child(f, a)?;
                write!(f, " & ")?;
                write_child(f, b)
            }
            Sim(a) => {
                write!(f, "~")?;
                write_child(f, a)
            }
            Not(a) => {
                write!(f, "not ")?;
                write_child(f, a)
            }
            Down(a) => {
                write!(f, "down ")?;
                write_child(f, a)
            }
            Up(a) => {
                write!(f, "up ")?;
                write_child(f, a)
            }
            DownAdj(a) => {
                write!(f, "Down ")?;
                write_child(f, a)
            }
            UpAdj(a) => {
                write!(f, "Up ")?;
                write_child(f, a)
            }
        }
    }
}
