//! The subtype order and its partial meet and join.
//!
//! The order is the discrete order on atoms, congruently extended with a
//! per-polarity top as maximal element. Every position is covariant except
//! function and lolli domains. Meet and join are structural: heads must
//! match (or one side be the top), so a missing meet is a normal result,
//! not a fault.

use super::ty::{family, is_top, polarity_of, TypeExpr};
use super::KernelError;
use TypeExpr::*;

fn check_comparable(a: &TypeExpr, b: &TypeExpr) -> Result<(), KernelError> {
    if family(a) != family(b) {
        return Err(KernelError::MixedFamilies { left: a.clone(), right: b.clone() });
    }
    if polarity_of(a) != polarity_of(b) {
        return Err(KernelError::MixedPolarities { left: a.clone(), right: b.clone() });
    }
    Ok(())
}

/// Whether `a ⊑ b`. Comparing across families or polarities is an
/// ill-formed query.
pub fn subtype(a: &TypeExpr, b: &TypeExpr) -> Result<bool, KernelError> {
    check_comparable(a, b)?;
    Ok(sub(a, b))
}

fn sub(a: &TypeExpr, b: &TypeExpr) -> bool {
    if is_top(b) {
        return true;
    }
    match (a, b) {
        (Atom(x), Atom(y)) | (PosAtom(x), PosAtom(y)) | (NegAtom(x), NegAtom(y)) => x == y,
        (Unit, Unit)
        | (Empty, Empty)
        | (TensorUnit, TensorUnit)
        | (Zero, Zero)
        | (ParUnit, ParUnit)
        | (WithUnit, WithUnit) => true,
        // Contravariant domains.
        (Arrow(d1, c1), Arrow(d2, c2)) | (Lolli(d1, c1), Lolli(d2, c2)) => {
            sub(d2, d1) && sub(c1, c2)
        }
        // Covariant binary connectives.
        (Prod(a1, b1), Prod(a2, b2))
        | (Sum(a1, b1), Sum(a2, b2))
        | (Tensor(a1, b1), Tensor(a2, b2))
        | (Plus(a1, b1), Plus(a2, b2))
        | (Par(a1, b1), Par(a2, b2))
        | (With(a1, b1), With(a2, b2)) => sub(a1, a2) && sub(b1, b2),
        // Negations and shifts are covariant.
        (Sim(x), Sim(y))
        | (Not(x), Not(y))
        | (Down(x), Down(y))
        | (Up(x), Up(y))
        | (DownAdj(x), DownAdj(y))
        | (UpAdj(x), UpAdj(y)) => sub(x, y),
        _ => false,
    }
}

/// The partial greatest lower bound. `Ok(None)` means no meet.
pub fn meet(a: &TypeExpr, b: &TypeExpr) -> Result<Option<TypeExpr>, KernelError> {
    check_comparable(a, b)?;
    Ok(glb(a, b))
}

/// The partial least upper bound, forced by the contravariant positions of
/// meet. `Ok(None)` means no join.
pub fn join(a: &TypeExpr, b: &TypeExpr) -> Result<Option<TypeExpr>, KernelError> {
    check_comparable(a, b)?;
    Ok(lub(a, b))
}

fn glb(a: &TypeExpr, b: &TypeExpr) -> Option<TypeExpr> {
    if is_top(a) {
        return Some(b.clone());
    }
    if is_top(b) {
        return Some(a.clone());
    }
    match (a, b) {
        (Atom(x), Atom(y)) | (PosAtom(x), PosAtom(y)) | (NegAtom(x), NegAtom(y)) => {
            (x == y).then(|| a.clone())
        }
        (Unit, Unit)
        | (Empty, Empty)
        | (TensorUnit, TensorUnit)
        | (Zero, Zero)
        | (ParUnit, ParUnit)
        | (WithUnit, WithUnit) => Some(a.clone()),
        (Arrow(d1, c1), Arrow(d2, c2)) => {
            Some(Arrow(Box::new(lub(d1, d2)?), Box::new(glb(c1, c2)?)))
        }
        (Lolli(d1, c1), Lolli(d2, c2)) => {
            Some(Lolli(Box::new(lub(d1, d2)?), Box::new(glb(c1, c2)?)))
        }
        (Prod(a1, b1), Prod(a2, b2)) => {
            Some(Prod(Box::new(glb(a1, a2)?), Box::new(glb(b1, b2)?)))
        }
        (Sum(a1, b1), Sum(a2, b2)) => Some(Sum(Box::new(glb(a1, a2)?), Box::new(glb(b1, b2)?))),
        (Tensor(a1, b1), Tensor(a2, b2)) => {
            Some(Tensor(Box::new(glb(a1, a2)?), Box::new(glb(b1, b2)?)))
        }
        (Plus(a1, b1), Plus(a2, b2)) => {
            Some(Plus(Box::new(glb(a1, a2)?), Box::new(glb(b1, b2)?)))
        }
        (Par(a1, b1), Par(a2, b2)) => Some(Par(Box::new(glb(a1, a2)?), Box::new(glb(b1, b2)?))),
        (With(a1, b1), With(a2, b2)) => {
            Some(With(Box::new(glb(a1, a2)?), Box::new(glb(b1, b2)?)))
        }
        (Sim(x), Sim(y)) => Some(Sim(Box::new(glb(x, y)?))),
        (Not(x), Not(y)) => Some(Not(Box::new(glb(x, y)?))),
        (Down(x), Down(y)) => Some(Down(Box::new(glb(x, y)?))),
        (Up(x), Up(y)) => Some(Up(Box::new(glb(x, y)?))),
        (DownAdj(x), DownAdj(y)) => Some(DownAdj(Box::new(glb(x, y)?))),
        (UpAdj(x), UpAdj(y)) => Some(UpAdj(Box::new(glb(x, y)?))),
        _ => None,
    }
}

fn lub(a: &TypeExpr, b: &TypeExpr) -> Option<TypeExpr> {
    if is_top(a) {
        return Some(a.clone());
    }
    if is_top(b) {
        return Some(b.clone());
    }
    match (a, b) {
        (Atom(x), Atom(y)) | (PosAtom(x), PosAtom(y)) | (NegAtom(x), NegAtom(y)) => {
            (x == y).then(|| a.clone())
        }
        (Unit, Unit)
        | (Empty, Empty)
        | (TensorUnit, TensorUnit)
        | (Zero, Zero)
        | (ParUnit, ParUnit)
        | (WithUnit, WithUnit) => Some(a.clone()),
        (Arrow(d1, c1), Arrow(d2, c2)) => {
            Some(Arrow(Box::new(glb(d1, d2)?), Box::new(lub(c1, c2)?)))
        }
        (Lolli(d1, c1), Lolli(d2, c2)) => {
            Some(Lolli(Box::new(glb(d1, d2)?), Box::new(lub(c1, c2)?)))
        }
        (Prod(a1, b1), Prod(a2, b2)) => {
            Some(Prod(Box::new(lub(a1, a2)?), Box::new(lub(b1, b2)?)))
        }
        (Sum(a1, b1), Sum(a2, b2)) => Some(Sum(Box::new(lub(a1, a2)?), Box::new(lub(b1, b2)?))),
        (Tensor(a1, b1), Tensor(a2, b2)) => {
            Some(Tensor(Box::new(lub(a1, a2)?), Box::new(lub(b1, b2)?)))
        }
        (Plus(a1, b1), Plus(a2, b2)) => {
            Some(Plus(Box::new(lub(a1, a2)?), Box::new(lub(b1, b2)?)))
        }
        (Par(a1, b1), Par(a2, b2)) => Some(Par(Box::new(lub(a1, a2)?), Box::new(lub(b1, b2)?))),
        (With(a1, b1), With(a2, b2)) => {
            Some(With(Box::new(lub(a1, a2)?), Box::new(lub(b1, b2)?)))
        }
        (Sim(x), Sim(y)) => Some(Sim(Box::new(lub(x, y)?))),
        (Not(x), Not(y)) => Some(Not(Box::new(lub(x, y)?))),
        (Down(x), Down(y)) => Some(Down(Box::new(lub(x, y)?))),
        (Up(x), Up(y)) => Some(Up(Box::new(lub(x, y)?))),
        (DownAdj(x), DownAdj(y)) => Some(DownAdj(Box::new(lub(x, y)?))),
        (UpAdj(x), UpAdj(y)) => Some(UpAdj(Box::new(lub(x, y)?))),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> TypeExpr {
        Atom("P".into())
    }
    fn q() -> TypeExpr {
        Atom("Q".into())
    }
    fn arr(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        Arrow(Box::new(a), Box::new(b))
    }

    #[test]
    fn subtype_examples() {
        assert!(subtype(&p(), &p()).unwrap());
        assert!(subtype(&p(), &Top).unwrap());
        // Requires P ⊑ Top on the contravariant side.
        assert!(subtype(&arr(Top, p()), &arr(p(), p())).unwrap());
        assert!(!subtype(&arr(p(), p()), &arr(Top, p())).unwrap());
        assert!(subtype(&p(), &PosAtom("P".into())).is_err());
    }

    #[test]
    fn meet_examples() {
        assert_eq!(meet(&p(), &p()).unwrap(), Some(p()));
        assert_eq!(meet(&Top, &arr(p(), q())).unwrap(), Some(arr(p(), q())));
        assert_eq!(
            meet(&arr(Top, p()), &arr(p(), p())).unwrap(),
            Some(arr(Top, p()))
        );
        assert_eq!(meet(&p(), &q()).unwrap(), None);
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&p(), &Top).unwrap(), Some(Top));
        assert_eq!(join(&p(), &p()).unwrap(), Some(p()));
        assert_eq!(
            join(&arr(Top, p()), &arr(p(), p())).unwrap(),
            Some(arr(p(), p()))
        );
        assert_eq!(join(&p(), &q()).unwrap(), None);
    }
}
