//! Finite type universes and their deterministic enumeration.

use crate::kernel::ty::{Polarity, TypeExpr};

/// A finite universe of types: atoms per polarity and a connective depth
/// bound. Enumeration is deterministic and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeUniverse {
    pub plain_atoms: Vec<String>,
    pub pos_atoms: Vec<String>,
    pub neg_atoms: Vec<String>,
    pub depth: usize,
}

impl TypeUniverse {
    pub fn lambda(atoms: &[&str], depth: usize) -> Self {
        TypeUniverse {
            plain_atoms: atoms.iter().map(|s| s.to_string()).collect(),
            pos_atoms: Vec::new(),
            neg_atoms: Vec::new(),
            depth,
        }
    }

    pub fn system_l(pos: &[&str], neg: &[&str], depth: usize) -> Self {
        TypeUniverse {
            plain_atoms: Vec::new(),
            pos_atoms: pos.iter().map(|s| s.to_string()).collect(),
            neg_atoms: neg.iter().map(|s| s.to_string()).collect(),
            depth,
        }
    }

    /// Whether a type fits the universe: depth within bound and atoms drawn
    /// from the atom sets. Internal tops fit; they are rule-synthesised, not
    /// enumerated.
    pub fn fits(&self, t: &TypeExpr) -> bool {
        crate::kernel::ty::depth(t) <= self.depth && self.atoms_ok(t)
    }

    fn atoms_ok(&self, t: &TypeExpr) -> bool {
        use TypeExpr::*;
        match t {
            Atom(n) => self.plain_atoms.iter().any(|a| a == n),
            PosAtom(n) => self.pos_atoms.iter().any(|a| a == n),
            NegAtom(n) => self.neg_atoms.iter().any(|a| a == n),
            Unit | Empty | Top | TensorUnit | Zero | TopPos | ParUnit | WithUnit | TopNeg => true,
            Arrow(a, b) | Lolli(a, b) | Prod(a, b) | Sum(a, b) | Tensor(a, b) | Plus(a, b)
            | Par(a, b) | With(a, b) => self.atoms_ok(a) && self.atoms_ok(b),
            Sim(a) | Down(a) | DownAdj(a) | Not(a) | Up(a) | UpAdj(a) => self.atoms_ok(a),
        }
    }
}

/// All well-polarised top-free types of the universe up to its depth bound,
/// in a fixed total order: depth by depth, atoms before nullary connectives
/// before binary before unary, arguments in enumeration order.
///
/// The polarised grammar covers the base System L connectives; the adjoint
/// shifts are not enumerated. Lambda types (`Unpolarised`) enumerate both
/// function formers.
pub fn enumerate_types(u: &TypeUniverse, pol: Polarity) -> Vec<TypeExpr> {
    let mut by_depth: Vec<Vec<(Polarity, TypeExpr)>> = Vec::new();
    let mut level0: Vec<(Polarity, TypeExpr)> = Vec::new();
    match pol {
        Polarity::Unpolarised => {
            for a in &u.plain_atoms {
                level0.push((pol, TypeExpr::Atom(a.clone())));
            }
            level0.push((pol, TypeExpr::Unit));
            level0.push((pol, TypeExpr::Empty));
        }
        _ => {
            for a in &u.pos_atoms {
                level0.push((Polarity::Positive, TypeExpr::PosAtom(a.clone())));
            }
            level0.push((Polarity::Positive, TypeExpr::TensorUnit));
            level0.push((Polarity::Positive, TypeExpr::Zero));
            for a in &u.neg_atoms {
                level0.push((Polarity::Negative, TypeExpr::NegAtom(a.clone())));
            }
            level0.push((Polarity::Negative, TypeExpr::ParUnit));
            level0.push((Polarity::Negative, TypeExpr::WithUnit));
        }
    }
    by_depth.push(level0);

    for d in 1..=u.depth {
        let mut level: Vec<(Polarity, TypeExpr)> = Vec::new();
        // Every type of depth exactly d has an argument of depth d-1.
        let below: Vec<(Polarity, TypeExpr)> =
            by_depth.iter().flatten().cloned().collect();
        let exact = &by_depth[d - 1];
        let push_binary =
            |level: &mut Vec<(Polarity, TypeExpr)>,
             want: Polarity,
             mk: &dyn Fn(TypeExpr, TypeExpr) -> TypeExpr| {
                for (pl, l) in &below {
                    for (pr, r) in &below {
                        if *pl != want || *pr != want {
                            continue;
                        }
                        let t = mk(l.clone(), r.clone());
                        if crate::kernel::ty::depth(&t) == d {
                            level.push((want, t));
                        }
                    }
                }
            };
        match pol {
            Polarity::Unpolarised => {
                push_binary(&mut level, pol, &|a, b| {
                    TypeExpr::Arrow(Box::new(a), Box::new(b))
                });
                push_binary(&mut level, pol, &|a, b| {
                    TypeExpr::Lolli(Box::new(a), Box::new(b))
                });
                push_binary(&mut level, pol, &|a, b| {
                    TypeExpr::Prod(Box::new(a), Box::new(b))
                });
                push_binary(&mut level, pol, &|a, b| TypeExpr::Sum(Box::new(a), Box::new(b)));
            }
            _ => {
                push_binary(&mut level, Polarity::Positive, &|a, b| {
                    TypeExpr::Tensor(Box::new(a), Box::new(b))
                });
                push_binary(&mut level, Polarity::Positive, &|a, b| {
                    TypeExpr::Plus(Box::new(a), Box::new(b))
                });
                for (p, t) in exact {
                    if *p == Polarity::Negative {
                        level.push((Polarity::Positive, TypeExpr::Sim(Box::new(t.clone()))));
                    }
                }
                for (p, t) in exact {
                    if *p == Polarity::Negative {
                        level.push((Polarity::Positive, TypeExpr::Down(Box::new(t.clone()))));
                    }
                }
                push_binary(&mut level, Polarity::Negative, &|a, b| {
                    TypeExpr::Par(Box::new(a), Box::new(b))
                });
                push_binary(&mut level, Polarity::Negative, &|a, b| {
                    TypeExpr::With(Box::new(a), Box::new(b))
                });
                for (p, t) in exact {
                    if *p == Polarity::Positive {
                        level.push((Polarity::Negative, TypeExpr::Not(Box::new(t.clone()))));
                    }
                }
                for (p, t) in exact {
                    if *p == Polarity::Positive {
                        level.push((Polarity::Negative, TypeExpr::Up(Box::new(t.clone()))));
                    }
                }
            }
        }
        by_depth.push(level);
    }

    by_depth
        .into_iter()
        .flatten()
        .filter(|(p, _)| pol == Polarity::Unpolarised || *p == pol)
        .map(|(_, t)| t)
        .collect()
}
