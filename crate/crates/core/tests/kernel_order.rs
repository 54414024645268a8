//! The subtype order against an independent saturation oracle, and
//! soundness/maximality of meet and join by brute force over a finite
//! universe.

use std::collections::HashSet;

use polcheck_core::kernel::order::{join, meet, subtype};
use polcheck_core::kernel::ty::{is_top, TypeExpr};
use proptest::prelude::*;

/// All lambda types over {P, Q} with arrow and product formers up to the
/// given depth, plus Top at every level.
fn universe(depth: usize) -> Vec<TypeExpr> {
    let mut levels: Vec<Vec<TypeExpr>> = vec![vec![
        TypeExpr::Atom("P".into()),
        TypeExpr::Atom("Q".into()),
        TypeExpr::Top,
    ]];
    for d in 1..=depth {
        let below: Vec<TypeExpr> = levels.iter().flatten().cloned().collect();
        let mut level = Vec::new();
        for a in &below {
            for b in &below {
                for t in [
                    TypeExpr::Arrow(Box::new(a.clone()), Box::new(b.clone())),
                    TypeExpr::Prod(Box::new(a.clone()), Box::new(b.clone())),
                ] {
                    if polcheck_core::kernel::ty::depth(&t) == d {
                        level.push(t);
                    }
                }
            }
        }
        levels.push(level);
    }
    levels.into_iter().flatten().collect()
}

/// Independent oracle: the least relation containing reflexivity and
/// `x ≤ Top`, closed under congruence (contravariant domains) and
/// transitivity, computed by saturation to a fixpoint over the universe.
fn saturated_order(univ: &[TypeExpr]) -> HashSet<(TypeExpr, TypeExpr)> {
    let mut rel: HashSet<(TypeExpr, TypeExpr)> = HashSet::new();
    for t in univ {
        rel.insert((t.clone(), t.clone()));
        rel.insert((t.clone(), TypeExpr::Top));
    }
    loop {
        let mut grew = false;
        // Congruence.
        for a in univ {
            for b in univ {
                if rel.contains(&(a.clone(), b.clone())) {
                    continue;
                }
                let derived = match (a, b) {
                    (TypeExpr::Arrow(d1, c1), TypeExpr::Arrow(d2, c2)) => {
                        rel.contains(&((**d2).clone(), (**d1).clone()))
                            && rel.contains(&((**c1).clone(), (**c2).clone()))
                    }
                    (TypeExpr::Prod(a1, b1), TypeExpr::Prod(a2, b2)) => {
                        rel.contains(&((**a1).clone(), (**a2).clone()))
                            && rel.contains(&((**b1).clone(), (**b2).clone()))
                    }
                    _ => false,
                };
                if derived {
                    rel.insert((a.clone(), b.clone()));
                    grew = true;
                }
            }
        }
        // Transitivity.
        let pairs: Vec<_> = rel.iter().cloned().collect();
        for (a, b) in &pairs {
            for (b2, c) in &pairs {
                if b == b2 && !rel.contains(&(a.clone(), c.clone())) {
                    rel.insert((a.clone(), c.clone()));
                    grew = true;
                }
            }
        }
        if !grew {
            return rel;
        }
    }
}

#[test]
fn subtype_equals_the_saturated_closure() {
    let univ = universe(2);
    let rel = saturated_order(&univ);
    for a in &univ {
        for b in &univ {
            let got = subtype(a, b).unwrap();
            let want = rel.contains(&(a.clone(), b.clone()));
            assert_eq!(got, want, "subtype({a}, {b})");
        }
    }
    // The saturated relation is transitive by construction, so agreement
    // makes subtype transitive; antisymmetry up to syntactic equality:
    for (a, b) in &rel {
        if a != b {
            assert!(!rel.contains(&(b.clone(), a.clone())), "antisymmetry: {a} vs {b}");
        }
    }
}

#[test]
fn meet_join_sound_and_maximal_over_the_universe() {
    let univ = universe(2);
    for a in &univ {
        for b in &univ {
            if let Some(m) = meet(a, b).unwrap() {
                assert!(subtype(&m, a).unwrap(), "meet({a},{b}) = {m} not below {a}");
                assert!(subtype(&m, b).unwrap());
                // Maximal among common lower bounds in the universe.
                for s in &univ {
                    if subtype(s, a).unwrap() && subtype(s, b).unwrap() {
                        assert!(
                            !(subtype(&m, s).unwrap() && m != *s),
                            "meet({a},{b}) = {m} is below the common lower bound {s}"
                        );
                    }
                }
            }
            if let Some(j) = join(a, b).unwrap() {
                assert!(subtype(a, &j).unwrap());
                assert!(subtype(b, &j).unwrap());
                for s in &univ {
                    if subtype(a, s).unwrap() && subtype(b, s).unwrap() {
                        assert!(
                            !(subtype(s, &j).unwrap() && j != *s),
                            "join({a},{b}) = {j} is above the common upper bound {s}"
                        );
                    }
                }
            }
        }
    }
}

// Random deeper types for the order laws.
fn arb_type(depth: u32) -> impl Strategy<Value = TypeExpr> {
    let leaf = prop_oneof![
        Just(TypeExpr::Atom("P".into())),
        Just(TypeExpr::Atom("Q".into())),
        Just(TypeExpr::Top),
        Just(TypeExpr::Unit),
    ];
    leaf.prop_recursive(depth, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TypeExpr::Arrow(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TypeExpr::Prod(Box::new(a), Box::new(b))),
            (inner.clone(), inner)
                .prop_map(|(a, b)| TypeExpr::Sum(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #[test]
    fn subtype_reflexive_and_top_maximal(a in arb_type(3)) {
        prop_assert!(subtype(&a, &a).unwrap());
        prop_assert!(subtype(&a, &TypeExpr::Top).unwrap());
        prop_assert_eq!(subtype(&TypeExpr::Top, &a).unwrap(), is_top(&a));
    }

    #[test]
    fn subtype_transitive_on_samples(a in arb_type(3), b in arb_type(3), c in arb_type(3)) {
        if subtype(&a, &b).unwrap() && subtype(&b, &c).unwrap() {
            prop_assert!(subtype(&a, &c).unwrap());
        }
    }

    #[test]
    fn meet_is_a_lower_bound_and_commutes(a in arb_type(3), b in arb_type(3)) {
        let m1 = meet(&a, &b).unwrap();
        let m2 = meet(&b, &a).unwrap();
        prop_assert_eq!(&m1, &m2);
        if let Some(m) = m1 {
            prop_assert!(subtype(&m, &a).unwrap());
            prop_assert!(subtype(&m, &b).unwrap());
        }
        if let Some(j) = join(&a, &b).unwrap() {
            prop_assert!(subtype(&a, &j).unwrap());
            prop_assert!(subtype(&b, &j).unwrap());
        }
    }

    #[test]
    fn meet_with_top_is_identity(a in arb_type(3)) {
        prop_assert_eq!(meet(&TypeExpr::Top, &a).unwrap(), Some(a.clone()));
        prop_assert_eq!(meet(&a, &TypeExpr::Top).unwrap(), Some(a.clone()));
        prop_assert_eq!(join(&a, &TypeExpr::Top).unwrap(), Some(TypeExpr::Top));
    }
}
