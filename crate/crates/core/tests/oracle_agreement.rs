//! The oracle on its specified example judgements, and checker/oracle
//! agreement over seeded corpora for every calculus. The acceptance suite
//! runs the same harness at larger scale.

mod common;

use common::{elab, parse_single};
use polcheck_core::diag::Instr;
use polcheck_core::oracle::{agree, derive_query, enumerate_types, generate_corpus, TypeUniverse};
use polcheck_core::scope::{elaborate, Calculus};
use polcheck_core::surface::ast::{Directive, QueryKind};
use polcheck_core::surface::print_directive;
use polcheck_core::{run_query, Polarity, Preset, StructConfig, TypeExpr, TypedCtx, TypedEntry};

fn universe_for(c: Calculus) -> TypeUniverse {
    match c {
        Calculus::Stlc | Calculus::Lin | Calculus::Cdb => TypeUniverse::lambda(&["P", "Q"], 2),
        _ => TypeUniverse::system_l(&["P", "Q", "N", "M"], &["P", "Q", "N", "M"], 2),
    }
}

#[test]
fn bare_checkable_variable_derives_every_type() {
    // A lambda-check of `x` at each universe type succeeds with the matching
    // singleton context.
    let u = TypeUniverse::lambda(&["P", "Q"], 0);
    for ty in enumerate_types(&u, Polarity::Unpolarised)
        .into_iter()
        .filter(|t| polcheck_core::scope::type_allowed_in(Calculus::Lin, t))
    {
        let src = format!("atom P plain; atom Q plain; lambda-check [x] x : {ty} ;");
        let q = elab(&src, Calculus::Lin, Preset::Linear).unwrap();
        let set = derive_query(&q, &u, &StructConfig::preset(Preset::Linear));
        let sigma: TypedCtx = [TypedEntry::new("x", ty.clone())].into_iter().collect();
        assert!(set
            .iter()
            .any(|j| j.ty.as_ref() == Some(&ty) && j.sigma == sigma));
    }
}

#[test]
fn annotation_intersects_the_derivable_set() {
    let u = TypeUniverse::lambda(&["P", "Q"], 1);
    let q = elab(
        "atom P plain; atom Q plain; lambda-synth [] \\x. (x : P) ;",
        Calculus::Lin,
        Preset::Linear,
    )
    .unwrap();
    let set = derive_query(&q, &u, &StructConfig::preset(Preset::Linear));
    assert_eq!(set.len(), 1);
    let j = set.iter().next().unwrap();
    assert_eq!(j.ty.as_ref().unwrap().to_string(), "P -o P");
    assert!(j.sigma.is_empty());
}

#[test]
fn unit_against_atom_is_underivable() {
    let u = universe_for(Calculus::Pos);
    let q = elab(
        "atom P positive; command [k : P] < () | k > ;",
        Calculus::Pos,
        Preset::Linear,
    )
    .unwrap();
    let set = derive_query(&q, &u, &StructConfig::preset(Preset::Linear));
    assert!(set.is_empty());
}

#[test]
fn agree_on_trivial_cases() {
    let u = universe_for(Calculus::Pos);
    let cfg = StructConfig::preset(Preset::Linear);
    let q = elab("atom P positive; command [k : P] < x | k > ;", Calculus::Pos, Preset::Linear)
        .unwrap();
    let set = derive_query(&q, &u, &cfg);
    let good: Result<_, polcheck_core::diag::TypeError> = Ok((
        None,
        [TypedEntry::new("x", TypeExpr::PosAtom("P".into()))]
            .into_iter()
            .collect::<TypedCtx>(),
    ));
    assert!(agree(&good, &set, &q));
    // A verdict the oracle does not contain disagrees.
    let bad: Result<_, polcheck_core::diag::TypeError> = Ok((
        None,
        [TypedEntry::new("x", TypeExpr::PosAtom("Q".into()))]
            .into_iter()
            .collect::<TypedCtx>(),
    ));
    assert!(!agree(&bad, &set, &q));
    // Checker errors agree exactly with empty restricted sets.
    let err: Result<(Option<TypeExpr>, TypedCtx), _> = Err(polcheck_core::diag::TypeError::new(
        polcheck_core::diag::TypeCode::Mismatch,
        Default::default(),
        "x",
    ));
    assert!(!agree(&err, &set, &q));
}

fn agreement_run(
    calculus: Calculus,
    preset: Preset,
    kinds: &[QueryKind],
    seed: u64,
    size: usize,
    count: usize,
) -> (usize, usize) {
    let cfg = StructConfig::preset(preset);
    let u = universe_for(calculus);
    let mut checked = 0usize;
    let mut accepted = 0usize;
    for kind in kinds {
        let dirs = generate_corpus(seed, size, *kind, calculus, &cfg, count);
        for d in &dirs {
            let Directive::Query(raw) = d else { continue };
            let q = match elaborate(raw, calculus, &cfg) {
                Ok(q) => q,
                Err(e) => panic!(
                    "generated directive fails to elaborate: {}\n  {e}",
                    print_directive(d)
                ),
            };
            let mut instr = Instr::default();
            let outcome = run_query(&q, &cfg, &mut instr);
            let set = derive_query(&q, &u, &cfg);
            assert!(
                agree(&outcome, &set, &q),
                "disagreement on {}\n  checker: {outcome:?}\n  oracle: {set:?}",
                print_directive(d)
            );
            checked += 1;
            if outcome.is_ok() {
                accepted += 1;
            }
        }
    }
    (checked, accepted)
}

#[test]
fn lambda_checkers_agree_with_the_oracle() {
    let kinds = [QueryKind::LambdaCheck, QueryKind::LambdaSynth];
    let (n, ok) = agreement_run(Calculus::Stlc, Preset::Cartesian, &kinds, 11, 8, 150);
    assert_eq!(n, 300);
    assert!(ok > 10, "stlc corpus almost never typechecks ({ok}/{n})");
    let (n, ok) = agreement_run(Calculus::Lin, Preset::Linear, &kinds, 12, 8, 150);
    assert_eq!(n, 300);
    assert!(ok > 10, "lin corpus almost never typechecks ({ok}/{n})");
    let (n, ok) = agreement_run(Calculus::Cdb, Preset::Cartesian, &kinds, 13, 8, 150);
    assert_eq!(n, 300);
    assert!(ok > 10, "cdb corpus almost never typechecks ({ok}/{n})");
}

#[test]
fn systeml_checkers_agree_with_the_oracle() {
    let pos = [QueryKind::Expr, QueryKind::Pattern, QueryKind::Command];
    let neg = [QueryKind::Copattern, QueryKind::Coexpr, QueryKind::Command];
    let all = [
        QueryKind::Expr,
        QueryKind::Pattern,
        QueryKind::Copattern,
        QueryKind::Coexpr,
        QueryKind::Command,
    ];
    let (n, ok) = agreement_run(Calculus::Pos, Preset::Linear, &pos, 21, 8, 100);
    assert_eq!(n, 300);
    assert!(ok > 10, "pos corpus almost never typechecks ({ok}/{n})");
    let (n, ok) = agreement_run(Calculus::Neg, Preset::Linear, &neg, 22, 8, 100);
    assert_eq!(n, 300);
    assert!(ok > 10);
    let (n, ok) = agreement_run(Calculus::Pol, Preset::Linear, &all, 23, 8, 60);
    assert_eq!(n, 300);
    assert!(ok > 10);
    let (n, ok) = agreement_run(Calculus::Pol, Preset::Cartesian, &all, 24, 8, 60);
    assert_eq!(n, 300);
    assert!(ok > 10);
    let (n, ok) = agreement_run(Calculus::Lnl, Preset::LnlFull, &all, 25, 8, 60);
    assert_eq!(n, 300);
    assert!(ok > 5);
}

#[test]
fn corpus_is_deterministic() {
    let cfg = StructConfig::preset(Preset::Linear);
    let a = generate_corpus(1, 3, QueryKind::Command, Calculus::Pos, &cfg, 10);
    let b = generate_corpus(1, 3, QueryKind::Command, Calculus::Pos, &cfg, 10);
    assert_eq!(a, b);
    let texts: Vec<String> = a.iter().map(print_directive).collect();
    assert_eq!(texts.len(), 14); // 4 atoms + 10 queries
}

#[test]
fn size_zero_like_corpora_are_variables_only() {
    let cfg = StructConfig::preset(Preset::Linear);
    let dirs = generate_corpus(7, 1, QueryKind::Expr, Calculus::Pos, &cfg, 20);
    for d in dirs {
        if let Directive::Query(q) = d {
            assert!(matches!(
                q.term.kind,
                polcheck_core::surface::ast::RawKind::Var(_)
                    | polcheck_core::surface::ast::RawKind::UnitI
                    | polcheck_core::surface::ast::RawKind::Match(
                        polcheck_core::surface::ast::MatchBody::Empty
                    )
            ));
        }
    }
}

#[test]
fn oracle_is_self_dual() {
    use polcheck_core::systeml::dualize::{dual_query, dual_type, dual_typed_ctx};
    let cfg = StructConfig::preset(Preset::Linear);
    let u = universe_for(Calculus::Pol);
    let dirs = generate_corpus(31, 6, QueryKind::Command, Calculus::Pol, &cfg, 60);
    for d in &dirs {
        let Directive::Query(raw) = d else { continue };
        let q = elaborate(raw, Calculus::Pol, &cfg).expect("elaborates");
        let set = derive_query(&q, &u, &cfg);
        let draw = dual_query(raw).unwrap();
        let dq = elaborate(&draw, Calculus::Pol, &cfg).expect("dual elaborates");
        let dset = derive_query(&dq, &u, &cfg);
        let transported: polcheck_core::oracle::JudgementSet = set
            .iter()
            .map(|j| polcheck_core::oracle::Judgement {
                ty: j.ty.as_ref().map(|t| dual_type(t).unwrap()),
                sigma: dual_typed_ctx(&j.sigma).unwrap(),
            })
            .collect();
        assert_eq!(transported, dset, "self-duality fails on {}", print_directive(d));
    }
}

#[test]
fn oracle_monotone_in_the_universe() {
    let cfg = StructConfig::preset(Preset::Linear);
    let small = TypeUniverse::system_l(&["P", "Q"], &["N", "M"], 1);
    let big = TypeUniverse::system_l(&["P", "Q", "N"], &["N", "M", "P"], 2);
    let dirs = generate_corpus(41, 6, QueryKind::Pattern, Calculus::Pol, &cfg, 40);
    for d in &dirs {
        let Directive::Query(raw) = d else { continue };
        let q = elaborate(raw, Calculus::Pol, &cfg).expect("elaborates");
        let s1 = derive_query(&q, &small, &cfg);
        let s2 = derive_query(&q, &big, &cfg);
        assert!(s1.is_subset(&s2), "universe growth lost judgements on {}", print_directive(d));
    }
}

#[test]
fn derived_example_k_combinator_oracle_confirmed() {
    // The standard checker accepts the K combinator; the oracle agrees.
    let u = universe_for(Calculus::Stlc);
    let cfg = StructConfig::preset(Preset::Cartesian);
    let q = elab(
        "atom P plain; atom Q plain; lambda-check [] \\x. \\y. x : P -> (Q -> P) ;",
        Calculus::Stlc,
        Preset::Cartesian,
    )
    .unwrap();
    let set = derive_query(&q, &u, &cfg);
    assert_eq!(set.len(), 1);

    // And `f x` synthesises Q, oracle-confirmed.
    let q = parse_single(
        "atom P plain; atom Q plain; lambda-synth [f : P -> Q, x : P] f x ;",
    );
    let q = elaborate(&q, Calculus::Stlc, &cfg).unwrap();
    let set = derive_query(&q, &u, &cfg);
    assert_eq!(set.len(), 1);
    assert_eq!(
        set.iter().next().unwrap().ty.as_ref().unwrap(),
        &TypeExpr::Atom("Q".into())
    );
}
