//! Parser and printer: grammar examples, error positions, annotation-site
//! exclusivity, and the print/parse round trip over generated corpora.

use polcheck_core::oracle::generate_corpus;
use polcheck_core::scope::Calculus;
use polcheck_core::surface::ast::{Directive, QueryKind, RawKind};
use polcheck_core::surface::{parse_program, parse_type, print_program, AtomTable};
use polcheck_core::{Family, Polarity, Preset, StructConfig, TypeExpr};

fn atoms() -> AtomTable {
    let prog = parse_program(
        "atom P positive; atom Q positive; atom N negative; atom M negative;",
    )
    .unwrap();
    prog.atoms()
}

#[test]
fn type_grammar_examples() {
    let a = atoms();
    let t = parse_type("P * Q", Family::SystemL, &a).unwrap();
    assert_eq!(
        t,
        TypeExpr::Tensor(
            Box::new(TypeExpr::PosAtom("P".into())),
            Box::new(TypeExpr::PosAtom("Q".into()))
        )
    );
    // `!A` desugars to the adjoint decomposition.
    let t = parse_type("!P", Family::SystemL, &a).unwrap();
    assert_eq!(
        t,
        TypeExpr::Down(Box::new(TypeExpr::UpAdj(Box::new(TypeExpr::PosAtom("P".into())))))
    );
    let t = parse_type("?N", Family::SystemL, &a).unwrap();
    assert_eq!(
        t,
        TypeExpr::Up(Box::new(TypeExpr::DownAdj(Box::new(TypeExpr::NegAtom("N".into())))))
    );
    let t = parse_type("N par 1", Family::SystemL, &a).unwrap();
    assert_eq!(
        t,
        TypeExpr::Par(Box::new(TypeExpr::NegAtom("N".into())), Box::new(TypeExpr::WithUnit))
    );
}

#[test]
fn type_polarity_violations_are_errors() {
    let a = atoms();
    let err = parse_type("P par Q", Family::SystemL, &a).unwrap_err();
    assert!(err.message.contains("par"));
    assert!(parse_type("down P", Family::SystemL, &a).is_err());
    assert!(parse_type("P -> Q", Family::SystemL, &a).is_err());
    assert!(parse_type("R", Family::SystemL, &a).unwrap_err().message.contains("unknown atom"));
}

#[test]
fn precedence_unary_prod_sum_arrow() {
    let prog = parse_program("atom P plain; atom Q plain;").unwrap();
    let a = prog.atoms();
    let t = parse_type("P * Q + P -> Q", Family::Lambda, &a).unwrap();
    // ((P*Q)+P) -> Q
    match &t {
        TypeExpr::Arrow(l, r) => {
            assert_eq!(l.to_string(), "(P * Q) + P");
            assert_eq!(r.to_string(), "Q");
        }
        other => panic!("expected arrow, got {other}"),
    }
    // Arrows are right-associative.
    let t = parse_type("P -> Q -> P", Family::Lambda, &a).unwrap();
    assert_eq!(t.to_string(), "P -> (Q -> P)");
}

#[test]
fn program_examples() {
    let prog = parse_program("atom P positive; command [k : P] < x | k > ;").unwrap();
    assert_eq!(prog.directives.len(), 2);
    match &prog.directives[1] {
        Directive::Query(q) => {
            assert_eq!(q.kind, QueryKind::Command);
            assert_eq!(q.ctx.len(), 1);
            assert!(matches!(q.term.kind, RawKind::Cut(..)));
        }
        other => panic!("expected query, got {other:?}"),
    }
    // Polarity marks on context entries are accepted and validated.
    assert!(parse_program("atom P positive; command [k+ : P] < x | k > ;").is_ok());
    assert!(parse_program("atom P positive; command [k- : P] < x | k > ;").is_err());

    assert!(parse_program("").unwrap().directives.is_empty());
    let err = parse_program("atom P pos").unwrap_err();
    assert_eq!(err.span.line, 1);
}

#[test]
fn duplicate_atoms_and_missing_types_are_errors() {
    assert!(parse_program("atom P positive; atom P negative;")
        .unwrap_err()
        .message
        .contains("duplicate"));
    assert!(parse_program("atom P positive; expr [] () ;")
        .unwrap_err()
        .message
        .contains("require"));
    assert!(parse_program("atom P positive; command [] < x | y > : P ;")
        .unwrap_err()
        .message
        .contains("do not take"));
}

#[test]
fn internal_tops_cannot_be_written_in_programs() {
    let err = parse_program("atom P plain; lambda-check [x : Top] x : P ;").unwrap_err();
    assert!(err.message.contains("internal top"));
    let err =
        parse_program("atom P plain; lambda-synth [] \\x. (x : Top -> P) ;").unwrap_err();
    assert!(err.message.contains("internal top"));
    // The bare type parser accepts them, so printed types round-trip.
    let prog = parse_program("atom P plain;").unwrap();
    let t = parse_type("Top -> P", Family::Lambda, &prog.atoms()).unwrap();
    assert_eq!(t.to_string(), "Top -> P");
}

#[test]
fn annotations_exist_only_at_the_five_sites() {
    // Bare annotations in System L syntax are rejected by the grammar.
    assert!(parse_program("atom P positive; expr [] (x : P) : P ;").is_err());
    // Downshift matches demand their annotation.
    let err =
        parse_program("atom N negative; pattern [] match { down(x) => < [] | x > } ;")
            .unwrap_err();
    assert!(err.message.contains("annotation"));
    // Upshift comatches demand theirs.
    assert!(parse_program("atom P positive; copattern [] comatch { < () | k > => up(k) } ;")
        .is_err());
}

#[test]
fn spans_are_monotone_and_in_bounds() {
    let src = "atom P positive;\ncommand [k : P]\n  < x | k > ;";
    let prog = parse_program(src).unwrap();
    match &prog.directives[1] {
        Directive::Query(q) => {
            assert_eq!(q.span.line, 2);
            assert_eq!(q.term.span.line, 3);
            assert!(q.term.span.offset < src.len());
            assert!(q.span.offset < q.term.span.offset);
        }
        _ => unreachable!(),
    }
}

#[test]
fn print_parse_round_trip_over_generated_corpora() {
    let cases = [
        (Calculus::Stlc, Preset::Cartesian, QueryKind::LambdaSynth),
        (Calculus::Stlc, Preset::Cartesian, QueryKind::LambdaCheck),
        (Calculus::Lin, Preset::Linear, QueryKind::LambdaSynth),
        (Calculus::Cdb, Preset::Cartesian, QueryKind::LambdaCheck),
        (Calculus::Pol, Preset::Linear, QueryKind::Command),
        (Calculus::Pol, Preset::Cartesian, QueryKind::Pattern),
        (Calculus::Pol, Preset::Linear, QueryKind::Coexpr),
        (Calculus::Lnl, Preset::LnlFull, QueryKind::Command),
        (Calculus::Lnl, Preset::LnlFull, QueryKind::Copattern),
        (Calculus::Pos, Preset::Linear, QueryKind::Expr),
        (Calculus::Neg, Preset::Linear, QueryKind::Copattern),
    ];
    for (calculus, preset, kind) in cases {
        let cfg = StructConfig::preset(preset);
        let dirs = generate_corpus(99, 8, kind, calculus, &cfg, 120);
        let text = print_program(&dirs);
        let reparsed = parse_program(&text)
            .unwrap_or_else(|e| panic!("reparse failed for {calculus}/{kind:?}: {e}\n{text}"));
        assert_eq!(reparsed.directives, dirs, "round trip for {calculus}/{kind:?}");
    }
}

#[test]
fn ctx_entry_marks_round_trip() {
    let src = "atom P positive; atom N negative; command [k : P, z] < x | k > ;";
    let prog = parse_program(src).unwrap();
    let printed = print_program(&prog.directives);
    let again = parse_program(&printed).unwrap();
    assert_eq!(again.directives, prog.directives);
}

#[test]
fn lambda_dialect_rejects_polarised_atoms_and_l_dialect_rejects_plain() {
    assert!(parse_program("atom P positive; lambda-check [] \\x. x : P -> P ;").is_err());
    assert!(parse_program("atom P plain; expr [] x : P ;").is_err());
}

#[test]
fn polarity_of_total_on_enumerated_types() {
    use polcheck_core::oracle::{enumerate_types, TypeUniverse};
    let u = TypeUniverse::system_l(&["P"], &["N"], 2);
    for t in enumerate_types(&u, Polarity::Positive) {
        assert_eq!(polcheck_core::polarity_of(&t), Polarity::Positive);
    }
    for t in enumerate_types(&u, Polarity::Negative) {
        assert_eq!(polcheck_core::polarity_of(&t), Polarity::Negative);
    }
}
