//! Structural properties of elaboration: every witness projects its
//! children's scoped contexts exactly, erasure inverts elaboration, and the
//! annotated tree printer emits the documented format.

mod common;

use common::{elab, parse_single};
use polcheck_core::oracle::generate_corpus;
use polcheck_core::scope::{
    elaborate, erase, mode_of, print_query_tree, Calculus, JudgementClass, Scoped, ScopedKind,
};
use polcheck_core::surface::ast::{Directive, QueryKind};
use polcheck_core::surface::{print_directive, print_term};
use polcheck_core::{Preset, ScopedCtx, StructConfig};

/// Checks that every cover and thinning in the tree projects the node's
/// scoped contexts onto its children's, and that leaves hold exactly their
/// own variable.
fn validate(node: &Scoped, stlc: bool) {
    use ScopedKind::*;
    let pair = |c: &polcheck_core::Cover, whole: &ScopedCtx| {
        c.split_scoped(whole).expect("cover length")
    };
    match &node.kind {
        Var(n) => {
            let total = node.x_scope.len() + node.s_scope.len();
            assert_eq!(total, 1, "variable leaf scope for {n}");
        }
        Unit | UnitI | CounitBot | MatchZero | ComatchZero => {
            assert!(node.x_scope.is_empty() && node.s_scope.is_empty());
        }
        Emb { body } | Annot { body, .. } | Proj { body, .. } | Inj { body, .. }
        | Absurd { body } | Sim { body } | NotC { body } | DownIntro { body }
        | UpCointro { body } | UpAdjIntro { body, .. } | DownAdjIntro { body, .. } => {
            assert_eq!(body.x_scope, node.x_scope);
            assert_eq!(body.s_scope, node.s_scope);
            validate(body, stlc);
        }
        Lam { thin, body, .. } => {
            let (parent, child) = if stlc {
                (&node.x_scope, &body.x_scope)
            } else {
                (&node.s_scope, &body.s_scope)
            };
            let mut target = parent.clone();
            // The extended context ends with the binder; recover it from the
            // child when kept.
            if thin.0.last() == Some(&polcheck_core::ThinStep::Keep) {
                target.push(child.0.last().unwrap().clone());
            } else {
                target.push(polcheck_core::ScopedEntry::new("_", child.0.first().map(|e| e.polarity).unwrap_or(polcheck_core::Polarity::Unpolarised)));
            }
            assert_eq!(thin.len(), target.len());
            validate(body, stlc);
        }
        App { cover, fun, arg } | Pair { cover, left: fun, right: arg }
        | LetUnit { cover, scrut: fun, body: arg } => {
            let whole = if stlc { &node.x_scope } else { &node.s_scope };
            let (l, r) = pair(cover, whole);
            let (lw, rw) = if stlc {
                (&fun.x_scope, &arg.x_scope)
            } else {
                (&fun.s_scope, &arg.s_scope)
            };
            assert_eq!(&l, lw);
            assert_eq!(&r, rw);
            validate(fun, stlc);
            validate(arg, stlc);
        }
        LetPair { cover, scrut, body, thin, .. } => {
            let (l, r) = pair(cover, &node.s_scope);
            assert_eq!(l, scrut.s_scope);
            assert_eq!(thin.len(), r.len() + 2);
            assert_eq!(thin.kept_len(), body.s_scope.len());
            validate(scrut, stlc);
            validate(body, stlc);
        }
        Case { cover, branch_cover, scrut, left, right, thin_l, thin_r, .. } => {
            let (s, branches) = pair(cover, &node.x_scope);
            assert_eq!(s, scrut.x_scope);
            let (bl, br) = pair(branch_cover, &branches);
            assert_eq!(thin_l.len(), bl.len() + 1);
            assert_eq!(thin_r.len(), br.len() + 1);
            validate(scrut, stlc);
            validate(left, stlc);
            validate(right, stlc);
        }
        Cut { cover_x, cover_s, left, right, .. }
        | Tuple { cover_x, cover_s, left, right }
        | Cotuple { cover_x, cover_s, left, right } => {
            let (xl, xr) = pair(cover_x, &node.x_scope);
            let (sl, sr) = pair(cover_s, &node.s_scope);
            assert_eq!(xl, left.x_scope);
            assert_eq!(xr, right.x_scope);
            assert_eq!(sl, left.s_scope);
            assert_eq!(sr, right.s_scope);
            validate(left, stlc);
            validate(right, stlc);
        }
        Mu { thin, cmd, kind, .. } => {
            let (side, _) = kind.binder_class();
            let parent_len = match side {
                polcheck_core::Side::Checkable => node.x_scope.len(),
                polcheck_core::Side::Synthesisable => node.s_scope.len(),
            };
            assert_eq!(thin.len(), parent_len + 1);
            validate(cmd, stlc);
        }
        MatchUnit { cmd } | ComatchCounit { cmd } => {
            assert_eq!(cmd.x_scope, node.x_scope);
            assert_eq!(cmd.s_scope, node.s_scope);
            validate(cmd, stlc);
        }
        MatchPair { thin, cmd, .. } | ComatchPair { thin, cmd, .. } => {
            assert_eq!(thin.len(), node.s_scope.len() + 2);
            assert_eq!(thin.kept_len(), cmd.s_scope.len());
            validate(cmd, stlc);
        }
        MatchSim { thin, cmd, .. } | ComatchNot { thin, cmd, .. }
        | MatchDownAdj { thin, cmd, .. } | ComatchUpAdj { thin, cmd, .. } => {
            assert_eq!(thin.len(), node.s_scope.len() + 1);
            assert_eq!(thin.kept_len(), cmd.s_scope.len());
            validate(cmd, stlc);
        }
        MatchDown { thin, cmd, .. } | ComatchUp { thin, cmd, .. } => {
            assert_eq!(thin.len(), node.x_scope.len() + 1);
            assert_eq!(thin.kept_len(), cmd.x_scope.len());
            validate(cmd, stlc);
        }
        MatchSum { cover_x, thin_l, cl, thin_r, cr, .. }
        | ComatchWith { cover_x, thin_l, cl, thin_r, cr, .. } => {
            let (xl, xr) = pair(cover_x, &node.x_scope);
            assert_eq!(xl, cl.x_scope);
            assert_eq!(xr, cr.x_scope);
            // Branch thinnings run over the shared scope plus the binder.
            assert_eq!(thin_l.len(), node.s_scope.len() + 1);
            assert_eq!(thin_r.len(), node.s_scope.len() + 1);
            assert_eq!(thin_l.kept_len(), cl.s_scope.len());
            assert_eq!(thin_r.kept_len(), cr.s_scope.len());
            validate(cl, stlc);
            validate(cr, stlc);
        }
    }
}

#[test]
fn witnesses_project_scopes_over_generated_corpora() {
    let cases = [
        (Calculus::Stlc, Preset::Cartesian, QueryKind::LambdaCheck),
        (Calculus::Lin, Preset::Linear, QueryKind::LambdaSynth),
        (Calculus::Cdb, Preset::Cartesian, QueryKind::LambdaSynth),
        (Calculus::Pol, Preset::Linear, QueryKind::Command),
        (Calculus::Pol, Preset::Cartesian, QueryKind::Pattern),
        (Calculus::Lnl, Preset::LnlFull, QueryKind::Command),
        (Calculus::Neg, Preset::Linear, QueryKind::Coexpr),
    ];
    for (calculus, preset, kind) in cases {
        let cfg = StructConfig::preset(preset);
        for d in generate_corpus(5, 8, kind, calculus, &cfg, 200) {
            let Directive::Query(raw) = d else { continue };
            let q = elaborate(&raw, calculus, &cfg).expect("elaborates");
            validate(&q.term, calculus == Calculus::Stlc);
            // Root thinnings cover the declared contexts.
            assert_eq!(q.thin_x.len(), q.x_typed.len());
            assert_eq!(q.thin_s.len(), q.s_scope.len());
            assert_eq!(q.thin_x.kept_len(), q.term.x_scope.len());
            assert_eq!(q.thin_s.kept_len(), q.term.s_scope.len());
        }
    }
}

#[test]
fn erasure_inverts_elaboration_modulo_emb() {
    let cases = [
        (Calculus::Stlc, Preset::Cartesian, QueryKind::LambdaCheck),
        (Calculus::Lin, Preset::Linear, QueryKind::LambdaSynth),
        (Calculus::Pol, Preset::Linear, QueryKind::Command),
        (Calculus::Lnl, Preset::LnlFull, QueryKind::Coexpr),
    ];
    for (calculus, preset, kind) in cases {
        let cfg = StructConfig::preset(preset);
        for d in generate_corpus(6, 8, kind, calculus, &cfg, 150) {
            let Directive::Query(raw) = d else { continue };
            let q = elaborate(&raw, calculus, &cfg).expect("elaborates");
            assert_eq!(
                print_term(&erase(&q.term)),
                print_term(&raw.term),
                "erasure mismatch on {}",
                print_directive(&Directive::Query(raw))
            );
        }
    }
}

#[test]
fn mode_of_matches_the_table() {
    let q = elab(
        "atom P positive; pattern [k : P * P] match { (x, y) => < (x, y) | k > } ;",
        Calculus::Pol,
        Preset::Linear,
    )
    .unwrap();
    assert_eq!(mode_of(&q.term), JudgementClass::Pattern);

    let q = elab(
        "atom N negative; copattern [z : N] comatch { < [] | z > => [x, y] } ;",
        Calculus::Pol,
        Preset::Cartesian,
    )
    .unwrap();
    assert_eq!(mode_of(&q.term), JudgementClass::Copattern);

    let q = elab(
        "atom N negative; expr [z : N] down z : down N ;",
        Calculus::Pol,
        Preset::Linear,
    )
    .unwrap();
    assert_eq!(mode_of(&q.term), JudgementClass::Expr);
    match &q.term.kind {
        ScopedKind::DownIntro { body } => assert_eq!(body.class, JudgementClass::Copattern),
        other => panic!("expected down-intro, got {other:?}"),
    }
}

#[test]
fn elaborate_tree_prints_the_documented_format() {
    let raw = parse_single("atom P positive; command [k : P] < x | k > ;");
    let q = elaborate(&raw, Calculus::Pos, &StructConfig::preset(Preset::Linear)).unwrap();
    let tree = print_query_tree(&q);
    let expect = "command [thin: K] [thin: K]\n  cut+ [cover: R] [cover: L]\n    var(x)\n    var(k)\n";
    assert_eq!(tree, expect);

    let raw = parse_single("atom P plain; lambda-synth [] \\x. \\y. (x : P) ;");
    let q = elaborate(&raw, Calculus::Cdb, &StructConfig::preset(Preset::Cartesian)).unwrap();
    let tree = print_query_tree(&q);
    let expect = "lambda-synth [thin: ] [thin: ]\n  lam(x) [thin: K]\n    lam(y) [thin: KD]\n      annot(P)\n        var(x)\n";
    assert_eq!(tree, expect);
}

#[test]
fn nullary_match_has_empty_scopes_and_tops_appear_at_the_root() {
    use polcheck_core::systeml::run_systeml;
    // A declared but unused positive scoped entry is dropped at the root and
    // synthesised at the positive top.
    let raw = parse_single("atom P positive; pattern [a+] match {} ;");
    let cfg = StructConfig::preset(Preset::Cartesian);
    let q = elaborate(&raw, Calculus::Pol, &cfg).unwrap();
    assert!(q.term.s_scope.is_empty());
    let mut instr = polcheck_core::diag::Instr::default();
    let ok = run_systeml(&q, &cfg, &mut instr).unwrap();
    assert_eq!(ok.ty.unwrap().to_string(), "0");
    assert_eq!(ok.sigma.to_string(), "a+ : Top+");

    // Under the linear preset the same query is an unused-variable error.
    assert!(elaborate(&raw, Calculus::Pol, &StructConfig::preset(Preset::Linear)).is_err());
}

#[test]
fn nullary_comatch_synthesises_the_with_unit() {
    use polcheck_core::systeml::run_systeml;
    let raw = parse_single("copattern [] comatch {} ;");
    let cfg = StructConfig::preset(Preset::Linear);
    let q = elaborate(&raw, Calculus::Pol, &cfg).unwrap();
    let mut instr = polcheck_core::diag::Instr::default();
    let ok = run_systeml(&q, &cfg, &mut instr).unwrap();
    assert_eq!(ok.ty.unwrap().to_string(), "1");
}

#[test]
fn unused_unmarked_scoped_entry_is_an_error() {
    let raw = parse_single("pattern [a] match {} ;");
    let err = elaborate(&raw, Calculus::Pol, &StructConfig::preset(Preset::Cartesian))
        .unwrap_err();
    assert_eq!(err.code, polcheck_core::scope::ScopeCode::UnresolvedPolarity);
}
