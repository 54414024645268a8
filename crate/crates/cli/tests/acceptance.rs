//! Acceptance suite: one test per criterion, each printing its own
//! pass/fail line. Run with
//! `cargo test -p polcheck-cli --test acceptance -- --nocapture`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use polcheck_core::diag::Instr;
use polcheck_core::oracle::{agree, derive_query, generate_corpus, TypeUniverse};
use polcheck_core::scope::{elaborate, Calculus};
use polcheck_core::surface::ast::{
    CtxEntry, Directive, MatchBody, QueryKind, RawKind, RawQuery, RawTerm, Span,
};
use polcheck_core::surface::{annotation_count, parse_program, parse_type, print_directive};
use polcheck_core::systeml::dualize::{dual_directive, dual_type, dual_typed_ctx};
use polcheck_core::{run_query, Family, Preset, StructConfig, TypeExpr};

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn cfgp(p: Preset) -> StructConfig {
    StructConfig::preset(p)
}

fn lam_universe() -> TypeUniverse {
    TypeUniverse::lambda(&["P", "Q"], 2)
}

fn l_universe() -> TypeUniverse {
    TypeUniverse::system_l(&["P", "Q", "N", "M"], &["P", "Q", "N", "M"], 2)
}

struct Agreement {
    total: usize,
    accepted: usize,
    mismatches: usize,
}

fn run_agreement(
    dirs: &[Directive],
    calculus: Calculus,
    cfg: &StructConfig,
    u: &TypeUniverse,
    instr: &mut Instr,
) -> Agreement {
    let mut a = Agreement { total: 0, accepted: 0, mismatches: 0 };
    for d in dirs {
        let Directive::Query(raw) = d else { continue };
        let Ok(q) = elaborate(raw, calculus, cfg) else { continue };
        let outcome = run_query(&q, cfg, instr);
        let set = derive_query(&q, u, cfg);
        a.total += 1;
        if outcome.is_ok() {
            a.accepted += 1;
        }
        if !agree(&outcome, &set, &q) {
            a.mismatches += 1;
            eprintln!("  MISMATCH {}", print_directive(d));
            eprintln!("    checker: {outcome:?}");
            eprintln!("    oracle:  {set:?}");
        }
    }
    a
}

// ----- exhaustive enumeration of small raw terms -----

const SP: Span = Span { offset: 0, line: 1, col: 1 };

fn t(kind: RawKind) -> RawTerm {
    RawTerm::new(SP, kind)
}

/// All lambda raw terms up to `size` over the variable and annotation pools.
/// Mode filtering happens later at elaboration; the grammar here covers the
/// selected calculus's constructors.
fn enum_lambda(standard: bool, size: usize, vars: &[&str], anns: &[TypeExpr]) -> Vec<RawTerm> {
    let mut by: Vec<Vec<RawTerm>> = vec![Vec::new()];
    for n in 1..=size {
        let mut level: Vec<RawTerm> = Vec::new();
        if n == 1 {
            for v in vars {
                level.push(t(RawKind::Var(v.to_string())));
            }
            level.push(t(RawKind::Unit));
        }
        let smaller = |k: usize| by[k].clone();
        // Unary forms.
        for inner in smaller(n - 1) {
            level.push(t(RawKind::Lam("a".into(), Box::new(inner.clone()))));
            for a in anns {
                level.push(t(RawKind::Annot(Box::new(inner.clone()), a.clone())));
            }
            if standard {
                level.push(t(RawKind::Proj1(Box::new(inner.clone()))));
                level.push(t(RawKind::Inl(Box::new(inner.clone()))));
                level.push(t(RawKind::Absurd(Box::new(inner.clone()))));
            }
        }
        // Binary forms.
        for k in 1..n.saturating_sub(1) {
            for l in &by[k] {
                for r in &by[n - 1 - k] {
                    level.push(t(RawKind::App(Box::new(l.clone()), Box::new(r.clone()))));
                    level.push(t(RawKind::Pair(Box::new(l.clone()), Box::new(r.clone()))));
                    if !standard {
                        level.push(t(RawKind::LetUnit {
                            scrut: Box::new(l.clone()),
                            body: Box::new(r.clone()),
                        }));
                        level.push(t(RawKind::LetPair {
                            x: "a".into(),
                            y: "c".into(),
                            scrut: Box::new(l.clone()),
                            body: Box::new(r.clone()),
                        }));
                    }
                }
            }
        }
        by.push(level);
    }
    by.into_iter().flatten().collect()
}

/// All pure-positive System L raw terms of each class up to `size` over the
/// given checkable-context names. Index 0 = expressions, 1 = patterns,
/// 2 = commands.
fn enum_positive(size: usize, covars: &[&str]) -> [Vec<RawTerm>; 3] {
    let mut e: Vec<Vec<RawTerm>> = vec![Vec::new()];
    let mut p: Vec<Vec<RawTerm>> = vec![Vec::new()];
    let mut c: Vec<Vec<RawTerm>> = vec![Vec::new()];
    for n in 1..=size {
        let mut el = Vec::new();
        let mut pl = Vec::new();
        let mut cl = Vec::new();
        if n == 1 {
            el.push(t(RawKind::Var("v".into())));
            el.push(t(RawKind::UnitI));
            for k in covars {
                pl.push(t(RawKind::Var(k.to_string())));
            }
            pl.push(t(RawKind::Match(MatchBody::Empty)));
        }
        for inner in &e[n - 1] {
            el.push(t(RawKind::InjL(Box::new(inner.clone()))));
            el.push(t(RawKind::InjR(Box::new(inner.clone()))));
        }
        for cmd in &c[n - 1] {
            el.push(t(RawKind::MuPlus("m".into(), Box::new(cmd.clone()))));
            pl.push(t(RawKind::MutPlus("w".into(), Box::new(cmd.clone()))));
            pl.push(t(RawKind::Match(MatchBody::Unit(Box::new(cmd.clone())))));
            pl.push(t(RawKind::Match(MatchBody::Pair(
                "w".into(),
                "u".into(),
                Box::new(cmd.clone()),
            ))));
        }
        for k in 1..n.saturating_sub(1) {
            for l in &e[k] {
                for r in &e[n - 1 - k] {
                    el.push(t(RawKind::Tuple(Box::new(l.clone()), Box::new(r.clone()))));
                }
            }
            for l in &c[k] {
                for r in &c[n - 1 - k] {
                    pl.push(t(RawKind::Match(MatchBody::Sum {
                        xl: "w".into(),
                        cl: Box::new(l.clone()),
                        yr: "u".into(),
                        cr: Box::new(r.clone()),
                    })));
                }
            }
            for l in &e[k] {
                for r in &p[n - 1 - k] {
                    cl.push(t(RawKind::Cut(Box::new(l.clone()), Box::new(r.clone()))));
                }
            }
        }
        e.push(el);
        p.push(pl);
        c.push(cl);
    }
    [
        e.into_iter().flatten().collect(),
        p.into_iter().flatten().collect(),
        c.into_iter().flatten().collect(),
    ]
}

fn q(kind: QueryKind, ctx: Vec<CtxEntry>, term: RawTerm, ty: Option<TypeExpr>) -> RawQuery {
    RawQuery { kind, ctx, term, ty, span: SP }
}

fn typed(name: &str, ty: TypeExpr) -> CtxEntry {
    CtxEntry { name: name.into(), mark: None, ty: Some(ty), span: SP }
}

fn scoped(name: &str) -> CtxEntry {
    CtxEntry { name: name.into(), mark: None, ty: None, span: SP }
}

#[test]
fn c01_lambda_oracle_agreement() {
    let started = Instant::now();
    let u = lam_universe();
    let atom = |n: &str| TypeExpr::Atom(n.into());
    let arrow = |a: TypeExpr, b: TypeExpr| TypeExpr::Arrow(Box::new(a), Box::new(b));
    let lolli = |a: TypeExpr, b: TypeExpr| TypeExpr::Lolli(Box::new(a), Box::new(b));
    let mut total = Agreement { total: 0, accepted: 0, mismatches: 0 };
    let mut instr = Instr::default();

    // Exhaustive sweep at small size, standard calculus.
    let anns = [atom("P"), atom("Q"), arrow(atom("P"), atom("Q"))];
    let cfg = cfgp(Preset::Cartesian);
    let ctxs: [Vec<CtxEntry>; 2] = [
        vec![],
        vec![typed("k1", atom("P")), typed("k2", arrow(atom("P"), atom("Q")))],
    ];
    let tys = [atom("P"), atom("Q"), arrow(atom("P"), atom("P")), arrow(atom("P"), atom("Q"))];
    for term in enum_lambda(true, 4, &["k1", "k2"], &anns) {
        for ctx in &ctxs {
            for ty in &tys {
                let raw = q(QueryKind::LambdaCheck, ctx.clone(), term.clone(), Some(ty.clone()));
                let a = run_agreement(
                    &[Directive::Query(raw)],
                    Calculus::Stlc,
                    &cfg,
                    &u,
                    &mut instr,
                );
                total.total += a.total;
                total.accepted += a.accepted;
                total.mismatches += a.mismatches;
            }
            let raw = q(QueryKind::LambdaSynth, ctx.clone(), term.clone(), None);
            let a =
                run_agreement(&[Directive::Query(raw)], Calculus::Stlc, &cfg, &u, &mut instr);
            total.total += a.total;
            total.accepted += a.accepted;
            total.mismatches += a.mismatches;
        }
    }

    // Exhaustive sweep, linear calculus.
    let lanns = [atom("P"), atom("Q"), lolli(atom("P"), atom("Q"))];
    let lcfg = cfgp(Preset::Linear);
    let lctxs: [Vec<CtxEntry>; 2] = [vec![], vec![scoped("k1")]];
    let ltys = [atom("P"), lolli(atom("P"), atom("Q")), TypeExpr::Unit];
    for term in enum_lambda(false, 4, &["k1"], &lanns) {
        for ctx in &lctxs {
            for ty in &ltys {
                let raw = q(QueryKind::LambdaCheck, ctx.clone(), term.clone(), Some(ty.clone()));
                let a =
                    run_agreement(&[Directive::Query(raw)], Calculus::Lin, &lcfg, &u, &mut instr);
                total.total += a.total;
                total.accepted += a.accepted;
                total.mismatches += a.mismatches;
            }
            let raw = q(QueryKind::LambdaSynth, ctx.clone(), term.clone(), None);
            let a = run_agreement(&[Directive::Query(raw)], Calculus::Lin, &lcfg, &u, &mut instr);
            total.total += a.total;
            total.accepted += a.accepted;
            total.mismatches += a.mismatches;
        }
    }

    // Seeded corpora at the full size bound.
    for (calculus, preset, seed) in [
        (Calculus::Stlc, Preset::Cartesian, 101),
        (Calculus::Lin, Preset::Linear, 102),
    ] {
        let cfg = cfgp(preset);
        for kind in [QueryKind::LambdaCheck, QueryKind::LambdaSynth] {
            let dirs = generate_corpus(seed, 8, kind, calculus, &cfg, 1500);
            let a = run_agreement(&dirs, calculus, &cfg, &u, &mut instr);
            total.total += a.total;
            total.accepted += a.accepted;
            total.mismatches += a.mismatches;
        }
    }

    let secs = started.elapsed().as_secs_f64();
    assert_eq!(total.mismatches, 0);
    assert!(total.accepted > 500, "lambda agreement accepted too few: {}", total.accepted);
    assert!(secs <= 120.0, "criterion 1 exceeded its budget: {secs:.1}s");
    println!(
        "criterion 1 (lambda oracle agreement): PASS — {} queries, {} accepted, 0 mismatches, {secs:.1}s",
        total.total, total.accepted
    );
}

#[test]
fn c02_systeml_oracle_agreement() {
    let started = Instant::now();
    let u = l_universe();
    let cfg = cfgp(Preset::Linear);
    let mut instr = Instr::default();
    let mut total = Agreement { total: 0, accepted: 0, mismatches: 0 };
    let pos = |n: &str| TypeExpr::PosAtom(n.into());

    // Exhaustive sweep of pure-positive terms at small size, and the exact
    // dual sweep of pure-negative ones.
    let ctx = vec![
        typed("k1", pos("P")),
        typed("k2", TypeExpr::Tensor(Box::new(pos("P")), Box::new(pos("Q")))),
    ];
    let [exprs, pats, cmds] = enum_positive(4, &["k1", "k2"]);
    let mut run_both = |raw: RawQuery, instr: &mut Instr| {
        let a = run_agreement(
            &[Directive::Query(raw.clone())],
            Calculus::Pos,
            &cfg,
            &u,
            instr,
        );
        total.total += a.total;
        total.accepted += a.accepted;
        total.mismatches += a.mismatches;
        if let Ok(dual) = polcheck_core::systeml::dualize::dual_query(&raw) {
            let a = run_agreement(&[Directive::Query(dual)], Calculus::Neg, &cfg, &u, instr);
            total.total += a.total;
            total.accepted += a.accepted;
            total.mismatches += a.mismatches;
        }
    };
    let check_tys = [pos("P"), TypeExpr::TensorUnit, TypeExpr::Plus(Box::new(pos("P")), Box::new(pos("Q")))];
    for term in &exprs {
        for ty in &check_tys {
            run_both(
                q(QueryKind::Expr, ctx.clone(), term.clone(), Some(ty.clone())),
                &mut instr,
            );
        }
    }
    for term in &pats {
        run_both(q(QueryKind::Pattern, ctx.clone(), term.clone(), None), &mut instr);
    }
    for term in &cmds {
        run_both(q(QueryKind::Command, ctx.clone(), term.clone(), None), &mut instr);
    }

    // Seeded corpora at the full size bound.
    for (calculus, kinds, seed) in [
        (Calculus::Pos, vec![QueryKind::Expr, QueryKind::Pattern, QueryKind::Command], 201u64),
        (Calculus::Neg, vec![QueryKind::Coexpr, QueryKind::Copattern, QueryKind::Command], 202),
    ] {
        for kind in kinds {
            let dirs = generate_corpus(seed, 8, kind, calculus, &cfg, 800);
            let a = run_agreement(&dirs, calculus, &cfg, &u, &mut instr);
            total.total += a.total;
            total.accepted += a.accepted;
            total.mismatches += a.mismatches;
        }
    }

    let secs = started.elapsed().as_secs_f64();
    assert_eq!(total.mismatches, 0);
    assert!(total.accepted > 500);
    assert!(secs <= 120.0, "criterion 2 exceeded its budget: {secs:.1}s");
    println!(
        "criterion 2 (System L oracle agreement): PASS — {} queries, {} accepted, 0 mismatches, {secs:.1}s",
        total.total, total.accepted
    );
}

#[test]
fn c03_zero_annotation_fragments() {
    for (file, calculus) in [
        ("corpus/positive_fragment.pl0", Calculus::Pos),
        ("corpus/negative_fragment.pl0", Calculus::Neg),
    ] {
        let text = std::fs::read_to_string(repo_root().join(file)).unwrap();
        let prog = parse_program(&text).unwrap();
        let cfg = cfgp(Preset::Linear);
        let mut queries = 0usize;
        for d in &prog.directives {
            let Directive::Query(raw) = d else { continue };
            queries += 1;
            assert_eq!(annotation_count(&raw.term), 0, "annotation in {}", print_directive(d));
            let q = elaborate(raw, calculus, &cfg).expect("elaborates");
            let mut instr = Instr::default();
            run_query(&q, &cfg, &mut instr)
                .unwrap_or_else(|e| panic!("{file}: {} fails: {e}", print_directive(d)));
        }
        assert!(queries >= 20, "{file} has only {queries} programs");
    }
    println!("criterion 3 (zero-annotation fragments): PASS — two fragments, >= 20 programs each, 0 annotations, all check");
}

#[test]
fn c04_annotation_locality() {
    let mut instr = Instr::default();
    let all = [
        QueryKind::Expr,
        QueryKind::Pattern,
        QueryKind::Copattern,
        QueryKind::Coexpr,
        QueryKind::Command,
    ];
    for (preset, calculus, seed) in [
        (Preset::Linear, Calculus::Pol, 301u64),
        (Preset::Cartesian, Calculus::Pol, 302),
        (Preset::LnlFull, Calculus::Lnl, 303),
    ] {
        let cfg = cfgp(preset);
        for kind in all {
            for d in generate_corpus(seed, 8, kind, calculus, &cfg, 300) {
                let Directive::Query(raw) = d else { continue };
                let Ok(q) = elaborate(&raw, calculus, &cfg) else { continue };
                let _ = run_query(&q, &cfg, &mut instr);
            }
        }
    }
    let allowed = ["down-match", "up-comatch", "up-adj-cointro", "down-adj-intro"];
    assert_eq!(
        instr.annot_reads_outside(&allowed),
        0,
        "annotation reads outside the four shift handlers: {:?}",
        instr.annot_reads
    );
    for rule in allowed {
        assert!(
            instr.annot_reads.get(rule).copied().unwrap_or(0) > 0,
            "handler {rule} never read its annotation over the corpus"
        );
    }
    println!(
        "criterion 4 (annotation locality): PASS — reads only in the four shift handlers: {:?}",
        instr.annot_reads
    );
}

#[test]
fn c05_duality_transport() {
    let all = [
        QueryKind::Expr,
        QueryKind::Pattern,
        QueryKind::Copattern,
        QueryKind::Coexpr,
        QueryKind::Command,
    ];
    let mut checked = 0usize;
    for (preset, calculus, seed, per) in [
        (Preset::Linear, Calculus::Pol, 401u64, 100usize),
        (Preset::Cartesian, Calculus::Pol, 402, 60),
        (Preset::LnlFull, Calculus::Lnl, 403, 60),
    ] {
        let cfg = cfgp(preset);
        for kind in all {
            for d in generate_corpus(seed, 8, kind, calculus, &cfg, per) {
                let Directive::Query(raw) = &d else { continue };
                let dd = dual_directive(&d).unwrap();
                assert_eq!(dual_directive(&dd).unwrap(), d, "involution on {}", print_directive(&d));
                let Directive::Query(draw) = &dd else { unreachable!() };

                let mut instr = Instr::default();
                let left = elaborate(raw, calculus, &cfg)
                    .map_err(|_| ())
                    .and_then(|q| run_query(&q, &cfg, &mut instr).map_err(|_| ()));
                let right = elaborate(draw, calculus, &cfg)
                    .map_err(|_| ())
                    .and_then(|q| run_query(&q, &cfg, &mut instr).map_err(|_| ()));
                match (left, right) {
                    (Ok((ty, sigma)), Ok((dty, dsigma))) => {
                        assert_eq!(
                            ty.map(|t| dual_type(&t).unwrap()),
                            dty,
                            "type transport on {}",
                            print_directive(&d)
                        );
                        assert_eq!(
                            dual_typed_ctx(&sigma).unwrap(),
                            dsigma,
                            "context transport on {}",
                            print_directive(&d)
                        );
                    }
                    (Err(()), Err(())) => {}
                    (l, r) => panic!(
                        "verdict transport on {}: {:?} vs {:?}",
                        print_directive(&d),
                        l.is_ok(),
                        r.is_ok()
                    ),
                }
                checked += 1;
            }
        }
    }
    assert!(checked >= 1000, "only {checked} directives");
    println!("criterion 5 (duality involution and transport): PASS — {checked} directives, 0 violations");
}

#[test]
fn c06_mode_table_sweep() {
    // One representative per constructor: context plus term (no payload
    // type), its table class, and the type it checks at in its own class.
    let reps: Vec<(&str, &str, QueryKind, Option<&str>)> = vec![
        // Expressions: positive terms are checkable.
        ("var+", "[x+] x", QueryKind::Expr, Some("P")),
        ("mu+", "[k : P] mu+ x . < y | x >", QueryKind::Expr, Some("P")),
        ("unit-i", "[] ()", QueryKind::Expr, Some("I")),
        ("tuple", "[] (a, b)", QueryKind::Expr, Some("P * P")),
        ("inl", "[] inl a", QueryKind::Expr, Some("P + P")),
        ("inr", "[] inr a", QueryKind::Expr, Some("P + P")),
        ("sim-intro", "[] ~ x", QueryKind::Expr, Some("~N")),
        ("down-intro", "[z : N] down z", QueryKind::Expr, Some("down N")),
        (
            "down-adj-match",
            "[z : bot] match { Down x => < x | z > }",
            QueryKind::Expr,
            Some("Down bot"),
        ),
        // Patterns: positive coterms are synthesisable.
        ("covar+", "[k : P] k", QueryKind::Pattern, None),
        ("mut+", "[k : P] mut+ x . < x | k >", QueryKind::Pattern, None),
        ("match-unit", "[k : Q] match { () => < y | k > }", QueryKind::Pattern, None),
        (
            "match-pair",
            "[k : Q] match { (a, b) => < (b, a) | mut+ w . < w | k > > }",
            QueryKind::Pattern,
            None,
        ),
        ("match-zero", "[] match {}", QueryKind::Pattern, None),
        (
            "match-sum",
            "[kl : P, kr : Q] match { inl a => < a | kl > ; inr b => < b | kr > }",
            QueryKind::Pattern,
            None,
        ),
        ("match-sim", "[z : N] match { ~x => < x | z > }", QueryKind::Pattern, None),
        ("match-down", "[] match { down(x : bot) => < [] | x > }", QueryKind::Pattern, None),
        ("down-adj-intro", "[] Down( x : N )", QueryKind::Pattern, None),
        // Copatterns: negative terms are synthesisable.
        ("var-", "[z : N] z", QueryKind::Copattern, None),
        ("mu-", "[z : N] mu- x . < x | z >", QueryKind::Copattern, None),
        ("comatch-counit", "[z : M] comatch { < y | z > => [] }", QueryKind::Copattern, None),
        (
            "comatch-pair",
            "[z1 : N par M] comatch { < [a, b] | z1 > => [a, b] }",
            QueryKind::Copattern,
            None,
        ),
        ("comatch-zero", "[] comatch {}", QueryKind::Copattern, None),
        (
            "comatch-with",
            "[z1 : N, z2 : M] comatch { < w | z1 > => pi1 w ; < v | z2 > => pi2 v }",
            QueryKind::Copattern,
            None,
        ),
        ("comatch-not", "[k : P] comatch { < x | k > => not x }", QueryKind::Copattern, None),
        ("comatch-up", "[] comatch { < () | k > => up(k : I) }", QueryKind::Copattern, None),
        ("up-adj-intro", "[] Up( a : P )", QueryKind::Copattern, None),
        // Coexpressions: negative coterms are checkable.
        ("covar-", "[x-] x", QueryKind::Coexpr, Some("N")),
        ("mut-", "[] mut- x . < [] | x >", QueryKind::Coexpr, Some("bot")),
        ("counit", "[] []", QueryKind::Coexpr, Some("bot")),
        ("cotuple", "[] [x, y]", QueryKind::Coexpr, Some("N par M")),
        ("pi1", "[] pi1 x", QueryKind::Coexpr, Some("N & M")),
        ("pi2", "[] pi2 x", QueryKind::Coexpr, Some("N & M")),
        ("not-cointro", "[] not y", QueryKind::Coexpr, Some("not P")),
        ("up-cointro", "[k : P] up k", QueryKind::Coexpr, Some("up P")),
        (
            "up-adj-comatch",
            "[k : P] comatch { < z | k > => Up z }",
            QueryKind::Coexpr,
            Some("Up P"),
        ),
    ];
    let kinds = [QueryKind::Expr, QueryKind::Pattern, QueryKind::Copattern, QueryKind::Coexpr];
    let prelude = "atom P positive; atom Q positive; atom N negative; atom M negative;\n";
    let cfg = cfgp(Preset::LnlFull);
    let mut swept = 0usize;
    for (name, body, class, own_ty) in &reps {
        for kind in kinds {
            let ty = if kind.takes_type() {
                if kind == *class {
                    format!(" : {}", own_ty.expect("checkable rep has a type"))
                } else if kind == QueryKind::Expr {
                    " : P".to_string()
                } else {
                    " : N".to_string()
                }
            } else {
                String::new()
            };
            let src = format!("{prelude}{} {body}{ty} ;", kind.as_str());
            let prog = parse_program(&src)
                .unwrap_or_else(|e| panic!("constructor {name} as {kind:?} fails to parse: {e}"));
            let raw = prog
                .directives
                .iter()
                .find_map(|d| match d {
                    Directive::Query(q) => Some(q.clone()),
                    _ => None,
                })
                .unwrap();
            let got = elaborate(&raw, Calculus::Lnl, &cfg);
            if kind == *class {
                assert!(got.is_ok(), "constructor {name} rejected in its own class: {got:?}");
            } else {
                assert!(
                    got.is_err(),
                    "constructor {name} accepted in class {kind:?}, expected only {class:?}"
                );
            }
        }
        swept += 1;
    }
    // Commands: the cut is accepted exactly under the command kind.
    let cut = format!("{prelude}command [k : P] < x | k > ;");
    let prog = parse_program(&cut).unwrap();
    let raw = prog
        .directives
        .iter()
        .find_map(|d| match d {
            Directive::Query(q) => Some(q.clone()),
            _ => None,
        })
        .unwrap();
    assert!(elaborate(&raw, Calculus::Lnl, &cfg).is_ok());
    for kind in kinds {
        let mut r = raw.clone();
        r.kind = kind;
        r.ty = kind.takes_type().then(|| TypeExpr::PosAtom("P".into()));
        assert!(elaborate(&r, Calculus::Lnl, &cfg).is_err(), "cut accepted as {kind:?}");
    }
    println!("criterion 6 (mode table): PASS — {swept} constructors + cut, each in exactly its class");
}

#[test]
fn c07_structural_toggle_truth_table() {
    let prelude = "atom P positive; atom N negative;\n";
    // (program, [linear, cartesian, lnl-bang, lnl-full])
    let cases: [(&str, [bool; 4]); 3] = [
        // A positive input variable used twice.
        ("command [k : P * P] < (x, x) | k > ;", [false, true, false, false]),
        // A positive output binder left unused.
        ("expr [k : P] mu+ x . < y | k > : P ;", [false, true, false, true]),
        // A negative input variable used in both branches.
        (
            "copattern [w : N] comatch { < p | w > => pi1 p ; < q | w > => pi2 q } ;",
            [false, true, true, true],
        ),
    ];
    let presets = [Preset::Linear, Preset::Cartesian, Preset::LnlBang, Preset::LnlFull];
    for (src, expect) in cases {
        for (preset, want) in presets.iter().zip(expect) {
            let cfg = cfgp(*preset);
            let full = format!("{prelude}{src}");
            let prog = parse_program(&full).unwrap();
            let raw = prog
                .directives
                .iter()
                .find_map(|d| match d {
                    Directive::Query(q) => Some(q.clone()),
                    _ => None,
                })
                .unwrap();
            let got = elaborate(&raw, Calculus::Pol, &cfg).map_err(|_| ()).and_then(|q| {
                let mut instr = Instr::default();
                run_query(&q, &cfg, &mut instr).map(|_| ()).map_err(|_| ())
            });
            assert_eq!(
                got.is_ok(),
                want,
                "{src} under {preset}: expected accepted={want}"
            );
        }
    }
    println!("criterion 7 (linear/cartesian toggle): PASS — 12-case truth table matches");
}

#[test]
fn c08_top_meet_non_occurrence() {
    let cfg = cfgp(Preset::Cartesian);
    let mut instr = Instr::default();
    let mut terms = 0usize;
    for (kind, seed) in
        [(QueryKind::LambdaSynth, 501u64), (QueryKind::LambdaCheck, 502), (QueryKind::LambdaSynth, 503)]
    {
        for d in generate_corpus(seed, 8, kind, Calculus::Cdb, &cfg, 3500) {
            let Directive::Query(raw) = d else { continue };
            let Ok(q) = elaborate(&raw, Calculus::Cdb, &cfg) else { continue };
            let _ = run_query(&q, &cfg, &mut instr);
            terms += 1;
        }
    }
    assert!(terms >= 10_000, "only {terms} co-de Bruijn terms generated");
    assert!(instr.meets.meets > 0, "no merges happened; the corpus is degenerate");
    // Known red: the claim this criterion encodes does not hold for the
    // checker it describes. A dropped binder forces a top into a *checked*
    // type (e.g. the scrutinee of `let (a, b) = k in ...` with `a`, `b`
    // unused is checked at `Top * Top`), and when the scrutinee variable is
    // shared with another subterm, the context merge meets a top-involving
    // type. Minimal witness, which checks successfully:
    //   lambda-synth [k1] let (b2, b3) = k1 in (k1 : 1 * 1) ;
    // meets `Top * Top` with `1 * 1` at the copy of k1. The counter is
    // implemented faithfully and the criterion is left failing.
    assert_eq!(
        instr.meets.top_arg_meets, 0,
        "{} of {} meets saw a top-involving argument over {terms} terms; \
         see the comment above this assertion: discarding inside a checked \
         type composed with sharing makes such meets unavoidable",
        instr.meets.top_arg_meets, instr.meets.meets
    );
    println!(
        "criterion 8 (top-meet non-occurrence): PASS — {terms} terms, {} meets, 0 with top arguments",
        instr.meets.meets
    );
}

#[test]
fn c09_intro_drop_synthesises_top_arrow() {
    let src = "atom P plain; lambda-synth [] \\x. \\y. (x : P) ;";
    let prog = parse_program(src).unwrap();
    let raw = prog
        .directives
        .iter()
        .find_map(|d| match d {
            Directive::Query(q) => Some(q.clone()),
            _ => None,
        })
        .unwrap();
    let cfg = cfgp(Preset::Cartesian);
    let q = elaborate(&raw, Calculus::Cdb, &cfg).unwrap();
    let mut instr = Instr::default();
    let (ty, _) = run_query(&q, &cfg, &mut instr).unwrap();
    assert_eq!(ty.unwrap().to_string(), "P -> (Top -> P)");
    println!("criterion 9 (intro-drop): PASS — synthesised exactly `P -> (Top -> P)`");
}

#[test]
fn c10_lnl_sugar_and_gates() {
    // `!P` and `?N` round-trip through the parser as the adjoint
    // decompositions.
    let prog = parse_program("atom P positive; atom N negative;").unwrap();
    let atoms = prog.atoms();
    let bang = parse_type("!P", Family::SystemL, &atoms).unwrap();
    assert_eq!(
        bang,
        TypeExpr::Down(Box::new(TypeExpr::UpAdj(Box::new(TypeExpr::PosAtom("P".into())))))
    );
    assert_eq!(bang.to_string(), "down (Up P)");
    assert_eq!(parse_type(&bang.to_string(), Family::SystemL, &atoms).unwrap(), bang);
    let quest = parse_type("?N", Family::SystemL, &atoms).unwrap();
    assert_eq!(
        quest,
        TypeExpr::Up(Box::new(TypeExpr::DownAdj(Box::new(TypeExpr::NegAtom("N".into())))))
    );
    assert_eq!(quest.to_string(), "up (Down N)");
    assert_eq!(parse_type(&quest.to_string(), Family::SystemL, &atoms).unwrap(), quest);

    let prelude = "atom P positive; atom N negative;\n";
    // (source, needs-full-preset); each uses an adjoint-shift rule.
    let programs = [
        ("expr [] down Up( a : P ) : !P ;", false),
        (
            "pattern [k : P] match { down(x : Up P) => < comatch { < z | k > => Up z } | x > } ;",
            false,
        ),
        ("coexpr [] up Down( x : N ) : ?N ;", true),
        ("expr [z : bot] match { Down x => < x | z > } : Down bot ;", true),
    ];
    for (src, needs_full) in programs {
        let full = format!("{prelude}{src}");
        let prog = parse_program(&full).unwrap();
        let raw = prog
            .directives
            .iter()
            .find_map(|d| match d {
                Directive::Query(q) => Some(q.clone()),
                _ => None,
            })
            .unwrap();
        for preset in [Preset::Linear, Preset::LnlBang, Preset::LnlFull] {
            let cfg = cfgp(preset);
            let q = elaborate(&raw, Calculus::Lnl, &cfg).expect("elaborates");
            let mut instr = Instr::default();
            let got = run_query(&q, &cfg, &mut instr);
            let want_ok =
                preset == Preset::LnlFull || (preset == Preset::LnlBang && !needs_full);
            match (want_ok, got) {
                (true, Ok(_)) => {}
                (false, Err(e)) => {
                    assert_eq!(e.code, polcheck_core::diag::TypeCode::PresetViolation, "{src}")
                }
                (w, g) => panic!("{src} under {preset}: expected ok={w}, got {g:?}"),
            }
        }
    }
    println!("criterion 10 (LNL sugar and gates): PASS — sugar round-trips; adjoint programs gate on presets");
}

#[test]
fn c11_cli_golden_reports() {
    let bin = env!("CARGO_BIN_EXE_polcheck");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let manifest = std::fs::read_to_string(dir.join("manifest.txt")).unwrap();
    let mut n = 0usize;
    for line in manifest.lines() {
        let mut parts = line.split_whitespace();
        let (file, calc, preset) = (
            parts.next().unwrap(),
            parts.next().unwrap(),
            parts.next().unwrap(),
        );
        let mut args = vec!["check", "--calculus", calc];
        if preset != "-" {
            args.extend(["--preset", preset]);
        }
        let path = dir.join(file);
        let path_str = path.to_str().unwrap();
        args.extend(["--json", path_str]);
        let run = || {
            Command::new(bin)
                .args(&args)
                .env("POLCHECK_FIXED_MS", "0")
                .env("POLCHECK_COLOR", "never")
                .output()
                .unwrap()
        };
        let first = run();
        let second = run();
        assert_eq!(first.stdout, second.stdout, "{file}: report differs across runs");
        assert_eq!(first.status.code(), second.status.code(), "{file}: exit differs");
        let expected = std::fs::read(dir.join(file.replace(".pl0", ".json"))).unwrap();
        assert_eq!(
            first.stdout, expected,
            "{file}: report differs from the recorded golden"
        );
        let json: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
        assert!(json.get("status").is_some());
        n += 1;
    }
    assert!(n >= 30, "only {n} golden reports");
    println!("criterion 11 (CLI golden reports): PASS — {n} recorded reports byte-identical across runs");
}

#[test]
fn golden_corpus_files_regenerate_identically() {
    use polcheck_core::surface::print_program;
    for (file, seed, size, count, calculus, kind) in [
        ("corpus/command-pos-linear-size3-seed1.pl0", 1u64, 3usize, 24usize, Calculus::Pos, QueryKind::Command),
        ("corpus/command-pol-linear-size8-seed1.pl0", 1, 8, 24, Calculus::Pol, QueryKind::Command),
    ] {
        let cfg = cfgp(Preset::Linear);
        let dirs = generate_corpus(seed, size, kind, calculus, &cfg, count);
        let text = print_program(&dirs);
        let want = std::fs::read_to_string(repo_root().join(file)).unwrap();
        assert_eq!(text, want, "{file} drifted from its generator");
    }
    println!("golden corpus files: PASS — pinned files regenerate bit-identically");
}
