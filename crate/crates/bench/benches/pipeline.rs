use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use polcheck_bench::{l_corpus_text, lambda_corpus_text};
use polcheck_core::diag::Instr;
use polcheck_core::oracle::{derive_query, TypeUniverse};
use polcheck_core::scope::{elaborate, Calculus};
use polcheck_core::surface::ast::Directive;
use polcheck_core::surface::parse_program;
use polcheck_core::systeml::dualize::dual_program;
use polcheck_core::{run_query, Preset, StructConfig};

fn bench_parse(c: &mut Criterion) {
    let text = l_corpus_text(200);
    c.bench_function("parse_l_corpus", |b| {
        b.iter(|| parse_program(&text).unwrap().directives.len())
    });
}

fn bench_check(c: &mut Criterion) {
    let cfg = StructConfig::preset(Preset::Linear);
    let prog = parse_program(&l_corpus_text(200)).unwrap();
    c.bench_function("elaborate_and_check_l_corpus", |b| {
        b.iter(|| {
            let mut ok = 0usize;
            for d in &prog.directives {
                let Directive::Query(raw) = d else { continue };
                if let Ok(q) = elaborate(raw, Calculus::Pol, &cfg) {
                    let mut instr = Instr::default();
                    if run_query(&q, &cfg, &mut instr).is_ok() {
                        ok += 1;
                    }
                }
            }
            ok
        })
    });

    let ccfg = StructConfig::preset(Preset::Cartesian);
    let lam = parse_program(&lambda_corpus_text(200)).unwrap();
    c.bench_function("elaborate_and_check_cdb_corpus", |b| {
        b.iter(|| {
            let mut ok = 0usize;
            for d in &lam.directives {
                let Directive::Query(raw) = d else { continue };
                if let Ok(q) = elaborate(raw, Calculus::Cdb, &ccfg) {
                    let mut instr = Instr::default();
                    if run_query(&q, &ccfg, &mut instr).is_ok() {
                        ok += 1;
                    }
                }
            }
            ok
        })
    });
}

fn bench_oracle(c: &mut Criterion) {
    let cfg = StructConfig::preset(Preset::Linear);
    let prog = parse_program(&l_corpus_text(60)).unwrap();
    let u = TypeUniverse::system_l(&["P", "Q", "N", "M"], &["P", "Q", "N", "M"], 2);
    let queries: Vec<_> = prog
        .directives
        .iter()
        .filter_map(|d| match d {
            Directive::Query(raw) => elaborate(raw, Calculus::Pol, &cfg).ok(),
            _ => None,
        })
        .collect();
    c.bench_function("oracle_derive_l_corpus", |b| {
        b.iter(|| {
            queries.iter().map(|q| derive_query(q, &u, &cfg).len()).sum::<usize>()
        })
    });
}

fn bench_dualize(c: &mut Criterion) {
    let prog = parse_program(&l_corpus_text(200)).unwrap();
    c.bench_function("dualize_l_corpus", |b| {
        b.iter_batched(
            || prog.directives.clone(),
            |dirs| dual_program(&dirs).unwrap().len(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, bench_parse, bench_check, bench_oracle, bench_dualize);
criterion_main!(benches);
