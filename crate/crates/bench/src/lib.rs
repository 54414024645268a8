//! Shared fixtures for the pipeline benchmarks.

use polcheck_core::oracle::generate_corpus;
use polcheck_core::scope::Calculus;
use polcheck_core::surface::ast::QueryKind;
use polcheck_core::surface::print_program;
use polcheck_core::{Preset, StructConfig};

/// A mixed System L corpus as source text, one directive per line.
pub fn l_corpus_text(count: usize) -> String {
    let cfg = StructConfig::preset(Preset::Linear);
    let mut dirs = generate_corpus(7, 8, QueryKind::Command, Calculus::Pol, &cfg, count);
    for kind in [QueryKind::Expr, QueryKind::Pattern, QueryKind::Copattern, QueryKind::Coexpr] {
        dirs.extend(
            generate_corpus(7, 8, kind, Calculus::Pol, &cfg, count)
                .into_iter()
                .filter(|d| matches!(d, polcheck_core::surface::ast::Directive::Query(_))),
        );
    }
    print_program(&dirs)
}

/// A cartesian co-de Bruijn lambda corpus as source text.
pub fn lambda_corpus_text(count: usize) -> String {
    let cfg = StructConfig::preset(Preset::Cartesian);
    let mut dirs = generate_corpus(9, 8, QueryKind::LambdaSynth, Calculus::Cdb, &cfg, count);
    dirs.extend(
        generate_corpus(10, 8, QueryKind::LambdaCheck, Calculus::Cdb, &cfg, count)
            .into_iter()
            .filter(|d| matches!(d, polcheck_core::surface::ast::Directive::Query(_))),
    );
    print_program(&dirs)
}
