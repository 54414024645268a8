//! polcheck: typecheck, elaborate, dualize and oracle-verify programs in the
//! bidirectional calculi family.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use polcheck_core::diag::Instr;
use polcheck_core::oracle::{agree, derive_query, generate_corpus, TypeUniverse};
use polcheck_core::scope::{elaborate, print_query_tree, Calculus};
use polcheck_core::surface::ast::{Directive, QueryKind};
use polcheck_core::surface::{parse_program, print_directive, print_program};
use polcheck_core::systeml::dualize::dual_program;
use polcheck_core::{run_query, Preset, StructConfig};

use report::{print_human, report_ms, ErrObj, ExitClass, QueryReport, Report};

#[derive(Parser)]
#[command(name = "polcheck", version, about = "A bicontextual typechecker workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CalcOpts {
    /// Calculus: stlc, lin, cdb, pos, neg, pol or lnl.
    #[arg(long)]
    calculus: Calculus,
    /// Structural preset: linear, cartesian, lnl-bang or lnl-full.
    #[arg(long)]
    preset: Option<Preset>,
}

impl CalcOpts {
    fn resolve(&self) -> Result<(Calculus, StructConfig), String> {
        let preset = self.preset.unwrap_or_else(|| self.calculus.default_preset());
        if !self.calculus.allows_preset(preset) {
            return Err(format!(
                "preset `{preset}` cannot be combined with calculus `{}`",
                self.calculus
            ));
        }
        Ok((self.calculus, StructConfig::preset(preset)))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Typecheck every query in a file and report verdicts.
    Check {
        #[command(flatten)]
        opts: CalcOpts,
        /// Emit one machine-readable JSON report.
        #[arg(long)]
        json: bool,
        file: PathBuf,
    },
    /// Print the scoped co-de Bruijn tree of every query.
    Elaborate {
        #[command(flatten)]
        opts: CalcOpts,
        file: PathBuf,
    },
    /// Print the dual of a System L program.
    Dualize { file: PathBuf },
    /// Generate a corpus and verify the checker against the declarative
    /// oracle, printing any counterexamples.
    Oracle {
        #[command(flatten)]
        opts: CalcOpts,
        /// Largest term size to generate.
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Corpus seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directives per judgement class.
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Check { opts, json, file } => check(&opts, json, &file),
        Cmd::Elaborate { opts, file } => elaborate_cmd(&opts, &file),
        Cmd::Dualize { file } => dualize_cmd(&file),
        Cmd::Oracle { opts, max_size, seed, count } => oracle_cmd(&opts, max_size, seed, count),
    };
    ExitCode::from(code as u8)
}

fn hard_error(json: bool, code: &str, message: String, line: u32, column: u32) -> ExitClass {
    let r = Report {
        status: "error",
        queries: Vec::new(),
        error: Some(ErrObj { code: code.into(), message, line, column }),
    };
    if json {
        print!("{}", r.to_json());
    } else {
        print_human(&r);
    }
    ExitClass::Hard
}

fn read(file: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(file).map_err(|e| format!("cannot read {}: {e}", file.display()))
}

fn check(opts: &CalcOpts, json: bool, file: &PathBuf) -> ExitClass {
    let (calculus, cfg) = match opts.resolve() {
        Ok(x) => x,
        Err(m) => return hard_error(json, "usage", m, 0, 0),
    };
    let text = match read(file) {
        Ok(t) => t,
        Err(m) => return hard_error(json, "io", m, 0, 0),
    };
    let prog = match parse_program(&text) {
        Ok(p) => p,
        Err(e) => return hard_error(json, "parse", e.message, e.span.line, e.span.col),
    };

    let mut report = Report::ok();
    let mut class = ExitClass::Ok;
    for d in &prog.directives {
        let Directive::Query(raw) = d else { continue };
        let started = Instant::now();
        let kind = raw.kind.as_str().to_string();
        match elaborate(raw, calculus, &cfg) {
            Err(e) => {
                class = class.max(ExitClass::Hard);
                report.queries.push(QueryReport {
                    kind,
                    ty: None,
                    contexts: None,
                    error: Some(ErrObj {
                        code: e.code.as_str().into(),
                        message: e.message,
                        line: e.span.line,
                        column: e.span.col,
                    }),
                    ms: report_ms(started.elapsed().as_millis()),
                });
            }
            Ok(q) => {
                let mut instr = Instr::default();
                match run_query(&q, &cfg, &mut instr) {
                    Ok((ty, sigma)) => {
                        let contexts = match q.calculus {
                            Calculus::Stlc => None,
                            _ => Some(sigma.to_string()),
                        };
                        report.queries.push(QueryReport {
                            kind,
                            ty: ty.map(|t| t.to_string()),
                            contexts,
                            error: None,
                            ms: report_ms(started.elapsed().as_millis()),
                        });
                    }
                    Err(e) => {
                        class = class.max(ExitClass::TypeError);
                        report.queries.push(QueryReport {
                            kind,
                            ty: None,
                            contexts: None,
                            error: Some(ErrObj {
                                code: e.code.as_str().into(),
                                message: e.message,
                                line: e.span.line,
                                column: e.span.col,
                            }),
                            ms: report_ms(started.elapsed().as_millis()),
                        });
                    }
                }
            }
        }
    }
    if class != ExitClass::Ok {
        report.status = "error";
    }
    if json {
        print!("{}", report.to_json());
    } else {
        print_human(&report);
    }
    class
}

fn elaborate_cmd(opts: &CalcOpts, file: &PathBuf) -> ExitClass {
    let (calculus, cfg) = match opts.resolve() {
        Ok(x) => x,
        Err(m) => return hard_error(false, "usage", m, 0, 0),
    };
    let text = match read(file) {
        Ok(t) => t,
        Err(m) => return hard_error(false, "io", m, 0, 0),
    };
    let prog = match parse_program(&text) {
        Ok(p) => p,
        Err(e) => return hard_error(false, "parse", e.message, e.span.line, e.span.col),
    };
    let mut class = ExitClass::Ok;
    for d in &prog.directives {
        let Directive::Query(raw) = d else { continue };
        match elaborate(raw, calculus, &cfg) {
            Ok(q) => print!("{}", print_query_tree(&q)),
            Err(e) => {
                class = ExitClass::Hard;
                eprintln!("error [{}] {}:{}: {}", e.code.as_str(), e.span.line, e.span.col, e.message);
            }
        }
    }
    class
}

fn dualize_cmd(file: &PathBuf) -> ExitClass {
    let text = match read(file) {
        Ok(t) => t,
        Err(m) => return hard_error(false, "io", m, 0, 0),
    };
    let prog = match parse_program(&text) {
        Ok(p) => p,
        Err(e) => return hard_error(false, "parse", e.message, e.span.line, e.span.col),
    };
    match dual_program(&prog.directives) {
        Ok(d) => {
            print!("{}", print_program(&d));
            ExitClass::Ok
        }
        Err(e) => hard_error(false, "dualize", e.message, 0, 0),
    }
}

fn kinds_for(calculus: Calculus) -> Vec<QueryKind> {
    match calculus {
        Calculus::Stlc | Calculus::Lin | Calculus::Cdb => {
            vec![QueryKind::LambdaCheck, QueryKind::LambdaSynth]
        }
        Calculus::Pos => vec![QueryKind::Expr, QueryKind::Pattern, QueryKind::Command],
        Calculus::Neg => vec![QueryKind::Copattern, QueryKind::Coexpr, QueryKind::Command],
        _ => vec![
            QueryKind::Expr,
            QueryKind::Pattern,
            QueryKind::Copattern,
            QueryKind::Coexpr,
            QueryKind::Command,
        ],
    }
}

fn universe_for(calculus: Calculus) -> TypeUniverse {
    match calculus {
        Calculus::Stlc | Calculus::Lin | Calculus::Cdb => TypeUniverse::lambda(&["P", "Q"], 2),
        _ => TypeUniverse::system_l(&["P", "Q", "N", "M"], &["P", "Q", "N", "M"], 2),
    }
}

fn oracle_cmd(opts: &CalcOpts, max_size: usize, seed: u64, count: usize) -> ExitClass {
    let (calculus, cfg) = match opts.resolve() {
        Ok(x) => x,
        Err(m) => return hard_error(false, "usage", m, 0, 0),
    };
    let u = universe_for(calculus);
    let mut total = 0usize;
    let mut accepted = 0usize;
    let mut mismatches = 0usize;
    for kind in kinds_for(calculus) {
        for d in generate_corpus(seed, max_size, kind, calculus, &cfg, count) {
            let Directive::Query(raw) = &d else { continue };
            let q = match elaborate(raw, calculus, &cfg) {
                Ok(q) => q,
                Err(e) => {
                    mismatches += 1;
                    println!("generator produced an unscopable directive: {}", e.message);
                    println!("  {}", print_directive(&d));
                    continue;
                }
            };
            let mut instr = Instr::default();
            let outcome = run_query(&q, &cfg, &mut instr);
            let set = derive_query(&q, &u, &cfg);
            total += 1;
            if outcome.is_ok() {
                accepted += 1;
            }
            if !agree(&outcome, &set, &q) {
                mismatches += 1;
                println!("counterexample: {}", print_directive(&d));
                println!("  checker: {outcome:?}");
                println!("  oracle:  {} judgement(s)", set.len());
            }
        }
    }
    println!(
        "agreement: {total} directives, {accepted} accepted, {mismatches} mismatches (calculus {calculus}, preset {}, seed {seed}, size <= {max_size})",
        cfg.preset
    );
    if mismatches == 0 {
        ExitClass::Ok
    } else {
        ExitClass::TypeError
    }
}
