//! Machine-readable and human-readable query reports.

use std::io::IsTerminal;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Report {
    pub status: &'static str,
    pub queries: Vec<QueryReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrObj>,
}

#[derive(Debug, Serialize)]
pub struct QueryReport {
    pub kind: String,
    #[serde(rename = "type")]
    pub ty: Option<String>,
    pub contexts: Option<String>,
    pub error: Option<ErrObj>,
    pub ms: u64,
}

#[derive(Debug, Serialize)]
pub struct ErrObj {
    pub code: String,
    pub message: String,
    pub line: u32,
    pub column: u32,
}

/// Exit classes, strongest wins: parse/scope/usage beats type errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitClass {
    Ok = 0,
    TypeError = 1,
    Hard = 2,
}

impl Report {
    pub fn ok() -> Report {
        Report { status: "ok", queries: Vec::new(), error: None }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serialization");
        s.push('\n');
        s
    }
}

/// The reported milliseconds: the measured value unless POLCHECK_FIXED_MS
/// pins it, which keeps reports byte-stable for golden tests.
pub fn report_ms(measured: u128) -> u64 {
    match std::env::var("POLCHECK_FIXED_MS") {
        Ok(v) => v.parse().unwrap_or(0),
        Err(_) => measured as u64,
    }
}

fn color_enabled() -> bool {
    match std::env::var("POLCHECK_COLOR").as_deref() {
        Ok("always") => true,
        Ok("never") => false,
        _ => std::io::stdout().is_terminal(),
    }
}

pub fn print_human(r: &Report) {
    let color = color_enabled();
    let paint = |ok: bool, s: &str| {
        if !color {
            s.to_string()
        } else if ok {
            format!("\x1b[32m{s}\x1b[0m")
        } else {
            format!("\x1b[31m{s}\x1b[0m")
        }
    };
    if let Some(e) = &r.error {
        println!("{} [{}] {}:{}: {}", paint(false, "error"), e.code, e.line, e.column, e.message);
        return;
    }
    for q in &r.queries {
        match &q.error {
            None => {
                let mut line = format!("{}  {}", paint(true, "ok   "), q.kind);
                if let Some(t) = &q.ty {
                    line.push_str(&format!("  : {t}"));
                }
                if let Some(c) = &q.contexts {
                    line.push_str(&format!("  |- {c}"));
                }
                line.push_str(&format!("  ({} ms)", q.ms));
                println!("{line}");
            }
            Some(e) => {
                println!(
                    "{}  {}  [{}] {}:{}: {}",
                    paint(false, "error"),
                    q.kind,
                    e.code,
                    e.line,
                    e.column,
                    e.message
                );
            }
        }
    }
}
