//! The batch front end: `.cit` surface syntax, a pretty-printer that
//! round-trips through the parser, and the command driver producing
//! human-readable and JSON-lines reports.

pub mod parse;
pub mod print;
pub mod run;

use crate::syntax::{ConstrList, Telescope, Term};

/// A parsed declaration file: data declarations, definitions, and run
/// directives, in order. Later items may reference earlier ones only.
#[derive(Debug, Clone, Default)]
pub struct SourceFile {
    pub items: Vec<Item>,
}

#[derive(Debug, Clone)]
pub enum Item {
    Data(DataDecl),
    Def(DefDecl),
    Eval { line: usize, term: Term },
    Trace { line: usize, term: Term },
    Observe { line: usize, term: Term, at: Term },
}

impl Item {
    /// Source line the item starts on (1-based; 0 for synthesized items).
    pub fn line(&self) -> usize {
        match self {
            Item::Data(d) => d.line,
            Item::Def(d) => d.line,
            Item::Eval { line, .. } | Item::Trace { line, .. } | Item::Observe { line, .. } => {
                *line
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct DataDecl {
    pub line: usize,
    pub name: String,
    pub tele: Telescope,
    pub schema: ConstrList,
}

#[derive(Debug, Clone)]
pub struct DefDecl {
    pub line: usize,
    pub name: String,
    pub ann: Option<Term>,
    pub body: Term,
}

/// Outcome of a single directive.
#[derive(Debug, Clone)]
pub struct ReportLine {
    pub directive: String,
    pub status: Status,
    pub steps: u64,
    pub value: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
}

impl ReportLine {
    pub fn ok(directive: impl Into<String>, steps: u64, value: Option<String>) -> ReportLine {
        ReportLine {
            directive: directive.into(),
            status: Status::Ok,
            steps,
            value,
            error: None,
        }
    }

    pub fn fail(directive: impl Into<String>, error: impl Into<String>) -> ReportLine {
        ReportLine {
            directive: directive.into(),
            status: Status::Fail,
            steps: 0,
            value: None,
            error: Some(error.into()),
        }
    }

    /// The JSON rendering, with a fixed field order: directive, status,
    /// steps, then value and error only when present.
    pub fn to_json(&self) -> String {
        let mut s = String::from("{");
        s.push_str(&format!("\"directive\":{}", json_str(&self.directive)));
        s.push_str(&format!(
            ",\"status\":\"{}\"",
            match self.status {
                Status::Ok => "ok",
                Status::Fail => "fail",
            }
        ));
        s.push_str(&format!(",\"steps\":{}", self.steps));
        if let Some(v) = &self.value {
            s.push_str(&format!(",\"value\":{}", json_str(v)));
        }
        if let Some(e) = &self.error {
            s.push_str(&format!(",\"error\":{}", json_str(e)));
        }
        s.push('}');
        s
    }

    pub fn to_human(&self) -> String {
        match self.status {
            Status::Ok => match &self.value {
                Some(v) => format!("ok   {} => {} ({} steps)", self.directive, v, self.steps),
                None => format!("ok   {}", self.directive),
            },
            Status::Fail => format!(
                "FAIL {}: {}",
                self.directive,
                self.error.as_deref().unwrap_or("unknown error")
            ),
        }
    }
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
