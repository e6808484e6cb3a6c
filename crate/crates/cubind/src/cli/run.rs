//! The command driver: `check`, `eval`, `trace`, `observe`, and `test`,
//! with shared flag handling and report rendering.

use super::parse::{parse_expr, parse_file};
use super::print::Printer;
use super::{DataDecl, Item, ReportLine, SourceFile, Status};
use crate::check::CheckCtx;
use crate::eval::{observe, step, Flags, StepResult, TraceEnd, DEFAULT_FUEL};
use crate::harness;
use crate::syntax::Term;

#[derive(Debug, Clone)]
pub struct Options {
    pub flags: Flags,
    pub json: bool,
    pub fuel: u64,
    pub max_trace: u64,
    pub expr: Option<String>,
    pub at: Option<String>,
    pub suite: Option<String>,
}

impl Default for Options {
    fn default() -> Self {
        let fuel = std::env::var("CUBIND_FUEL")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_FUEL);
        Options {
            flags: Flags::default(),
            json: false,
            fuel,
            max_trace: 1000,
            expr: None,
            at: None,
            suite: None,
        }
    }
}

pub const USAGE: &str = "usage:
  cubind check FILE            check every declaration and run directives
  cubind eval FILE -e EXPR     evaluate an expression in the file's scope
  cubind trace FILE -e EXPR    print the full reduction sequence
  cubind observe FILE -e EXPR --at TYPE
                               deep-read an observable value back
  cubind test [--suite NAME]   run the built-in suites

flags: --opt-closed  --ext natrec  --ext paths  --json
       --fuel N (eval budget; also CUBIND_FUEL)  --max N (trace length)
suites: canonicity arithmetic boundary kan elim-beta coherence mutation
        validity optimization natrec";

fn parse_args(args: &[String]) -> Result<(String, Option<String>, Options), String> {
    let mut opts = Options::default();
    let mut cmd = None;
    let mut file = None;
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        match a.as_str() {
            "--json" => opts.json = true,
            "--opt-closed" => opts.flags.opt_closed = true,
            "--ext" => {
                i += 1;
                match args.get(i).map(|s| s.as_str()) {
                    Some("natrec") => opts.flags.ext_natrec = true,
                    Some("paths") => opts.flags.ext_paths = true,
                    other => return Err(format!("unknown extension {:?}", other)),
                }
            }
            "-e" => {
                i += 1;
                opts.expr = Some(
                    args.get(i)
                        .ok_or_else(|| "-e needs an expression".to_string())?
                        .clone(),
                );
            }
            "--at" => {
                i += 1;
                opts.at = Some(
                    args.get(i)
                        .ok_or_else(|| "--at needs a type".to_string())?
                        .clone(),
                );
            }
            "--fuel" => {
                i += 1;
                opts.fuel = args
                    .get(i)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| "--fuel needs a number".to_string())?;
            }
            "--max" => {
                i += 1;
                opts.max_trace = args
                    .get(i)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| "--max needs a number".to_string())?;
            }
            "--suite" => {
                i += 1;
                opts.suite = Some(
                    args.get(i)
                        .ok_or_else(|| "--suite needs a name".to_string())?
                        .clone(),
                );
            }
            _ if cmd.is_none() => cmd = Some(a.clone()),
            _ if file.is_none() => file = Some(a.clone()),
            _ => return Err(format!("unexpected argument `{}`", a)),
        }
        i += 1;
    }
    Ok((cmd.ok_or_else(|| USAGE.to_string())?, file, opts))
}

fn datas_of(file: &SourceFile) -> Vec<DataDecl> {
    file.items
        .iter()
        .filter_map(|i| match i {
            Item::Data(d) => Some(d.clone()),
            _ => None,
        })
        .collect()
}

fn eval_counting(t: &Term, flags: &Flags, fuel: u64) -> Result<(Term, u64), String> {
    let mut cur = t.clone();
    for steps in 0..=fuel {
        match step(&cur, flags) {
            StepResult::IsValue => return Ok((cur, steps)),
            StepResult::Steps(next) => cur = next,
            StepResult::Stuck(why) => return Err(format!("stuck: {}", why)),
        }
    }
    Err("fuel exhausted".into())
}

/// Check all declarations and run the directives of a file, in order.
pub fn run_file(file: &SourceFile, opts: &Options) -> Vec<ReportLine> {
    let printer = Printer::new(&datas_of(file));
    let ctx = CheckCtx::new(opts.flags);
    let mut out = Vec::new();
    let mut defs: Vec<(String, Option<Term>)> = Vec::new();
    for item in &file.items {
        let at_line = |e: String| {
            if item.line() == 0 {
                e
            } else {
                format!("line {}: {}", item.line(), e)
            }
        };
        match item {
            Item::Data(d) => {
                let directive = format!("data {}", d.name);
                let r = ctx
                    .check_telescope(&d.tele)
                    .and_then(|inner| inner.check_constrs(&d.tele, &d.schema));
                out.push(match r {
                    Ok(_) => ReportLine::ok(directive, 0, None),
                    Err(e) => ReportLine::fail(directive, at_line(e.to_string())),
                });
            }
            Item::Def(d) => {
                let directive = format!("def {}", d.name);
                let r = match &d.ann {
                    Some(ann) => ctx
                        .check_type(ann)
                        .and_then(|()| ctx.check_term(&d.body, ann))
                        .map(|()| ann.clone()),
                    None => ctx.infer_term(&d.body),
                };
                defs.push((d.name.clone(), d.ann.clone()));
                out.push(match r {
                    Ok(ty) => ReportLine::ok(directive, 0, Some(printer.term_str(&ty))),
                    Err(e) => ReportLine::fail(directive, at_line(e.to_string())),
                });
            }
            Item::Eval { term, .. } => {
                let directive = format!("eval {}", printer.term_str(term));
                out.push(match eval_counting(term, &opts.flags, opts.fuel) {
                    Ok((v, steps)) => {
                        ReportLine::ok(directive, steps, Some(printer.term_str(&v)))
                    }
                    Err(e) => ReportLine::fail(directive, at_line(e)),
                });
            }
            Item::Trace { term, .. } => {
                let directive = format!("trace {}", printer.term_str(term));
                let tr = crate::eval::trace(term, &opts.flags, opts.max_trace);
                let lines: Vec<String> =
                    tr.steps.iter().map(|s| printer.term_str(s)).collect();
                match tr.end {
                    TraceEnd::Value => out.push(ReportLine::ok(
                        directive,
                        (tr.steps.len() - 1) as u64,
                        Some(lines.join("\n  ~> ")),
                    )),
                    TraceEnd::Stuck(why) => out.push(ReportLine::fail(
                        directive,
                        at_line(format!("stuck: {}", why)),
                    )),
                    TraceEnd::OutOfSteps => out.push(ReportLine::fail(
                        directive,
                        at_line("trace budget exhausted".into()),
                    )),
                }
            }
            Item::Observe { term, at, .. } => {
                let directive = format!(
                    "observe {} : {}",
                    printer.term_str(term),
                    printer.term_str(at)
                );
                out.push(match observe(term, at, &opts.flags, opts.fuel) {
                    Ok(obs) => ReportLine::ok(directive, 0, Some(obs.to_string())),
                    Err(e) => ReportLine::fail(directive, at_line(e.to_string())),
                });
            }
        }
    }
    out
}

fn suite_report(s: &harness::Suite) -> Vec<ReportLine> {
    let mut out = Vec::new();
    let failed = s.failures();
    let mut line = ReportLine {
        directive: format!("suite {}", s.name),
        status: if failed.is_empty() {
            Status::Ok
        } else {
            Status::Fail
        },
        steps: s.cases.len() as u64,
        value: Some(format!(
            "{}/{} passed",
            s.cases.len() - failed.len(),
            s.cases.len()
        )),
        error: None,
    };
    if !failed.is_empty() {
        let mut msgs: Vec<String> = failed
            .iter()
            .take(5)
            .map(|c| format!("{}: {}", c.name, c.outcome.as_ref().unwrap_err()))
            .collect();
        if failed.len() > 5 {
            msgs.push(format!("... and {} more", failed.len() - 5));
        }
        line.error = Some(msgs.join("; "));
    }
    out.push(line);
    for note in &s.notes {
        out.push(ReportLine::ok(format!("note {}", s.name), 0, Some(note.clone())));
    }
    out
}

/// Run a command line; returns the exit code and the report.
pub fn run(args: &[String]) -> (i32, Vec<ReportLine>, bool) {
    let (cmd, file, opts) = match parse_args(args) {
        Ok(x) => x,
        Err(e) => return (2, vec![ReportLine::fail("usage", e)], false),
    };
    let mut report = Vec::new();
    match cmd.as_str() {
        "check" | "eval" | "trace" | "observe" => {
            let path = match &file {
                Some(p) => p.clone(),
                None => {
                    return (
                        2,
                        vec![ReportLine::fail(cmd, "this command needs a FILE")],
                        opts.json,
                    )
                }
            };
            let src = match std::fs::read_to_string(&path) {
                Ok(s) => s,
                Err(e) => {
                    return (
                        1,
                        vec![ReportLine::fail(
                            format!("{} {}", cmd, path),
                            format!("cannot read file: {}", e),
                        )],
                        opts.json,
                    )
                }
            };
            let parsed = match parse_file(&src) {
                Ok(f) => f,
                Err(e) => {
                    return (
                        1,
                        vec![ReportLine::fail(
                            format!("{} {}", cmd, path),
                            format!("parse error at {}", e),
                        )],
                        opts.json,
                    )
                }
            };
            match cmd.as_str() {
                "check" => report.extend(run_file(&parsed, &opts)),
                _ => {
                    let printer = Printer::new(&datas_of(&parsed));
                    let expr_src = match &opts.expr {
                        Some(e) => e.clone(),
                        None => {
                            return (
                                2,
                                vec![ReportLine::fail(cmd, "this command needs -e EXPR")],
                                opts.json,
                            )
                        }
                    };
                    let term = match parse_expr(&expr_src, &parsed.items) {
                        Ok(t) => t,
                        Err(e) => {
                            return (
                                1,
                                vec![ReportLine::fail(
                                    format!("{} {}", cmd, expr_src),
                                    format!("parse error at {}", e),
                                )],
                                opts.json,
                            )
                        }
                    };
                    match cmd.as_str() {
                        "eval" => {
                            let directive = format!("eval {}", expr_src);
                            report.push(match eval_counting(&term, &opts.flags, opts.fuel) {
                                Ok((v, steps)) => {
                                    ReportLine::ok(directive, steps, Some(printer.term_str(&v)))
                                }
                                Err(e) => ReportLine::fail(directive, e),
                            });
                        }
                        "trace" => {
                            let directive = format!("trace {}", expr_src);
                            let tr = crate::eval::trace(&term, &opts.flags, opts.max_trace);
                            let lines: Vec<String> =
                                tr.steps.iter().map(|s| printer.term_str(s)).collect();
                            match tr.end {
                                TraceEnd::Value => report.push(ReportLine::ok(
                                    directive,
                                    (tr.steps.len() - 1) as u64,
                                    Some(lines.join("\n  ~> ")),
                                )),
                                TraceEnd::Stuck(why) => report
                                    .push(ReportLine::fail(directive, format!("stuck: {}", why))),
                                TraceEnd::OutOfSteps => report
                                    .push(ReportLine::fail(directive, "trace budget exhausted")),
                            }
                        }
                        "observe" => {
                            let at_src = match &opts.at {
                                Some(a) => a.clone(),
                                None => {
                                    return (
                                        2,
                                        vec![ReportLine::fail(cmd, "observe needs --at TYPE")],
                                        opts.json,
                                    )
                                }
                            };
                            let at = match parse_expr(&at_src, &parsed.items) {
                                Ok(t) => t,
                                Err(e) => {
                                    return (
                                        1,
                                        vec![ReportLine::fail(
                                            format!("observe {}", at_src),
                                            format!("parse error at {}", e),
                                        )],
                                        opts.json,
                                    )
                                }
                            };
                            let directive = format!("observe {} : {}", expr_src, at_src);
                            report.push(match observe(&term, &at, &opts.flags, opts.fuel) {
                                Ok(obs) => ReportLine::ok(directive, 0, Some(obs.to_string())),
                                Err(e) => ReportLine::fail(directive, e.to_string()),
                            });
                        }
                        _ => unreachable!(),
                    }
                }
            }
        }
        "test" => match &opts.suite {
            Some(name) => match harness::run_suite(name) {
                Some(s) => report.extend(suite_report(&s)),
                None => {
                    return (
                        2,
                        vec![ReportLine::fail(
                            format!("test --suite {}", name),
                            format!("unknown suite; available: {:?}", harness::suite_names()),
                        )],
                        opts.json,
                    )
                }
            },
            None => {
                for s in harness::all_suites() {
                    report.extend(suite_report(&s));
                }
            }
        },
        other => {
            return (
                2,
                vec![ReportLine::fail(other, USAGE)],
                opts.json,
            )
        }
    }
    let code = if report.iter().all(|l| l.status == Status::Ok) {
        0
    } else {
        1
    };
    (code, report, opts.json)
}
