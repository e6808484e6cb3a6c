//! CLI and surface-syntax contracts: round-tripping of the shipped files,
//! report determinism, exit codes, and a frozen JSON golden line.

use cubind::cli::parse::{parse_expr, parse_file};
use cubind::cli::print::Printer;
use cubind::cli::run::run;
use cubind::cli::{Item, SourceFile, Status};
use cubind::syntax::*;

fn stdlib_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("stdlib")
}

fn shipped_files() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(stdlib_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            if p.extension().map(|x| x == "cit").unwrap_or(false) {
                Some((
                    p.file_name().unwrap().to_string_lossy().to_string(),
                    std::fs::read_to_string(&p).unwrap(),
                ))
            } else {
                None
            }
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no shipped stdlib files found");
    out
}

fn datas_of(f: &SourceFile) -> Vec<cubind::cli::DataDecl> {
    f.items
        .iter()
        .filter_map(|i| match i {
            Item::Data(d) => Some(d.clone()),
            _ => None,
        })
        .collect()
}

fn items_alpha_eq(a: &Item, b: &Item) -> bool {
    match (a, b) {
        (Item::Data(x), Item::Data(y)) => {
            x.name == y.name
                && alpha_eq_tele(&x.tele, &y.tele)
                && alpha_eq_schema(&x.schema, &y.schema)
        }
        (Item::Def(x), Item::Def(y)) => {
            x.name == y.name
                && alpha_eq(&x.body, &y.body)
                && match (&x.ann, &y.ann) {
                    (None, None) => true,
                    (Some(s), Some(t)) => alpha_eq(s, t),
                    _ => false,
                }
        }
        (Item::Eval { term: x, .. }, Item::Eval { term: y, .. }) => alpha_eq(x, y),
        (Item::Trace { term: x, .. }, Item::Trace { term: y, .. }) => alpha_eq(x, y),
        (
            Item::Observe { term: x, at: xt, .. },
            Item::Observe { term: y, at: yt, .. },
        ) => alpha_eq(x, y) && alpha_eq(xt, yt),
        _ => false,
    }
}

#[test]
fn shipped_files_reparse_after_printing() {
    for (name, src) in shipped_files() {
        let first = parse_file(&src).unwrap_or_else(|e| panic!("{}: {}", name, e));
        let printer = Printer::new(&datas_of(&first));
        let printed = printer.file(&first);
        let second =
            parse_file(&printed).unwrap_or_else(|e| panic!("{} (reprinted): {}\n{}", name, e, printed));
        assert_eq!(first.items.len(), second.items.len(), "{}", name);
        for (a, b) in first.items.iter().zip(&second.items) {
            assert!(items_alpha_eq(a, b), "{}: item drifted through printing", name);
        }
    }
}

#[test]
fn printing_is_stable_on_shipped_files() {
    // The shipped files are generated by the printer, so printing the
    // parse gives back the file minus its comment header.
    for (name, src) in shipped_files() {
        let parsed = parse_file(&src).unwrap();
        let printer = Printer::new(&datas_of(&parsed));
        let printed = printer.file(&parsed);
        let body: String = src
            .lines()
            .filter(|l| !l.trim_start().starts_with("--"))
            .collect::<Vec<_>>()
            .join("\n");
        let printed_trim: String = printed
            .lines()
            .collect::<Vec<_>>()
            .join("\n");
        assert_eq!(printed_trim.trim_end(), body.trim_end(), "{}", name);
    }
}

#[test]
fn expression_parser_round_trips() {
    let src = std::fs::read_to_string(stdlib_dir().join("nat.cit")).unwrap();
    let file = parse_file(&src).unwrap();
    let printer = Printer::new(&datas_of(&file));
    for expr in [
        "add two three",
        "\\a. suc(a)",
        "hcom {nat} 0 ~> 1 two [0 = 0 -> y. two]",
        "coe {z. nat} 0 ~> 1 (suc(zero))",
        "elim [a. nat] [] two { zero -> zero | suc(k, p) -> p }",
        "(a : nat) -> nat",
        "plam x. two",
        "fhcom 0 ~> 1 two [1 = 1 -> y. two]",
    ] {
        let t1 = parse_expr(expr, &file.items).unwrap_or_else(|e| panic!("{}: {}", expr, e));
        let printed = printer.term_str(&t1);
        let t2 = parse_expr(&printed, &file.items)
            .unwrap_or_else(|e| panic!("{} -> {}: {}", expr, printed, e));
        assert!(alpha_eq(&t1, &t2), "{} -> {}", expr, printed);
    }
}

#[test]
fn json_reports_are_deterministic() {
    let path = stdlib_dir().join("nat.cit");
    let args: Vec<String> = vec![
        "eval".into(),
        path.to_string_lossy().to_string(),
        "-e".into(),
        "add two three".into(),
        "--json".into(),
    ];
    let (code1, rep1, json1) = run(&args);
    let (code2, rep2, _) = run(&args);
    assert_eq!(code1, 0);
    assert_eq!(code1, code2);
    assert!(json1);
    let lines1: Vec<String> = rep1.iter().map(|l| l.to_json()).collect();
    let lines2: Vec<String> = rep2.iter().map(|l| l.to_json()).collect();
    assert_eq!(lines1, lines2, "reports must be byte-identical");
    // Frozen golden line.
    assert_eq!(
        lines1[0],
        "{\"directive\":\"eval add two three\",\"status\":\"ok\",\"steps\":3,\
         \"value\":\"suc(elim [a. nat] [] suc(zero) { zero -> suc(suc(suc(zero))) | suc(a, b) -> suc(b) })\"}"
    );
}

#[test]
fn check_exit_codes() {
    let path = stdlib_dir().join("torus.cit");
    let (code, _, _) = run(&[
        "check".to_string(),
        path.to_string_lossy().to_string(),
    ]);
    assert_eq!(code, 0);
    // A parse failure is a nonzero exit.
    let tmp = std::env::temp_dir().join("cubind_bad_file.cit");
    std::fs::write(&tmp, "data broken = ").unwrap();
    let (code, report, _) = run(&["check".to_string(), tmp.to_string_lossy().to_string()]);
    assert_eq!(code, 1);
    assert!(report.iter().any(|l| l.status == Status::Fail));
    // A check failure is a nonzero exit with the error rendered.
    std::fs::write(&tmp, "data halfloop = base | lp(@x) [x = 0 -> base]").unwrap();
    let (code, report, _) = run(&["check".to_string(), tmp.to_string_lossy().to_string()]);
    assert_eq!(code, 1);
    assert!(report
        .iter()
        .any(|l| l.error.as_deref().unwrap_or("").contains("validity")));
    let _ = std::fs::remove_file(tmp);
}

#[test]
fn natrec_file_needs_the_extension() {
    let path = stdlib_dir().join("natglue.cit");
    let (code, _, _) = run(&["check".to_string(), path.to_string_lossy().to_string()]);
    assert_eq!(code, 1, "gated without --ext natrec");
    let (code, _, _) = run(&[
        "check".to_string(),
        path.to_string_lossy().to_string(),
        "--ext".to_string(),
        "natrec".to_string(),
    ]);
    assert_eq!(code, 0);
}

#[test]
fn test_command_runs_suites() {
    let (code, report, _) = run(&[
        "test".to_string(),
        "--suite".to_string(),
        "kan".to_string(),
    ]);
    assert_eq!(code, 0);
    assert!(report[0].value.as_deref().unwrap_or("").contains("passed"));
    let (code, _, _) = run(&[
        "test".to_string(),
        "--suite".to_string(),
        "no-such-suite".to_string(),
    ]);
    assert_ne!(code, 0);
}

#[test]
fn fuel_flag_bounds_evaluation() {
    let path = stdlib_dir().join("nat.cit");
    let (code, report, _) = run(&[
        "eval".to_string(),
        path.to_string_lossy().to_string(),
        "-e".to_string(),
        "add three three".to_string(),
        "--fuel".to_string(),
        "1".to_string(),
    ]);
    assert_eq!(code, 1);
    assert!(report[0]
        .error
        .as_deref()
        .unwrap_or("")
        .contains("fuel"));
}
