//! The boundary-language natrec extension.
//!
//! Ordinary boundary terms cannot recurse over a numeral parameter; the
//! extension adds a recursor to the specification language. This example
//! checks the stand-in schema, shows the gate without the flag, and prints
//! the golden reduction of a boundary that computes by recursion.
//!
//! Run: `cargo run --example natrec_boundaries`

use cubind::check::CheckCtx;
use cubind::eval::{trace, Flags};
use cubind::harness::natglue_schema;
use cubind::stdlib::num;
use cubind::syntax::*;

fn main() {
    let (tele, schema) = natglue_schema();

    // Without the extension the schema is rejected.
    let plain = CheckCtx::new(Flags::default());
    println!(
        "without --ext natrec: {}",
        plain.check_constrs(&tele, &schema).unwrap_err()
    );

    // With it, the schema checks and the boundary computes.
    let flags = Flags::default().with_natrec();
    CheckCtx::new(flags).check_constrs(&tele, &schema).unwrap();
    println!("with the extension: accepted");

    let pt5 = Term::Intro {
        schema: schema.clone(),
        label: "pt".into(),
        dims: vec![],
        params: vec![num(5)],
        args: vec![],
    };
    let cell = Term::Intro {
        schema: schema.clone(),
        label: "cell".into(),
        dims: vec![Dim::Zero],
        params: vec![num(2)],
        args: vec![pt5],
    };
    let tr = trace(&cell, &flags, 50);
    println!("\nreduction of the x = 0 boundary:");
    for (i, s) in tr.steps.iter().enumerate() {
        println!("  step {}: {}", i, summary(s));
    }
}

fn summary(t: &Term) -> String {
    match t {
        Term::Intro { label, params, .. } => format!("{}({} params)", label, params.len()),
        Term::NatRec { .. } => "natrec <numeral> { ... }".into(),
        other => format!("{:?}", other),
    }
}
