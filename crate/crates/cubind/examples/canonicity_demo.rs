//! Canonicity at desk scale.
//!
//! Generates a corpus of closed, dimension-closed terms over the natural
//! and boolean types — compositions, coercions, eliminators, formal
//! heterogeneous composition — and evaluates each one. Every value is a
//! constructor cell of a boundaryless label; no formal composition or
//! coercion value survives at dimension zero.
//!
//! Run: `cargo run --example canonicity_demo`

use cubind::eval::{eval, Flags};
use cubind::harness::canonicity_terms;
use cubind::syntax::Term;

fn main() {
    let flags = Flags::default();
    let mut by_label: std::collections::BTreeMap<String, usize> = Default::default();
    let corpus = canonicity_terms(2026, 200);
    for (name, t, _ty) in &corpus {
        match eval(t, &flags, 100_000) {
            Ok(Term::Intro { schema, label, .. }) => {
                let ctor = schema.get(&label).expect("known label");
                assert!(ctor.boundary.is_empty(), "{}: boundaryful value", name);
                *by_label.entry(label.clone()).or_default() += 1;
            }
            Ok(other) => panic!("{}: non-constructor value {:?}", name, other),
            Err(e) => panic!("{}: {}", name, e),
        }
    }
    println!("{} terms evaluated to constructor values:", corpus.len());
    for (label, count) in by_label {
        println!("  {:>5} x {}", count, label);
    }
}
