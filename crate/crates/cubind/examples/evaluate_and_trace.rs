//! Small-step evaluation and tracing.
//!
//! Builds a few terms against the catalog types and shows single steps,
//! bounded evaluation, and full reduction traces, including a loop
//! constructor collapsing onto its boundary.
//!
//! Run: `cargo run --example evaluate_and_trace`

use cubind::cli::print::Printer;
use cubind::cli::DataDecl;
use cubind::eval::{eval, step, trace, Flags, StepResult};
use cubind::stdlib::*;
use cubind::syntax::*;

fn main() {
    let flags = Flags::default();
    let circle = circle_decl();
    let printer = Printer::new(&[DataDecl {
        line: 0,
        name: "circle".into(),
        tele: circle.tele.clone(),
        schema: circle.schema.clone(),
    }]);

    // A loop at an endpoint is not a value: it steps to its boundary.
    let lp0 = circle.intro("lp", vec![Dim::Zero], vec![], vec![]);
    match step(&lp0, &flags) {
        StepResult::Steps(next) => {
            println!("lp(0) steps to {}", printer.term_str(&next));
        }
        other => println!("unexpected: {:?}", other),
    }

    // The same loop at a free dimension is a value.
    let x = fresh_dim();
    let lpx = circle.intro("lp", vec![Dim::Var(x)], vec![], vec![]);
    println!("lp(x) at a free dimension: {:?}", step(&lpx, &flags));

    // A full trace: every intermediate term of a composition collapse.
    let t = Term::Hcom {
        ty: Box::new(circle.ind_type()),
        r: Dim::Zero,
        r2: Dim::One,
        cap: Box::new(lp0.clone()),
        tube: vec![Tube::new(
            Constraint::new(Dim::Zero, Dim::Zero),
            fresh_dim(),
            circle.intro("base", vec![], vec![], vec![]),
        )],
    };
    let tr = trace(&t, &flags, 50);
    println!("\ntrace of a composition with a satisfied tube:");
    for s in &tr.steps {
        println!("  ~> {}", printer.term_str(s));
    }
    println!("  end: {:?}", tr.end);

    // Bounded evaluation returns the weak head value.
    let v = eval(&nat_add(num(2), num(2)), &flags, 10_000).unwrap();
    println!("\nweak value of 2 + 2 starts with: {:?}", head_label(&v));
}

fn head_label(t: &Term) -> String {
    match t {
        Term::Intro { label, .. } => label.clone(),
        other => format!("{:?}", other),
    }
}
