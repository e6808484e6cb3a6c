//! The torus, in both presentations.
//!
//! The square constructor's faces are loops in the first presentation and
//! formal composites in the second. Both reduce to their declared
//! boundaries when a face constraint holds, and both eliminators satisfy
//! their coherence premises.
//!
//! Run: `cargo run --example torus_tour`

use cubind::check::CheckCtx;
use cubind::cli::print::Printer;
use cubind::cli::DataDecl;
use cubind::eval::{eval, Flags};
use cubind::stdlib::*;
use cubind::syntax::*;

fn main() {
    let flags = Flags::default();
    let torus = torus_decl();
    let tg = torus_globular_decl();
    let printer = Printer::new(&[
        DataDecl {
            line: 0,
            name: "torus".into(),
            tele: torus.tele.clone(),
            schema: torus.schema.clone(),
        },
        DataDecl {
            line: 0,
            name: "torus_g".into(),
            tele: tg.tele.clone(),
            schema: tg.schema.clone(),
        },
    ]);

    let y = fresh_dim();
    // Standard presentation: each square face is one of the loops.
    for (dims, face) in [
        (vec![Dim::Zero, Dim::Var(y)], "x = 0"),
        (vec![Dim::Var(y), Dim::Zero], "y = 0"),
        (vec![Dim::One, Dim::Var(y)], "x = 1"),
        (vec![Dim::Var(y), Dim::One], "y = 1"),
    ] {
        let t = torus.intro("surf", dims, vec![], vec![]);
        let v = eval(&t, &flags, 1_000).unwrap();
        println!("surf at {}: {}", face, printer.term_str(&v));
    }

    // Globular presentation: the horizontal faces are composites, which
    // stay formal at a free dimension.
    let x = fresh_dim();
    let t = tg.intro("surf", vec![Dim::Var(x), Dim::Zero], vec![], vec![]);
    let v = eval(&t, &flags, 1_000).unwrap();
    println!("\nglobular surf at y = 0:\n  {}", printer.term_str(&v));

    // Both eliminators check, coherence premises included.
    let ctx = CheckCtx::new(flags);
    for d in [&torus, &tg] {
        ctx.check_elim_list(&d.tele, &d.schema, &d.elim_motive, &d.elim_cases)
            .unwrap();
        println!("eliminator for `{}` checks", d.name);
    }
}
