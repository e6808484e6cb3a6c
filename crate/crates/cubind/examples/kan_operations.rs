//! The Kan operations and their degeneracies.
//!
//! Composition with equal endpoints collapses to its cap; coercion along a
//! constant line collapses to its body — not always syntactically, but
//! observationally, which is what the theory promises. Also demonstrates
//! the closed-type optimizations, which make these collapses single steps.
//!
//! Run: `cargo run --example kan_operations`

use cubind::eval::{observe, trace, Flags};
use cubind::stdlib::*;
use cubind::syntax::*;

fn main() {
    let nat = nat_type();

    // coe 0~>1 at nat: unoptimized, the numeral is rebuilt through the
    // total space; the observation is unchanged.
    let t = Term::Coe {
        dim: fresh_dim(),
        line: Box::new(nat.clone()),
        r: Dim::Zero,
        r2: Dim::One,
        body: Box::new(num(3)),
    };
    let plain = Flags::default();
    let optimized = Flags::default().with_opt_closed();
    let steps_plain = trace(&t, &plain, 10_000).steps.len();
    let steps_opt = trace(&t, &optimized, 10_000).steps.len();
    println!(
        "coe at nat of 3: {} trace entries unoptimized, {} with --opt-closed",
        steps_plain, steps_opt
    );
    for f in [&plain, &optimized] {
        let obs = observe(&t, &nat, f, 100_000).unwrap();
        println!("  observes to {}", obs);
    }

    // hcom with equal endpoints is its cap.
    let h = Term::Hcom {
        ty: Box::new(nat.clone()),
        r: Dim::One,
        r2: Dim::One,
        cap: Box::new(num(2)),
        tube: vec![Tube::new(
            Constraint::new(Dim::Zero, Dim::One),
            fresh_dim(),
            num(2),
        )],
    };
    println!(
        "hcom 1~>1 of 2 observes to {}",
        observe(&h, &nat, &plain, 10_000).unwrap()
    );

    // com decomposes into hcom of coercions; fcom into fhcom of formal
    // coercions.
    let c = Term::Com {
        dim: fresh_dim(),
        line: Box::new(nat.clone()),
        r: Dim::Zero,
        r2: Dim::One,
        cap: Box::new(num(1)),
        tube: vec![Tube::new(
            Constraint::new(Dim::One, Dim::One),
            fresh_dim(),
            num(1),
        )],
    };
    let tr = trace(&c, &plain, 10_000);
    println!(
        "com 0~>1 of 1: {} steps, observes to {}",
        tr.steps.len() - 1,
        observe(&c, &nat, &plain, 100_000).unwrap()
    );

    // Total-space coercion rebuilds constructor cells argument by argument.
    let tc = Term::Tcoe {
        dim: fresh_dim(),
        tele: Telescope::empty(),
        schema: nat_schema(),
        r: Dim::Zero,
        r2: Dim::One,
        body: Box::new(num(2)),
    };
    println!(
        "tcoe 0~>1 of 2 observes to {}",
        observe(&tc, &nat, &plain, 100_000).unwrap()
    );
}
