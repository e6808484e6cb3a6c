//! Deep observation at first-order inductive types.
//!
//! Weak-head evaluation stops at the outermost constructor; observation
//! reads the whole constructor tree back, turning eliminator arithmetic
//! into numerals.
//!
//! Run: `cargo run --example observe_numerals`

use cubind::eval::{eval, observe, Flags};
use cubind::stdlib::*;

fn main() {
    let flags = Flags::default();
    let nat = nat_type();

    for (m, n) in [(2, 3), (4, 4), (5, 0)] {
        let sum = observe(&nat_add(num(m), num(n)), &nat, &flags, 100_000).unwrap();
        let prod = observe(&nat_mul(num(m), num(n)), &nat, &flags, 100_000).unwrap();
        println!("{} + {} = {}", m, n, sum);
        println!("{} * {} = {}", m, n, prod);
    }

    // The weak value of an addition still carries a thunk in its argument;
    // observation is what forces it.
    let weak = eval(&nat_add(num(1), num(1)), &flags, 10_000).unwrap();
    println!("\nweak head value: {:?}", matches!(weak, cubind::syntax::Term::Intro { .. }));
    let deep = observe(&nat_add(num(1), num(1)), &nat, &flags, 10_000).unwrap();
    println!("deep observation: {}", deep);

    // Booleans observe the same way.
    let b = observe(
        &bool_and(bool_val(true), bool_not(bool_val(false))),
        &bool_type(),
        &flags,
        10_000,
    )
    .unwrap();
    println!("tt && not(ff) = {}", b);
}
