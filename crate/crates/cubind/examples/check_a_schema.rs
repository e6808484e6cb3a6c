//! Schema well-formedness checking, acceptance and rejection.
//!
//! Declares a two-point segment-and-square type through the API, checks
//! it, then shows how single-point mutations are rejected with typed
//! errors: an invalid boundary system, a corner mismatch, a foreign
//! dimension.
//!
//! Run: `cargo run --example check_a_schema`

use cubind::check::CheckCtx;
use cubind::eval::Flags;
use cubind::harness::two_point_square_schemas;
use cubind::stdlib::*;
use cubind::syntax::*;

fn main() {
    let ctx = CheckCtx::new(Flags::default());
    let empty = Telescope::empty();

    let (ok_schema, corner_mutant) = two_point_square_schemas();
    println!(
        "two-point square accepted: {:?}",
        ctx.check_constrs(&empty, &ok_schema).is_ok()
    );
    println!(
        "corner mutant rejected:    {}",
        ctx.check_constrs(&empty, &corner_mutant).unwrap_err()
    );

    // Dropping one face of the circle's loop leaves an invalid system.
    let mut half = circle_schema();
    half.0[1].1.boundary.pop();
    println!(
        "half-boundary loop:        {}",
        ctx.check_constrs(&empty, &half).unwrap_err()
    );

    // A boundary constraint over a dimension that is not a parameter.
    let mut foreign = circle_schema();
    foreign.0[1].1.boundary[0].0 = Constraint::new(Dim::Var(fresh_dim()), Dim::Zero);
    println!(
        "foreign constraint:        {}",
        ctx.check_constrs(&empty, &foreign).unwrap_err()
    );

    // The whole catalog, eliminators included, is accepted.
    for decl in catalog() {
        cubind::check::check_decl(Flags::default(), &decl)
            .unwrap_or_else(|e| panic!("{}: {}", decl.name, e));
        println!("catalog `{}` accepted (schema + eliminator)", decl.name);
    }
}
