//! The identity family: an indexed inductive type.
//!
//! Reflexivity introduces at the diagonal; the eliminator computes
//! exactly on it; coercion along a path produces formal-coercion values,
//! which the eliminator still consumes. The conversion between paths and
//! identities is exercised at observable points (the path side needs the
//! path-type Kan rules, an extension).
//!
//! Run: `cargo run --example indexed_identity`

use cubind::eval::{eval, observe, Flags};
use cubind::stdlib::*;
use cubind::syntax::*;

fn main() {
    let nat = nat_type();
    let id = id_decl_of(nat.clone());
    let flags = Flags::default().with_paths();

    // refl introduces at the diagonal index.
    let refl2 = id_refl(&id, num(2));
    println!("refl 2 is a value: {:?}", matches!(eval(&refl2, &flags, 100), Ok(Term::Intro { .. })));

    // The eliminator computes on reflexivity, exactly.
    let elim = Term::Elim {
        motive: Box::new(nat.clone()),
        indices: vec![num(2), num(2)],
        scrut: Box::new(refl2.clone()),
        cases: ElimList(vec![(
            "refl".into(),
            ElimCase {
                dims: vec![],
                n_params: 1,
                n_args: 0,
                body: Term::var(0),
            },
        )]),
    };
    println!(
        "idelim of refl 2 observes to {}",
        observe(&elim, &nat, &flags, 10_000).unwrap()
    );

    // Transporting reflexivity along a constant path: the result is a
    // value of the family, possibly a formal coercion rather than refl.
    let p = Term::plam(fresh_dim(), num(2));
    let transported = path_to_id(&id, &nat, num(2), p);
    let v = eval(&transported, &flags, 500_000).unwrap();
    println!(
        "path-to-id lands on: {}",
        match &v {
            Term::Intro { label, .. } => format!("constructor `{}`", label),
            Term::Fcoe { .. } => "a formal coercion value".into(),
            other => format!("{:?}", other),
        }
    );

    // Back to a path: both endpoints observe to the original element.
    let back = id_to_path(&id, &nat, num(2), num(2), transported);
    for d in [Dim::Zero, Dim::One] {
        let obs = observe(&Term::papp(back.clone(), d), &nat, &flags, 500_000).unwrap();
        println!("round trip at {} observes to {}", d, obs);
    }
}
