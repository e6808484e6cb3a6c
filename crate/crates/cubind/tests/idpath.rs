//! The identity-versus-path round trip at observable points: transporting
//! reflexivity along a path and eliminating back to a path agrees with the
//! original at both endpoints. Path-type Kan operations are an extension
//! feature, so these tests run with `ext_paths` switched on.

use cubind::eval::{eval, observe, Flags};
use cubind::stdlib::*;
use cubind::syntax::*;

fn flags() -> Flags {
    Flags::default().with_paths()
}

#[test]
fn path_to_id_produces_an_id_element() {
    let id = id_decl_of(nat_type());
    let p = Term::plam(fresh_dim(), num(2));
    let t = path_to_id(&id, &nat_type(), num(2), p);
    let v = eval(&t, &flags(), 500_000).expect("path_to_id evaluates");
    // The transported element is a value of the identity family: either
    // reflexivity or a formal coercion.
    assert!(
        matches!(v, Term::Intro { .. } | Term::Fcoe { .. }),
        "unexpected value {:?}",
        v
    );
}

#[test]
fn id_to_path_of_refl_is_constant() {
    let id = id_decl_of(nat_type());
    let q = id_to_path(&id, &nat_type(), num(2), num(2), id_refl(&id, num(2)));
    for d in [Dim::Zero, Dim::One] {
        let obs = observe(&Term::papp(q.clone(), d), &nat_type(), &flags(), 500_000).unwrap();
        assert_eq!(obs, obs_num(2));
    }
}

#[test]
fn round_trip_at_observable_points() {
    // Both endpoint observations of the composite map agree with the
    // original constant path.
    let id = id_decl_of(nat_type());
    for n in 0..3 {
        let p = Term::plam(fresh_dim(), num(n));
        let transported = path_to_id(&id, &nat_type(), num(n), p);
        let back = id_to_path(&id, &nat_type(), num(n), num(n), transported);
        for d in [Dim::Zero, Dim::One] {
            let obs = observe(&Term::papp(back.clone(), d), &nat_type(), &flags(), 500_000)
                .unwrap_or_else(|e| panic!("n={} at {}: {}", n, d, e));
            assert_eq!(obs, obs_num(n), "n={} at {}", n, d);
        }
    }
}

#[test]
fn idelim_beta_is_exact() {
    // The eliminator computes on reflexivity without the extension.
    let id = id_decl_of(nat_type());
    let t = Term::Elim {
        motive: Box::new(nat_type()),
        indices: vec![num(3), num(3)],
        scrut: Box::new(id_refl(&id, num(3))),
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
    let obs = observe(&t, &nat_type(), &Flags::default(), 10_000).unwrap();
    assert_eq!(obs, obs_num(3));
}

#[test]
fn path_to_id_checks() {
    // In a context with a path between naturals, coercing reflexivity
    // along it inhabits the identity family at its endpoints.
    use cubind::check::CheckCtx;
    use cubind::syntax::Term;
    let id = id_decl_of(nat_type());
    let x = fresh_dim();
    let path_ty = Term::PathTy {
        dim: x,
        ty: Box::new(nat_type()),
        lhs: Box::new(num(2)),
        rhs: Box::new(num(2)),
    };
    let ctx = CheckCtx::new(flags()).bind(path_ty);
    let p = Term::var(0);
    let t = path_to_id(&id, &nat_type(), num(2), p.clone());
    let expected = id.ind_at(vec![num(2), Term::papp(p, Dim::One)]);
    ctx.check_term(&t, &expected).unwrap();
}

#[test]
fn id_to_path_checks() {
    use cubind::check::CheckCtx;
    use cubind::syntax::Term;
    let id = id_decl_of(nat_type());
    let ctx = CheckCtx::new(flags()).bind(id.ind_at(vec![num(2), num(2)]));
    let t = id_to_path(&id, &nat_type(), num(2), num(2), Term::var(0));
    let x = fresh_dim();
    let expected = Term::PathTy {
        dim: x,
        ty: Box::new(nat_type()),
        lhs: Box::new(num(2)),
        rhs: Box::new(num(2)),
    };
    ctx.check_term(&t, &expected).unwrap();
}

#[test]
fn hcom_at_path_type_composes_pointwise() {
    use cubind::syntax::{Constraint, Tube};
    // A degenerate composition of constant paths: both endpoints observe
    // to the underlying point.
    let x = fresh_dim();
    let path_ty = Term::PathTy {
        dim: x,
        ty: Box::new(nat_type()),
        lhs: Box::new(num(2)),
        rhs: Box::new(num(2)),
    };
    let cpath = || Term::plam(fresh_dim(), num(2));
    let h = Term::Hcom {
        ty: Box::new(path_ty),
        r: Dim::Zero,
        r2: Dim::One,
        cap: Box::new(cpath()),
        tube: vec![Tube::new(
            Constraint::new(Dim::Zero, Dim::Zero),
            fresh_dim(),
            cpath(),
        )],
    };
    for d in [Dim::Zero, Dim::One] {
        let obs = observe(&Term::papp(h.clone(), d), &nat_type(), &flags(), 100_000).unwrap();
        assert_eq!(obs, obs_num(2));
    }
    // Without the extension the same composition is stuck at the path
    // former.
    let plain = Flags::default();
    assert!(eval(&Term::papp(h, Dim::Zero), &plain, 10_000).is_err());
}
