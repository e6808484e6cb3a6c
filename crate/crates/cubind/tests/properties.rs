//! Property tests for the substitution calculus, the boundary
//! interpretation laws, validity, and evaluator determinism.

use cubind::check::CheckCtx;
use cubind::eval::{is_value, step, Flags, StepResult};
use cubind::harness::canonicity_terms;
use cubind::interp::*;
use cubind::stdlib::*;
use cubind::syntax::*;
use proptest::prelude::*;

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// A small pool of pre-made dimension variables shared by generated terms
/// and substitutions, so substitution actually hits occurrences.
fn dim_pool() -> Vec<DimVar> {
    vec![fresh_dim(), fresh_dim(), fresh_dim(), fresh_dim()]
}

fn arb_dim(pool: Vec<DimVar>) -> impl Strategy<Value = Dim> {
    prop_oneof![
        Just(Dim::Zero),
        Just(Dim::One),
        (0..pool.len()).prop_map(move |i| Dim::Var(pool[i])),
    ]
}

fn arb_term(pool: Vec<DimVar>, depth: u32) -> BoxedStrategy<Term> {
    if depth == 0 {
        return prop_oneof![
            (0..3u32).prop_map(num),
            (0..2u32).prop_map(Term::var),
        ]
        .boxed();
    }
    let p1 = pool.clone();
    let p2 = pool.clone();
    let p3 = pool.clone();
    let p4 = pool.clone();
    prop_oneof![
        (0..3u32).prop_map(num),
        (0..2u32).prop_map(Term::var),
        arb_term(pool.clone(), depth - 1).prop_map(Term::lam),
        (arb_term(pool.clone(), depth - 1), arb_term(pool.clone(), depth - 1))
            .prop_map(|(f, a)| Term::app(f, a)),
        (arb_term(p1.clone(), depth - 1), arb_dim(p1.clone())).prop_map(|(t, d)| Term::papp(t, d)),
        arb_term(p2.clone(), depth - 1).prop_map(move |b| {
            // Path abstraction over a fresh binder applied at a pool dim.
            let z = fresh_dim();
            Term::plam(z, b)
        }),
        (
            arb_dim(p3.clone()),
            arb_dim(p3.clone()),
            arb_term(p3.clone(), depth - 1),
            arb_term(p3.clone(), depth - 1),
            arb_dim(p3.clone()),
            arb_dim(p3.clone()),
        )
            .prop_map(|(r, r2, cap, face, cl, cr)| {
                let y = fresh_dim();
                Term::Fhcom {
                    r,
                    r2,
                    cap: Box::new(cap),
                    tube: vec![Tube::new(Constraint::new(cl, cr), y, face)],
                }
            }),
        (arb_dim(p4.clone()), arb_dim(p4.clone()), arb_term(p4.clone(), depth - 1)).prop_map(
            |(r, r2, body)| {
                let z = fresh_dim();
                Term::Coe {
                    dim: z,
                    line: Box::new(nat_type()),
                    r,
                    r2,
                    body: Box::new(body),
                }
            }
        ),
    ]
    .boxed()
}

fn arb_subst(pool: Vec<DimVar>) -> impl Strategy<Value = DimSubst> {
    proptest::collection::vec((0..pool.len(), arb_dim(pool.clone())), 0..3).prop_map(
        move |pairs| {
            let mut s = DimSubst::identity();
            for (i, d) in pairs {
                s.insert(pool[i], d);
            }
            s
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Applying two dimension substitutions in sequence equals applying
    /// their composition, up to alpha.
    #[test]
    fn dim_subst_composition((t, a, b) in Just(dim_pool()).prop_flat_map(|pool| (
        arb_term(pool.clone(), 3),
        arb_subst(pool.clone()),
        arb_subst(pool),
    ))) {
        let lhs = dim_subst(&dim_subst(&t, &a), &b);
        let rhs = dim_subst(&t, &a.compose(&b));
        prop_assert!(alpha_eq(&lhs, &rhs), "{:?}\n vs {:?}", lhs, rhs);
    }

    /// The identity substitution is the identity.
    #[test]
    fn dim_subst_identity(t in Just(dim_pool()).prop_flat_map(|pool| arb_term(pool, 3))) {
        prop_assert!(alpha_eq(&dim_subst(&t, &DimSubst::identity()), &t));
    }

    /// Term substitution of dimension-closed terms commutes with dimension
    /// substitution.
    #[test]
    fn subst_commutation((t, s) in Just(dim_pool()).prop_flat_map(|pool| (
        arb_term(pool.clone(), 3),
        arb_subst(pool),
    )), n in 0u32..3) {
        let arg = num(n); // dimension-closed
        let lhs = dim_subst(&term_subst1(&t, &arg), &s);
        let rhs = term_subst1(&dim_subst(&t, &s), &arg);
        prop_assert!(alpha_eq(&lhs, &rhs));
    }

    /// Wherever the validity check accepts, every closing endpoint
    /// substitution satisfies some constraint.
    #[test]
    fn validity_sound(raw in proptest::collection::vec((0u8..6, 0u8..6), 1..5)) {
        let pool = dim_pool();
        let to_dim = |k: u8| match k {
            0 => Dim::Zero,
            1 => Dim::One,
            k => Dim::Var(pool[(k - 2) as usize]),
        };
        let ctx: Vec<Constraint> = raw
            .iter()
            .map(|(a, b)| Constraint::new(to_dim(*a), to_dim(*b)))
            .collect();
        if ctx_valid(&ctx) {
            for bits in 0..16u32 {
                let mut sub = DimSubst::identity();
                for (i, v) in pool.iter().enumerate() {
                    sub.insert(*v, if bits & (1 << i) != 0 { Dim::One } else { Dim::Zero });
                }
                prop_assert!(
                    ctx.iter().any(|c| c.subst(&sub).satisfied()),
                    "valid context falsified by {:?}",
                    sub
                );
            }
        }
    }

    /// A most general unifier, when it exists, satisfies its constraint.
    #[test]
    fn mgu_satisfies((a, b) in Just(dim_pool()).prop_flat_map(|pool| (arb_dim(pool.clone()), arb_dim(pool)))) {
        let c = Constraint::new(a, b);
        if let Some(s) = constraint_mgu(c) {
            prop_assert!(c.subst(&s).satisfied());
        } else {
            prop_assert!(a.is_const() && b.is_const() && a != b);
        }
    }
}

// ---------------------------------------------------------------------------
// Heights
// ---------------------------------------------------------------------------

#[test]
fn height_monotone_under_prefix_extension() {
    let torus = torus_decl();
    let full = &torus.schema;
    for cut in 1..=full.len() {
        let prefix = ConstrList(full.0[..cut].to_vec());
        for (l, _) in &prefix.0 {
            assert_eq!(
                label_height(&prefix, l).unwrap(),
                label_height(full, l).unwrap()
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Boundary interpretation laws
// ---------------------------------------------------------------------------

/// Canonicalize constructor annotations to the prefix ending at their own
/// label, recursively, so interpretations at extended schemas compare
/// equal. The stored annotation keeps the full schema; this normalization
/// exists only to state prefix irrelevance.
fn trim_intros(t: &Term) -> Term {
    match t {
        Term::Intro {
            schema,
            label,
            dims,
            params,
            args,
        } => {
            let pos = schema
                .0
                .iter()
                .position(|(l, _)| l == label)
                .map(|i| i + 1)
                .unwrap_or(schema.len());
            Term::Intro {
                schema: ConstrList(schema.0[..pos].to_vec()),
                label: label.clone(),
                dims: dims.clone(),
                params: params.iter().map(trim_intros).collect(),
                args: args.iter().map(trim_intros).collect(),
            }
        }
        Term::App(f, a) => Term::app(trim_intros(f), trim_intros(a)),
        Term::Lam(b) => Term::lam(trim_intros(b)),
        Term::Fhcom { r, r2, cap, tube } => Term::Fhcom {
            r: *r,
            r2: *r2,
            cap: Box::new(trim_intros(cap)),
            tube: tube
                .iter()
                .map(|f| Tube::new(f.cons, f.dim, trim_intros(&f.body)))
                .collect(),
        },
        Term::Fcoe {
            dim,
            line,
            r,
            r2,
            body,
        } => Term::Fcoe {
            dim: *dim,
            line: line.iter().map(trim_intros).collect(),
            r: *r,
            r2: *r2,
            body: Box::new(trim_intros(body)),
        },
        Term::NatRec { scrut, zero, suc } => Term::NatRec {
            scrut: Box::new(trim_intros(scrut)),
            zero: Box::new(trim_intros(zero)),
            suc: Box::new(trim_intros(suc)),
        },
        other => other.clone(),
    }
}

fn trunc_boundary_terms() -> (ConstrList, Vec<BoundaryTerm>) {
    let trunc = trunc_decl_of(nat_type());
    let schema = trunc.schema.clone();
    let x = schema.0[1].1.dims[0];
    let terms = vec![
        BoundaryTerm::BVar(0),
        BoundaryTerm::BVar(1),
        BoundaryTerm::BIntro {
            label: "trpt".into(),
            dims: vec![],
            params: vec![Term::var(0)],
            args: vec![],
        },
        BoundaryTerm::BIntro {
            label: "trglue".into(),
            dims: vec![Dim::Var(x)],
            params: vec![],
            args: vec![BoundaryTerm::BVar(1), BoundaryTerm::BVar(0)],
        },
        BoundaryTerm::BFhcom {
            indices: vec![],
            r: Dim::Zero,
            r2: Dim::One,
            cap: Box::new(BoundaryTerm::BVar(0)),
            tube: vec![BTube {
                cons: Constraint::new(Dim::Zero, Dim::Zero),
                dim: fresh_dim(),
                body: BoundaryTerm::BVar(0),
            }],
        },
    ];
    (schema, terms)
}

#[test]
fn insttm_commutes_with_term_substitution() {
    // In an ambient context with one variable, substituting it before or
    // after interpretation gives the same term.
    let (schema, terms) = trunc_boundary_terms();
    let ns = vec![Term::app(Term::var(0), num(1)), Term::var(0)];
    let arg = num(3);
    for m in &terms {
        let lhs = term_subst1(&insttm(m, &schema, &ns), &arg);
        let m2 = bterm_term_subst(m, std::slice::from_ref(&arg));
        let schema2 = {
            let t = Term::Ind {
                tele: Telescope::empty(),
                schema: schema.clone(),
                indices: vec![],
            };
            match term_subst1(&t, &arg) {
                Term::Ind { schema, .. } => schema,
                _ => unreachable!(),
            }
        };
        let ns2: Vec<Term> = ns.iter().map(|n| term_subst1(n, &arg)).collect();
        let rhs = insttm(&m2, &schema2, &ns2);
        assert!(alpha_eq(&lhs, &rhs), "{:?}", m);
    }
}

#[test]
fn insttm_composes_with_boundary_substitution() {
    let (schema, terms) = trunc_boundary_terms();
    // Substitute boundary terms for the two variables, then interpret; or
    // interpret the substituends first and compose.
    let subs = vec![
        BoundaryTerm::BIntro {
            label: "trpt".into(),
            dims: vec![],
            params: vec![num(1)],
            args: vec![],
        },
        BoundaryTerm::BVar(0),
    ];
    let ns = vec![Term::var(0)];
    for m in &terms {
        let lhs = insttm(&bterm_bsubst(m, &subs), &schema, &ns);
        let inner: Vec<Term> = subs.iter().map(|s| insttm(s, &schema, &ns)).collect();
        let rhs = insttm(m, &schema, &inner);
        assert!(alpha_eq(&lhs, &rhs), "{:?}", m);
    }
}

#[test]
fn insttm_prefix_irrelevance() {
    // Interpreting at an extended schema changes only the constructor
    // annotations, which normalize away.
    let (schema, terms) = trunc_boundary_terms();
    let mut extended = schema.clone();
    extended.0.push((
        "extra".into(),
        Constructor {
            dims: vec![],
            params: Telescope::empty(),
            indices: vec![],
            args: vec![],
            boundary: vec![],
        },
    ));
    let ns = vec![num(1), num(2)];
    for m in &terms {
        let a = trim_intros(&insttm(m, &schema, &ns));
        let b = trim_intros(&insttm(m, &extended, &ns));
        assert!(alpha_eq(&a, &b), "{:?}", m);
    }
}

#[test]
fn insttm_dep_composes_on_variables() {
    let (schema, _) = trunc_boundary_terms();
    let trunc = trunc_decl_of(nat_type());
    let motive = Motive::new(0, nat_type());
    let cases = ElimList(vec![
        (
            "trpt".into(),
            ElimCase {
                dims: vec![],
                n_params: 1,
                n_args: 0,
                body: num(0),
            },
        ),
        (
            "trglue".into(),
            ElimCase {
                dims: vec![fresh_dim()],
                n_params: 0,
                n_args: 2,
                body: num(0),
            },
        ),
    ]);
    let _ = trunc;
    // m[n/phi] interpreted in one go equals the composition through the
    // interpretations of n.
    let m = BoundaryTerm::BIntro {
        label: "trglue".into(),
        dims: vec![Dim::Zero],
        params: vec![],
        args: vec![BoundaryTerm::BVar(0), BoundaryTerm::BVar(0)],
    };
    let n = vec![BoundaryTerm::BVar(1)];
    let ns = vec![num(1), num(2)];
    let ss = vec![num(3), num(4)];
    let lhs = insttm_dep(
        &bterm_bsubst(&m, &n),
        &schema,
        &cases,
        &motive,
        &ns,
        &ss,
    );
    let inner_n: Vec<Term> = n.iter().map(|b| insttm(b, &schema, &ns)).collect();
    let inner_s: Vec<Term> = n
        .iter()
        .map(|b| insttm_dep(b, &schema, &cases, &motive, &ns, &ss))
        .collect();
    let rhs = insttm_dep(&m, &schema, &cases, &motive, &inner_n, &inner_s);
    assert!(alpha_eq(&lhs, &rhs));
}

#[test]
fn insttm_dep_prefix_irrelevance() {
    // Extending the schema and the matching case list leaves the dependent
    // interpretation unchanged up to constructor annotations.
    let trunc = trunc_decl_of(nat_type());
    let schema = trunc.schema.clone();
    let cases = trunc.elim_cases.clone();
    let mut schema_ext = schema.clone();
    schema_ext.0.push((
        "extra".into(),
        Constructor {
            dims: vec![],
            params: Telescope::empty(),
            indices: vec![],
            args: vec![],
            boundary: vec![],
        },
    ));
    let mut cases_ext = cases.clone();
    cases_ext.0.push((
        "extra".into(),
        ElimCase {
            dims: vec![],
            n_params: 0,
            n_args: 0,
            body: num(0),
        },
    ));
    let motive = Motive::new(0, nat_type());
    let x = schema.0[1].1.dims[0];
    let terms = vec![
        BoundaryTerm::BVar(1),
        BoundaryTerm::BIntro {
            label: "trglue".into(),
            dims: vec![Dim::Var(x)],
            params: vec![],
            args: vec![BoundaryTerm::BVar(0), BoundaryTerm::BVar(1)],
        },
    ];
    let ns = vec![num(1), num(2)];
    let ss = vec![num(3), num(4)];
    for m in &terms {
        let a = trim_intros(&insttm_dep(m, &schema, &cases, &motive, &ns, &ss));
        let b = trim_intros(&insttm_dep(m, &schema_ext, &cases_ext, &motive, &ns, &ss));
        assert!(alpha_eq(&a, &b), "{:?}", m);
    }
}

// ---------------------------------------------------------------------------
// Function action typing
// ---------------------------------------------------------------------------

#[test]
fn func_action_inhabits_dependent_interpretation() {
    // For every catalog constructor, the action of each argument type on
    // the recursive-call map checks at the dependent type interpretation,
    // in a context binding the constructor's parameters and one variable
    // of the interpreted argument type.
    let flags = Flags::default();
    for decl in catalog() {
        let motive = decl.elim_motive.clone();
        let n = decl.tele.len() as u32;
        for (label, ctor) in &decl.schema.0 {
            let np = ctor.params.len() as u32;
            let mut ctx = CheckCtx::new(flags);
            for ty in &ctor.params.0 {
                ctx = ctx.bind(ty.clone());
            }
            let fam = self_family(&decl.tele, &decl.schema).weaken(np);
            for (j, arg) in ctor.args.iter().enumerate() {
                let ctx_j = ctx.bind(tyatty(arg, &fam));
                let arg_up = shift_argty(arg, 1, 0);
                let motive_up = motive.weaken(np + 1);
                let rec_map = Motive::new(
                    decl.tele.len(),
                    Term::Elim {
                        motive: Box::new(shift_from(&motive.body, np + 1 + n + 1, n + 1)),
                        indices: (1..=n).rev().map(Term::Var).collect(),
                        scrut: Box::new(Term::var(0)),
                        cases: {
                            let t = Term::Elim {
                                motive: Box::new(Term::var(0)),
                                indices: vec![],
                                scrut: Box::new(Term::var(0)),
                                cases: decl.elim_cases.clone(),
                            };
                            match shift_from(&t, np + 1, 0) {
                                Term::Elim { cases, .. } => cases,
                                _ => unreachable!(),
                            }
                        },
                    },
                );
                let acted = func_action(&arg_up, &rec_map, &Term::var(0));
                let want = tyatty_dep(&arg_up, &motive_up, &Term::var(0));
                ctx_j
                    .check_term(&acted, &want)
                    .unwrap_or_else(|e| panic!("{}::{} arg {}: {}", decl.name, label, j, e));
            }
        }
    }
}

#[test]
fn mcoe_degenerate_endpoints_observe_to_inputs() {
    // Multi-coercion through a constant telescope with equal endpoints is
    // the identity, observationally, component by component.
    let flags = Flags::default();
    let z = fresh_dim();
    let tele = Telescope(vec![nat_type(), weaken(&nat_type(), 1)]);
    for e in [Dim::Zero, Dim::One] {
        let out = mcoe(z, &tele, e, e, &[num(2), num(4)]);
        assert_eq!(out.len(), 2);
        for (t, want) in out.iter().zip([obs_num(2), obs_num(4)]) {
            let got =
                cubind::eval::observe(t, &nat_type(), &flags, 100_000).unwrap();
            assert_eq!(got, want);
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluator determinism
// ---------------------------------------------------------------------------

#[test]
fn value_soundness_and_determinism() {
    let flags = Flags::default();
    for (name, t, _) in canonicity_terms(0xD37, 60) {
        let mut cur = t;
        for _ in 0..100_000 {
            let first = step(&cur, &flags);
            let second = step(&cur, &flags);
            match (&first, &second) {
                (StepResult::Steps(a), StepResult::Steps(b)) => {
                    assert!(alpha_eq(a, b), "{}: nondeterministic step", name)
                }
                (a, b) => assert_eq!(a, b, "{}: nondeterministic result", name),
            }
            assert_eq!(
                is_value(&cur),
                matches!(first, StepResult::IsValue),
                "{}: value soundness",
                name
            );
            match first {
                StepResult::Steps(next) => cur = next,
                _ => break,
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Conversion is a partial equivalence on the corpus
// ---------------------------------------------------------------------------

#[test]
fn convert_symmetric_and_transitive() {
    let ctx = CheckCtx::new(Flags::default());
    let nat = nat_type();
    let corpus: Vec<Term> = vec![
        num(2),
        nat_add(num(1), num(1)),
        nat_mul(num(1), num(2)),
        Term::Hcom {
            ty: Box::new(nat.clone()),
            r: Dim::Zero,
            r2: Dim::Zero,
            cap: Box::new(num(2)),
            tube: vec![Tube::new(
                Constraint::new(Dim::One, Dim::Zero),
                fresh_dim(),
                num(2),
            )],
        },
        num(3),
        nat_add(num(2), num(1)),
    ];
    for a in &corpus {
        for b in &corpus {
            let ab = ctx.convert(a, b, Some(&nat));
            let ba = ctx.convert(b, a, Some(&nat));
            assert_eq!(ab, ba, "symmetry");
            for c in &corpus {
                let bc = ctx.convert(b, c, Some(&nat));
                let ac = ctx.convert(a, c, Some(&nat));
                if ab && bc {
                    assert!(ac, "transitivity");
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Eliminating a boundary-satisfied constructor
// ---------------------------------------------------------------------------

#[test]
fn elim_commutes_with_boundary_reduction() {
    // Eliminating a constructor whose boundary fires agrees with the
    // dependent interpretation of that boundary, where the recursive
    // results are the eliminator at the recursive arguments.
    let flags = Flags::default();
    let ctx = CheckCtx::new(flags);
    let fuel = 200_000;

    let trunc = trunc_decl_of(nat_type());
    let args = vec![
        trunc.intro("trpt", vec![], vec![num(2)], vec![]),
        trunc.intro("trpt", vec![], vec![num(3)], vec![]),
    ];
    let motive = trunc.elim_motive.clone();
    let cases = trunc.elim_cases.clone();
    let elim_of = |t: &Term| Term::Elim {
        motive: Box::new(motive.body.clone()),
        indices: vec![],
        scrut: Box::new(t.clone()),
        cases: cases.clone(),
    };
    for (i, e) in [Dim::Zero, Dim::One].into_iter().enumerate() {
        let satisfied = trunc.intro("trglue", vec![e], vec![], args.clone());
        let lhs = elim_of(&satisfied);
        // The boundary term of the face that fires, dependently
        // interpreted at the recursive arguments and their eliminations.
        let (_, ctor) = &trunc.schema.0[1];
        let mk = &ctor.boundary[i].1;
        let ss: Vec<Term> = args.iter().map(&elim_of).collect();
        let rhs = insttm_dep(mk, &trunc.schema, &cases, &motive, &args, &ss);
        let va = cubind::eval::eval(&lhs, &flags, fuel).unwrap();
        let vb = cubind::eval::eval(&rhs, &flags, fuel).unwrap();
        assert!(ctx.convert(&va, &vb, None), "trglue face {}", i);
    }

    // The same for a boundary that lands on an earlier constructor.
    let circle = circle_decl();
    let motive = circle.elim_motive.clone();
    let cases = circle.elim_cases.clone();
    for (i, e) in [Dim::Zero, Dim::One].into_iter().enumerate() {
        let satisfied = circle.intro("lp", vec![e], vec![], vec![]);
        let lhs = Term::Elim {
            motive: Box::new(motive.body.clone()),
            indices: vec![],
            scrut: Box::new(satisfied),
            cases: cases.clone(),
        };
        let (_, ctor) = &circle.schema.0[1];
        let mk = &ctor.boundary[i].1;
        let rhs = insttm_dep(mk, &circle.schema, &cases, &motive, &[], &[]);
        let va = cubind::eval::eval(&lhs, &flags, fuel).unwrap();
        let vb = cubind::eval::eval(&rhs, &flags, fuel).unwrap();
        assert!(ctx.convert(&va, &vb, None), "lp face {}", i);
    }
}

// ---------------------------------------------------------------------------
// Restriction correctness
// ---------------------------------------------------------------------------

#[test]
fn restricted_conversion_sound_for_endpoint_substitutions() {
    // Whenever conversion succeeds under a restriction's most general
    // unifier, it succeeds under every closing endpoint substitution that
    // satisfies the restriction. The converse can fail (the unifier check
    // is the stronger judgment), which mirrors validity's conservativity.
    let circle = circle_decl();
    let pool = [fresh_dim(), fresh_dim(), fresh_dim()];
    let flags = Flags::default();
    let dims_of = |k: usize| Dim::Var(pool[k]);
    let lp = |d: Dim| circle.intro("lp", vec![d], vec![], vec![]);
    let base = circle.intro("base", vec![], vec![], vec![]);
    let queries: Vec<(Term, Term)> = vec![
        (lp(dims_of(0)), base.clone()),
        (lp(dims_of(0)), lp(dims_of(1))),
        (lp(dims_of(1)), lp(dims_of(1))),
        (
            Term::Fhcom {
                r: dims_of(0),
                r2: dims_of(1),
                cap: Box::new(base.clone()),
                tube: vec![Tube::new(
                    Constraint::new(dims_of(2), Dim::Zero),
                    fresh_dim(),
                    base.clone(),
                )],
            },
            base.clone(),
        ),
    ];
    let restrictions: Vec<Vec<Constraint>> = vec![
        vec![Constraint::new(dims_of(0), Dim::Zero)],
        vec![Constraint::new(dims_of(0), Dim::One)],
        vec![Constraint::new(dims_of(0), dims_of(1))],
        vec![
            Constraint::new(dims_of(0), dims_of(1)),
            Constraint::new(dims_of(1), Dim::Zero),
        ],
        vec![
            Constraint::new(dims_of(0), Dim::Zero),
            Constraint::new(dims_of(1), Dim::One),
        ],
        vec![Constraint::new(dims_of(2), Dim::One)],
    ];
    let base_ctx = CheckCtx::new(flags)
        .bind_dims(&pool);
    for (a, b) in &queries {
        for cons in &restrictions {
            let Some((ctx_r, sub)) = base_ctx.restrict(cons) else {
                continue;
            };
            let under_mgu = ctx_r.convert(&dim_subst(a, &sub), &dim_subst(b, &sub), None);
            if !under_mgu {
                continue;
            }
            // Every satisfying endpoint substitution must agree.
            for bits in 0..8u32 {
                let mut sigma = DimSubst::identity();
                for (i, v) in pool.iter().enumerate() {
                    sigma.insert(*v, if bits & (1 << i) != 0 { Dim::One } else { Dim::Zero });
                }
                if !cons.iter().all(|c| c.subst(&sigma).satisfied()) {
                    continue;
                }
                let plain = CheckCtx::new(flags);
                assert!(
                    plain.convert(&dim_subst(a, &sigma), &dim_subst(b, &sigma), None),
                    "restriction {:?}: endpoint {:?} disagrees",
                    cons,
                    sigma
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Checked terms evaluate
// ---------------------------------------------------------------------------

#[test]
fn checked_closed_terms_never_get_stuck() {
    // Soundness shadow: anything the checker accepts at a closed type
    // evaluates to a value within the budget. The generated corpus mixes
    // well-typed and ill-typed shapes; only the accepted ones are driven.
    let flags = Flags::default();
    let ctx = CheckCtx::new(flags);
    let mut accepted = 0;
    for (name, t, ty) in canonicity_terms(0xACCE97, 120) {
        if ctx.check_term(&t, &ty).is_err() {
            continue;
        }
        accepted += 1;
        match cubind::eval::eval(&t, &flags, 100_000) {
            Ok(v) => assert!(is_value(&v), "{}: eval returned a non-value", name),
            Err(e) => panic!("{}: accepted term failed to evaluate: {}", name, e),
        }
    }
    assert!(accepted >= 60, "corpus too thin: only {} accepted", accepted);
}

#[test]
fn malformed_intro_is_not_a_value() {
    // A constructor cell with the wrong dimension arity is stuck, and
    // value recognition agrees.
    let circle = circle_decl();
    let bad = circle.intro("lp", vec![], vec![], vec![]);
    assert!(!is_value(&bad));
    assert!(matches!(
        step(&bad, &Flags::default()),
        StepResult::Stuck(_)
    ));
}

#[test]
fn path_kan_operations_gated_in_checker() {
    use cubind::check::CheckErrorKind;
    let x = fresh_dim();
    let path_ty = Term::PathTy {
        dim: x,
        ty: Box::new(nat_type()),
        lhs: Box::new(num(1)),
        rhs: Box::new(num(1)),
    };
    let cpath = Term::plam(fresh_dim(), num(1));
    let h = Term::Hcom {
        ty: Box::new(path_ty.clone()),
        r: Dim::Zero,
        r2: Dim::One,
        cap: Box::new(cpath.clone()),
        tube: vec![Tube::new(
            Constraint::new(Dim::Zero, Dim::Zero),
            fresh_dim(),
            cpath.clone(),
        )],
    };
    let plain = CheckCtx::new(Flags::default());
    let e = plain.check_term(&h, &path_ty).unwrap_err();
    assert_eq!(e.kind, CheckErrorKind::Unsupported);
    let with_ext = CheckCtx::new(Flags::default().with_paths());
    with_ext.check_term(&h, &path_ty).unwrap();
}
