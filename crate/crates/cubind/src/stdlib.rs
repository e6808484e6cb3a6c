//! The catalog of example inductive types: naturals, booleans, the circle
//! and 2-sphere, W-types, both torus presentations, W-quotients, two
//! truncation encodings, localization, and identity families. Parameterized
//! types are Rust-level functions of their parameter terms; the catalog
//! ships concrete instances used by the test suites and the CLI.

use crate::eval::Obs;
use crate::interp::Motive;
use crate::syntax::*;

/// A named program with its expected observation.
#[derive(Debug, Clone)]
pub struct Smoke {
    pub name: String,
    pub term: Term,
    pub expect: Obs,
}

/// A cataloged inductive type: schema, a sample eliminator (motive and case
/// list accepted by the checker), and smoke programs.
#[derive(Debug, Clone)]
pub struct NamedDecl {
    pub name: String,
    pub tele: Telescope,
    pub schema: ConstrList,
    pub elim_motive: Motive,
    pub elim_cases: ElimList,
    pub smoke: Vec<Smoke>,
}

impl NamedDecl {
    /// The inductive type at the given indices.
    pub fn ind_at(&self, indices: Vec<Term>) -> Term {
        Term::Ind {
            tele: self.tele.clone(),
            schema: self.schema.clone(),
            indices,
        }
    }

    /// The inductive type of a non-indexed declaration.
    pub fn ind_type(&self) -> Term {
        assert!(self.tele.is_empty(), "{} is indexed", self.name);
        self.ind_at(vec![])
    }

    pub fn intro(&self, label: &str, dims: Vec<Dim>, params: Vec<Term>, args: Vec<Term>) -> Term {
        Term::Intro {
            schema: self.schema.clone(),
            label: label.into(),
            dims,
            params,
            args,
        }
    }
}

/// Assemble the eliminator exactly as the sugar definitions do: binder
/// counts come from the schema, case bodies from the caller in schema
/// order (each with its dimension binder names).
pub fn derive_eliminator(
    decl: &NamedDecl,
    motive: Motive,
    indices: Vec<Term>,
    scrut: Term,
    cases: Vec<(Vec<DimVar>, Term)>,
) -> Result<Term, String> {
    if cases.len() != decl.schema.len() {
        return Err(format!(
            "eliminator for {} needs {} cases, got {}",
            decl.name,
            decl.schema.len(),
            cases.len()
        ));
    }
    if motive.arity != decl.tele.len() || indices.len() != decl.tele.len() {
        return Err(format!("eliminator for {}: index arity mismatch", decl.name));
    }
    let mut out = Vec::new();
    for ((label, ctor), (dims, body)) in decl.schema.0.iter().zip(cases) {
        if dims.len() != ctor.dims.len() {
            return Err(format!(
                "case `{}`: expected {} dimension binders, got {}",
                label,
                ctor.dims.len(),
                dims.len()
            ));
        }
        out.push((
            label.clone(),
            ElimCase {
                dims,
                n_params: ctor.params.len() as u32,
                n_args: ctor.args.len() as u32,
                body,
            },
        ));
    }
    Ok(Term::Elim {
        motive: Box::new(motive.body),
        indices,
        scrut: Box::new(scrut),
        cases: ElimList(out),
    })
}

fn ctor(
    dims: Vec<DimVar>,
    params: Vec<Term>,
    indices: Vec<Term>,
    args: Vec<ArgType>,
    boundary: Vec<(Constraint, BoundaryTerm)>,
) -> Constructor {
    Constructor {
        dims,
        params: Telescope(params),
        indices,
        args,
        boundary,
    }
}

fn bintro(label: &str, dims: Vec<Dim>, params: Vec<Term>, args: Vec<BoundaryTerm>) -> BoundaryTerm {
    BoundaryTerm::BIntro {
        label: label.into(),
        dims,
        params,
        args,
    }
}

fn eq0(x: DimVar) -> Constraint {
    Constraint::new(Dim::Var(x), Dim::Zero)
}

fn eq1(x: DimVar) -> Constraint {
    Constraint::new(Dim::Var(x), Dim::One)
}

/// Instantiate a one-binder family at an argument that lives under `extra`
/// additional binders.
fn inst1(fam: &Term, extra: u32, arg: &Term) -> Term {
    term_subst1(&shift_from(fam, extra, 1), arg)
}

/// The tautological eliminator cases: rebuild each constructor with the
/// recursive results in the recursive positions. Checks for every schema
/// whose boundaries avoid formal composition.
fn tautological_cases(schema: &ConstrList) -> ElimList {
    let mut out = Vec::new();
    for (label, c) in &schema.0 {
        let np = c.params.len() as u32;
        let na = c.args.len() as u32;
        let dims: Vec<DimVar> = c.dims.iter().map(|_| fresh_dim()).collect();
        // Binder layout: params at indices [na*2 .. na*2+np), recursive
        // results at [0 .. na).
        let params: Vec<Term> = (0..np).map(|j| Term::var(2 * na + np - 1 - j)).collect();
        let args: Vec<Term> = (0..na).map(|j| Term::var(na - 1 - j)).collect();
        out.push((
            label.clone(),
            ElimCase {
                dims: dims.clone(),
                n_params: np,
                n_args: na,
                body: Term::Intro {
                    schema: schema.clone(),
                    label: label.clone(),
                    dims: dims.iter().map(|d| Dim::Var(*d)).collect(),
                    params,
                    args,
                },
            },
        ));
    }
    ElimList(out)
}

// ---------------------------------------------------------------------------
// Base types
// ---------------------------------------------------------------------------

pub fn nat_schema() -> ConstrList {
    ConstrList(vec![
        ("zero".into(), ctor(vec![], vec![], vec![], vec![], vec![])),
        (
            "suc".into(),
            ctor(
                vec![],
                vec![],
                vec![],
                vec![ArgType::self_at(vec![])],
                vec![],
            ),
        ),
    ])
}

pub fn nat_type() -> Term {
    Term::Ind {
        tele: Telescope::empty(),
        schema: nat_schema(),
        indices: vec![],
    }
}

/// The unary numeral for `n`.
pub fn num(n: u32) -> Term {
    let schema = nat_schema();
    let mut t = Term::Intro {
        schema: schema.clone(),
        label: "zero".into(),
        dims: vec![],
        params: vec![],
        args: vec![],
    };
    for _ in 0..n {
        t = Term::Intro {
            schema: schema.clone(),
            label: "suc".into(),
            dims: vec![],
            params: vec![],
            args: vec![t],
        };
    }
    t
}

/// The expected observation of the numeral `n`.
pub fn obs_num(n: u32) -> Obs {
    let mut o = Obs::leaf("zero");
    for _ in 0..n {
        o = Obs::node("suc", vec![o]);
    }
    o
}

/// Addition by recursion on the first argument, through the eliminator.
pub fn nat_add(m: Term, n: Term) -> Term {
    Term::Elim {
        motive: Box::new(nat_type()),
        indices: vec![],
        scrut: Box::new(m),
        cases: ElimList(vec![
            (
                "zero".into(),
                ElimCase {
                    dims: vec![],
                    n_params: 0,
                    n_args: 0,
                    body: n,
                },
            ),
            (
                "suc".into(),
                ElimCase {
                    dims: vec![],
                    n_params: 0,
                    n_args: 1,
                    body: Term::Intro {
                        schema: nat_schema(),
                        label: "suc".into(),
                        dims: vec![],
                        params: vec![],
                        args: vec![Term::var(0)],
                    },
                },
            ),
        ]),
    }
}

/// Multiplication by iterated addition.
pub fn nat_mul(m: Term, n: Term) -> Term {
    Term::Elim {
        motive: Box::new(nat_type()),
        indices: vec![],
        scrut: Box::new(m),
        cases: ElimList(vec![
            (
                "zero".into(),
                ElimCase {
                    dims: vec![],
                    n_params: 0,
                    n_args: 0,
                    body: num(0),
                },
            ),
            (
                "suc".into(),
                ElimCase {
                    dims: vec![],
                    n_params: 0,
                    n_args: 1,
                    body: nat_add(weaken(&n, 2), Term::var(0)),
                },
            ),
        ]),
    }
}

pub fn nat_decl() -> NamedDecl {
    let schema = nat_schema();
    let smoke = vec![
        Smoke {
            name: "add_2_3".into(),
            term: nat_add(num(2), num(3)),
            expect: obs_num(5),
        },
        Smoke {
            name: "mul_2_3".into(),
            term: nat_mul(num(2), num(3)),
            expect: obs_num(6),
        },
    ];
    NamedDecl {
        name: "nat".into(),
        tele: Telescope::empty(),
        schema: schema.clone(),
        elim_motive: Motive::new(0, nat_type()),
        elim_cases: tautological_cases(&schema),
        smoke,
    }
}

pub fn bool_schema() -> ConstrList {
    ConstrList(vec![
        ("tt".into(), ctor(vec![], vec![], vec![], vec![], vec![])),
        ("ff".into(), ctor(vec![], vec![], vec![], vec![], vec![])),
    ])
}

pub fn bool_type() -> Term {
    Term::Ind {
        tele: Telescope::empty(),
        schema: bool_schema(),
        indices: vec![],
    }
}

pub fn bool_val(b: bool) -> Term {
    Term::Intro {
        schema: bool_schema(),
        label: if b { "tt" } else { "ff" }.into(),
        dims: vec![],
        params: vec![],
        args: vec![],
    }
}

/// Case split on a boolean, non-dependently.
pub fn bool_if(scrut: Term, when_true: Term, when_false: Term) -> Term {
    Term::Elim {
        motive: Box::new(bool_type()),
        indices: vec![],
        scrut: Box::new(scrut),
        cases: ElimList(vec![
            (
                "tt".into(),
                ElimCase {
                    dims: vec![],
                    n_params: 0,
                    n_args: 0,
                    body: when_true,
                },
            ),
            (
                "ff".into(),
                ElimCase {
                    dims: vec![],
                    n_params: 0,
                    n_args: 0,
                    body: when_false,
                },
            ),
        ]),
    }
}

pub fn bool_not(b: Term) -> Term {
    bool_if(b, bool_val(false), bool_val(true))
}

pub fn bool_and(a: Term, b: Term) -> Term {
    bool_if(a, b, bool_val(false))
}

pub fn bool_decl() -> NamedDecl {
    let schema = bool_schema();
    let smoke = vec![
        Smoke {
            name: "not_tt".into(),
            term: bool_not(bool_val(true)),
            expect: Obs::leaf("ff"),
        },
        Smoke {
            name: "and_tt_ff".into(),
            term: bool_and(bool_val(true), bool_val(false)),
            expect: Obs::leaf("ff"),
        },
        Smoke {
            name: "and_tt_tt".into(),
            term: bool_and(bool_val(true), bool_val(true)),
            expect: Obs::leaf("tt"),
        },
    ];
    NamedDecl {
        name: "bool".into(),
        tele: Telescope::empty(),
        schema: schema.clone(),
        elim_motive: Motive::new(0, bool_type()),
        elim_cases: tautological_cases(&schema),
        smoke,
    }
}

// ---------------------------------------------------------------------------
// Spheres
// ---------------------------------------------------------------------------

pub fn circle_schema() -> ConstrList {
    let x = fresh_dim();
    ConstrList(vec![
        ("base".into(), ctor(vec![], vec![], vec![], vec![], vec![])),
        (
            "lp".into(),
            ctor(
                vec![x],
                vec![],
                vec![],
                vec![],
                vec![
                    (eq0(x), bintro("base", vec![], vec![], vec![])),
                    (eq1(x), bintro("base", vec![], vec![], vec![])),
                ],
            ),
        ),
    ])
}

/// Eliminate the circle into naturals with constant cases.
fn circle_count(decl: &NamedDecl, scrut: Term) -> Term {
    let x = fresh_dim();
    derive_eliminator(
        decl,
        Motive::new(0, nat_type()),
        vec![],
        scrut,
        vec![(vec![], num(0)), (vec![x], num(0))],
    )
    .expect("circle eliminator shape")
}

pub fn circle_decl() -> NamedDecl {
    let schema = circle_schema();
    let mut decl = NamedDecl {
        name: "circle".into(),
        tele: Telescope::empty(),
        schema: schema.clone(),
        elim_motive: Motive::new(0, Term::Ind {
            tele: Telescope::empty(),
            schema: schema.clone(),
            indices: vec![],
        }),
        elim_cases: tautological_cases(&schema),
        smoke: vec![],
    };
    decl.smoke = vec![
        Smoke {
            name: "elim_base".into(),
            term: circle_count(&decl, decl.intro("base", vec![], vec![], vec![])),
            expect: obs_num(0),
        },
        Smoke {
            name: "elim_lp_0".into(),
            term: circle_count(&decl, decl.intro("lp", vec![Dim::Zero], vec![], vec![])),
            expect: obs_num(0),
        },
        Smoke {
            name: "elim_lp_1".into(),
            term: circle_count(&decl, decl.intro("lp", vec![Dim::One], vec![], vec![])),
            expect: obs_num(0),
        },
    ];
    decl
}

pub fn sphere2_schema() -> ConstrList {
    let x = fresh_dim();
    let y = fresh_dim();
    let base = || bintro("sbase", vec![], vec![], vec![]);
    ConstrList(vec![
        ("sbase".into(), ctor(vec![], vec![], vec![], vec![], vec![])),
        (
            "scell".into(),
            ctor(
                vec![x, y],
                vec![],
                vec![],
                vec![],
                vec![
                    (eq0(x), base()),
                    (eq1(x), base()),
                    (eq0(y), base()),
                    (eq1(y), base()),
                ],
            ),
        ),
    ])
}

pub fn sphere2_decl() -> NamedDecl {
    let schema = sphere2_schema();
    NamedDecl {
        name: "sphere2".into(),
        tele: Telescope::empty(),
        schema: schema.clone(),
        elim_motive: Motive::new(0, Term::Ind {
            tele: Telescope::empty(),
            schema: schema.clone(),
            indices: vec![],
        }),
        elim_cases: tautological_cases(&schema),
        smoke: vec![],
    }
}

// ---------------------------------------------------------------------------
// Torus, both presentations
// ---------------------------------------------------------------------------

pub fn torus_schema() -> ConstrList {
    let x = fresh_dim();
    let y = fresh_dim();
    let x2 = fresh_dim();
    let y2 = fresh_dim();
    let base = || bintro("base", vec![], vec![], vec![]);
    ConstrList(vec![
        ("base".into(), ctor(vec![], vec![], vec![], vec![], vec![])),
        (
            "lpa".into(),
            ctor(
                vec![x],
                vec![],
                vec![],
                vec![],
                vec![(eq0(x), base()), (eq1(x), base())],
            ),
        ),
        (
            "lpb".into(),
            ctor(
                vec![y],
                vec![],
                vec![],
                vec![],
                vec![(eq0(y), base()), (eq1(y), base())],
            ),
        ),
        (
            "surf".into(),
            ctor(
                vec![x2, y2],
                vec![],
                vec![],
                vec![],
                vec![
                    (eq0(x2), bintro("lpb", vec![Dim::Var(y2)], vec![], vec![])),
                    (eq0(y2), bintro("lpa", vec![Dim::Var(x2)], vec![], vec![])),
                    (eq1(x2), bintro("lpb", vec![Dim::Var(y2)], vec![], vec![])),
                    (eq1(y2), bintro("lpa", vec![Dim::Var(x2)], vec![], vec![])),
                ],
            ),
        ),
    ])
}

pub fn torus_decl() -> NamedDecl {
    let schema = torus_schema();
    NamedDecl {
        name: "torus".into(),
        tele: Telescope::empty(),
        schema: schema.clone(),
        elim_motive: Motive::new(0, Term::Ind {
            tele: Telescope::empty(),
            schema: schema.clone(),
            indices: vec![],
        }),
        elim_cases: tautological_cases(&schema),
        smoke: vec![],
    }
}

/// The globular presentation: the square's horizontal faces are composites
/// built with formal composition in the boundary language.
pub fn torus_globular_schema() -> ConstrList {
    let x = fresh_dim();
    let y = fresh_dim();
    let x2 = fresh_dim();
    let y2 = fresh_dim();
    let base = || bintro("base", vec![], vec![], vec![]);
    let composite = |cap: &str, side: &str, x2: DimVar| {
        let z = fresh_dim();
        let z2 = fresh_dim();
        BoundaryTerm::BFhcom {
            indices: vec![],
            r: Dim::Zero,
            r2: Dim::One,
            cap: Box::new(bintro(cap, vec![Dim::Var(x2)], vec![], vec![])),
            tube: vec![
                BTube {
                    cons: eq0(x2),
                    dim: z,
                    body: base(),
                },
                BTube {
                    cons: eq1(x2),
                    dim: z2,
                    body: bintro(side, vec![Dim::Var(z2)], vec![], vec![]),
                },
            ],
        }
    };
    ConstrList(vec![
        ("base".into(), ctor(vec![], vec![], vec![], vec![], vec![])),
        (
            "lpa".into(),
            ctor(
                vec![x],
                vec![],
                vec![],
                vec![],
                vec![(eq0(x), base()), (eq1(x), base())],
            ),
        ),
        (
            "lpb".into(),
            ctor(
                vec![y],
                vec![],
                vec![],
                vec![],
                vec![(eq0(y), base()), (eq1(y), base())],
            ),
        ),
        (
            "surf".into(),
            ctor(
                vec![x2, y2],
                vec![],
                vec![],
                vec![],
                vec![
                    (eq0(x2), base()),
                    (eq1(x2), base()),
                    (eq0(y2), composite("lpa", "lpb", x2)),
                    (eq1(y2), composite("lpb", "lpa", x2)),
                ],
            ),
        ),
    ])
}

pub fn torus_globular_decl() -> NamedDecl {
    let schema = torus_globular_schema();
    // A nat-valued eliminator: constant cases, with the square case equal to
    // the composite its horizontal boundaries demand.
    let x = fresh_dim();
    let y = fresh_dim();
    let surf_case = {
        let w = fresh_dim();
        let z = fresh_dim();
        let z2 = fresh_dim();
        Term::Com {
            dim: w,
            line: Box::new(nat_type()),
            r: Dim::Zero,
            r2: Dim::One,
            cap: Box::new(num(0)),
            tube: vec![
                Tube::new(eq0(x), z, num(0)),
                Tube::new(eq1(x), z2, num(0)),
            ],
        }
    };
    let cases = ElimList(vec![
        (
            "base".into(),
            ElimCase {
                dims: vec![],
                n_params: 0,
                n_args: 0,
                body: num(0),
            },
        ),
        (
            "lpa".into(),
            ElimCase {
                dims: vec![fresh_dim()],
                n_params: 0,
                n_args: 0,
                body: num(0),
            },
        ),
        (
            "lpb".into(),
            ElimCase {
                dims: vec![fresh_dim()],
                n_params: 0,
                n_args: 0,
                body: num(0),
            },
        ),
        (
            "surf".into(),
            ElimCase {
                dims: vec![x, y],
                n_params: 0,
                n_args: 0,
                body: surf_case,
            },
        ),
    ]);
    NamedDecl {
        name: "torus_g".into(),
        tele: Telescope::empty(),
        schema,
        elim_motive: Motive::new(0, nat_type()),
        elim_cases: cases,
        smoke: vec![],
    }
}

// ---------------------------------------------------------------------------
// W-types and W-quotients
// ---------------------------------------------------------------------------

/// The W-type of `a_ty` with branching family `b_fam` (one binder over the
/// label).
pub fn w_decl_of(a_ty: Term, b_fam: Term) -> NamedDecl {
    let schema = ConstrList(vec![(
        "wsup".into(),
        ctor(
            vec![],
            vec![a_ty],
            vec![],
            vec![ArgType::arg_pi(b_fam, ArgType::self_at(vec![]))],
            vec![],
        ),
    )]);
    NamedDecl {
        name: "w".into(),
        tele: Telescope::empty(),
        schema: schema.clone(),
        elim_motive: Motive::new(0, Term::Ind {
            tele: Telescope::empty(),
            schema: schema.clone(),
            indices: vec![],
        }),
        elim_cases: tautological_cases(&schema),
        smoke: vec![],
    }
}

/// W-quotients: a W-type together with a recursive path constructor whose
/// endpoints are supremum cells at the images of the two provided maps.
pub fn wq_decl_of(a_ty: Term, b_fam: Term, c_ty: Term, f0: Term, f1: Term) -> NamedDecl {
    let x = fresh_dim();
    let at0 = Term::app(weaken(&f0, 1), Term::var(0));
    let at1 = Term::app(weaken(&f1, 1), Term::var(0));
    let schema = ConstrList(vec![
        (
            "wqsup".into(),
            ctor(
                vec![],
                vec![a_ty],
                vec![],
                vec![ArgType::arg_pi(b_fam.clone(), ArgType::self_at(vec![]))],
                vec![],
            ),
        ),
        (
            "wqcell".into(),
            ctor(
                vec![x],
                vec![c_ty],
                vec![],
                vec![
                    ArgType::arg_pi(inst1(&b_fam, 1, &at0), ArgType::self_at(vec![])),
                    ArgType::arg_pi(inst1(&b_fam, 1, &at1), ArgType::self_at(vec![])),
                ],
                vec![
                    (
                        eq0(x),
                        bintro("wqsup", vec![], vec![at0.clone()], vec![BoundaryTerm::BVar(0)]),
                    ),
                    (
                        eq1(x),
                        bintro("wqsup", vec![], vec![at1.clone()], vec![BoundaryTerm::BVar(1)]),
                    ),
                ],
            ),
        ),
    ]);
    NamedDecl {
        name: "wq".into(),
        tele: Telescope::empty(),
        schema: schema.clone(),
        elim_motive: Motive::new(0, Term::Ind {
            tele: Telescope::empty(),
            schema: schema.clone(),
            indices: vec![],
        }),
        elim_cases: tautological_cases(&schema),
        smoke: vec![],
    }
}

// ---------------------------------------------------------------------------
// Truncations
// ---------------------------------------------------------------------------

/// The (-1)-truncation: points, and a path between every pair of elements.
pub fn trunc_decl_of(a_ty: Term) -> NamedDecl {
    let x = fresh_dim();
    let schema = ConstrList(vec![
        ("trpt".into(), ctor(vec![], vec![a_ty], vec![], vec![], vec![])),
        (
            "trglue".into(),
            ctor(
                vec![x],
                vec![],
                vec![],
                vec![ArgType::self_at(vec![]), ArgType::self_at(vec![])],
                vec![
                    (eq0(x), BoundaryTerm::BVar(0)),
                    (eq1(x), BoundaryTerm::BVar(1)),
                ],
            ),
        ),
    ]);
    NamedDecl {
        name: "trunc".into(),
        tele: Telescope::empty(),
        schema: schema.clone(),
        elim_motive: Motive::new(0, Term::Ind {
            tele: Telescope::empty(),
            schema: schema.clone(),
            indices: vec![],
        }),
        elim_cases: tautological_cases(&schema),
        smoke: vec![],
    }
}

/// Hub-and-spokes truncation over a provided sphere: every map from the
/// sphere is contracted to a hub point.
pub fn trunc_hs_decl_of(a_ty: Term, sphere: Term) -> NamedDecl {
    let x = fresh_dim();
    let schema = ConstrList(vec![
        ("trpt".into(), ctor(vec![], vec![a_ty], vec![], vec![], vec![])),
        (
            "trhub".into(),
            ctor(
                vec![],
                vec![],
                vec![],
                vec![ArgType::arg_pi(sphere.clone(), ArgType::self_at(vec![]))],
                vec![],
            ),
        ),
        (
            "trspoke".into(),
            ctor(
                vec![x],
                vec![sphere.clone()],
                vec![],
                vec![ArgType::arg_pi(weaken(&sphere, 1), ArgType::self_at(vec![]))],
                vec![
                    (eq0(x), bintro("trhub", vec![], vec![], vec![BoundaryTerm::BVar(0)])),
                    (
                        eq1(x),
                        BoundaryTerm::BApp(
                            Box::new(BoundaryTerm::BVar(0)),
                            Box::new(Term::var(0)),
                        ),
                    ),
                ],
            ),
        ),
    ]);
    NamedDecl {
        name: "trunc_hs".into(),
        tele: Telescope::empty(),
        schema: schema.clone(),
        elim_motive: Motive::new(0, Term::Ind {
            tele: Telescope::empty(),
            schema: schema.clone(),
            indices: vec![],
        }),
        elim_cases: tautological_cases(&schema),
        smoke: vec![],
    }
}

// ---------------------------------------------------------------------------
// Localization
// ---------------------------------------------------------------------------

/// Localization of `a_ty` at a family of maps `f : (i : i_ty) -> s_ty i ->
/// t_ty i`. The family arguments are one-binder terms over the index.
pub fn loc_decl_of(a_ty: Term, i_ty: Term, s_ty: Term, t_ty: Term, f: Term) -> NamedDecl {
    let x = fresh_dim();
    let x2 = fresh_dim();
    // ext and ext2 share their shape: parameters (i : I, t : T i), one
    // recursive argument (s : S i) -> self.
    let ext_ctor = || {
        ctor(
            vec![],
            vec![i_ty.clone(), s_ty.clone()],
            vec![],
            vec![ArgType::arg_pi(
                inst1(&s_ty, 2, &Term::var(1)),
                ArgType::self_at(vec![]),
            )],
            vec![],
        )
    };
    // rtr: parameters (i : I, s : S i), recursive (g : S i -> self), with
    // boundary g(s) at 0 and ext(i, f i s; g) at 1.
    let rtr = {
        let f_at = Term::app(
            Term::app(shift_from(&f, 1, 1), Term::var(1)),
            Term::var(0),
        );
        ctor(
            vec![x],
            vec![i_ty.clone(), inst1(&s_ty, 1, &Term::var(0))],
            vec![],
            vec![ArgType::arg_pi(
                inst1(&s_ty, 2, &Term::var(1)),
                ArgType::self_at(vec![]),
            )],
            vec![
                (
                    eq0(x),
                    BoundaryTerm::BApp(Box::new(BoundaryTerm::BVar(0)), Box::new(Term::var(0))),
                ),
                (
                    eq1(x),
                    bintro(
                        "ext",
                        vec![],
                        vec![Term::var(1), f_at],
                        vec![BoundaryTerm::BVar(0)],
                    ),
                ),
            ],
        )
    };
    // rtr2: parameters (i : I, t : T i), recursive (h : T i -> self), with
    // boundary h(t) at 0 and ext2(i, t; \s. h (f i s)) at 1.
    let rtr2 = {
        let f_under = Term::app(
            Term::app(shift_from(&f, 3, 1), Term::var(2)),
            Term::var(0),
        );
        ctor(
            vec![x2],
            vec![i_ty.clone(), inst1(&t_ty, 1, &Term::var(0))],
            vec![],
            vec![ArgType::arg_pi(
                inst1(&t_ty, 2, &Term::var(1)),
                ArgType::self_at(vec![]),
            )],
            vec![
                (
                    eq0(x2),
                    BoundaryTerm::BApp(Box::new(BoundaryTerm::BVar(0)), Box::new(Term::var(0))),
                ),
                (
                    eq1(x2),
                    bintro(
                        "ext2",
                        vec![],
                        vec![Term::var(1), Term::var(0)],
                        vec![BoundaryTerm::BLam(Box::new(BoundaryTerm::BApp(
                            Box::new(BoundaryTerm::BVar(0)),
                            Box::new(f_under),
                        )))],
                    ),
                ),
            ],
        )
    };
    let schema = ConstrList(vec![
        ("loc".into(), ctor(vec![], vec![a_ty], vec![], vec![], vec![])),
        ("ext".into(), ext_ctor()),
        ("ext2".into(), ext_ctor()),
        ("rtr".into(), rtr),
        ("rtr2".into(), rtr2),
    ]);
    NamedDecl {
        name: "loc".into(),
        tele: Telescope::empty(),
        schema: schema.clone(),
        elim_motive: Motive::new(0, Term::Ind {
            tele: Telescope::empty(),
            schema: schema.clone(),
            indices: vec![],
        }),
        elim_cases: tautological_cases(&schema),
        smoke: vec![],
    }
}

// ---------------------------------------------------------------------------
// Identity families
// ---------------------------------------------------------------------------

/// The identity family over `a_ty`, generated by reflexivity at the
/// diagonal.
pub fn id_decl_of(a_ty: Term) -> NamedDecl {
    let schema = ConstrList(vec![(
        "refl".into(),
        ctor(
            vec![],
            vec![a_ty.clone()],
            vec![Term::var(0), Term::var(0)],
            vec![],
            vec![],
        ),
    )]);
    let tele = Telescope(vec![a_ty.clone(), weaken(&a_ty, 1)]);
    // Sample motive: constant at the index type, so the single case returns
    // its parameter.
    let motive = Motive::new(2, weaken(&a_ty, 3));
    let cases = ElimList(vec![(
        "refl".into(),
        ElimCase {
            dims: vec![],
            n_params: 1,
            n_args: 0,
            body: Term::var(0),
        },
    )]);
    NamedDecl {
        name: "id".into(),
        tele,
        schema,
        elim_motive: motive,
        elim_cases: cases,
        smoke: vec![],
    }
}

/// `refl m` in the identity family for `decl`.
pub fn id_refl(decl: &NamedDecl, m: Term) -> Term {
    decl.intro("refl", vec![], vec![m], vec![])
}

/// The path-to-identity map at concrete endpoints: coerce reflexivity along
/// the path.
pub fn path_to_id(id: &NamedDecl, a_ty: &Term, m: Term, p: Term) -> Term {
    let z = fresh_dim();
    let line = Term::Ind {
        tele: id.tele.clone(),
        schema: id.schema.clone(),
        indices: vec![m.clone(), Term::papp(p, Dim::Var(z))],
    };
    let _ = a_ty;
    Term::Coe {
        dim: z,
        line: Box::new(line),
        r: Dim::Zero,
        r2: Dim::One,
        body: Box::new(id_refl(id, m)),
    }
}

/// The identity-to-path map: eliminate into the path type with reflexivity
/// sent to the constant path.
pub fn id_to_path(_id: &NamedDecl, a_ty: &Term, m: Term, n: Term, p: Term) -> Term {
    let x = fresh_dim();
    let x2 = fresh_dim();
    let motive_body = Term::PathTy {
        dim: x,
        ty: Box::new(weaken(a_ty, 3)),
        lhs: Box::new(Term::var(2)),
        rhs: Box::new(Term::var(1)),
    };
    Term::Elim {
        motive: Box::new(motive_body),
        indices: vec![m, n],
        scrut: Box::new(p),
        cases: ElimList(vec![(
            "refl".into(),
            ElimCase {
                dims: vec![],
                n_params: 1,
                n_args: 0,
                body: Term::plam(x2, Term::var(0)),
            },
        )]),
    }
}

/// Identity eliminator smoke: the reflexivity case computes.
fn id_smoke() -> Smoke {
    let id = id_decl_of(nat_type());
    let term = Term::Elim {
        motive: Box::new(nat_type()),
        indices: vec![num(2), num(2)],
        scrut: Box::new(id_refl(&id, num(2))),
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
    Smoke {
        name: "idelim_refl_beta".into(),
        term,
        expect: obs_num(2),
    }
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// The concrete catalog instances used by the suites and shipped as `.cit`
/// files.
pub fn catalog() -> Vec<NamedDecl> {
    let nat = nat_type();
    let id_nat = id_decl_of(nat.clone());
    let w = w_decl_of(
        nat.clone(),
        Term::Ind {
            tele: id_nat.tele.clone(),
            schema: id_nat.schema.clone(),
            indices: vec![num(0), Term::var(0)],
        },
    );
    let wq = wq_decl_of(
        nat.clone(),
        weaken(&nat, 1),
        nat.clone(),
        Term::lam(Term::var(0)),
        Term::lam(Term::var(0)),
    );
    let circle = circle_decl();
    let circle_ty = circle.ind_type();
    let mut id = id_nat;
    id.smoke.push(id_smoke());
    vec![
        nat_decl(),
        bool_decl(),
        circle,
        sphere2_decl(),
        w,
        torus_decl(),
        torus_globular_decl(),
        wq,
        trunc_decl_of(nat.clone()),
        trunc_hs_decl_of(nat.clone(), circle_ty),
        loc_decl_of(
            nat.clone(),
            nat.clone(),
            weaken(&nat, 1),
            weaken(&nat, 1),
            Term::lam(Term::lam(Term::var(0))),
        ),
        id,
    ]
}

/// Look a declaration up by name.
pub fn find_decl(name: &str) -> Option<NamedDecl> {
    catalog().into_iter().find(|d| d.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval, observe, Flags};

    #[test]
    fn numerals_observe_back() {
        let nat = nat_type();
        for n in 0..6 {
            let obs = observe(&num(n), &nat, &Flags::default(), 10_000).unwrap();
            assert_eq!(obs, obs_num(n));
        }
    }

    #[test]
    fn smoke_programs_pass() {
        for decl in catalog() {
            for s in &decl.smoke {
                let obs = observe(&s.term, &nat_or_self(&decl, &s.expect), &Flags::default(), 200_000)
                    .unwrap_or_else(|e| panic!("{}::{}: {}", decl.name, s.name, e));
                assert_eq!(obs, s.expect, "{}::{}", decl.name, s.name);
            }
        }
    }

    // Smoke expectations are all numeral- or boolean-valued.
    fn nat_or_self(decl: &NamedDecl, expect: &Obs) -> Term {
        match expect.label.as_str() {
            "tt" | "ff" => bool_type(),
            _ => {
                let _ = decl;
                nat_type()
            }
        }
    }

    #[test]
    fn torus_has_four_constructors() {
        let t = torus_decl();
        let labels: Vec<&str> = t.schema.0.iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(labels, vec!["base", "lpa", "lpb", "surf"]);
    }

    #[test]
    fn id_is_indexed_at_the_diagonal() {
        let id = id_decl_of(nat_type());
        assert_eq!(id.tele.len(), 2);
        let refl = id.schema.get("refl").unwrap();
        assert_eq!(refl.indices, vec![Term::var(0), Term::var(0)]);
    }

    #[test]
    fn torus_boundary_reduces_to_faces() {
        let t = torus_decl();
        let v = eval(
            &t.intro("surf", vec![Dim::Zero, Dim::Var(fresh_dim())], vec![], vec![]),
            &Flags::default(),
            100,
        );
        match v {
            Ok(Term::Intro { label, .. }) => assert_eq!(label, "lpb"),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn eliminator_derivation_checks_arity() {
        let nat = nat_decl();
        let r = derive_eliminator(
            &nat,
            Motive::new(0, nat_type()),
            vec![],
            num(0),
            vec![(vec![], num(0))],
        );
        assert!(r.is_err());
    }
}
