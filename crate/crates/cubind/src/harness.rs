//! The built-in verification suites: canonicity, arithmetic against a unary
//! oracle, boundary adherence, Kan degeneracies, eliminator computation,
//! dimension-substitution coherence, checker mutations, validity brute
//! force, optimization equivalence, and the natrec golden trace. The CLI
//! `test` command and the acceptance tests run the same implementations.

use crate::check::{check_decl, CheckCtx, CheckError, CheckErrorKind};
use crate::eval::*;
use crate::interp::Motive;
use crate::stdlib::*;
use crate::syntax::*;

/// One named case with its outcome.
#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub outcome: Result<(), String>,
}

impl Case {
    fn ok(name: impl Into<String>) -> Case {
        Case {
            name: name.into(),
            outcome: Ok(()),
        }
    }
    fn fail(name: impl Into<String>, why: impl Into<String>) -> Case {
        Case {
            name: name.into(),
            outcome: Err(why.into()),
        }
    }
    fn of(name: impl Into<String>, r: Result<(), String>) -> Case {
        Case {
            name: name.into(),
            outcome: r,
        }
    }
}

/// A suite run: its cases plus free-form notes (for instance recorded
/// conservativity witnesses).
#[derive(Debug, Clone)]
pub struct Suite {
    pub name: &'static str,
    pub cases: Vec<Case>,
    pub notes: Vec<String>,
}

impl Suite {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.outcome.is_ok())
    }

    pub fn failures(&self) -> Vec<&Case> {
        self.cases.iter().filter(|c| c.outcome.is_err()).collect()
    }

    pub fn summary(&self) -> String {
        let failed = self.failures().len();
        format!(
            "suite {}: {}/{} passed{}",
            self.name,
            self.cases.len() - failed,
            self.cases.len(),
            if failed == 0 { "" } else { " FAIL" }
        )
    }
}

/// A deterministic xorshift generator for the term corpus.
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Rng {
        Rng(seed.max(1))
    }
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn fuel() -> u64 {
    200_000
}

fn obs_of(t: &Term, at: &Term, flags: &Flags) -> Result<Obs, String> {
    observe(t, at, flags, fuel()).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// 1. Canonicity
// ---------------------------------------------------------------------------

/// Random closed, dimension-closed terms of the nat and bool types, built
/// from constructors, degenerate and satisfied compositions, coercions,
/// eliminators, and formal heterogeneous composition.
pub fn canonicity_terms(seed: u64, count: usize) -> Vec<(String, Term, Term)> {
    let mut rng = Rng::new(seed);
    let mut out = Vec::new();
    for i in 0..count {
        let at_bool = rng.below(4) == 0;
        let ty = if at_bool { bool_type() } else { nat_type() };
        let t = gen_term(&mut rng, at_bool, 3);
        out.push((format!("canonicity-{}", i), t, ty));
    }
    out
}

fn gen_base(rng: &mut Rng, at_bool: bool) -> Term {
    if at_bool {
        bool_val(rng.below(2) == 0)
    } else {
        num(rng.below(4) as u32)
    }
}

fn gen_term(rng: &mut Rng, at_bool: bool, depth: u32) -> Term {
    if depth == 0 {
        return gen_base(rng, at_bool);
    }
    let ty = if at_bool { bool_type() } else { nat_type() };
    match rng.below(8) {
        0 => gen_base(rng, at_bool),
        1 => {
            if at_bool {
                bool_not(gen_term(rng, true, depth - 1))
            } else {
                Term::Intro {
                    schema: nat_schema(),
                    label: "suc".into(),
                    dims: vec![],
                    params: vec![],
                    args: vec![gen_term(rng, false, depth - 1)],
                }
            }
        }
        2 => {
            // Degenerate homogeneous composition: equal endpoints.
            let e = if rng.below(2) == 0 { Dim::Zero } else { Dim::One };
            let cap = gen_term(rng, at_bool, depth - 1);
            Term::Hcom {
                ty: Box::new(ty),
                r: e,
                r2: e,
                cap: Box::new(cap.clone()),
                tube: vec![Tube::new(
                    Constraint::new(Dim::One, Dim::Zero),
                    fresh_dim(),
                    cap,
                )],
            }
        }
        3 => {
            // Composition with a satisfied constant tube.
            let face = gen_term(rng, at_bool, depth - 1);
            Term::Hcom {
                ty: Box::new(ty),
                r: Dim::Zero,
                r2: Dim::One,
                cap: Box::new(face.clone()),
                tube: vec![Tube::new(
                    Constraint::new(Dim::Zero, Dim::Zero),
                    fresh_dim(),
                    face,
                )],
            }
        }
        4 => {
            // Coercion along the constant line.
            let (r, r2) = match rng.below(3) {
                0 => (Dim::Zero, Dim::One),
                1 => (Dim::One, Dim::Zero),
                _ => (Dim::Zero, Dim::Zero),
            };
            Term::Coe {
                dim: fresh_dim(),
                line: Box::new(ty),
                r,
                r2,
                body: Box::new(gen_term(rng, at_bool, depth - 1)),
            }
        }
        5 => {
            if at_bool {
                bool_and(
                    gen_term(rng, true, depth - 1),
                    gen_term(rng, true, depth - 1),
                )
            } else if rng.below(2) == 0 {
                nat_add(
                    gen_term(rng, false, depth - 1),
                    gen_term(rng, false, depth - 1),
                )
            } else {
                nat_mul(
                    gen_term(rng, false, depth.saturating_sub(2)),
                    gen_term(rng, false, depth.saturating_sub(2)),
                )
            }
        }
        6 => {
            // Formal heterogeneous composition over the empty index line.
            let face = gen_term(rng, at_bool, depth - 1);
            Term::Fcom {
                dim: fresh_dim(),
                line: vec![],
                r: Dim::Zero,
                r2: Dim::One,
                cap: Box::new(face.clone()),
                tube: vec![Tube::new(
                    Constraint::new(Dim::One, Dim::One),
                    fresh_dim(),
                    face,
                )],
            }
        }
        _ => bool_if(
            gen_term(rng, true, depth - 1),
            gen_term(rng, at_bool, depth - 1),
            gen_term(rng, at_bool, depth - 1),
        ),
    }
}

/// Every generated term must evaluate, within the step bound, to a
/// constructor of a boundaryless label; never to a composition or coercion
/// value.
pub fn canonicity_suite(flags: &Flags) -> Suite {
    let mut cases = Vec::new();
    for (name, t, _ty) in canonicity_terms(0xC1B1D, 200) {
        let r = match eval(&t, flags, 100_000) {
            Err(e) => Err(format!("{}", e)),
            Ok(v) => match &v {
                Term::Intro { schema, label, .. } => match schema.get(label) {
                    Some(c) if c.boundary.is_empty() => Ok(()),
                    Some(_) => Err(format!("value is a boundaryful constructor `{}`", label)),
                    None => Err(format!("value has unknown label `{}`", label)),
                },
                Term::Fhcom { .. } => Err("value is a formal composition".into()),
                Term::Fcoe { .. } => Err("value is a formal coercion".into()),
                other => Err(format!("value is not a constructor: {:?}", other)),
            },
        };
        cases.push(Case::of(name, r));
    }
    Suite {
        name: "canonicity",
        cases,
        notes: vec![],
    }
}

// ---------------------------------------------------------------------------
// 2. Arithmetic against a unary oracle
// ---------------------------------------------------------------------------

fn oracle_add(m: &Obs, n: &Obs) -> Obs {
    // Unary: add by peeling successors off the left operand.
    match m.label.as_str() {
        "zero" => n.clone(),
        _ => Obs::node("suc", vec![oracle_add(&m.args[0], n)]),
    }
}

fn oracle_mul(m: &Obs, n: &Obs) -> Obs {
    match m.label.as_str() {
        "zero" => Obs::leaf("zero"),
        _ => oracle_add(n, &oracle_mul(&m.args[0], n)),
    }
}

pub fn arithmetic_suite(flags: &Flags) -> Suite {
    let nat = nat_type();
    let mut cases = Vec::new();
    for m in 0..=5u32 {
        for n in 0..=5u32 {
            for (opname, term, oracle) in [
                (
                    "add",
                    nat_add(num(m), num(n)),
                    oracle_add(&obs_num(m), &obs_num(n)),
                ),
                (
                    "mul",
                    nat_mul(num(m), num(n)),
                    oracle_mul(&obs_num(m), &obs_num(n)),
                ),
            ] {
                let name = format!("{}-{}-{}", opname, m, n);
                let r = obs_of(&term, &nat, flags).and_then(|got| {
                    if got == oracle {
                        Ok(())
                    } else {
                        Err(format!("got {}, oracle says {}", got, oracle))
                    }
                });
                cases.push(Case::of(name, r));
            }
        }
    }
    Suite {
        name: "arithmetic",
        cases,
        notes: vec![],
    }
}

// ---------------------------------------------------------------------------
// 3. Boundary adherence
// ---------------------------------------------------------------------------

/// Evaluate an intro under a face's unifier and compare it, through the
/// conversion check (whose weak-head machinery acts as the observer for
/// non-observable types), with the hand-transcribed boundary instantiation.
fn face_case(flags: &Flags, name: &str, intro: Term, expected: Term) -> Case {
    let got = match eval(&intro, flags, fuel()) {
        Ok(v) => v,
        Err(e) => return Case::fail(name, format!("intro: {}", e)),
    };
    let want = match eval(&expected, flags, fuel()) {
        Ok(v) => v,
        Err(e) => return Case::fail(name, format!("expected side: {}", e)),
    };
    let ctx = CheckCtx::new(*flags);
    if ctx.convert(&got, &want, None) {
        Case::ok(name)
    } else {
        Case::fail(name, format!("values differ: {:?} vs {:?}", got, want))
    }
}

pub fn boundary_suite(flags: &Flags) -> Suite {
    let mut cases = Vec::new();
    // Circle: both loop endpoints land on the base point.
    let circle = circle_decl();
    let base = circle.intro("base", vec![], vec![], vec![]);
    for (i, e) in [Dim::Zero, Dim::One].into_iter().enumerate() {
        cases.push(face_case(
            flags,
            &format!("circle-lp-{}", i),
            circle.intro("lp", vec![e], vec![], vec![]),
            base.clone(),
        ));
    }
    // Torus, standard presentation: 2 + 2 + 4 faces.
    let torus = torus_decl();
    let tbase = torus.intro("base", vec![], vec![], vec![]);
    for (i, e) in [Dim::Zero, Dim::One].into_iter().enumerate() {
        cases.push(face_case(
            flags,
            &format!("torus-lpa-{}", i),
            torus.intro("lpa", vec![e], vec![], vec![]),
            tbase.clone(),
        ));
        cases.push(face_case(
            flags,
            &format!("torus-lpb-{}", i),
            torus.intro("lpb", vec![e], vec![], vec![]),
            tbase.clone(),
        ));
    }
    let y = fresh_dim();
    let x = fresh_dim();
    for (i, (dims, expect)) in [
        (
            vec![Dim::Zero, Dim::Var(y)],
            torus.intro("lpb", vec![Dim::Var(y)], vec![], vec![]),
        ),
        (
            vec![Dim::Var(x), Dim::Zero],
            torus.intro("lpa", vec![Dim::Var(x)], vec![], vec![]),
        ),
        (
            vec![Dim::One, Dim::Var(y)],
            torus.intro("lpb", vec![Dim::Var(y)], vec![], vec![]),
        ),
        (
            vec![Dim::Var(x), Dim::One],
            torus.intro("lpa", vec![Dim::Var(x)], vec![], vec![]),
        ),
    ]
    .into_iter()
    .enumerate()
    {
        cases.push(face_case(
            flags,
            &format!("torus-surf-{}", i),
            torus.intro("surf", dims, vec![], vec![]),
            expect,
        ));
    }
    // Torus, globular presentation: 2 + 2 + 4 faces; the horizontal faces
    // are hand-built formal composites.
    let tg = torus_globular_decl();
    let gbase = tg.intro("base", vec![], vec![], vec![]);
    for (i, e) in [Dim::Zero, Dim::One].into_iter().enumerate() {
        cases.push(face_case(
            flags,
            &format!("torus-g-lpa-{}", i),
            tg.intro("lpa", vec![e], vec![], vec![]),
            gbase.clone(),
        ));
        cases.push(face_case(
            flags,
            &format!("torus-g-lpb-{}", i),
            tg.intro("lpb", vec![e], vec![], vec![]),
            gbase.clone(),
        ));
    }
    let composite = |cap: &str, side: &str, d: Dim| {
        let z = fresh_dim();
        let z2 = fresh_dim();
        Term::Fhcom {
            r: Dim::Zero,
            r2: Dim::One,
            cap: Box::new(tg.intro(cap, vec![d], vec![], vec![])),
            tube: vec![
                Tube::new(Constraint::new(d, Dim::Zero), z, gbase.clone()),
                Tube::new(
                    Constraint::new(d, Dim::One),
                    z2,
                    tg.intro(side, vec![Dim::Var(z2)], vec![], vec![]),
                ),
            ],
        }
    };
    for (i, (dims, expect)) in [
        (vec![Dim::Zero, Dim::Var(y)], gbase.clone()),
        (vec![Dim::One, Dim::Var(y)], gbase.clone()),
        (
            vec![Dim::Var(x), Dim::Zero],
            composite("lpa", "lpb", Dim::Var(x)),
        ),
        (
            vec![Dim::Var(x), Dim::One],
            composite("lpb", "lpa", Dim::Var(x)),
        ),
    ]
    .into_iter()
    .enumerate()
    {
        cases.push(face_case(
            flags,
            &format!("torus-g-surf-{}", i),
            tg.intro("surf", dims, vec![], vec![]),
            expect,
        ));
    }
    // Truncation glue: each endpoint is the matching recursive argument.
    let trunc = trunc_decl_of(nat_type());
    let t0 = trunc.intro("trpt", vec![], vec![num(2)], vec![]);
    let t1 = trunc.intro("trpt", vec![], vec![num(3)], vec![]);
    for (i, (e, expect)) in [(Dim::Zero, t0.clone()), (Dim::One, t1.clone())]
        .into_iter()
        .enumerate()
    {
        cases.push(face_case(
            flags,
            &format!("trunc-trglue-{}", i),
            trunc.intro("trglue", vec![e], vec![], vec![t0.clone(), t1.clone()]),
            expect,
        ));
    }
    // W-quotient cell: endpoints are supremum cells at the images of the
    // two maps. The branching functions are closed stand-ins; the faces
    // never apply them.
    let wq = wq_decl_of(
        nat_type(),
        weaken(&nat_type(), 1),
        nat_type(),
        Term::lam(Term::var(0)),
        Term::lam(Term::var(0)),
    );
    let g0 = Term::lam(Term::var(0));
    let g1 = Term::lam(Term::var(0));
    for (i, (e, g)) in [(Dim::Zero, g0.clone()), (Dim::One, g1.clone())]
        .into_iter()
        .enumerate()
    {
        let expect = wq.intro(
            "wqsup",
            vec![],
            vec![Term::app(Term::lam(Term::var(0)), num(2))],
            vec![g],
        );
        cases.push(face_case(
            flags,
            &format!("wq-wqcell-{}", i),
            wq.intro(
                "wqcell",
                vec![e],
                vec![num(2)],
                vec![g0.clone(), g1.clone()],
            ),
            expect,
        ));
    }
    // Hub-and-spokes: the spoke contracts to the hub at 0 and applies the
    // map at 1.
    let circle_ty = circle.ind_type();
    let hs = trunc_hs_decl_of(nat_type(), circle_ty);
    let f = Term::lam(weaken(&hs.intro("trpt", vec![], vec![num(0)], vec![]), 1));
    let s = circle.intro("base", vec![], vec![], vec![]);
    cases.push(face_case(
        flags,
        "trunc-hs-spoke-0",
        hs.intro("trspoke", vec![Dim::Zero], vec![s.clone()], vec![f.clone()]),
        hs.intro("trhub", vec![], vec![], vec![f.clone()]),
    ));
    cases.push(face_case(
        flags,
        "trunc-hs-spoke-1",
        hs.intro("trspoke", vec![Dim::One], vec![s.clone()], vec![f.clone()]),
        Term::app(f.clone(), s),
    ));
    // Localization retractions.
    let loc = loc_decl_of(
        nat_type(),
        nat_type(),
        weaken(&nat_type(), 1),
        weaken(&nat_type(), 1),
        Term::lam(Term::lam(Term::var(0))),
    );
    let g = Term::lam(loc.intro("loc", vec![], vec![Term::var(0)], vec![]));
    cases.push(face_case(
        flags,
        "loc-rtr-0",
        loc.intro("rtr", vec![Dim::Zero], vec![num(0), num(1)], vec![g.clone()]),
        Term::app(g.clone(), num(1)),
    ));
    cases.push(face_case(
        flags,
        "loc-rtr-1",
        loc.intro("rtr", vec![Dim::One], vec![num(0), num(1)], vec![g.clone()]),
        loc.intro(
            "ext",
            vec![],
            vec![
                num(0),
                Term::app(
                    Term::app(Term::lam(Term::lam(Term::var(0))), num(0)),
                    num(1),
                ),
            ],
            vec![g.clone()],
        ),
    ));
    let h = Term::lam(loc.intro("loc", vec![], vec![Term::var(0)], vec![]));
    cases.push(face_case(
        flags,
        "loc-rtr2-0",
        loc.intro("rtr2", vec![Dim::Zero], vec![num(0), num(2)], vec![h.clone()]),
        Term::app(h.clone(), num(2)),
    ));
    let f_under = Term::app(
        Term::app(Term::lam(Term::lam(Term::var(0))), num(0)),
        Term::var(0),
    );
    cases.push(face_case(
        flags,
        "loc-rtr2-1",
        loc.intro("rtr2", vec![Dim::One], vec![num(0), num(2)], vec![h.clone()]),
        loc.intro(
            "ext2",
            vec![],
            vec![num(0), num(2)],
            vec![Term::lam(Term::app(weaken(&h, 1), f_under))],
        ),
    ));
    Suite {
        name: "boundary",
        cases,
        notes: vec![],
    }
}

// ---------------------------------------------------------------------------
// 4. Kan degeneracies
// ---------------------------------------------------------------------------

pub fn kan_suite(flags: &Flags) -> Suite {
    let nat = nat_type();
    let boolt = bool_type();
    let mut cases = Vec::new();
    let mut push = |name: String, t: Term, at: &Term, want: Obs| {
        let r = obs_of(&t, at, flags).and_then(|got| {
            if got == want {
                Ok(())
            } else {
                Err(format!("got {}, want {}", got, want))
            }
        });
        cases.push(Case::of(name, r));
    };
    let bases: Vec<(Term, Term, Obs)> = (0..4)
        .map(|n| (num(n), nat.clone(), obs_num(n)))
        .chain([
            (bool_val(true), boolt.clone(), Obs::leaf("tt")),
            (bool_val(false), boolt.clone(), Obs::leaf("ff")),
        ])
        .collect();
    for (i, (b, at, want)) in bases.iter().enumerate() {
        for e in [Dim::Zero, Dim::One] {
            push(
                format!("hcom-rr-{}-{}", i, e),
                Term::Hcom {
                    ty: Box::new(at.clone()),
                    r: e,
                    r2: e,
                    cap: Box::new(b.clone()),
                    tube: vec![Tube::new(
                        Constraint::new(Dim::One, Dim::Zero),
                        fresh_dim(),
                        b.clone(),
                    )],
                },
                at,
                want.clone(),
            );
            push(
                format!("fhcom-rr-{}-{}", i, e),
                Term::Fhcom {
                    r: e,
                    r2: e,
                    cap: Box::new(b.clone()),
                    tube: vec![Tube::new(
                        Constraint::new(Dim::One, Dim::Zero),
                        fresh_dim(),
                        b.clone(),
                    )],
                },
                at,
                want.clone(),
            );
            push(
                format!("coe-rr-{}-{}", i, e),
                Term::Coe {
                    dim: fresh_dim(),
                    line: Box::new(at.clone()),
                    r: e,
                    r2: e,
                    body: Box::new(b.clone()),
                },
                at,
                want.clone(),
            );
        }
        push(
            format!("com-rr-{}", i),
            Term::Com {
                dim: fresh_dim(),
                line: Box::new(at.clone()),
                r: Dim::Zero,
                r2: Dim::Zero,
                cap: Box::new(b.clone()),
                tube: vec![Tube::new(
                    Constraint::new(Dim::One, Dim::Zero),
                    fresh_dim(),
                    b.clone(),
                )],
            },
            at,
            want.clone(),
        );
        push(
            format!("fcom-rr-{}", i),
            Term::Fcom {
                dim: fresh_dim(),
                line: vec![],
                r: Dim::One,
                r2: Dim::One,
                cap: Box::new(b.clone()),
                tube: vec![Tube::new(
                    Constraint::new(Dim::One, Dim::Zero),
                    fresh_dim(),
                    b.clone(),
                )],
            },
            at,
            want.clone(),
        );
        push(
            format!("tcoe-rr-{}", i),
            Term::Tcoe {
                dim: fresh_dim(),
                tele: Telescope::empty(),
                schema: if i < 4 { nat_schema() } else { bool_schema() },
                r: Dim::Zero,
                r2: Dim::Zero,
                body: Box::new(b.clone()),
            },
            at,
            want.clone(),
        );
    }
    // fcoe over an indexed family: equal endpoints step to the body, which
    // the identity eliminator then observes.
    let id = id_decl_of(nat_type());
    for n in 0..4 {
        let refl = id_refl(&id, num(n));
        let scrut = Term::Fcoe {
            dim: fresh_dim(),
            line: vec![num(n), num(n)],
            r: Dim::One,
            r2: Dim::One,
            body: Box::new(refl),
        };
        let t = Term::Elim {
            motive: Box::new(nat_type()),
            indices: vec![num(n), num(n)],
            scrut: Box::new(scrut),
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
        push(format!("fcoe-rr-id-{}", n), t, &nat, obs_num(n));
    }
    // hcom at a function type composes pointwise.
    for e in [Dim::Zero, Dim::One] {
        let suc_fn = Term::lam(Term::Intro {
            schema: nat_schema(),
            label: "suc".into(),
            dims: vec![],
            params: vec![],
            args: vec![Term::var(0)],
        });
        let h = Term::Hcom {
            ty: Box::new(Term::pi(nat_type(), nat_type())),
            r: e,
            r2: e,
            cap: Box::new(suc_fn.clone()),
            tube: vec![Tube::new(
                Constraint::new(Dim::One, Dim::Zero),
                fresh_dim(),
                suc_fn,
            )],
        };
        push(
            format!("hcom-rr-pi-{}", e),
            Term::app(h, num(2)),
            &nat,
            obs_num(3),
        );
    }
    // coe along closed one-dimensional types collapses observationally;
    // with the closed-type optimization it collapses in one step.
    let circle = circle_decl();
    for (r, r2) in [(Dim::Zero, Dim::Zero), (Dim::Zero, Dim::One)] {
        let coed = Term::Coe {
            dim: fresh_dim(),
            line: Box::new(circle.ind_type()),
            r,
            r2,
            body: Box::new(circle.intro("base", vec![], vec![], vec![])),
        };
        let xr = fresh_dim();
        let counted = derive_eliminator(
            &circle,
            Motive::new(0, nat_type()),
            vec![],
            coed,
            vec![(vec![], num(0)), (vec![xr], num(0))],
        )
        .unwrap();
        push(
            format!("coe-circle-{}-{}", r, r2),
            counted,
            &nat,
            obs_num(0),
        );
    }
    // coe at a function type with equal endpoints, observed pointwise.
    for n in 0..2 {
        let f = Term::lam(Term::Intro {
            schema: nat_schema(),
            label: "suc".into(),
            dims: vec![],
            params: vec![],
            args: vec![Term::var(0)],
        });
        let coed = Term::Coe {
            dim: fresh_dim(),
            line: Box::new(Term::pi(nat_type(), nat_type())),
            r: Dim::Zero,
            r2: Dim::Zero,
            body: Box::new(f),
        };
        push(
            format!("coe-rr-pi-{}", n),
            Term::app(coed, num(n)),
            &nat,
            obs_num(n + 1),
        );
    }
    Suite {
        name: "kan",
        cases,
        notes: vec![],
    }
}

// ---------------------------------------------------------------------------
// 5. Eliminator computation
// ---------------------------------------------------------------------------

fn first_step(t: &Term, flags: &Flags) -> Result<Term, String> {
    match step(t, flags) {
        StepResult::Steps(next) => Ok(next),
        other => Err(format!("expected a step, got {:?}", other)),
    }
}

/// For each cataloged eliminator: the eliminator applied to a constructor
/// value reduces, in one step after dispatch, to the independently
/// transcribed case instantiation; closed instances also agree
/// observationally.
pub fn elim_beta_suite(flags: &Flags) -> Suite {
    let nat = nat_type();
    let mut cases = Vec::new();
    fn syntactic(cases: &mut Vec<Case>, flags: &Flags, name: &str, t: Term, expect: Term) {
        let r = first_step(&t, flags).and_then(|got| {
            if alpha_eq(&got, &expect) {
                Ok(())
            } else {
                Err(format!("step mismatch: {:?} vs {:?}", got, expect))
            }
        });
        cases.push(Case::of(name.to_string(), r));
    }

    // nat successor case: the recursive result is the eliminator at the
    // predecessor.
    let add10 = nat_add(num(1), num(0));
    let (motive, cs) = match &add10 {
        Term::Elim { motive, cases, .. } => ((**motive).clone(), cases.clone()),
        _ => unreachable!(),
    };
    let rec_call = Term::Elim {
        motive: Box::new(motive),
        indices: vec![],
        scrut: Box::new(num(0)),
        cases: cs,
    };
    syntactic(
        &mut cases,
        flags,
        "nat-suc",
        add10,
        Term::Intro {
            schema: nat_schema(),
            label: "suc".into(),
            dims: vec![],
            params: vec![],
            args: vec![rec_call],
        },
    );

    // W: the case body uses only the label argument, so the step lands on
    // it directly.
    let w = w_decl_of(nat.clone(), weaken(&nat, 1));
    let welim = derive_eliminator(
        &w,
        Motive::new(0, nat.clone()),
        vec![],
        w.intro("wsup", vec![], vec![num(2)], vec![Term::lam(Term::var(0))]),
        vec![(vec![], Term::var(2))],
    )
    .unwrap();
    syntactic(&mut cases, flags, "w-wsup", welim, num(2));

    // Torus: the tautological eliminator rebuilds the square cell.
    let torus = torus_decl();
    let x = fresh_dim();
    let yv = fresh_dim();
    let scrut = torus.intro("surf", vec![Dim::Var(x), Dim::Var(yv)], vec![], vec![]);
    let telim = Term::Elim {
        motive: Box::new(torus.ind_type()),
        indices: vec![],
        scrut: Box::new(scrut.clone()),
        cases: torus.elim_cases.clone(),
    };
    syntactic(
        &mut cases,
        flags,
        "torus-surf",
        telim,
        torus.intro("surf", vec![Dim::Var(x), Dim::Var(yv)], vec![], vec![]),
    );

    // Truncation: recursive results are eliminator calls on the glued
    // elements.
    let trunc = trunc_decl_of(nat.clone());
    let t0 = trunc.intro("trpt", vec![], vec![num(2)], vec![]);
    let t1 = trunc.intro("trpt", vec![], vec![num(3)], vec![]);
    let x2 = fresh_dim();
    let tr_elim = Term::Elim {
        motive: Box::new(trunc.ind_type()),
        indices: vec![],
        scrut: Box::new(trunc.intro(
            "trglue",
            vec![Dim::Var(x2)],
            vec![],
            vec![t0.clone(), t1.clone()],
        )),
        cases: trunc.elim_cases.clone(),
    };
    let rec = |t: &Term| Term::Elim {
        motive: Box::new(trunc.ind_type()),
        indices: vec![],
        scrut: Box::new(t.clone()),
        cases: trunc.elim_cases.clone(),
    };
    syntactic(
        &mut cases,
        flags,
        "trunc-trglue",
        tr_elim,
        trunc.intro(
            "trglue",
            vec![Dim::Var(x2)],
            vec![],
            vec![rec(&t0), rec(&t1)],
        ),
    );

    // W-quotient cell: both recursive results are function actions around
    // the eliminator.
    let wq = wq_decl_of(
        nat.clone(),
        weaken(&nat, 1),
        nat.clone(),
        Term::lam(Term::var(0)),
        Term::lam(Term::var(0)),
    );
    let g = Term::lam(wq.intro(
        "wqsup",
        vec![],
        vec![Term::var(0)],
        vec![Term::lam(Term::var(1))],
    ));
    let x3 = fresh_dim();
    let wq_scrut = wq.intro(
        "wqcell",
        vec![Dim::Var(x3)],
        vec![num(1)],
        vec![g.clone(), g.clone()],
    );
    let wq_elim = Term::Elim {
        motive: Box::new(wq.ind_type()),
        indices: vec![],
        scrut: Box::new(wq_scrut),
        cases: wq.elim_cases.clone(),
    };
    let shifted_cases = |cs: &ElimList| {
        let t2 = Term::Elim {
            motive: Box::new(Term::var(0)),
            indices: vec![],
            scrut: Box::new(Term::var(0)),
            cases: cs.clone(),
        };
        match shift_from(&t2, 1, 0) {
            Term::Elim { cases, .. } => cases,
            _ => unreachable!(),
        }
    };
    let wq_rec = |t: &Term| {
        Term::lam(Term::Elim {
            motive: Box::new(shift_from(&wq.ind_type(), 1, 0)),
            indices: vec![],
            scrut: Box::new(Term::app(weaken(t, 1), Term::var(0))),
            cases: shifted_cases(&wq.elim_cases),
        })
    };
    syntactic(
        &mut cases,
        flags,
        "wq-wqcell",
        wq_elim,
        wq.intro(
            "wqcell",
            vec![Dim::Var(x3)],
            vec![num(1)],
            vec![wq_rec(&g), wq_rec(&g)],
        ),
    );

    // Identity: the reflexivity case computes to the case body at the
    // diagonal element, observed at nat.
    let id = id_decl_of(nat.clone());
    let idelim = Term::Elim {
        motive: Box::new(nat.clone()),
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
    syntactic(&mut cases, flags, "id-refl", idelim.clone(), num(2));
    let r = obs_of(&idelim, &nat, flags).and_then(|got| {
        if got == obs_num(2) {
            Ok(())
        } else {
            Err(format!("got {}", got))
        }
    });
    cases.push(Case::of("id-refl-observed", r));

    // Hub-and-spokes: the hub case receives the recursive result function.
    let circle = circle_decl();
    let hs = trunc_hs_decl_of(nat.clone(), circle.ind_type());
    let f = Term::lam(weaken(&hs.intro("trpt", vec![], vec![num(0)], vec![]), 1));
    let hs_elim = Term::Elim {
        motive: Box::new(hs.ind_type()),
        indices: vec![],
        scrut: Box::new(hs.intro("trhub", vec![], vec![], vec![f.clone()])),
        cases: hs.elim_cases.clone(),
    };
    let hs_rec = Term::lam(Term::Elim {
        motive: Box::new(shift_from(&hs.ind_type(), 1, 0)),
        indices: vec![],
        scrut: Box::new(Term::app(weaken(&f, 1), Term::var(0))),
        cases: shifted_cases(&hs.elim_cases),
    });
    syntactic(
        &mut cases,
        flags,
        "trunc-hs-trhub",
        hs_elim,
        hs.intro("trhub", vec![], vec![], vec![hs_rec]),
    );

    // Observational checks at closed instances.
    for (name, term, want) in [
        ("nat-add-observed", nat_add(num(2), num(3)), obs_num(5)),
        (
            "circle-base-observed",
            {
                let d = circle_decl();
                let x4 = fresh_dim();
                derive_eliminator(
                    &d,
                    Motive::new(0, nat.clone()),
                    vec![],
                    d.intro("base", vec![], vec![], vec![]),
                    vec![(vec![], num(0)), (vec![x4], num(0))],
                )
                .unwrap()
            },
            obs_num(0),
        ),
        (
            "bool-not-observed",
            bool_not(bool_val(false)),
            Obs::leaf("tt"),
        ),
    ] {
        let at = if want.label == "tt" || want.label == "ff" {
            bool_type()
        } else {
            nat.clone()
        };
        let r = obs_of(&term, &at, flags).and_then(|got| {
            if got == want {
                Ok(())
            } else {
                Err(format!("got {}, want {}", got, want))
            }
        });
        cases.push(Case::of(name.to_string(), r));
    }
    Suite {
        name: "elim-beta",
        cases,
        notes: vec![],
    }
}

// ---------------------------------------------------------------------------
// 6. Dimension-substitution coherence
// ---------------------------------------------------------------------------

/// One-dimensional nat-observable terms over a given free dimension.
pub fn coherence_terms(x: DimVar) -> Vec<(String, Term)> {
    let nat = nat_type();
    let mut out = Vec::new();
    for a in 0..5u32 {
        out.push((
            format!("hcom-open-{}", a),
            Term::Hcom {
                ty: Box::new(nat.clone()),
                r: Dim::Zero,
                r2: Dim::One,
                cap: Box::new(num(a)),
                tube: vec![
                    Tube::new(Constraint::new(Dim::Var(x), Dim::Zero), fresh_dim(), num(a)),
                    Tube::new(Constraint::new(Dim::Var(x), Dim::One), fresh_dim(), num(a)),
                ],
            },
        ));
        out.push((
            format!("fhcom-open-{}", a),
            Term::Fhcom {
                r: Dim::Zero,
                r2: Dim::Var(x),
                cap: Box::new(num(a)),
                tube: vec![
                    Tube::new(Constraint::new(Dim::Var(x), Dim::Zero), fresh_dim(), num(a)),
                    Tube::new(Constraint::new(Dim::Var(x), Dim::One), fresh_dim(), num(a)),
                ],
            },
        ));
        out.push((
            format!("coe-to-x-{}", a),
            Term::Coe {
                dim: fresh_dim(),
                line: Box::new(nat.clone()),
                r: Dim::Zero,
                r2: Dim::Var(x),
                body: Box::new(num(a)),
            },
        ));
        out.push((
            format!("com-open-{}", a),
            Term::Com {
                dim: fresh_dim(),
                line: Box::new(nat.clone()),
                r: Dim::Zero,
                r2: Dim::One,
                cap: Box::new(num(a)),
                tube: vec![
                    Tube::new(Constraint::new(Dim::Var(x), Dim::Zero), fresh_dim(), num(a)),
                    Tube::new(Constraint::new(Dim::Var(x), Dim::One), fresh_dim(), num(a)),
                ],
            },
        ));
        let open = Term::Fhcom {
            r: Dim::Zero,
            r2: Dim::Var(x),
            cap: Box::new(num(a)),
            tube: vec![
                Tube::new(Constraint::new(Dim::Var(x), Dim::Zero), fresh_dim(), num(a)),
                Tube::new(Constraint::new(Dim::Var(x), Dim::One), fresh_dim(), num(a)),
            ],
        };
        out.push((format!("add-open-{}", a), nat_add(open.clone(), num(2))));
        let circle = circle_decl();
        let xr = fresh_dim();
        out.push((
            format!("circle-count-lp-{}", a),
            derive_eliminator(
                &circle,
                Motive::new(0, nat.clone()),
                vec![],
                circle.intro("lp", vec![Dim::Var(x)], vec![], vec![]),
                vec![(vec![], num(a)), (vec![xr], num(a))],
            )
            .unwrap(),
        ));
        let tr = trunc_decl_of(nat.clone());
        let glue = tr.intro(
            "trglue",
            vec![Dim::Var(x)],
            vec![],
            vec![
                tr.intro("trpt", vec![], vec![num(a)], vec![]),
                tr.intro("trpt", vec![], vec![num(a + 1)], vec![]),
            ],
        );
        out.push((
            format!("trunc-elim-open-{}", a),
            Term::Elim {
                motive: Box::new(nat.clone()),
                indices: vec![],
                scrut: Box::new(glue),
                cases: ElimList(vec![
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
                ]),
            },
        ));
        out.push((
            format!("tcoe-from-x-{}", a),
            Term::Tcoe {
                dim: fresh_dim(),
                tele: Telescope::empty(),
                schema: nat_schema(),
                r: Dim::Var(x),
                r2: Dim::One,
                body: Box::new(num(a)),
            },
        ));
    }
    out
}

/// Substitute-then-evaluate must agree with evaluate-then-substitute-then-
/// evaluate at both endpoints.
pub fn coherence_suite(flags: &Flags) -> Suite {
    let nat = nat_type();
    let x = fresh_dim();
    let mut cases = Vec::new();
    for (name, t) in coherence_terms(x) {
        for e in [Dim::Zero, Dim::One] {
            let sub = DimSubst::single(x, e);
            let direct = obs_of(&dim_subst(&t, &sub), &nat, flags);
            let staged = eval(&t, flags, fuel())
                .map_err(|er| er.to_string())
                .and_then(|v| obs_of(&dim_subst(&v, &sub), &nat, flags));
            let r = match (direct, staged) {
                (Ok(a), Ok(b)) if a == b => Ok(()),
                (Ok(a), Ok(b)) => Err(format!("{} vs {}", a, b)),
                (Err(e), _) | (_, Err(e)) => Err(e),
            };
            cases.push(Case::of(format!("{}-at-{}", name, e), r));
        }
    }
    Suite {
        name: "coherence",
        cases,
        notes: vec![],
    }
}

// ---------------------------------------------------------------------------
// 7. Checker mutations
// ---------------------------------------------------------------------------

fn expect_kind(name: &str, got: Result<(), CheckError>, want: CheckErrorKind) -> Case {
    match got {
        Err(e) if e.kind == want => Case::ok(name),
        Err(e) => Case::fail(name, format!("expected {} error, got {}", want, e)),
        Ok(()) => Case::fail(name, format!("expected {} error, got acceptance", want)),
    }
}

pub fn mutation_suite(flags: &Flags) -> Suite {
    let ctx = CheckCtx::new(*flags);
    let nat = nat_type();
    let empty = Telescope::empty();
    let mut cases = Vec::new();

    // Unmutated stdlib declarations are all accepted.
    for decl in catalog() {
        let r = check_decl(*flags, &decl).map_err(|e| format!("{}", e));
        cases.push(Case::of(format!("accept-{}", decl.name), r));
    }

    // 1. Dropped loop face: the boundary system loses validity.
    let mut s = circle_schema();
    s.0[1].1.boundary.pop();
    cases.push(expect_kind(
        "mut-dropped-face",
        ctx.check_constrs(&empty, &s),
        CheckErrorKind::Validity,
    ));

    // 2. Duplicate label.
    let mut s = circle_schema();
    s.0[1].0 = "base".into();
    cases.push(expect_kind(
        "mut-duplicate-label",
        ctx.check_constrs(&empty, &s),
        CheckErrorKind::LabelOrder,
    ));

    // 3. Forward label reference in a boundary.
    let mut s = circle_schema();
    if let BoundaryTerm::BIntro { label, .. } = &mut s.0[1].1.boundary[0].1 {
        *label = "later".into();
    }
    s.0.push((
        "later".into(),
        Constructor {
            dims: vec![],
            params: Telescope::empty(),
            indices: vec![],
            args: vec![],
            boundary: vec![],
        },
    ));
    cases.push(expect_kind(
        "mut-forward-label",
        ctx.check_constrs(&empty, &s),
        CheckErrorKind::LabelOrder,
    ));

    // 4. Unknown label in a boundary.
    let mut s = circle_schema();
    if let BoundaryTerm::BIntro { label, .. } = &mut s.0[1].1.boundary[0].1 {
        *label = "ghost".into();
    }
    cases.push(expect_kind(
        "mut-unknown-label",
        ctx.check_constrs(&empty, &s),
        CheckErrorKind::LabelOrder,
    ));

    // 5. Corner mismatch on the two-point square.
    let (sq_ok, sq_bad) = two_point_square_schemas();
    cases.push(Case::of(
        "accept-two-point-square",
        ctx.check_constrs(&empty, &sq_ok).map_err(|e| e.to_string()),
    ));
    cases.push(expect_kind(
        "mut-corner-mismatch",
        ctx.check_constrs(&empty, &sq_bad),
        CheckErrorKind::Conversion,
    ));

    // 6. Boundary constraint over a foreign dimension.
    let mut s = circle_schema();
    s.0[1].1.boundary[0].0 = Constraint::new(Dim::Var(fresh_dim()), Dim::Zero);
    cases.push(expect_kind(
        "mut-foreign-constraint",
        ctx.check_constrs(&empty, &s),
        CheckErrorKind::Validity,
    ));

    // 7. Dimension parameter leaking into the parameter telescope.
    let x = fresh_dim();
    let s = ConstrList(vec![(
        "cell".into(),
        Constructor {
            dims: vec![x],
            params: Telescope(vec![Term::PathTy {
                dim: fresh_dim(),
                ty: Box::new(nat.clone()),
                lhs: Box::new(num(0)),
                rhs: Box::new(Term::papp(Term::plam(fresh_dim(), num(0)), Dim::Var(x))),
            }]),
            indices: vec![],
            args: vec![],
            boundary: vec![],
        },
    )]);
    cases.push(expect_kind(
        "mut-dim-in-params",
        ctx.check_constrs(&empty, &s),
        CheckErrorKind::Scope,
    ));

    // 8. Self-reference index arity mismatch in a non-indexed schema.
    let mut s = nat_schema();
    s.0[1].1.args[0] = ArgType::self_at(vec![num(0)]);
    cases.push(expect_kind(
        "mut-selfat-arity",
        ctx.check_constrs(&empty, &s),
        CheckErrorKind::Arity,
    ));

    // 9. Index term of the wrong type in the identity family.
    let id = id_decl_of(nat.clone());
    let mut s = id.schema.clone();
    s.0[0].1.indices[1] = bool_val(true);
    cases.push(expect_kind(
        "mut-wrong-index",
        ctx.check_constrs(&id.tele, &s),
        CheckErrorKind::Conversion,
    ));

    // 10. Constructor arity mismatch inside a boundary term.
    let wq = wq_decl_of(
        nat.clone(),
        weaken(&nat, 1),
        nat.clone(),
        Term::lam(Term::var(0)),
        Term::lam(Term::var(0)),
    );
    let mut s = wq.schema.clone();
    if let BoundaryTerm::BIntro { args, .. } = &mut s.0[1].1.boundary[0].1 {
        args.clear();
    }
    cases.push(expect_kind(
        "mut-boundary-arity",
        ctx.check_constrs(&empty, &s),
        CheckErrorKind::Arity,
    ));

    // 11. Boundary variable out of range.
    let tr = trunc_decl_of(nat.clone());
    let mut s = tr.schema.clone();
    s.0[1].1.boundary[0].1 = BoundaryTerm::BVar(5);
    cases.push(expect_kind(
        "mut-bvar-range",
        ctx.check_constrs(&empty, &s),
        CheckErrorKind::Scope,
    ));

    // 12. Eliminator case-count mismatch.
    let torus = torus_decl();
    let mut cs = torus.elim_cases.clone();
    cs.0.pop();
    cases.push(expect_kind(
        "mut-elim-count",
        ctx.check_elim_list(&torus.tele, &torus.schema, &torus.elim_motive, &cs),
        CheckErrorKind::Arity,
    ));

    // 13. Eliminator case order swapped.
    let mut cs = torus.elim_cases.clone();
    cs.0.swap(1, 2);
    cases.push(expect_kind(
        "mut-elim-order",
        ctx.check_elim_list(&torus.tele, &torus.schema, &torus.elim_motive, &cs),
        CheckErrorKind::LabelOrder,
    ));

    // 14. Eliminator binder-count mismatch.
    let mut cs = torus.elim_cases.clone();
    cs.0[1].1.dims.clear();
    cases.push(expect_kind(
        "mut-elim-binders",
        ctx.check_elim_list(&torus.tele, &torus.schema, &torus.elim_motive, &cs),
        CheckErrorKind::Arity,
    ));

    // 15. Broken eliminator coherence: the loop case no longer matches the
    // base case at its endpoints.
    let mut cs = torus.elim_cases.clone();
    cs.0[1].1.body = torus.intro("lpb", vec![Dim::Var(cs.0[1].1.dims[0])], vec![], vec![]);
    cases.push(expect_kind(
        "mut-elim-coherence",
        ctx.check_elim_list(&torus.tele, &torus.schema, &torus.elim_motive, &cs),
        CheckErrorKind::Conversion,
    ));

    // 16. A composite face with an invalid inner tube.
    let mut s = sq_ok.clone();
    let yv = s.0[3].1.dims[1];
    let z = fresh_dim();
    s.0[3].1.boundary[0].1 = BoundaryTerm::BFhcom {
        indices: vec![],
        r: Dim::Zero,
        r2: Dim::One,
        cap: Box::new(seg_at(Dim::Var(yv))),
        tube: vec![BTube {
            cons: Constraint::new(Dim::Var(yv), Dim::Zero),
            dim: z,
            body: bpt("p"),
        }],
    };
    cases.push(expect_kind(
        "mut-invalid-inner-tube",
        ctx.check_constrs(&empty, &s),
        CheckErrorKind::Validity,
    ));

    // 17. A composite face whose inner tube disagrees with its cap.
    let mut s = sq_ok.clone();
    let yv = s.0[3].1.dims[1];
    let z0 = fresh_dim();
    let z1 = fresh_dim();
    s.0[3].1.boundary[0].1 = BoundaryTerm::BFhcom {
        indices: vec![],
        r: Dim::Zero,
        r2: Dim::One,
        cap: Box::new(seg_at(Dim::Var(yv))),
        tube: vec![
            BTube {
                cons: Constraint::new(Dim::Var(yv), Dim::Zero),
                dim: z0,
                body: bpt("q"),
            },
            BTube {
                cons: Constraint::new(Dim::Var(yv), Dim::One),
                dim: z1,
                body: bpt("q"),
            },
        ],
    };
    cases.push(expect_kind(
        "mut-inner-tube-cap",
        ctx.check_constrs(&empty, &s),
        CheckErrorKind::Conversion,
    ));

    // 18. natrec in a boundary without the extension.
    let (ng_tele, ng_schema) = natglue_schema();
    cases.push(expect_kind(
        "mut-natrec-gated",
        CheckCtx::new(Flags::default()).check_constrs(&ng_tele, &ng_schema),
        CheckErrorKind::Unsupported,
    ));

    // 19. Unbound term variable.
    cases.push(expect_kind(
        "mut-unbound-var",
        ctx.check_term(&Term::var(0), &nat),
        CheckErrorKind::Scope,
    ));

    // 20. Constructor at the wrong inductive type.
    cases.push(expect_kind(
        "mut-wrong-schema-intro",
        ctx.check_term(&num(0), &bool_type()),
        CheckErrorKind::Conversion,
    ));

    // 21. Formal composition with an invalid tube.
    let bad_fhcom = Term::Fhcom {
        r: Dim::Zero,
        r2: Dim::One,
        cap: Box::new(num(0)),
        tube: vec![Tube::new(
            Constraint::new(Dim::Zero, Dim::One),
            fresh_dim(),
            num(0),
        )],
    };
    cases.push(expect_kind(
        "mut-fhcom-invalid-tube",
        ctx.check_term(&bad_fhcom, &nat),
        CheckErrorKind::Validity,
    ));

    // 22. A tube face that disagrees with its cap.
    let x5 = fresh_dim();
    let disagreeing = Term::Fhcom {
        r: Dim::Zero,
        r2: Dim::One,
        cap: Box::new(num(0)),
        tube: vec![
            Tube::new(Constraint::new(Dim::Var(x5), Dim::Zero), fresh_dim(), num(1)),
            Tube::new(Constraint::new(Dim::Var(x5), Dim::One), fresh_dim(), num(1)),
        ],
    };
    let ctx_x5 = ctx.bind_dim(x5);
    cases.push(expect_kind(
        "mut-fhcom-cap-mismatch",
        ctx_x5.check_term(&disagreeing, &nat),
        CheckErrorKind::Conversion,
    ));

    // 23. Intro constructor arity.
    let bad = Term::Intro {
        schema: nat_schema(),
        label: "suc".into(),
        dims: vec![],
        params: vec![],
        args: vec![],
    };
    cases.push(expect_kind(
        "mut-intro-arity",
        ctx.check_term(&bad, &nat),
        CheckErrorKind::Arity,
    ));

    Suite {
        name: "mutation",
        cases,
        notes: vec![],
    }
}

fn bpt(label: &str) -> BoundaryTerm {
    BoundaryTerm::BIntro {
        label: label.into(),
        dims: vec![],
        params: vec![],
        args: vec![],
    }
}

fn seg_at(d: Dim) -> BoundaryTerm {
    BoundaryTerm::BIntro {
        label: "seg".into(),
        dims: vec![d],
        params: vec![],
        args: vec![],
    }
}

/// A square with two distinct corner points (unlike the torus, whose
/// corners all collapse to the base point), plus the same schema with its
/// x=0 face redirected to the far corner.
pub fn two_point_square_schemas() -> (ConstrList, ConstrList) {
    let x = fresh_dim();
    let x2 = fresh_dim();
    let y2 = fresh_dim();
    let ok = ConstrList(vec![
        (
            "p".into(),
            Constructor {
                dims: vec![],
                params: Telescope::empty(),
                indices: vec![],
                args: vec![],
                boundary: vec![],
            },
        ),
        (
            "q".into(),
            Constructor {
                dims: vec![],
                params: Telescope::empty(),
                indices: vec![],
                args: vec![],
                boundary: vec![],
            },
        ),
        (
            "seg".into(),
            Constructor {
                dims: vec![x],
                params: Telescope::empty(),
                indices: vec![],
                args: vec![],
                boundary: vec![
                    (Constraint::new(Dim::Var(x), Dim::Zero), bpt("p")),
                    (Constraint::new(Dim::Var(x), Dim::One), bpt("q")),
                ],
            },
        ),
        (
            "sq".into(),
            Constructor {
                dims: vec![x2, y2],
                params: Telescope::empty(),
                indices: vec![],
                args: vec![],
                boundary: vec![
                    (Constraint::new(Dim::Var(x2), Dim::Zero), seg_at(Dim::Var(y2))),
                    (Constraint::new(Dim::Var(y2), Dim::Zero), seg_at(Dim::Var(x2))),
                    (Constraint::new(Dim::Var(x2), Dim::One), bpt("q")),
                    (Constraint::new(Dim::Var(y2), Dim::One), bpt("q")),
                ],
            },
        ),
    ]);
    let mut bad = ok.clone();
    bad.0[3].1.boundary[0].1 = bpt("q");
    (ok, bad)
}

// ---------------------------------------------------------------------------
// 8. Validity brute force
// ---------------------------------------------------------------------------

/// Wherever the syntactic validity check accepts, exhaustive endpoint
/// substitution must find a satisfied constraint; the converse direction is
/// conservative, and counterexamples are recorded rather than failed.
pub fn validity_suite() -> Suite {
    let vars = [fresh_dim(), fresh_dim(), fresh_dim()];
    let dims = [
        Dim::Zero,
        Dim::One,
        Dim::Var(vars[0]),
        Dim::Var(vars[1]),
        Dim::Var(vars[2]),
    ];
    let mut constraints = Vec::new();
    for a in dims {
        for b in dims {
            constraints.push(Constraint::new(a, b));
        }
    }
    let n = constraints.len();
    let mut unsound = 0usize;
    let mut conservative = 0usize;
    let mut total_valid = 0usize;
    let mut checked = 0usize;
    for len in 1..=4usize {
        let mut idx = vec![0usize; len];
        loop {
            let ctx: Vec<Constraint> = idx.iter().map(|i| constraints[*i]).collect();
            checked += 1;
            let syntactic = ctx_valid(&ctx);
            if syntactic {
                total_valid += 1;
                if !brute_force_valid(&ctx, &vars) {
                    unsound += 1;
                }
            } else if brute_force_valid(&ctx, &vars) {
                conservative += 1;
            }
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == len {
                    break;
                }
            }
            if k == len {
                break;
            }
        }
    }
    let cases = vec![Case::of(
        "validity-soundness".to_string(),
        if unsound == 0 {
            Ok(())
        } else {
            Err(format!("{} valid contexts fail brute force", unsound))
        },
    )];
    Suite {
        name: "validity",
        cases,
        notes: vec![format!(
            "checked {} contexts; {} syntactically valid; {} conservative rejections recorded",
            checked, total_valid, conservative
        )],
    }
}

fn brute_force_valid(ctx: &[Constraint], vars: &[DimVar; 3]) -> bool {
    for bits in 0..8u32 {
        let mut sub = DimSubst::identity();
        for (i, v) in vars.iter().enumerate() {
            sub.insert(*v, if bits & (1 << i) != 0 { Dim::One } else { Dim::Zero });
        }
        if !ctx.iter().any(|c| c.subst(&sub).satisfied()) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// 9. Optimization equivalence
// ---------------------------------------------------------------------------

/// Re-run the observational suites with closed-type optimizations switched
/// on; every case must pass with the same fixed expectations.
pub fn optimization_suite() -> Suite {
    let opt = Flags::default().with_opt_closed();
    let plain = Flags::default();
    let mut cases = Vec::new();
    for build in [
        canonicity_suite,
        arithmetic_suite,
        boundary_suite,
        kan_suite,
        elim_beta_suite,
        coherence_suite,
    ] {
        let a = build(&plain);
        let b = build(&opt);
        let name = a.name;
        if a.cases.len() != b.cases.len() {
            cases.push(Case::fail(
                format!("opt-{}", name),
                "case counts differ between modes",
            ));
            continue;
        }
        let mut diff = Vec::new();
        for (ca, cb) in a.cases.iter().zip(&b.cases) {
            if ca.outcome.is_err() || cb.outcome.is_err() {
                diff.push(ca.name.clone());
            }
        }
        cases.push(Case::of(
            format!("opt-{}", name),
            if diff.is_empty() {
                Ok(())
            } else {
                Err(format!("{} cases differ or fail: {:?}", diff.len(), diff))
            },
        ));
    }
    Suite {
        name: "optimization",
        cases,
        notes: vec![],
    }
}

// ---------------------------------------------------------------------------
// 10. natrec extension
// ---------------------------------------------------------------------------

/// A minimal schema whose boundary uses natural-number recursion: a path
/// cell over a numeral that contracts onto point cells.
pub fn natglue_schema() -> (Telescope, ConstrList) {
    let x = fresh_dim();
    let suc_of_pred = Term::Intro {
        schema: nat_schema(),
        label: "suc".into(),
        dims: vec![],
        params: vec![],
        args: vec![Term::var(0)],
    };
    let schema = ConstrList(vec![
        (
            "pt".into(),
            Constructor {
                dims: vec![],
                params: Telescope(vec![nat_type()]),
                indices: vec![],
                args: vec![],
                boundary: vec![],
            },
        ),
        (
            "cell".into(),
            Constructor {
                dims: vec![x],
                params: Telescope(vec![nat_type()]),
                indices: vec![],
                args: vec![ArgType::self_at(vec![])],
                boundary: vec![
                    (
                        Constraint::new(Dim::Var(x), Dim::Zero),
                        BoundaryTerm::BNatRec {
                            scrut: Box::new(Term::var(0)),
                            zero: Box::new(BoundaryTerm::BVar(0)),
                            suc: Box::new(BoundaryTerm::BIntro {
                                label: "pt".into(),
                                dims: vec![],
                                params: vec![suc_of_pred.clone()],
                                args: vec![],
                            }),
                        },
                    ),
                    (
                        Constraint::new(Dim::Var(x), Dim::One),
                        BoundaryTerm::BIntro {
                            label: "pt".into(),
                            dims: vec![],
                            params: vec![Term::var(0)],
                            args: vec![],
                        },
                    ),
                ],
            },
        ),
    ]);
    (Telescope::empty(), schema)
}

pub fn natrec_suite() -> Suite {
    let flags = Flags::default().with_natrec();
    let mut cases = Vec::new();
    let (tele, schema) = natglue_schema();
    cases.push(Case::of(
        "natglue-checks".to_string(),
        CheckCtx::new(flags)
            .check_constrs(&tele, &schema)
            .map_err(|e| e.to_string()),
    ));
    let natglue = |label: &str, dims: Vec<Dim>, params: Vec<Term>, args: Vec<Term>| Term::Intro {
        schema: schema.clone(),
        label: label.into(),
        dims,
        params,
        args,
    };
    // Golden trace: the x=0 boundary runs the recursor down to a point.
    let arg = natglue("pt", vec![], vec![num(5)], vec![]);
    let start = natglue("cell", vec![Dim::Zero], vec![num(2)], vec![arg.clone()]);
    let tr = trace(&start, &flags, 100);
    // Independently transcribed reduction: the boundary interpretation of
    // the recursor, then one successor step to a point value.
    let expected_mid = Term::NatRec {
        scrut: Box::new(num(2)),
        zero: Box::new(arg.clone()),
        suc: Box::new(natglue(
            "pt",
            vec![],
            vec![Term::Intro {
                schema: nat_schema(),
                label: "suc".into(),
                dims: vec![],
                params: vec![],
                args: vec![Term::var(1)],
            }],
            vec![],
        )),
    };
    let expected_end = natglue("pt", vec![], vec![num(2)], vec![]);
    let golden: Vec<Term> = vec![start.clone(), expected_mid, expected_end];
    let r = if tr.end != TraceEnd::Value {
        Err(format!("trace did not terminate: {:?}", tr.end))
    } else if tr.steps.len() != golden.len() {
        Err(format!(
            "trace has {} entries, golden has {}",
            tr.steps.len(),
            golden.len()
        ))
    } else if let Some(i) = (0..golden.len()).find(|i| !alpha_eq(&tr.steps[*i], &golden[*i])) {
        Err(format!("trace entry {} differs from the golden trace", i))
    } else {
        Ok(())
    };
    cases.push(Case::of("natglue-golden-trace".to_string(), r));
    // The x=1 face is the plain point.
    let other = natglue("cell", vec![Dim::One], vec![num(2)], vec![arg.clone()]);
    let r = eval(&other, &flags, 1_000)
        .map_err(|e| e.to_string())
        .and_then(|v| {
            if alpha_eq(&v, &natglue("pt", vec![], vec![num(2)], vec![])) {
                Ok(())
            } else {
                Err(format!("unexpected value {:?}", v))
            }
        });
    cases.push(Case::of("natglue-other-face".to_string(), r));
    Suite {
        name: "natrec",
        cases,
        notes: vec![],
    }
}

// ---------------------------------------------------------------------------
// Suite registry
// ---------------------------------------------------------------------------

pub fn run_suite(name: &str) -> Option<Suite> {
    let flags = Flags::default();
    match name {
        "canonicity" => Some(canonicity_suite(&flags)),
        "arithmetic" => Some(arithmetic_suite(&flags)),
        "boundary" => Some(boundary_suite(&flags)),
        "kan" => Some(kan_suite(&flags)),
        "elim-beta" => Some(elim_beta_suite(&flags)),
        "coherence" => Some(coherence_suite(&flags)),
        "mutation" => Some(mutation_suite(&flags)),
        "validity" => Some(validity_suite()),
        "optimization" => Some(optimization_suite()),
        "natrec" => Some(natrec_suite()),
        _ => None,
    }
}

pub fn suite_names() -> &'static [&'static str] {
    &[
        "canonicity",
        "arithmetic",
        "boundary",
        "kan",
        "elim-beta",
        "coherence",
        "mutation",
        "validity",
        "optimization",
        "natrec",
    ]
}

pub fn all_suites() -> Vec<Suite> {
    suite_names()
        .iter()
        .map(|n| run_suite(n).expect("registered suite"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_is_deterministic() {
        let a = canonicity_terms(7, 20);
        let b = canonicity_terms(7, 20);
        for ((_, x, _), (_, y, _)) in a.iter().zip(&b) {
            assert!(alpha_eq(x, y));
        }
    }

    #[test]
    fn unary_oracle_matches_arithmetic() {
        assert_eq!(oracle_add(&obs_num(2), &obs_num(3)), obs_num(5));
        assert_eq!(oracle_mul(&obs_num(4), &obs_num(3)), obs_num(12));
        assert_eq!(oracle_mul(&obs_num(0), &obs_num(3)), obs_num(0));
    }
}
