//! Interpretation of the schema specification language into real terms:
//! type interpretation of argument types, boundary-term interpretation,
//! their dependent variants, the action of argument types on maps, and
//! multi-coercion through telescopes.
//!
//! These operations are total on well-scoped input; arity violations are
//! programming errors and panic. They run inside the evaluator's step
//! function, which must stay deterministic and total on checked terms.

use crate::syntax::*;

/// A family of types over an index telescope: `body` lives in a context
/// extended by `arity` index binders.
#[derive(Debug, Clone)]
pub struct IndexFam {
    pub arity: usize,
    pub body: Term,
}

impl IndexFam {
    pub fn new(arity: usize, body: Term) -> Self {
        IndexFam { arity, body }
    }

    /// Instantiate the index binders.
    pub fn apply(&self, indices: &[Term]) -> Term {
        assert_eq!(indices.len(), self.arity, "index family arity mismatch");
        term_subst(&self.body, indices)
    }

    /// Weaken the ambient context under `by` fresh term binders.
    pub fn weaken(&self, by: u32) -> IndexFam {
        IndexFam {
            arity: self.arity,
            body: shift_from(&self.body, by, self.arity as u32),
        }
    }
}

/// A motive: `body` lives in a context extended by `arity` index binders
/// plus one binder (innermost) for the element being eliminated.
#[derive(Debug, Clone)]
pub struct Motive {
    pub arity: usize,
    pub body: Term,
}

impl Motive {
    pub fn new(arity: usize, body: Term) -> Self {
        Motive { arity, body }
    }

    /// Instantiate the index binders and the element binder.
    pub fn apply(&self, indices: &[Term], elem: &Term) -> Term {
        assert_eq!(indices.len(), self.arity, "motive arity mismatch");
        let mut args = indices.to_vec();
        args.push(elem.clone());
        term_subst(&self.body, &args)
    }

    pub fn weaken(&self, by: u32) -> Motive {
        Motive {
            arity: self.arity,
            body: shift_from(&self.body, by, self.arity as u32 + 1),
        }
    }

    pub fn dim_subst(&self, sub: &DimSubst) -> Motive {
        Motive {
            arity: self.arity,
            body: dim_subst(&self.body, sub),
        }
    }
}

/// Syntactic type interpretation: the real type of a recursive argument,
/// read off an argument type at a family.
pub fn tyatty(arg: &ArgType, fam: &IndexFam) -> Term {
    match arg {
        ArgType::SelfAt(indices) => fam.apply(indices),
        ArgType::ArgPi(dom, cod) => Term::pi((**dom).clone(), tyatty(cod, &fam.weaken(1))),
    }
}

/// Pointwise `tyatty` over an argument context.
pub fn tyatty_ctx(args: &ArgCtx, fam: &IndexFam) -> Vec<Term> {
    args.iter().map(|a| tyatty(a, fam)).collect()
}

/// Syntactic dependent type interpretation: the type of the recursive-call
/// result for an argument of the given type, at a motive and an element.
pub fn tyatty_dep(arg: &ArgType, motive: &Motive, elem: &Term) -> Term {
    match arg {
        ArgType::SelfAt(indices) => motive.apply(indices, elem),
        ArgType::ArgPi(dom, cod) => {
            let applied = Term::app(weaken(elem, 1), Term::var(0));
            Term::pi((**dom).clone(), tyatty_dep(cod, &motive.weaken(1), &applied))
        }
    }
}

/// The family `d . ind(tele, schema, d)` used when interpreting argument
/// contexts of a schema.
pub fn self_family(tele: &Telescope, schema: &ConstrList) -> IndexFam {
    let n = tele.len() as u32;
    let indices = (0..n).rev().map(Term::Var).collect();
    IndexFam::new(
        tele.len(),
        Term::Ind {
            tele: shift_tele_by(tele, n),
            schema: shift_schema_by(schema, n),
            indices,
        },
    )
}

fn shift_tele_by(t: &Telescope, by: u32) -> Telescope {
    Telescope(
        t.0.iter()
            .enumerate()
            .map(|(j, ty)| shift_from(ty, by, j as u32))
            .collect(),
    )
}

/// Weaken every term embedded in a schema.
pub fn shift_schema_by(s: &ConstrList, by: u32) -> ConstrList {
    let t = Term::Ind {
        tele: Telescope::empty(),
        schema: s.clone(),
        indices: vec![],
    };
    match shift_from(&t, by, 0) {
        Term::Ind { schema, .. } => schema,
        _ => unreachable!(),
    }
}

fn shift_cases_by(e: &ElimList, by: u32) -> ElimList {
    let t = Term::Elim {
        motive: Box::new(Term::var(0)),
        indices: vec![],
        scrut: Box::new(Term::var(0)),
        cases: e.clone(),
    };
    match shift_from(&t, by, 0) {
        Term::Elim { cases, .. } => cases,
        _ => unreachable!(),
    }
}

/// Boundary term interpretation at a constructor list, substituting the
/// given terms for the boundary variables.
pub fn insttm(m: &BoundaryTerm, schema: &ConstrList, ns: &[Term]) -> Term {
    match m {
        BoundaryTerm::BVar(j) => ns
            .get(*j as usize)
            .cloned()
            .unwrap_or_else(|| panic!("insttm: boundary variable {} out of range", j)),
        BoundaryTerm::BIntro {
            label,
            dims,
            params,
            args,
        } => Term::Intro {
            schema: schema.clone(),
            label: label.clone(),
            dims: dims.clone(),
            params: params.clone(),
            args: args.iter().map(|a| insttm(a, schema, ns)).collect(),
        },
        // The index annotation is erased: the real composition former is
        // unannotated.
        BoundaryTerm::BFhcom {
            r, r2, cap, tube, ..
        } => Term::Fhcom {
            r: *r,
            r2: *r2,
            cap: Box::new(insttm(cap, schema, ns)),
            tube: tube
                .iter()
                .map(|t| Tube::new(t.cons, t.dim, insttm(&t.body, schema, ns)))
                .collect(),
        },
        BoundaryTerm::BFcoe {
            dim,
            line,
            r,
            r2,
            body,
        } => Term::Fcoe {
            dim: *dim,
            line: line.clone(),
            r: *r,
            r2: *r2,
            body: Box::new(insttm(body, schema, ns)),
        },
        BoundaryTerm::BLam(b) => {
            let ns1: Vec<Term> = ns.iter().map(|t| weaken(t, 1)).collect();
            Term::lam(insttm(b, &shift_schema_by(schema, 1), &ns1))
        }
        BoundaryTerm::BApp(b, arg) => Term::app(insttm(b, schema, ns), (**arg).clone()),
        BoundaryTerm::BNatRec { scrut, zero, suc } => {
            let mut ns_ext: Vec<Term> = ns.iter().map(|t| weaken(t, 2)).collect();
            ns_ext.push(Term::var(0));
            let suc_body = shift_bterm(suc, 1, 0);
            Term::NatRec {
                scrut: scrut.clone(),
                zero: Box::new(insttm(zero, schema, ns)),
                suc: Box::new(insttm(&suc_body, &shift_schema_by(schema, 2), &ns_ext)),
            }
        }
    }
}

/// Dependent boundary interpretation. `ns` interprets the boundary
/// variables as elements, `ss` as their recursive-call results.
pub fn insttm_dep(
    m: &BoundaryTerm,
    schema: &ConstrList,
    cases: &ElimList,
    motive: &Motive,
    ns: &[Term],
    ss: &[Term],
) -> Term {
    assert_eq!(ns.len(), ss.len(), "insttm_dep: ns/ss length mismatch");
    match m {
        BoundaryTerm::BVar(j) => ss
            .get(*j as usize)
            .cloned()
            .unwrap_or_else(|| panic!("insttm_dep: boundary variable {} out of range", j)),
        BoundaryTerm::BIntro {
            label,
            dims,
            params,
            args,
        } => {
            let case = cases
                .get(label)
                .unwrap_or_else(|| panic!("insttm_dep: label `{}` missing from cases", label));
            assert_eq!(case.dims.len(), dims.len(), "insttm_dep: dim arity");
            assert_eq!(case.n_params as usize, params.len(), "insttm_dep: params");
            assert_eq!(case.n_args as usize, args.len(), "insttm_dep: args");
            let pairs: Vec<(DimVar, Dim)> =
                case.dims.iter().copied().zip(dims.iter().copied()).collect();
            let body = dim_subst(&case.body, &dsubst(&pairs));
            let mut subst_args = params.clone();
            for a in args {
                subst_args.push(insttm(a, schema, ns));
            }
            for a in args {
                subst_args.push(insttm_dep(a, schema, cases, motive, ns, ss));
            }
            term_subst(&body, &subst_args)
        }
        BoundaryTerm::BFhcom {
            indices,
            r,
            r2,
            cap,
            tube,
        } => {
            // The line runs over the partially executed composition.
            let y = fresh_dim();
            let partial = BoundaryTerm::BFhcom {
                indices: indices.clone(),
                r: *r,
                r2: Dim::Var(y),
                cap: cap.clone(),
                tube: tube.clone(),
            };
            let filler = insttm(&partial, schema, ns);
            let mut line_args = indices.clone();
            line_args.push(filler);
            let line = term_subst(&motive.body, &line_args);
            Term::Com {
                dim: y,
                line: Box::new(line),
                r: *r,
                r2: *r2,
                cap: Box::new(insttm_dep(cap, schema, cases, motive, ns, ss)),
                tube: tube
                    .iter()
                    .map(|t| {
                        Tube::new(
                            t.cons,
                            t.dim,
                            insttm_dep(&t.body, schema, cases, motive, ns, ss),
                        )
                    })
                    .collect(),
            }
        }
        BoundaryTerm::BFcoe {
            dim,
            line: ix,
            r,
            r2,
            body,
        } => {
            let w = fresh_dim();
            let to_w = DimSubst::single(*dim, Dim::Var(w));
            let ix_w: Vec<Term> = ix.iter().map(|t| dim_subst(t, &to_w)).collect();
            // Partial coercion from r up to the line's bound dimension.
            let z_inner = fresh_dim();
            let to_inner = DimSubst::single(*dim, Dim::Var(z_inner));
            let partial = BoundaryTerm::BFcoe {
                dim: z_inner,
                line: ix.iter().map(|t| dim_subst(t, &to_inner)).collect(),
                r: *r,
                r2: Dim::Var(w),
                body: body.clone(),
            };
            let filler = insttm(&partial, schema, ns);
            let mut line_args = ix_w;
            line_args.push(filler);
            let line = term_subst(&motive.body, &line_args);
            Term::Coe {
                dim: w,
                line: Box::new(line),
                r: *r,
                r2: *r2,
                body: Box::new(insttm_dep(body, schema, cases, motive, ns, ss)),
            }
        }
        BoundaryTerm::BLam(b) => {
            let ns1: Vec<Term> = ns.iter().map(|t| weaken(t, 1)).collect();
            let ss1: Vec<Term> = ss.iter().map(|t| weaken(t, 1)).collect();
            Term::lam(insttm_dep(
                b,
                &shift_schema_by(schema, 1),
                &shift_cases_by(cases, 1),
                &motive.weaken(1),
                &ns1,
                &ss1,
            ))
        }
        BoundaryTerm::BApp(b, arg) => Term::app(
            insttm_dep(b, schema, cases, motive, ns, ss),
            (**arg).clone(),
        ),
        BoundaryTerm::BNatRec { scrut, zero, suc } => {
            let schema2 = shift_schema_by(schema, 2);
            let cases2 = shift_cases_by(cases, 2);
            let ns2: Vec<Term> = ns.iter().map(|t| weaken(t, 2)).collect();
            let ss2: Vec<Term> = ss.iter().map(|t| weaken(t, 2)).collect();
            // The recursion value at the predecessor is threaded through as
            // the element interpretation of the appended boundary variable.
            let rec_at_pred = BoundaryTerm::BNatRec {
                scrut: Box::new(Term::var(1)),
                zero: Box::new(shift_bterm(zero, 2, 0)),
                suc: Box::new(shift_bterm(suc, 2, 1)),
            };
            let mut ns_ext = ns2.clone();
            ns_ext.push(insttm(&rec_at_pred, &schema2, &ns2));
            let mut ss_ext = ss2;
            ss_ext.push(Term::var(0));
            let suc_body = shift_bterm(suc, 1, 0);
            Term::NatRec {
                scrut: scrut.clone(),
                zero: Box::new(insttm_dep(zero, schema, cases, motive, ns, ss)),
                suc: Box::new(insttm_dep(
                    &suc_body,
                    &schema2,
                    &cases2,
                    &motive.weaken(2),
                    &ns_ext,
                    &ss_ext,
                )),
            }
        }
    }
}

/// Action of an argument type on a map out of the family: wraps recursive
/// calls around an argument of the interpreted type.
pub fn func_action(arg: &ArgType, map: &Motive, elem: &Term) -> Term {
    match arg {
        ArgType::SelfAt(indices) => map.apply(indices, elem),
        ArgType::ArgPi(_, cod) => {
            let applied = Term::app(weaken(elem, 1), Term::var(0));
            Term::lam(func_action(cod, &map.weaken(1), &applied))
        }
    }
}

/// Multi-coercion: coerce a list of terms through a dependent telescope
/// line. Each component coerces at its entry type instantiated with the
/// filler coercion of the earlier components.
pub fn mcoe(z: DimVar, tele: &Telescope, r: Dim, r2: Dim, ms: &[Term]) -> Vec<Term> {
    assert_eq!(tele.len(), ms.len(), "mcoe: telescope/term length mismatch");
    let mut out = Vec::with_capacity(ms.len());
    for j in 0..ms.len() {
        let w = fresh_dim();
        let rename = DimSubst::single(z, Dim::Var(w));
        let entry = dim_subst(&tele.0[j], &rename);
        let prefix = Telescope(tele.0[..j].iter().map(|t| dim_subst(t, &rename)).collect());
        let filler = mcoe(w, &prefix, r, Dim::Var(w), &ms[..j]);
        let line = term_subst(&entry, &filler);
        out.push(Term::Coe {
            dim: w,
            line: Box::new(line),
            r,
            r2,
            body: Box::new(ms[j].clone()),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_schema() -> ConstrList {
        ConstrList(vec![(
            "star".into(),
            Constructor {
                dims: vec![],
                params: Telescope::empty(),
                indices: vec![],
                args: vec![],
                boundary: vec![],
            },
        )])
    }

    fn unit_ind() -> Term {
        Term::Ind {
            tele: Telescope::empty(),
            schema: unit_schema(),
            indices: vec![],
        }
    }

    #[test]
    fn tyatty_empty_index() {
        let fam = IndexFam::new(0, unit_ind());
        let got = tyatty(&ArgType::self_at(vec![]), &fam);
        assert_eq!(got, unit_ind());
    }

    #[test]
    fn tyatty_arg_pi() {
        let fam = IndexFam::new(0, unit_ind());
        let b = Term::var(3);
        let got = tyatty(&ArgType::arg_pi(b.clone(), ArgType::self_at(vec![])), &fam);
        assert_eq!(got, Term::pi(b, unit_ind()));
    }

    #[test]
    fn tyatty_indexed_self() {
        // Family (d0, d1) . ind[schema](d0, d1); argument self[a, a] for an
        // ambient variable a = Var(0).
        let fam = IndexFam::new(
            2,
            Term::Ind {
                tele: Telescope(vec![unit_ind(), unit_ind()]),
                schema: unit_schema(),
                indices: vec![Term::var(1), Term::var(0)],
            },
        );
        let got = tyatty(&ArgType::self_at(vec![Term::var(0), Term::var(0)]), &fam);
        match got {
            Term::Ind { indices, .. } => {
                assert_eq!(indices, vec![Term::var(0), Term::var(0)]);
            }
            _ => panic!("expected ind"),
        }
    }

    #[test]
    fn tyatty_dep_base() {
        let motive = Motive::new(0, Term::pi(Term::var(0), unit_ind()));
        let n = Term::var(4);
        let got = tyatty_dep(&ArgType::self_at(vec![]), &motive, &n);
        assert_eq!(got, Term::pi(Term::var(4), unit_ind()));
    }

    #[test]
    fn tyatty_dep_arg_pi() {
        // For an argument (b : B) -> self, the result type applies the
        // argument before substituting into the motive. Motive h.(g h) with
        // g the first ambient variable, element f = ambient Var(5).
        let motive = Motive::new(0, Term::app(Term::var(1), Term::var(0)));
        let f = Term::var(5);
        let b = Term::var(2);
        let got = tyatty_dep(&ArgType::arg_pi(b, ArgType::self_at(vec![])), &motive, &f);
        // Under the new binder: g weakens to Var(1), f to Var(6), and the
        // ambient variables of the motive step down past the consumed
        // binder.
        let want = Term::pi(
            Term::var(2),
            Term::app(Term::var(1), Term::app(Term::var(6), Term::var(0))),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn insttm_boundary_var() {
        let ns = vec![Term::var(5), Term::var(6)];
        let got = insttm(&BoundaryTerm::BVar(1), &unit_schema(), &ns);
        assert_eq!(got, Term::var(6));
    }

    #[test]
    fn insttm_intro_no_args() {
        let got = insttm(
            &BoundaryTerm::BIntro {
                label: "star".into(),
                dims: vec![],
                params: vec![],
                args: vec![],
            },
            &unit_schema(),
            &[],
        );
        match got {
            Term::Intro { label, .. } => assert_eq!(label, "star"),
            _ => panic!("expected intro"),
        }
    }

    #[test]
    fn insttm_lam_weakens() {
        let m = BoundaryTerm::BLam(Box::new(BoundaryTerm::BApp(
            Box::new(BoundaryTerm::BVar(0)),
            Box::new(Term::var(0)),
        )));
        let got = insttm(&m, &unit_schema(), &[Term::var(0)]);
        assert_eq!(got, Term::lam(Term::app(Term::var(1), Term::var(0))));
    }

    #[test]
    fn insttm_dep_boundary_var() {
        let got = insttm_dep(
            &BoundaryTerm::BVar(0),
            &unit_schema(),
            &ElimList::default(),
            &Motive::new(0, unit_ind()),
            &[Term::var(3)],
            &[Term::var(9)],
        );
        assert_eq!(got, Term::var(9));
    }

    #[test]
    fn insttm_dep_closed_intro_picks_case_body() {
        let cases = ElimList(vec![(
            "star".into(),
            ElimCase {
                dims: vec![],
                n_params: 0,
                n_args: 0,
                body: Term::var(7),
            },
        )]);
        let got = insttm_dep(
            &BoundaryTerm::BIntro {
                label: "star".into(),
                dims: vec![],
                params: vec![],
                args: vec![],
            },
            &unit_schema(),
            &cases,
            &Motive::new(0, unit_ind()),
            &[],
            &[],
        );
        assert_eq!(got, Term::var(7));
    }

    #[test]
    fn func_action_base_and_pi() {
        // Map h.(g h) with g the first ambient variable, element Var(5).
        let map = Motive::new(0, Term::app(Term::var(1), Term::var(0)));
        let m = Term::var(5);
        assert_eq!(
            func_action(&ArgType::self_at(vec![]), &map, &m),
            Term::app(Term::var(0), Term::var(5))
        );
        let got = func_action(
            &ArgType::arg_pi(Term::var(2), ArgType::self_at(vec![])),
            &map,
            &m,
        );
        let want = Term::lam(Term::app(
            Term::var(1),
            Term::app(Term::var(6), Term::var(0)),
        ));
        assert_eq!(got, want);
    }

    #[test]
    fn mcoe_empty() {
        let z = fresh_dim();
        let got = mcoe(z, &Telescope::empty(), Dim::Zero, Dim::One, &[]);
        assert!(got.is_empty());
    }

    #[test]
    fn mcoe_singleton_is_plain_coe() {
        let z = fresh_dim();
        let a = unit_ind();
        let got = mcoe(
            z,
            &Telescope(vec![a.clone()]),
            Dim::Zero,
            Dim::One,
            &[Term::var(0)],
        );
        assert_eq!(got.len(), 1);
        match &got[0] {
            Term::Coe {
                line, r, r2, body, ..
            } => {
                assert_eq!(**line, a);
                assert_eq!(*r, Dim::Zero);
                assert_eq!(*r2, Dim::One);
                assert_eq!(**body, Term::var(0));
            }
            _ => panic!("expected coe"),
        }
    }

    #[test]
    fn mcoe_dependent_entry_uses_filler() {
        // Telescope (a : U, b : P a): the second component's line must
        // mention the filler coercion of the first.
        let z = fresh_dim();
        let tele = Telescope(vec![unit_ind(), Term::app(Term::var(3), Term::var(0))]);
        let got = mcoe(z, &tele, Dim::Zero, Dim::One, &[Term::var(0), Term::var(1)]);
        assert_eq!(got.len(), 2);
        match &got[1] {
            Term::Coe { dim, line, .. } => match &**line {
                Term::App(_, arg) => match &**arg {
                    Term::Coe { r, r2, .. } => {
                        assert_eq!(*r, Dim::Zero);
                        assert_eq!(*r2, Dim::Var(*dim));
                    }
                    other => panic!("expected filler coe, got {:?}", other),
                },
                other => panic!("expected application, got {:?}", other),
            },
            _ => panic!("expected coe"),
        }
    }
}
