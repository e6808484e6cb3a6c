//! Deterministic small-step evaluation: value recognition, the step
//! function, bounded evaluation, step tracing, and deep observation at
//! first-order inductive types.

use crate::interp::*;
use crate::syntax::*;
use std::fmt;

/// Default step budget; overridable through `CUBIND_FUEL` in the CLI.
pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Evaluator switches. Closed-type optimizations and the two language
/// extensions are off by default so traces follow the unoptimized rules.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Flags {
    pub opt_closed: bool,
    pub ext_natrec: bool,
    pub ext_paths: bool,
}

impl Flags {
    pub fn with_opt_closed(mut self) -> Self {
        self.opt_closed = true;
        self
    }
    pub fn with_natrec(mut self) -> Self {
        self.ext_natrec = true;
        self
    }
    pub fn with_paths(mut self) -> Self {
        self.ext_paths = true;
        self
    }
}

/// Result of attempting one step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepResult {
    IsValue,
    Steps(Term),
    Stuck(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    Stuck(String),
    FuelExhausted,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Stuck(why) => write!(f, "stuck: {}", why),
            EvalError::FuelExhausted => write!(f, "fuel exhausted"),
        }
    }
}

/// How a trace ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEnd {
    Value,
    Stuck(String),
    OutOfSteps,
}

/// A full reduction sequence: every intermediate term, in order, plus how
/// it stopped. Consecutive entries are related by exactly one step.
#[derive(Debug, Clone)]
pub struct Trace {
    pub steps: Vec<Term>,
    pub end: TraceEnd,
}

fn first_satisfied(tube: &[Tube]) -> Option<usize> {
    tube.iter().position(|t| t.cons.satisfied())
}

fn zero_dimensional(schema: &ConstrList) -> bool {
    schema.0.iter().all(|(_, c)| c.dims.is_empty())
}

fn closed_schema(schema: &ConstrList) -> bool {
    schema_term_closed(schema) && schema_free_dims(schema).is_empty()
}

/// Value recognition. Lambdas, path lambdas, types, and inductive type
/// formers are always values; constructor and formal Kan forms are values
/// exactly when none of their reduction guards fire.
pub fn is_value(t: &Term) -> bool {
    match t {
        Term::Lam(_) | Term::Pi(_, _) | Term::PLam { .. } | Term::PathTy { .. } | Term::Ind { .. } => {
            true
        }
        Term::Intro {
            schema,
            label,
            dims,
            ..
        } => match schema.get(label) {
            None => false,
            Some(ctor) if ctor.dims.len() != dims.len() => false,
            Some(ctor) => {
                let pairs: Vec<(DimVar, Dim)> =
                    ctor.dims.iter().copied().zip(dims.iter().copied()).collect();
                let sub = dsubst(&pairs);
                !ctor
                    .boundary
                    .iter()
                    .any(|(cons, _)| cons.subst(&sub).satisfied())
            }
        },
        Term::Fhcom { r, r2, tube, .. } => first_satisfied(tube).is_none() && r != r2,
        Term::Fcoe { line, r, r2, .. } => !line.is_empty() && r != r2,
        _ => false,
    }
}

fn step_congruence(inner: StepResult, rebuild: impl FnOnce(Term) -> Term) -> StepResult {
    match inner {
        StepResult::Steps(t) => StepResult::Steps(rebuild(t)),
        StepResult::Stuck(why) => StepResult::Stuck(why),
        StepResult::IsValue => unreachable!("congruence applied to a value"),
    }
}

fn tube_map(tube: &[Tube], mut f: impl FnMut(&Tube) -> Term) -> Vec<Tube> {
    tube.iter()
        .map(|t| Tube::new(t.cons, t.dim, f(t)))
        .collect()
}

/// The coercion argument sent backwards along the domain line: used by the
/// dependent function rules.
fn coe_arg_backwards(dom: &Term, z: DimVar, from: Dim, to: Dim, arg: Term) -> Term {
    let z2 = fresh_dim();
    Term::Coe {
        dim: z2,
        line: Box::new(dim_subst(dom, &DimSubst::single(z, Dim::Var(z2)))),
        r: from,
        r2: to,
        body: Box::new(arg),
    }
}

/// Homogeneous composition dispatch once the annotation is a value.
fn step_hcom(ty: &Term, r: Dim, r2: Dim, cap: &Term, tube: &[Tube], flags: &Flags) -> StepResult {
    match ty {
        Term::Ind { tele, schema, .. } => {
            if flags.opt_closed
                && tele.is_empty()
                && zero_dimensional(schema)
                && closed_schema(schema)
            {
                return StepResult::Steps(cap.clone());
            }
            StepResult::Steps(Term::Fhcom {
                r,
                r2,
                cap: Box::new(cap.clone()),
                tube: tube.to_vec(),
            })
        }
        Term::Pi(_, cod) => {
            // Pointwise composition of applications under a fresh binder.
            let body = Term::Hcom {
                ty: cod.clone(),
                r,
                r2,
                cap: Box::new(Term::app(weaken(cap, 1), Term::var(0))),
                tube: tube_map(tube, |t| Term::app(weaken(&t.body, 1), Term::var(0))),
            };
            StepResult::Steps(Term::lam(body))
        }
        Term::PathTy { dim, ty, lhs, rhs } => {
            if !flags.ext_paths {
                return StepResult::Stuck(
                    "hcom at a path type requires the paths extension".into(),
                );
            }
            let x = fresh_dim();
            let at_x = DimSubst::single(*dim, Dim::Var(x));
            let mut faces = tube_map(tube, |t| Term::papp(t.body.clone(), Dim::Var(x)));
            // The endpoints join the tube as constant faces.
            faces.push(Tube::new(
                Constraint::new(Dim::Var(x), Dim::Zero),
                fresh_dim(),
                (**lhs).clone(),
            ));
            faces.push(Tube::new(
                Constraint::new(Dim::Var(x), Dim::One),
                fresh_dim(),
                (**rhs).clone(),
            ));
            StepResult::Steps(Term::plam(
                x,
                Term::Hcom {
                    ty: Box::new(dim_subst(ty, &at_x)),
                    r,
                    r2,
                    cap: Box::new(Term::papp(cap.clone(), Dim::Var(x))),
                    tube: faces,
                },
            ))
        }
        _ => StepResult::Stuck("hcom at an unsupported type former".into()),
    }
}

/// Coercion dispatch once the line is a value under its bound dimension.
fn step_coe(z: DimVar, line: &Term, r: Dim, r2: Dim, body: &Term, flags: &Flags) -> StepResult {
    match line {
        Term::Ind {
            tele,
            schema,
            indices,
        } => {
            if flags.opt_closed
                && tele.is_empty()
                && indices.is_empty()
                && closed_schema(schema)
            {
                return StepResult::Steps(body.clone());
            }
            // Move through the total space, then along the index line.
            let w = fresh_dim();
            let to_w = DimSubst::single(z, Dim::Var(w));
            let indices_w: Vec<Term> = indices.iter().map(|t| dim_subst(t, &to_w)).collect();
            let fcoe_line = mcoe(z, tele, Dim::Var(w), r2, &indices_w);
            StepResult::Steps(Term::Fcoe {
                dim: w,
                line: fcoe_line,
                r,
                r2,
                body: Box::new(Term::Tcoe {
                    dim: z,
                    tele: tele.clone(),
                    schema: schema.clone(),
                    r,
                    r2,
                    body: Box::new(body.clone()),
                }),
            })
        }
        Term::Pi(dom, cod) => {
            // Send the argument backwards along the domain line; coerce the
            // applied body forwards along the instantiated codomain line.
            let z2 = fresh_dim();
            let arg_at = |d: Dim| coe_arg_backwards(&weaken(dom, 1), z, r2, d, Term::var(0));
            let cod_z2 = dim_subst(cod, &DimSubst::single(z, Dim::Var(z2)));
            let cod_line = term_subst1(&shift_from(&cod_z2, 1, 1), &arg_at(Dim::Var(z2)));
            StepResult::Steps(Term::lam(Term::Coe {
                dim: z2,
                line: Box::new(cod_line),
                r,
                r2,
                body: Box::new(Term::app(weaken(body, 1), arg_at(r))),
            }))
        }
        Term::PathTy { dim, ty, lhs, rhs } => {
            if !flags.ext_paths {
                return StepResult::Stuck(
                    "coe at a path type requires the paths extension".into(),
                );
            }
            // Heterogeneous composition at the underlying line, with the
            // endpoints as faces.
            let x = fresh_dim();
            let at_x = DimSubst::single(*dim, Dim::Var(x));
            let y0 = fresh_dim();
            let y1 = fresh_dim();
            let lhs_line = dim_subst(lhs, &DimSubst::single(z, Dim::Var(y0)));
            let rhs_line = dim_subst(rhs, &DimSubst::single(z, Dim::Var(y1)));
            StepResult::Steps(Term::plam(
                x,
                Term::Com {
                    dim: z,
                    line: Box::new(dim_subst(ty, &at_x)),
                    r,
                    r2,
                    cap: Box::new(Term::papp(body.clone(), Dim::Var(x))),
                    tube: vec![
                        Tube::new(Constraint::new(Dim::Var(x), Dim::Zero), y0, lhs_line),
                        Tube::new(Constraint::new(Dim::Var(x), Dim::One), y1, rhs_line),
                    ],
                },
            ))
        }
        _ => StepResult::Stuck("coe at an unsupported type former".into()),
    }
}

/// Total-space coercion dispatch on an evaluated argument.
fn step_tcoe(
    z: DimVar,
    tele: &Telescope,
    schema: &ConstrList,
    r: Dim,
    r2: Dim,
    value: &Term,
) -> StepResult {
    let rebuild = |inner: Term| Term::Tcoe {
        dim: z,
        tele: tele.clone(),
        schema: schema.clone(),
        r,
        r2,
        body: Box::new(inner),
    };
    match value {
        Term::Fhcom {
            r: s,
            r2: s2,
            cap,
            tube,
        } => StepResult::Steps(Term::Fhcom {
            r: *s,
            r2: *s2,
            cap: Box::new(rebuild((**cap).clone())),
            tube: tube_map(tube, |t| rebuild(t.body.clone())),
        }),
        Term::Fcoe {
            dim: y,
            line,
            r: s,
            r2: s2,
            body,
        } => StepResult::Steps(Term::Fcoe {
            dim: *y,
            line: mcoe(z, tele, r, r2, line),
            r: *s,
            r2: *s2,
            body: Box::new(rebuild((**body).clone())),
        }),
        Term::Intro {
            label,
            dims,
            params,
            args,
            ..
        } => {
            let ctor = match schema.get(label) {
                Some(c) => c,
                None => return StepResult::Stuck(format!("tcoe: unknown label `{}`", label)),
            };
            // Parameters coerced along the parameter telescope line, and
            // recursive arguments along their interpreted argument types.
            let params_at = |s: Dim| mcoe(z, &ctor.params, r, s, params);
            let arg_at = |s: Dim, j: usize| {
                let z5 = fresh_dim();
                let rename = DimSubst::single(z, Dim::Var(z5));
                let tele5 = dsub_tele(tele, &rename);
                let schema5 = dsub_schema(schema, &rename);
                let ctor5 = schema5.get(label).expect("label stable under renaming");
                let fillers = mcoe(z5, &ctor5.params, r, Dim::Var(z5), params);
                let b_inst = argty_term_subst(&ctor5.args[j], &fillers);
                let line = tyatty(&b_inst, &self_family(&tele5, &schema5));
                Term::Coe {
                    dim: z5,
                    line: Box::new(line),
                    r,
                    r2: s,
                    body: Box::new(args[j].clone()),
                }
            };
            let new_intro = Term::Intro {
                schema: dsub_schema(schema, &DimSubst::single(z, r2)),
                label: label.clone(),
                dims: dims.clone(),
                params: params_at(r2),
                args: (0..args.len()).map(|j| arg_at(r2, j)).collect(),
            };
            // The index line: the constructor's indices at the partially
            // coerced parameters, carried to the target end.
            let w = fresh_dim();
            let to_w = DimSubst::single(z, Dim::Var(w));
            let ctor_w = dsub_schema(schema, &to_w)
                .get(label)
                .expect("label stable under renaming")
                .clone();
            let params_w = mcoe(z, &ctor.params, r, Dim::Var(w), params);
            let indices_w: Vec<Term> = ctor_w
                .indices
                .iter()
                .map(|t| term_subst(t, &params_w))
                .collect();
            let out_line = mcoe(z, tele, Dim::Var(w), r2, &indices_w);
            if ctor.boundary.is_empty() {
                StepResult::Steps(Term::Fcoe {
                    dim: w,
                    line: out_line,
                    r: r2,
                    r2: r,
                    body: Box::new(new_intro),
                })
            } else {
                let bpairs: Vec<(DimVar, Dim)> =
                    ctor.dims.iter().copied().zip(dims.iter().copied()).collect();
                let bsub = dsubst(&bpairs);
                let faces = ctor
                    .boundary
                    .iter()
                    .map(|(cons, m)| {
                        let y = fresh_dim();
                        let s = Dim::Var(y);
                        let at_s = DimSubst::single(z, s);
                        let m1 = dsub_bterm(m, &bsub);
                        let m2 = dsub_bterm(&m1, &at_s);
                        let m3 = bterm_term_subst(&m2, &params_at(s));
                        let schema_s = dsub_schema(schema, &at_s);
                        let args_s: Vec<Term> =
                            (0..args.len()).map(|j| arg_at(s, j)).collect();
                        let inner = insttm(&m3, &schema_s, &args_s);
                        Tube::new(
                            cons.subst(&bsub),
                            y,
                            Term::Tcoe {
                                dim: z,
                                tele: tele.clone(),
                                schema: schema.clone(),
                                r: s,
                                r2,
                                body: Box::new(inner),
                            },
                        )
                    })
                    .collect();
                StepResult::Steps(Term::Fcom {
                    dim: w,
                    line: out_line,
                    r: r2,
                    r2: r,
                    cap: Box::new(new_intro),
                    tube: faces,
                })
            }
        }
        _ => StepResult::Stuck("tcoe applied to a non-inductive value".into()),
    }
}

/// Eliminator dispatch on an evaluated scrutinee.
fn step_elim(motive: &Term, indices: &[Term], value: &Term, cases: &ElimList) -> StepResult {
    let n = indices.len() as u32;
    let selfelim = |ix: &[Term], scr: Term| Term::Elim {
        motive: Box::new(motive.to_owned()),
        indices: ix.to_vec(),
        scrut: Box::new(scr),
        cases: cases.clone(),
    };
    match value {
        Term::Fhcom {
            r: s,
            r2: s2,
            cap,
            tube,
        } => {
            let y = fresh_dim();
            let filler = Term::Fhcom {
                r: *s,
                r2: Dim::Var(y),
                cap: cap.clone(),
                tube: tube.to_vec(),
            };
            let mut line_args = indices.to_vec();
            line_args.push(filler);
            let line = term_subst(motive, &line_args);
            StepResult::Steps(Term::Com {
                dim: y,
                line: Box::new(line),
                r: *s,
                r2: *s2,
                cap: Box::new(selfelim(indices, (**cap).clone())),
                tube: tube_map(tube, |t| selfelim(indices, t.body.clone())),
            })
        }
        Term::Fcoe {
            dim: y,
            line: jline,
            r: s,
            r2: s2,
            body,
        } => {
            let w = fresh_dim();
            let to_w = DimSubst::single(*y, Dim::Var(w));
            let jline_w: Vec<Term> = jline.iter().map(|t| dim_subst(t, &to_w)).collect();
            let y2 = fresh_dim();
            let filler = Term::Fcoe {
                dim: y2,
                line: jline
                    .iter()
                    .map(|t| dim_subst(t, &DimSubst::single(*y, Dim::Var(y2))))
                    .collect(),
                r: *s,
                r2: Dim::Var(w),
                body: body.clone(),
            };
            let mut line_args = jline_w;
            line_args.push(filler);
            let line = term_subst(motive, &line_args);
            let at_s = DimSubst::single(*y, *s);
            let jline_s: Vec<Term> = jline.iter().map(|t| dim_subst(t, &at_s)).collect();
            StepResult::Steps(Term::Coe {
                dim: w,
                line: Box::new(line),
                r: *s,
                r2: *s2,
                body: Box::new(selfelim(&jline_s, (**body).clone())),
            })
        }
        Term::Intro {
            schema,
            label,
            dims,
            params,
            args,
        } => {
            let case = match cases.get(label) {
                Some(c) => c,
                None => {
                    return StepResult::Stuck(format!("elim: no case for label `{}`", label))
                }
            };
            let ctor = match schema.get(label) {
                Some(c) => c,
                None => return StepResult::Stuck(format!("elim: unknown label `{}`", label)),
            };
            if case.dims.len() != dims.len()
                || case.n_params as usize != params.len()
                || case.n_args as usize != args.len()
            {
                return StepResult::Stuck(format!("elim: case arity mismatch at `{}`", label));
            }
            // The recursive-call map: eliminate at the index variables.
            let rec_map = Motive::new(indices.len(), Term::Elim {
                motive: Box::new(shift_from(motive, n + 1, n + 1)),
                indices: (1..=n).rev().map(Term::Var).collect(),
                scrut: Box::new(Term::var(0)),
                cases: shift_cases_wrap(cases, n + 1),
            });
            let pairs: Vec<(DimVar, Dim)> =
                case.dims.iter().copied().zip(dims.iter().copied()).collect();
            let body = dim_subst(&case.body, &dsubst(&pairs));
            let mut subst_args = params.clone();
            subst_args.extend(args.iter().cloned());
            for (j, a) in args.iter().enumerate() {
                let b_inst = argty_term_subst(&ctor.args[j], params);
                subst_args.push(func_action(&b_inst, &rec_map, a));
            }
            StepResult::Steps(term_subst(&body, &subst_args))
        }
        _ => StepResult::Stuck("elim of a non-inductive value".into()),
    }
}

fn shift_cases_wrap(e: &ElimList, by: u32) -> ElimList {
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

/// One deterministic step. Exactly one rule applies to any term: either it
/// is a value, or it has a unique reduct, or it is stuck with a reason
/// naming the offending head.
pub fn step(t: &Term, flags: &Flags) -> StepResult {
    match t {
        Term::Var(i) => StepResult::Stuck(format!("free term variable {}", i)),
        Term::Lam(_) | Term::Pi(_, _) | Term::PLam { .. } | Term::PathTy { .. } | Term::Ind { .. } => {
            StepResult::IsValue
        }
        Term::App(f, a) => match &**f {
            Term::Lam(body) => StepResult::Steps(term_subst1(body, a)),
            g if is_value(g) => StepResult::Stuck("application of a non-function value".into()),
            g => step_congruence(step(g, flags), |g2| Term::app(g2, (**a).clone())),
        },
        Term::PApp(p, d) => match &**p {
            Term::PLam { dim, body } => {
                StepResult::Steps(dim_subst(body, &DimSubst::single(*dim, *d)))
            }
            q if is_value(q) => {
                StepResult::Stuck("path application of a non-path value".into())
            }
            q => step_congruence(step(q, flags), |q2| Term::papp(q2, *d)),
        },
        Term::Intro {
            schema,
            label,
            dims,
            params,
            args,
        } => {
            let ctor = match schema.get(label) {
                Some(c) => c,
                None => return StepResult::Stuck(format!("unknown label `{}`", label)),
            };
            if ctor.dims.len() != dims.len() {
                return StepResult::Stuck(format!("dimension arity mismatch at `{}`", label));
            }
            let pairs: Vec<(DimVar, Dim)> =
                ctor.dims.iter().copied().zip(dims.iter().copied()).collect();
            let sub = dsubst(&pairs);
            for (cons, m) in &ctor.boundary {
                if cons.subst(&sub).satisfied() {
                    let m1 = dsub_bterm(m, &sub);
                    let m2 = bterm_term_subst(&m1, params);
                    return StepResult::Steps(insttm(&m2, schema, args));
                }
            }
            StepResult::IsValue
        }
        Term::Fhcom { r, r2, cap, tube } => {
            if let Some(i) = first_satisfied(tube) {
                let face = &tube[i];
                StepResult::Steps(dim_subst(&face.body, &DimSubst::single(face.dim, *r2)))
            } else if r == r2 {
                StepResult::Steps((**cap).clone())
            } else {
                StepResult::IsValue
            }
        }
        Term::Fcoe { line, body, r, r2, .. } => {
            if line.is_empty() || r == r2 {
                StepResult::Steps((**body).clone())
            } else {
                StepResult::IsValue
            }
        }
        Term::Fcom {
            dim: z,
            line,
            r,
            r2,
            cap,
            tube,
        } => {
            // Composition along an index line decomposes into formal
            // composition of formal coercions.
            let cap_coe = Term::Fcoe {
                dim: *z,
                line: line.clone(),
                r: *r,
                r2: *r2,
                body: cap.clone(),
            };
            let faces = tube_map(tube, |t| {
                let z2 = fresh_dim();
                Term::Fcoe {
                    dim: z2,
                    line: line
                        .iter()
                        .map(|l| dim_subst(l, &DimSubst::single(*z, Dim::Var(z2))))
                        .collect(),
                    r: Dim::Var(t.dim),
                    r2: *r2,
                    body: Box::new(t.body.clone()),
                }
            });
            StepResult::Steps(Term::Fhcom {
                r: *r,
                r2: *r2,
                cap: Box::new(cap_coe),
                tube: faces,
            })
        }
        Term::Hcom { ty, r, r2, cap, tube } => {
            if is_value(ty) {
                step_hcom(ty, *r, *r2, cap, tube, flags)
            } else {
                step_congruence(step(ty, flags), |ty2| Term::Hcom {
                    ty: Box::new(ty2),
                    r: *r,
                    r2: *r2,
                    cap: cap.clone(),
                    tube: tube.clone(),
                })
            }
        }
        Term::Coe {
            dim,
            line,
            r,
            r2,
            body,
        } => {
            if is_value(line) {
                step_coe(*dim, line, *r, *r2, body, flags)
            } else {
                step_congruence(step(line, flags), |l2| Term::Coe {
                    dim: *dim,
                    line: Box::new(l2),
                    r: *r,
                    r2: *r2,
                    body: body.clone(),
                })
            }
        }
        Term::Com {
            dim: z,
            line,
            r,
            r2,
            cap,
            tube,
        } => {
            // Composition along a type line: coerce the cap and faces to the
            // target end, then compose homogeneously there.
            let at_r2 = dim_subst(line, &DimSubst::single(*z, *r2));
            let cap_coe = Term::Coe {
                dim: *z,
                line: line.clone(),
                r: *r,
                r2: *r2,
                body: cap.clone(),
            };
            let faces = tube_map(tube, |t| {
                let z2 = fresh_dim();
                Term::Coe {
                    dim: z2,
                    line: Box::new(dim_subst(line, &DimSubst::single(*z, Dim::Var(z2)))),
                    r: Dim::Var(t.dim),
                    r2: *r2,
                    body: Box::new(t.body.clone()),
                }
            });
            StepResult::Steps(Term::Hcom {
                ty: Box::new(at_r2),
                r: *r,
                r2: *r2,
                cap: Box::new(cap_coe),
                tube: faces,
            })
        }
        Term::Tcoe {
            dim,
            tele,
            schema,
            r,
            r2,
            body,
        } => {
            if is_value(body) {
                step_tcoe(*dim, tele, schema, *r, *r2, body)
            } else {
                step_congruence(step(body, flags), |b2| Term::Tcoe {
                    dim: *dim,
                    tele: tele.clone(),
                    schema: schema.clone(),
                    r: *r,
                    r2: *r2,
                    body: Box::new(b2),
                })
            }
        }
        Term::Elim {
            motive,
            indices,
            scrut,
            cases,
        } => {
            if is_value(scrut) {
                step_elim(motive, indices, scrut, cases)
            } else {
                step_congruence(step(scrut, flags), |s2| Term::Elim {
                    motive: motive.clone(),
                    indices: indices.clone(),
                    scrut: Box::new(s2),
                    cases: cases.clone(),
                })
            }
        }
        Term::NatRec { scrut, zero, suc } => {
            if !flags.ext_natrec {
                return StepResult::Stuck("natrec requires the natrec extension".into());
            }
            if !is_value(scrut) {
                return step_congruence(step(scrut, flags), |s2| Term::NatRec {
                    scrut: Box::new(s2),
                    zero: zero.clone(),
                    suc: suc.clone(),
                });
            }
            match &**scrut {
                Term::Intro { label, args, .. } if label == "zero" && args.is_empty() => {
                    StepResult::Steps((**zero).clone())
                }
                Term::Intro { label, args, .. } if label == "suc" && args.len() == 1 => {
                    let pred = args[0].clone();
                    let rec = Term::NatRec {
                        scrut: Box::new(pred.clone()),
                        zero: zero.clone(),
                        suc: suc.clone(),
                    };
                    StepResult::Steps(term_subst(suc, &[pred, rec]))
                }
                _ => StepResult::Stuck("natrec of a non-numeral value".into()),
            }
        }
    }
}

/// Evaluate to a value within the step budget.
pub fn eval(t: &Term, flags: &Flags, fuel: u64) -> Result<Term, EvalError> {
    let mut cur = t.clone();
    for _ in 0..fuel {
        match step(&cur, flags) {
            StepResult::IsValue => return Ok(cur),
            StepResult::Steps(next) => cur = next,
            StepResult::Stuck(why) => return Err(EvalError::Stuck(why)),
        }
    }
    if matches!(step(&cur, flags), StepResult::IsValue) {
        Ok(cur)
    } else {
        Err(EvalError::FuelExhausted)
    }
}

/// Reduce towards weak head normal form, spending at most `fuel` steps;
/// stuck terms are returned as-is (they act as neutral forms during
/// conversion).
pub fn whnf(t: &Term, flags: &Flags, fuel: &mut u64) -> Term {
    let mut cur = t.clone();
    while *fuel > 0 {
        match step(&cur, flags) {
            StepResult::Steps(next) => {
                *fuel -= 1;
                cur = next;
            }
            _ => break,
        }
    }
    cur
}

/// Record the full reduction sequence of a term, up to `max_steps` steps.
pub fn trace(t: &Term, flags: &Flags, max_steps: u64) -> Trace {
    let mut steps = vec![t.clone()];
    let mut cur = t.clone();
    for _ in 0..max_steps {
        match step(&cur, flags) {
            StepResult::IsValue => {
                return Trace {
                    steps,
                    end: TraceEnd::Value,
                }
            }
            StepResult::Steps(next) => {
                steps.push(next.clone());
                cur = next;
            }
            StepResult::Stuck(why) => {
                return Trace {
                    steps,
                    end: TraceEnd::Stuck(why),
                }
            }
        }
    }
    let end = if matches!(step(&cur, flags), StepResult::IsValue) {
        TraceEnd::Value
    } else {
        TraceEnd::OutOfSteps
    };
    Trace { steps, end }
}

// ---------------------------------------------------------------------------
// Observation
// ---------------------------------------------------------------------------

/// A deep readback of a value at a first-order inductive type: a labeled
/// constructor tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obs {
    pub label: String,
    pub args: Vec<Obs>,
}

impl Obs {
    pub fn leaf(label: &str) -> Obs {
        Obs {
            label: label.into(),
            args: vec![],
        }
    }
    pub fn node(label: &str, args: Vec<Obs>) -> Obs {
        Obs {
            label: label.into(),
            args,
        }
    }
}

impl fmt::Display for Obs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", a)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObserveError {
    NotObservable(String),
    Eval(EvalError),
}

impl fmt::Display for ObserveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObserveError::NotObservable(why) => write!(f, "not observable: {}", why),
            ObserveError::Eval(e) => write!(f, "{}", e),
        }
    }
}

/// A type is observable when it is a zero-dimensional, non-indexed,
/// boundaryless inductive type whose recursive arguments are plain
/// self-references.
fn observable_schema(tele: &Telescope, indices: &[Term], schema: &ConstrList) -> Result<(), String> {
    if !tele.is_empty() || !indices.is_empty() {
        return Err("observation requires a non-indexed inductive type".into());
    }
    for (l, c) in &schema.0 {
        if !c.dims.is_empty() || !c.boundary.is_empty() {
            return Err(format!(
                "constructor `{}` is higher-dimensional or has a boundary",
                l
            ));
        }
        for a in &c.args {
            match a {
                ArgType::SelfAt(ix) if ix.is_empty() => {}
                _ => {
                    return Err(format!(
                        "constructor `{}` has a higher-order recursive argument",
                        l
                    ))
                }
            }
        }
    }
    Ok(())
}

/// Deep readback: evaluate to a constructor value, then recursively observe
/// first-order parameters and all recursive arguments.
pub fn observe(t: &Term, at: &Term, flags: &Flags, fuel: u64) -> Result<Obs, ObserveError> {
    let at_v = eval(at, flags, fuel).map_err(ObserveError::Eval)?;
    let (tele, schema, indices) = match &at_v {
        Term::Ind {
            tele,
            schema,
            indices,
        } => (tele, schema, indices),
        _ => {
            return Err(ObserveError::NotObservable(
                "observation type is not an inductive type".into(),
            ))
        }
    };
    observable_schema(tele, indices, schema).map_err(ObserveError::NotObservable)?;
    let v = eval(t, flags, fuel).map_err(ObserveError::Eval)?;
    match &v {
        Term::Intro {
            label,
            params,
            args,
            ..
        } => {
            let ctor = schema.get(label).ok_or_else(|| {
                ObserveError::NotObservable(format!("unknown label `{}`", label))
            })?;
            let mut out = Vec::new();
            for (j, p) in params.iter().enumerate() {
                let ty = term_subst(&ctor.params.0[j], &params[..j]);
                let ty_v = eval(&ty, flags, fuel).map_err(ObserveError::Eval)?;
                match &ty_v {
                    Term::Ind { .. } => out.push(observe(p, &ty_v, flags, fuel)?),
                    _ => {
                        return Err(ObserveError::NotObservable(format!(
                            "parameter {} of `{}` is higher-order",
                            j, label
                        )))
                    }
                }
            }
            for a in args {
                out.push(observe(a, &at_v, flags, fuel)?);
            }
            Ok(Obs {
                label: label.clone(),
                args: out,
            })
        }
        _ => Err(ObserveError::NotObservable(
            "value is not a constructor".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stdlib::{bool_decl, nat_decl, num, obs_num};

    fn flags() -> Flags {
        Flags::default()
    }

    #[test]
    fn beta_reduction() {
        let t = Term::app(Term::lam(Term::var(0)), num(0));
        let v = eval(&t, &flags(), 100).unwrap();
        assert_eq!(v, num(0));
    }

    #[test]
    fn fhcom_collapses_on_equal_endpoints() {
        let x = fresh_dim();
        let y = fresh_dim();
        let t = Term::Fhcom {
            r: Dim::Var(x),
            r2: Dim::Var(x),
            cap: Box::new(num(2)),
            tube: vec![Tube::new(
                Constraint::new(Dim::Var(x), Dim::Zero),
                y,
                num(2),
            )],
        };
        // The constraint x = 0 is unsatisfied, so the cap rule fires.
        match step(&t, &flags()) {
            StepResult::Steps(v) => assert_eq!(v, num(2)),
            other => panic!("expected a step, got {:?}", other),
        }
    }

    #[test]
    fn fhcom_first_match_wins() {
        let y = fresh_dim();
        let y2 = fresh_dim();
        let t = Term::Fhcom {
            r: Dim::Zero,
            r2: Dim::One,
            cap: Box::new(num(0)),
            tube: vec![
                Tube::new(Constraint::new(Dim::Zero, Dim::Zero), y, num(1)),
                Tube::new(Constraint::new(Dim::One, Dim::One), y2, num(2)),
            ],
        };
        match step(&t, &flags()) {
            StepResult::Steps(v) => assert_eq!(v, num(1)),
            other => panic!("expected a step, got {:?}", other),
        }
    }

    #[test]
    fn fcoe_empty_line_reduces() {
        let z = fresh_dim();
        let t = Term::Fcoe {
            dim: z,
            line: vec![],
            r: Dim::Zero,
            r2: Dim::One,
            body: Box::new(num(1)),
        };
        assert!(!is_value(&t));
        match step(&t, &flags()) {
            StepResult::Steps(v) => assert_eq!(v, num(1)),
            other => panic!("expected a step, got {:?}", other),
        }
    }

    #[test]
    fn fcoe_nonempty_line_is_value() {
        let z = fresh_dim();
        let t = Term::Fcoe {
            dim: z,
            line: vec![num(0)],
            r: Dim::Zero,
            r2: Dim::One,
            body: Box::new(num(1)),
        };
        assert!(is_value(&t));
        assert_eq!(step(&t, &flags()), StepResult::IsValue);
    }

    #[test]
    fn value_soundness_on_numerals() {
        for n in 0..5 {
            let t = num(n);
            assert!(is_value(&t));
            assert_eq!(step(&t, &flags()), StepResult::IsValue);
        }
    }

    #[test]
    fn coe_at_nat_collapses_observationally() {
        let nat = nat_decl().ind_type();
        let z = fresh_dim();
        let t = Term::Coe {
            dim: z,
            line: Box::new(nat.clone()),
            r: Dim::Zero,
            r2: Dim::One,
            body: Box::new(num(2)),
        };
        let obs = observe(&t, &nat, &flags(), 10_000).unwrap();
        assert_eq!(obs, obs_num(2));
    }

    #[test]
    fn observe_rejects_non_constructor_type() {
        let b = bool_decl().ind_type();
        let got = observe(&Term::lam(Term::var(0)), &b, &flags(), 100);
        assert!(matches!(got, Err(ObserveError::NotObservable(_))));
    }

    #[test]
    fn trace_of_value_is_single_entry() {
        let tr = trace(&num(1), &flags(), 10);
        assert_eq!(tr.steps.len(), 1);
        assert_eq!(tr.end, TraceEnd::Value);
    }

    #[test]
    fn natrec_gated_behind_extension() {
        let t = Term::NatRec {
            scrut: Box::new(num(1)),
            zero: Box::new(num(0)),
            suc: Box::new(Term::var(0)),
        };
        assert!(matches!(step(&t, &flags()), StepResult::Stuck(_)));
        let on = Flags::default().with_natrec();
        let v = eval(&t, &on, 100).unwrap();
        assert_eq!(v, num(0));
    }
}
