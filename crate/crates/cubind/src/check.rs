//! Algorithmic well-formedness: schema checking, boundary-term typing,
//! elimination-list typing, bidirectional checking for the supported term
//! formers, and a weak-head conversion check.
//!
//! The judgments approximated here are semantic and undecidable in general;
//! this checker is a sound but incomplete syntactic approximation. Exact
//! equality is decided by weak-head evaluation with free term variables
//! blocking, plus eta rules for functions and paths. Restricted judgments
//! are checked by applying the most general unifier of the active
//! constraints; unsatisfiable restrictions hold vacuously.

use crate::eval::{whnf, Flags};
use crate::interp::*;
use crate::syntax::*;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckErrorKind {
    Scope,
    Arity,
    Validity,
    LabelOrder,
    Conversion,
    Unsupported,
}

impl fmt::Display for CheckErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckErrorKind::Scope => "scope",
            CheckErrorKind::Arity => "arity",
            CheckErrorKind::Validity => "validity",
            CheckErrorKind::LabelOrder => "label-order",
            CheckErrorKind::Conversion => "conversion",
            CheckErrorKind::Unsupported => "unsupported",
        };
        f.write_str(s)
    }
}

/// A rejection: the failed rule, a location path, and a message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckError {
    pub kind: CheckErrorKind,
    pub rule: &'static str,
    pub path: String,
    pub message: String,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} error [{}] at {}: {}",
            self.kind, self.rule, self.path, self.message
        )
    }
}

fn err<T>(
    kind: CheckErrorKind,
    rule: &'static str,
    path: &str,
    msg: impl Into<String>,
) -> Result<T, CheckError> {
    Err(CheckError {
        kind,
        rule,
        path: path.to_string(),
        message: msg.into(),
    })
}

/// The checking context: dimension scope, term telescope (entry `i` is the
/// type of the `i`-th binder, in the context of its prefix), flags, and the
/// conversion step budget.
#[derive(Debug, Clone)]
pub struct CheckCtx {
    pub flags: Flags,
    pub conv_fuel: u64,
    dims: Vec<DimVar>,
    tele: Vec<Option<Term>>,
}

impl CheckCtx {
    pub fn new(flags: Flags) -> Self {
        CheckCtx {
            flags,
            conv_fuel: 20_000,
            dims: Vec::new(),
            tele: Vec::new(),
        }
    }

    pub fn depth(&self) -> u32 {
        self.tele.len() as u32
    }

    pub fn bind(&self, ty: Term) -> CheckCtx {
        let mut c = self.clone();
        c.tele.push(Some(ty));
        c
    }

    /// Extend by a binder whose type is unknown; lookups of it fail, which
    /// keeps untyped conversion under binders depth-correct.
    pub fn bind_opaque(&self) -> CheckCtx {
        let mut c = self.clone();
        c.tele.push(None);
        c
    }

    pub fn bind_dim(&self, d: DimVar) -> CheckCtx {
        let mut c = self.clone();
        c.dims.push(d);
        c
    }

    pub fn bind_dims(&self, ds: &[DimVar]) -> CheckCtx {
        let mut c = self.clone();
        c.dims.extend_from_slice(ds);
        c
    }

    /// Type of `Var(i)`, weakened into the current context.
    pub fn lookup(&self, i: u32) -> Option<Term> {
        let n = self.tele.len() as u32;
        if i >= n {
            return None;
        }
        let pos = (n - 1 - i) as usize;
        self.tele[pos].as_ref().map(|ty| weaken(ty, i + 1))
    }

    pub fn dim_in_scope(&self, d: Dim) -> bool {
        match d {
            Dim::Zero | Dim::One => true,
            Dim::Var(x) => self.dims.contains(&x),
        }
    }

    /// Apply a dimension substitution to every type in the telescope.
    pub fn dim_subst(&self, sub: &DimSubst) -> CheckCtx {
        let mut c = self.clone();
        c.tele = c
            .tele
            .iter()
            .map(|t| t.as_ref().map(|ty| dim_subst(ty, sub)))
            .collect();
        c
    }

    /// Restrict by a constraint list: the context and substitution to check
    /// under, or `None` when the restriction is unsatisfiable (then the
    /// premise holds vacuously).
    pub fn restrict(&self, cons: &[Constraint]) -> Option<(CheckCtx, DimSubst)> {
        let sub = ctx_mgu(cons)?;
        Some((self.dim_subst(&sub), sub))
    }
}

// ---------------------------------------------------------------------------
// Conversion
// ---------------------------------------------------------------------------

fn conv_list(ctx: &CheckCtx, fuel: &mut u64, xs: &[Term], ys: &[Term]) -> bool {
    xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| conv_wh(ctx, fuel, x, y))
}

fn conv_tube(ctx: &CheckCtx, fuel: &mut u64, xs: &[Tube], ys: &[Tube]) -> bool {
    xs.len() == ys.len()
        && xs.iter().zip(ys).all(|(x, y)| {
            if x.cons != y.cons {
                return false;
            }
            let w = fresh_dim();
            let bx = dim_subst(&x.body, &DimSubst::single(x.dim, Dim::Var(w)));
            let by = dim_subst(&y.body, &DimSubst::single(y.dim, Dim::Var(w)));
            conv_wh(ctx, fuel, &bx, &by)
        })
}

/// Collapse a stuck path application at a constant endpoint to the
/// endpoint declared by the path's type, when the head's type is visible
/// in the context.
fn endpoint_collapse(ctx: &CheckCtx, fuel: &mut u64, t: Term) -> Term {
    let mut cur = t;
    for _ in 0..16 {
        let (q, d) = match &cur {
            Term::PApp(q, d @ (Dim::Zero | Dim::One)) => ((**q).clone(), *d),
            _ => break,
        };
        let Ok(qty) = ctx.infer_term(&q) else { break };
        match whnf(&qty, &ctx.flags, fuel) {
            Term::PathTy { lhs, rhs, .. } => {
                let end = if d == Dim::Zero { lhs } else { rhs };
                cur = whnf(&end, &ctx.flags, fuel);
            }
            _ => break,
        }
    }
    cur
}

/// Untyped weak-head comparison with eta for functions and paths, and the
/// endpoint rule for stuck path applications.
fn conv_wh(ctx: &CheckCtx, fuel: &mut u64, a: &Term, b: &Term) -> bool {
    if *fuel == 0 {
        return false;
    }
    let a = whnf(a, &ctx.flags, fuel);
    let b = whnf(b, &ctx.flags, fuel);
    if alpha_eq(&a, &b) {
        return true;
    }
    let a = endpoint_collapse(ctx, fuel, a);
    let b = endpoint_collapse(ctx, fuel, b);
    if alpha_eq(&a, &b) {
        return true;
    }
    use Term::*;
    match (&a, &b) {
        (Lam(x), Lam(y)) => conv_wh(&ctx.bind_opaque(), fuel, x, y),
        (Lam(x), g) => conv_wh(
            &ctx.bind_opaque(),
            fuel,
            x,
            &Term::app(weaken(g, 1), Term::var(0)),
        ),
        (g, Lam(y)) => conv_wh(
            &ctx.bind_opaque(),
            fuel,
            &Term::app(weaken(g, 1), Term::var(0)),
            y,
        ),
        (PLam { dim: d1, body: b1 }, PLam { dim: d2, body: b2 }) => {
            let w = fresh_dim();
            conv_wh(
                &ctx.bind_dim(w),
                fuel,
                &dim_subst(b1, &DimSubst::single(*d1, Dim::Var(w))),
                &dim_subst(b2, &DimSubst::single(*d2, Dim::Var(w))),
            )
        }
        (PLam { dim, body }, q) => {
            let w = fresh_dim();
            conv_wh(
                &ctx.bind_dim(w),
                fuel,
                &dim_subst(body, &DimSubst::single(*dim, Dim::Var(w))),
                &Term::papp(q.clone(), Dim::Var(w)),
            )
        }
        (q, PLam { dim, body }) => {
            let w = fresh_dim();
            conv_wh(
                &ctx.bind_dim(w),
                fuel,
                &Term::papp(q.clone(), Dim::Var(w)),
                &dim_subst(body, &DimSubst::single(*dim, Dim::Var(w))),
            )
        }
        (Var(i), Var(j)) => i == j,
        (App(f1, a1), App(f2, a2)) => conv_wh(ctx, fuel, f1, f2) && conv_wh(ctx, fuel, a1, a2),
        (PApp(p1, d1), PApp(p2, d2)) => d1 == d2 && conv_wh(ctx, fuel, p1, p2),
        (Pi(d1, c1), Pi(d2, c2)) => {
            conv_wh(ctx, fuel, d1, d2) && conv_wh(&ctx.bind_opaque(), fuel, c1, c2)
        }
        (
            PathTy {
                dim: x1,
                ty: t1,
                lhs: l1,
                rhs: r1,
            },
            PathTy {
                dim: x2,
                ty: t2,
                lhs: l2,
                rhs: r2,
            },
        ) => {
            let w = fresh_dim();
            conv_wh(
                ctx,
                fuel,
                &dim_subst(t1, &DimSubst::single(*x1, Dim::Var(w))),
                &dim_subst(t2, &DimSubst::single(*x2, Dim::Var(w))),
            ) && conv_wh(ctx, fuel, l1, l2)
                && conv_wh(ctx, fuel, r1, r2)
        }
        (
            Ind {
                tele: e1,
                schema: s1,
                indices: i1,
            },
            Ind {
                tele: e2,
                schema: s2,
                indices: i2,
            },
        ) => alpha_eq_tele(e1, e2) && alpha_eq_schema(s1, s2) && conv_list(ctx, fuel, i1, i2),
        (
            Intro {
                schema: s1,
                label: l1,
                dims: d1,
                params: p1,
                args: a1,
            },
            Intro {
                schema: s2,
                label: l2,
                dims: d2,
                params: p2,
                args: a2,
            },
        ) => {
            l1 == l2
                && d1 == d2
                && alpha_eq_schema(s1, s2)
                && conv_list(ctx, fuel, p1, p2)
                && conv_list(ctx, fuel, a1, a2)
        }
        (
            Fhcom {
                r: r1,
                r2: s1,
                cap: c1,
                tube: t1,
            },
            Fhcom {
                r: r2d,
                r2: s2,
                cap: c2,
                tube: t2,
            },
        ) => r1 == r2d && s1 == s2 && conv_wh(ctx, fuel, c1, c2) && conv_tube(ctx, fuel, t1, t2),
        (
            Fcoe {
                dim: z1,
                line: l1,
                r: r1,
                r2: s1,
                body: b1,
            },
            Fcoe {
                dim: z2,
                line: l2,
                r: r2d,
                r2: s2,
                body: b2,
            },
        ) => {
            if r1 != r2d || s1 != s2 || l1.len() != l2.len() {
                return false;
            }
            let w = fresh_dim();
            let lw1: Vec<Term> = l1
                .iter()
                .map(|t| dim_subst(t, &DimSubst::single(*z1, Dim::Var(w))))
                .collect();
            let lw2: Vec<Term> = l2
                .iter()
                .map(|t| dim_subst(t, &DimSubst::single(*z2, Dim::Var(w))))
                .collect();
            conv_list(ctx, fuel, &lw1, &lw2) && conv_wh(ctx, fuel, b1, b2)
        }
        // Remaining stuck forms compare alpha-structurally; incompleteness
        // here is by design.
        _ => false,
    }
}

impl CheckCtx {
    /// Algorithmic conversion. Type-directed eta at function and path
    /// types, untyped weak-head comparison elsewhere. Sound and documented
    /// incomplete; returns false on fuel exhaustion.
    pub fn convert(&self, a: &Term, b: &Term, at: Option<&Term>) -> bool {
        let mut fuel = self.conv_fuel;
        self.conv(&mut fuel, a, b, at)
    }

    fn conv(&self, fuel: &mut u64, a: &Term, b: &Term, at: Option<&Term>) -> bool {
        if let Some(ty) = at {
            let ty = whnf(ty, &self.flags, fuel);
            match &ty {
                Term::Pi(dom, cod) => {
                    let ctx2 = self.bind((**dom).clone());
                    return ctx2.conv(
                        fuel,
                        &Term::app(weaken(a, 1), Term::var(0)),
                        &Term::app(weaken(b, 1), Term::var(0)),
                        Some(cod),
                    );
                }
                Term::PathTy { dim, ty: inner, .. } => {
                    let w = fresh_dim();
                    let ctx2 = self.bind_dim(w);
                    let at2 = dim_subst(inner, &DimSubst::single(*dim, Dim::Var(w)));
                    return ctx2.conv(
                        fuel,
                        &Term::papp(a.clone(), Dim::Var(w)),
                        &Term::papp(b.clone(), Dim::Var(w)),
                        Some(&at2),
                    );
                }
                _ => {}
            }
        }
        conv_wh(self, fuel, a, b)
    }
}

// ---------------------------------------------------------------------------
// Types and terms
// ---------------------------------------------------------------------------

impl CheckCtx {
    /// A type is built from the supported Kan formers: dependent functions,
    /// inductive types, and path types.
    pub fn check_type(&self, t: &Term) -> Result<(), CheckError> {
        let mut fuel = self.conv_fuel;
        let t = whnf(t, &self.flags, &mut fuel);
        match &t {
            Term::Pi(dom, cod) => {
                self.check_type(dom)?;
                self.bind((**dom).clone()).check_type(cod)
            }
            Term::Ind {
                tele,
                schema,
                indices,
            } => {
                let inner = self.check_telescope(tele)?;
                inner.check_constrs(tele, schema)?;
                self.check_indices(tele, indices, "ind")
            }
            Term::PathTy { dim, ty, lhs, rhs } => {
                let ctx2 = self.bind_dim(*dim);
                ctx2.check_type(ty)?;
                let at0 = dim_subst(ty, &DimSubst::single(*dim, Dim::Zero));
                let at1 = dim_subst(ty, &DimSubst::single(*dim, Dim::One));
                self.check_term(lhs, &at0)?;
                self.check_term(rhs, &at1)
            }
            _ => err(
                CheckErrorKind::Unsupported,
                "type-formation",
                "type",
                "not a supported type former",
            ),
        }
    }

    /// Check a telescope entry by entry, returning the extended context.
    pub fn check_telescope(&self, tele: &Telescope) -> Result<CheckCtx, CheckError> {
        let mut ctx = self.clone();
        for ty in &tele.0 {
            ctx.check_type(ty)?;
            ctx = ctx.bind(ty.clone());
        }
        Ok(ctx)
    }

    /// Check an index list against an index telescope.
    fn check_indices(
        &self,
        tele: &Telescope,
        indices: &[Term],
        path: &str,
    ) -> Result<(), CheckError> {
        if indices.len() != tele.len() {
            return err(
                CheckErrorKind::Arity,
                "index-instantiation",
                path,
                format!("expected {} indices, got {}", tele.len(), indices.len()),
            );
        }
        for (j, ix) in indices.iter().enumerate() {
            let ty = term_subst(&tele.0[j], &indices[..j]);
            self.check_term(ix, &ty)?;
        }
        Ok(())
    }

    fn check_dims(&self, dims: &[Dim], rule: &'static str, path: &str) -> Result<(), CheckError> {
        for d in dims {
            if !self.dim_in_scope(*d) {
                return err(
                    CheckErrorKind::Scope,
                    rule,
                    path,
                    format!("dimension {} not in scope", d),
                );
            }
        }
        Ok(())
    }

    /// Tube side conditions shared by the composition formers: validity,
    /// face typing at the per-position type, pairwise agreement, and
    /// agreement with the cap at the source end.
    fn check_tube(
        &self,
        tube: &[Tube],
        r: Dim,
        cap: &Term,
        cap_ty: &Term,
        face_ty: &dyn Fn(DimVar) -> Term,
        rule: &'static str,
        path: &str,
    ) -> Result<(), CheckError> {
        let cons: Vec<Constraint> = tube.iter().map(|t| t.cons).collect();
        if !ctx_valid(&cons) {
            return err(
                CheckErrorKind::Validity,
                rule,
                path,
                "tube constraint context is not valid",
            );
        }
        for t in tube {
            if !self.dim_in_scope(t.cons.lhs) || !self.dim_in_scope(t.cons.rhs) {
                return err(
                    CheckErrorKind::Scope,
                    rule,
                    path,
                    "tube constraint mentions an out-of-scope dimension",
                );
            }
        }
        for (i, ti) in tube.iter().enumerate() {
            if let Some((ctx_i, sub_i)) = self.restrict(&[ti.cons]) {
                let ctx_iy = ctx_i.bind_dim(ti.dim);
                let ty = dim_subst(&face_ty(ti.dim), &sub_i);
                ctx_iy.check_term(&dim_subst(&ti.body, &sub_i), &ty)?;
                let at_r = dim_subst(&ti.body, &DimSubst::single(ti.dim, r));
                let cap_ty_i = dim_subst(cap_ty, &sub_i);
                if !ctx_i.convert(
                    &dim_subst(&at_r, &sub_i),
                    &dim_subst(cap, &sub_i),
                    Some(&cap_ty_i),
                ) {
                    return err(
                        CheckErrorKind::Conversion,
                        rule,
                        path,
                        format!("tube face {} disagrees with the cap", i),
                    );
                }
            }
            for (j, tj) in tube.iter().enumerate().skip(i + 1) {
                if let Some((ctx_ij, sub_ij)) = self.restrict(&[ti.cons, tj.cons]) {
                    let w = fresh_dim();
                    let bi = dim_subst(&ti.body, &DimSubst::single(ti.dim, Dim::Var(w)));
                    let bj = dim_subst(&tj.body, &DimSubst::single(tj.dim, Dim::Var(w)));
                    let ctx_w = ctx_ij.bind_dim(w);
                    let ty = dim_subst(&face_ty(w), &sub_ij);
                    if !ctx_w.convert(&dim_subst(&bi, &sub_ij), &dim_subst(&bj, &sub_ij), Some(&ty))
                    {
                        return err(
                            CheckErrorKind::Conversion,
                            rule,
                            path,
                            format!("tube faces {} and {} disagree", i, j),
                        );
                    }
                }
            }
        }
        Ok(())
    }

    /// Composition and coercion at path types are extension rules: reject
    /// them when the extension is off, so accepted closed terms never get
    /// stuck.
    fn require_paths_for(&self, ty: &Term, rule: &'static str) -> Result<(), CheckError> {
        if self.flags.ext_paths {
            return Ok(());
        }
        let mut fuel = self.conv_fuel;
        if matches!(whnf(ty, &self.flags, &mut fuel), Term::PathTy { .. }) {
            return err(
                CheckErrorKind::Unsupported,
                rule,
                "term",
                "Kan operations at path types require the paths extension",
            );
        }
        Ok(())
    }

    /// Infer the type of a term; introduction forms are check-only.
    pub fn infer_term(&self, t: &Term) -> Result<Term, CheckError> {
        match t {
            Term::Var(i) => self.lookup(*i).ok_or_else(|| CheckError {
                kind: CheckErrorKind::Scope,
                rule: "var",
                path: "term".into(),
                message: format!("unbound term variable {}", i),
            }),
            Term::App(f, a) => {
                let fty = self.infer_term(f)?;
                let mut fuel = self.conv_fuel;
                match whnf(&fty, &self.flags, &mut fuel) {
                    Term::Pi(dom, cod) => {
                        self.check_term(a, &dom)?;
                        Ok(term_subst1(&cod, a))
                    }
                    _ => err(
                        CheckErrorKind::Conversion,
                        "app",
                        "term",
                        "application head is not a function",
                    ),
                }
            }
            Term::PApp(p, d) => {
                if !self.dim_in_scope(*d) {
                    return err(
                        CheckErrorKind::Scope,
                        "papp",
                        "term",
                        format!("dimension {} not in scope", d),
                    );
                }
                let pty = self.infer_term(p)?;
                let mut fuel = self.conv_fuel;
                match whnf(&pty, &self.flags, &mut fuel) {
                    Term::PathTy { dim, ty, .. } => Ok(dim_subst(&ty, &DimSubst::single(dim, *d))),
                    _ => err(
                        CheckErrorKind::Conversion,
                        "papp",
                        "term",
                        "path application head is not a path",
                    ),
                }
            }
            Term::Coe {
                dim,
                line,
                r,
                r2,
                body,
            } => {
                self.check_dims(&[*r, *r2], "coe", "term")?;
                self.bind_dim(*dim).check_type(line)?;
                self.require_paths_for(line, "coe")?;
                let at_r = dim_subst(line, &DimSubst::single(*dim, *r));
                self.check_term(body, &at_r)?;
                Ok(dim_subst(line, &DimSubst::single(*dim, *r2)))
            }
            Term::Hcom { ty, r, r2, cap, tube } => {
                self.check_dims(&[*r, *r2], "hcom", "term")?;
                self.check_type(ty)?;
                self.require_paths_for(ty, "hcom")?;
                self.check_term(cap, ty)?;
                let ty_c = (**ty).clone();
                self.check_tube(tube, *r, cap, ty, &move |_| ty_c.clone(), "hcom", "term")?;
                Ok((**ty).clone())
            }
            Term::Com {
                dim,
                line,
                r,
                r2,
                cap,
                tube,
            } => {
                self.check_dims(&[*r, *r2], "com", "term")?;
                self.bind_dim(*dim).check_type(line)?;
                self.require_paths_for(line, "com")?;
                let at_r = dim_subst(line, &DimSubst::single(*dim, *r));
                self.check_term(cap, &at_r)?;
                let z = *dim;
                let line_c = (**line).clone();
                self.check_tube(
                    tube,
                    *r,
                    cap,
                    &at_r,
                    &move |y| dim_subst(&line_c, &DimSubst::single(z, Dim::Var(y))),
                    "com",
                    "term",
                )?;
                Ok(dim_subst(line, &DimSubst::single(*dim, *r2)))
            }
            Term::Fcoe {
                dim,
                line,
                r,
                r2,
                body,
            } => {
                self.check_dims(&[*r, *r2], "fcoe", "term")?;
                let bty = self.infer_term(body)?;
                let mut fuel = self.conv_fuel;
                match whnf(&bty, &self.flags, &mut fuel) {
                    Term::Ind {
                        tele,
                        schema,
                        indices,
                    } => {
                        let ctx_z = self.bind_dim(*dim);
                        ctx_z.check_indices(&tele, line, "fcoe")?;
                        let at_r: Vec<Term> = line
                            .iter()
                            .map(|t| dim_subst(t, &DimSubst::single(*dim, *r)))
                            .collect();
                        for (k, (a, b)) in at_r.iter().zip(&indices).enumerate() {
                            let ty = term_subst(&tele.0[k], &at_r[..k]);
                            if !self.convert(a, b, Some(&ty)) {
                                return err(
                                    CheckErrorKind::Conversion,
                                    "fcoe",
                                    "term",
                                    "source index of the line disagrees with the body",
                                );
                            }
                        }
                        let at_r2: Vec<Term> = line
                            .iter()
                            .map(|t| dim_subst(t, &DimSubst::single(*dim, *r2)))
                            .collect();
                        Ok(Term::Ind {
                            tele,
                            schema,
                            indices: at_r2,
                        })
                    }
                    _ => err(
                        CheckErrorKind::Conversion,
                        "fcoe",
                        "term",
                        "formal coercion of a non-inductive element",
                    ),
                }
            }
            Term::Tcoe {
                dim,
                tele,
                schema,
                r,
                r2,
                body,
            } => {
                self.check_dims(&[*r, *r2], "tcoe", "term")?;
                let ctx_z = self.bind_dim(*dim);
                let inner = ctx_z.check_telescope(tele)?;
                inner.check_constrs(tele, schema)?;
                let bty = self.infer_term(body)?;
                let mut fuel = self.conv_fuel;
                match whnf(&bty, &self.flags, &mut fuel) {
                    Term::Ind {
                        tele: t2,
                        schema: s2,
                        indices,
                    } => {
                        let sub_r = DimSubst::single(*dim, *r);
                        let tele_r = dsub_tele(tele, &sub_r);
                        let schema_r = dsub_schema(schema, &sub_r);
                        if !alpha_eq_tele(&tele_r, &t2) || !alpha_eq_schema(&schema_r, &s2) {
                            return err(
                                CheckErrorKind::Conversion,
                                "tcoe",
                                "term",
                                "body type disagrees with the source end of the line",
                            );
                        }
                        let sub_r2 = DimSubst::single(*dim, *r2);
                        Ok(Term::Ind {
                            tele: dsub_tele(tele, &sub_r2),
                            schema: dsub_schema(schema, &sub_r2),
                            indices: mcoe(*dim, tele, *r, *r2, &indices),
                        })
                    }
                    _ => err(
                        CheckErrorKind::Conversion,
                        "tcoe",
                        "term",
                        "total-space coercion of a non-inductive element",
                    ),
                }
            }
            Term::Elim {
                motive,
                indices,
                scrut,
                cases,
            } => {
                let sty = self.infer_term(scrut)?;
                let mut fuel = self.conv_fuel;
                match whnf(&sty, &self.flags, &mut fuel) {
                    Term::Ind {
                        tele,
                        schema,
                        indices: at,
                    } => {
                        self.check_indices(&tele, indices, "elim")?;
                        for (k, (a, b)) in indices.iter().zip(&at).enumerate() {
                            let ty = term_subst(&tele.0[k], &indices[..k]);
                            if !self.convert(a, b, Some(&ty)) {
                                return err(
                                    CheckErrorKind::Conversion,
                                    "elim",
                                    "term",
                                    "eliminator index annotation disagrees with the scrutinee",
                                );
                            }
                        }
                        let motive_m = Motive::new(tele.len(), (**motive).clone());
                        self.check_motive(&tele, &schema, &motive_m)?;
                        self.check_elim_list(&tele, &schema, &motive_m, cases)?;
                        Ok(motive_m.apply(indices, scrut))
                    }
                    _ => err(
                        CheckErrorKind::Conversion,
                        "elim",
                        "term",
                        "eliminating a non-inductive element",
                    ),
                }
            }
            Term::NatRec { scrut, zero, suc } => {
                if !self.flags.ext_natrec {
                    return err(
                        CheckErrorKind::Unsupported,
                        "natrec",
                        "term",
                        "natrec requires the natrec extension",
                    );
                }
                self.check_term(scrut, &crate::stdlib::nat_type())?;
                let ty = self.infer_term(zero)?;
                let ctx2 = self.bind(crate::stdlib::nat_type()).bind(weaken(&ty, 1));
                ctx2.check_term(suc, &weaken(&ty, 2))?;
                Ok(ty)
            }
            _ => err(
                CheckErrorKind::Unsupported,
                "infer",
                "term",
                "term form cannot be inferred; annotate it",
            ),
        }
    }

    /// Bidirectional checking against an expected type.
    pub fn check_term(&self, t: &Term, expected: &Term) -> Result<(), CheckError> {
        let mut fuel = self.conv_fuel;
        let expected = whnf(expected, &self.flags, &mut fuel);
        match (t, &expected) {
            (Term::Lam(body), Term::Pi(dom, cod)) => {
                self.bind((**dom).clone()).check_term(body, cod)
            }
            (Term::Lam(_), _) => err(
                CheckErrorKind::Conversion,
                "lam",
                "term",
                "lambda against a non-function type",
            ),
            (Term::PLam { dim, body }, Term::PathTy { dim: x, ty, lhs, rhs }) => {
                let w = fresh_dim();
                let body_w = dim_subst(body, &DimSubst::single(*dim, Dim::Var(w)));
                let ty_w = dim_subst(ty, &DimSubst::single(*x, Dim::Var(w)));
                self.bind_dim(w).check_term(&body_w, &ty_w)?;
                for (d, end, which) in [(Dim::Zero, lhs, "left"), (Dim::One, rhs, "right")] {
                    let at_e = dim_subst(body, &DimSubst::single(*dim, d));
                    let ty_e = dim_subst(ty, &DimSubst::single(*x, d));
                    if !self.convert(&at_e, end, Some(&ty_e)) {
                        return err(
                            CheckErrorKind::Conversion,
                            "plam",
                            "term",
                            format!("path {} endpoint mismatch", which),
                        );
                    }
                }
                Ok(())
            }
            (Term::PLam { .. }, _) => err(
                CheckErrorKind::Conversion,
                "plam",
                "term",
                "path lambda against a non-path type",
            ),
            (
                Term::Intro {
                    schema,
                    label,
                    dims,
                    params,
                    args,
                },
                Term::Ind {
                    tele,
                    schema: s2,
                    indices,
                },
            ) => {
                if !alpha_eq_schema(schema, s2) {
                    return err(
                        CheckErrorKind::Conversion,
                        "intro",
                        "term",
                        "constructor schema disagrees with the expected inductive type",
                    );
                }
                let ctor = match schema.get(label) {
                    Some(c) => c,
                    None => {
                        return err(
                            CheckErrorKind::LabelOrder,
                            "intro",
                            "term",
                            format!("unknown label `{}`", label),
                        )
                    }
                };
                if ctor.dims.len() != dims.len() {
                    return err(
                        CheckErrorKind::Arity,
                        "intro",
                        "term",
                        format!("`{}` takes {} dimensions", label, ctor.dims.len()),
                    );
                }
                self.check_dims(dims, "intro", "term")?;
                if ctor.params.len() != params.len() || ctor.args.len() != args.len() {
                    return err(
                        CheckErrorKind::Arity,
                        "intro",
                        "term",
                        format!("argument arity mismatch at `{}`", label),
                    );
                }
                for (j, p) in params.iter().enumerate() {
                    let ty = term_subst(&ctor.params.0[j], &params[..j]);
                    self.check_term(p, &ty)?;
                }
                let fam = self_family(tele, schema);
                for (j, a) in args.iter().enumerate() {
                    let b_inst = argty_term_subst(&ctor.args[j], params);
                    self.check_term(a, &tyatty(&b_inst, &fam))?;
                }
                let at: Vec<Term> = ctor
                    .indices
                    .iter()
                    .map(|ix| term_subst(ix, params))
                    .collect();
                for (k, (a, b)) in at.iter().zip(indices).enumerate() {
                    let ty = term_subst(&tele.0[k], &at[..k]);
                    if !self.convert(a, b, Some(&ty)) {
                        return err(
                            CheckErrorKind::Conversion,
                            "intro",
                            "term",
                            format!(
                                "index {} of `{}` disagrees with the expected type",
                                k, label
                            ),
                        );
                    }
                }
                Ok(())
            }
            (Term::Intro { .. }, _) => err(
                CheckErrorKind::Conversion,
                "intro",
                "term",
                "constructor against a non-inductive type",
            ),
            (Term::Fhcom { r, r2, cap, tube }, Term::Ind { .. }) => {
                self.check_dims(&[*r, *r2], "fhcom", "term")?;
                self.check_term(cap, &expected)?;
                let exp = expected.clone();
                self.check_tube(tube, *r, cap, &expected, &move |_| exp.clone(), "fhcom", "term")
            }
            (Term::Fhcom { .. }, _) => err(
                CheckErrorKind::Conversion,
                "fhcom",
                "term",
                "formal composition against a non-inductive type",
            ),
            (
                Term::Fcom {
                    dim,
                    line,
                    r,
                    r2,
                    cap,
                    tube,
                },
                Term::Ind {
                    tele,
                    schema,
                    indices,
                },
            ) => {
                self.check_dims(&[*r, *r2], "fcom", "term")?;
                let ctx_z = self.bind_dim(*dim);
                ctx_z.check_indices(tele, line, "fcom")?;
                let at = |d: Dim| -> Vec<Term> {
                    line.iter()
                        .map(|t| dim_subst(t, &DimSubst::single(*dim, d)))
                        .collect()
                };
                let tele_c = tele.clone();
                let schema_c = schema.clone();
                let mk_ind = move |ix: Vec<Term>| Term::Ind {
                    tele: tele_c.clone(),
                    schema: schema_c.clone(),
                    indices: ix,
                };
                let cap_ty = mk_ind(at(*r));
                self.check_term(cap, &cap_ty)?;
                let at_target = at(*r2);
                for (k, (a, b)) in at_target.iter().zip(indices).enumerate() {
                    let ty = term_subst(&tele.0[k], &at_target[..k]);
                    if !self.convert(a, b, Some(&ty)) {
                        return err(
                            CheckErrorKind::Conversion,
                            "fcom",
                            "term",
                            "target index of the line disagrees with the expected type",
                        );
                    }
                }
                self.check_tube(
                    tube,
                    *r,
                    cap,
                    &cap_ty,
                    &move |y| mk_ind(at(Dim::Var(y))),
                    "fcom",
                    "term",
                )
            }
            (Term::Fcom { .. }, _) => err(
                CheckErrorKind::Conversion,
                "fcom",
                "term",
                "formal heterogeneous composition against a non-inductive type",
            ),
            (Term::NatRec { scrut, zero, suc }, _) => {
                if !self.flags.ext_natrec {
                    return err(
                        CheckErrorKind::Unsupported,
                        "natrec",
                        "term",
                        "natrec requires the natrec extension",
                    );
                }
                self.check_term(scrut, &crate::stdlib::nat_type())?;
                self.check_term(zero, &expected)?;
                let ctx2 = self
                    .bind(crate::stdlib::nat_type())
                    .bind(weaken(&expected, 1));
                ctx2.check_term(suc, &weaken(&expected, 2))
            }
            (Term::Pi(_, _) | Term::PathTy { .. } | Term::Ind { .. }, _) => err(
                CheckErrorKind::Unsupported,
                "check",
                "term",
                "a type former cannot be checked as a term (no universes)",
            ),
            _ => {
                match self.infer_term(t) {
                    Ok(got) => {
                        if self.convert(&got, &expected, None) {
                            Ok(())
                        } else {
                            err(
                                CheckErrorKind::Conversion,
                                "check",
                                "term",
                                "inferred type does not match the expected type",
                            )
                        }
                    }
                    // Un-inferable redexes (a lambda under application, for
                    // instance) are reduced to weak head normal form and
                    // re-checked.
                    Err(e) if e.kind == CheckErrorKind::Unsupported => {
                        let mut fuel = self.conv_fuel;
                        let t2 = whnf(t, &self.flags, &mut fuel);
                        if alpha_eq(&t2, t) {
                            Err(e)
                        } else {
                            self.check_term(&t2, &expected)
                        }
                    }
                    Err(e) => Err(e),
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Schemas
// ---------------------------------------------------------------------------

/// The boundary-checking environment: index telescope, visible schema
/// prefix, and argument context, all relative to the same term context as
/// the `CheckCtx` they travel with.
#[derive(Debug, Clone)]
pub struct BoundaryEnv {
    pub tele: Telescope,
    pub schema: ConstrList,
    pub theta: ArgCtx,
}

impl BoundaryEnv {
    /// Weaken under one fresh term binder.
    fn weaken(&self) -> BoundaryEnv {
        BoundaryEnv {
            tele: Telescope(
                self.tele
                    .0
                    .iter()
                    .enumerate()
                    .map(|(j, t)| shift_from(t, 1, j as u32))
                    .collect(),
            ),
            schema: shift_schema_by(&self.schema, 1),
            theta: self.theta.iter().map(|a| shift_argty_by(a, 1)).collect(),
        }
    }

    fn dim_subst(&self, sub: &DimSubst) -> BoundaryEnv {
        BoundaryEnv {
            tele: dsub_tele(&self.tele, sub),
            schema: dsub_schema(&self.schema, sub),
            theta: self.theta.iter().map(|a| dsub_argty(a, sub)).collect(),
        }
    }
}

fn shift_argty_by(a: &ArgType, by: u32) -> ArgType {
    shift_argty_cut(a, by, 0)
}

fn shift_argty_cut(a: &ArgType, by: u32, cut: u32) -> ArgType {
    match a {
        ArgType::SelfAt(ix) => ArgType::SelfAt(ix.iter().map(|t| shift_from(t, by, cut)).collect()),
        ArgType::ArgPi(d, c) => {
            ArgType::arg_pi(shift_from(d, by, cut), shift_argty_cut(c, by, cut + 1))
        }
    }
}

impl CheckCtx {
    /// Check a whole constructor list against a previously checked index
    /// telescope. Labels must be distinct and each constructor may refer
    /// only to the prefix before it.
    pub fn check_constrs(&self, tele: &Telescope, schema: &ConstrList) -> Result<(), CheckError> {
        for (i, (label, c)) in schema.0.iter().enumerate() {
            if schema.0[..i].iter().any(|(l, _)| l == label) {
                return err(
                    CheckErrorKind::LabelOrder,
                    "constr-list",
                    label,
                    "duplicate label",
                );
            }
            let prefix = ConstrList(schema.0[..i].to_vec());
            self.check_constructor(tele, &prefix, label, c)?;
        }
        Ok(())
    }

    /// Check one constructor against the prefix of earlier constructors.
    pub fn check_constructor(
        &self,
        tele: &Telescope,
        prefix: &ConstrList,
        label: &str,
        c: &Constructor,
    ) -> Result<(), CheckError> {
        // The dimension parameters scope over the boundary system only.
        let mut banned = std::collections::HashSet::new();
        banned.extend(c.dims.iter().copied());
        if c.dims.len() != banned.len() {
            return err(
                CheckErrorKind::Scope,
                "constructor",
                label,
                "duplicate dimension parameter",
            );
        }
        for ty in &c.params.0 {
            if free_dims(ty).iter().any(|d| banned.contains(d)) {
                return err(
                    CheckErrorKind::Scope,
                    "constructor",
                    label,
                    "parameter telescope mentions a dimension parameter",
                );
            }
        }
        for ix in &c.indices {
            if free_dims(ix).iter().any(|d| banned.contains(d)) {
                return err(
                    CheckErrorKind::Scope,
                    "constructor",
                    label,
                    "index terms mention a dimension parameter",
                );
            }
        }
        // (a) The parameter telescope is a Kan telescope.
        let ctx_g = self.check_telescope(&c.params)?;
        // (b) The indices inhabit the index telescope.
        let tele_g = Telescope(
            tele.0
                .iter()
                .enumerate()
                .map(|(j, t)| shift_from(t, c.params.len() as u32, j as u32))
                .collect(),
        );
        ctx_g.check_indices(&tele_g, &c.indices, label)?;
        // (c) The argument context is well-formed.
        let schema_g = shift_schema_by(prefix, c.params.len() as u32);
        for a in &c.args {
            if arg_free_dims(a).iter().any(|d| banned.contains(d)) {
                return err(
                    CheckErrorKind::Scope,
                    "constructor",
                    label,
                    "argument context mentions a dimension parameter",
                );
            }
            ctx_g.check_arg_type(&tele_g, a, label)?;
        }
        // (d) Boundary constraints range over the dimension parameters and
        // form an empty or valid system.
        let cons: Vec<Constraint> = c.boundary.iter().map(|(k, _)| *k).collect();
        for k in &cons {
            for d in [k.lhs, k.rhs] {
                if let Dim::Var(x) = d {
                    if !banned.contains(&x) {
                        return err(
                            CheckErrorKind::Validity,
                            "constructor",
                            label,
                            "boundary constraint mentions a foreign dimension",
                        );
                    }
                }
            }
        }
        if !cons.is_empty() && !ctx_valid(&cons) {
            return err(
                CheckErrorKind::Validity,
                "constructor",
                label,
                "boundary system is neither empty nor valid",
            );
        }
        // (e) Pairwise coherent boundary terms, checked under the most
        // general unifier of each pair of constraints.
        let benv = BoundaryEnv {
            tele: tele_g.clone(),
            schema: schema_g.clone(),
            theta: c.args.clone(),
        };
        let expected = ArgType::SelfAt(c.indices.clone());
        let ctx_x = ctx_g.bind_dims(&c.dims);
        for (k, (ck, mk)) in c.boundary.iter().enumerate() {
            for (l, (cl, ml)) in c.boundary.iter().enumerate() {
                let Some((ctx_kl, sub)) = ctx_x.restrict(&[*ck, *cl]) else {
                    continue;
                };
                let benv_kl = benv.dim_subst(&sub);
                let exp_kl = dsub_argty(&expected, &sub);
                let mk_s = dsub_bterm(mk, &sub);
                ctx_kl
                    .check_boundary_term(&benv_kl, &mk_s, &exp_kl)
                    .map_err(|e| CheckError {
                        path: format!("{}:boundary[{}]", label, k),
                        ..e
                    })?;
                if k != l {
                    let ml_s = dsub_bterm(ml, &sub);
                    if !ctx_kl.boundary_convert(&benv_kl, &mk_s, &ml_s, &exp_kl) {
                        return err(
                            CheckErrorKind::Conversion,
                            "constructor",
                            &format!("{}:boundary[{},{}]", label, k, l),
                            "boundary faces disagree on their overlap",
                        );
                    }
                }
            }
        }
        Ok(())
    }

    fn check_arg_type(&self, tele: &Telescope, a: &ArgType, path: &str) -> Result<(), CheckError> {
        match a {
            ArgType::SelfAt(ix) => self.check_indices(tele, ix, path),
            ArgType::ArgPi(dom, cod) => {
                self.check_type(dom)?;
                let tele2 = Telescope(
                    tele.0
                        .iter()
                        .enumerate()
                        .map(|(j, t)| shift_from(t, 1, j as u32))
                        .collect(),
                );
                self.bind((**dom).clone()).check_arg_type(&tele2, cod, path)
            }
        }
    }

    /// Equality of boundary terms, decided through their interpretation as
    /// real terms over the interpreted argument context.
    fn boundary_convert(
        &self,
        benv: &BoundaryEnv,
        a: &BoundaryTerm,
        b: &BoundaryTerm,
        at: &ArgType,
    ) -> bool {
        let mut ctx = self.clone();
        let mut benv2 = benv.clone();
        let mut at2 = at.clone();
        let mut a2 = a.clone();
        let mut b2 = b.clone();
        let n = benv.theta.len();
        // Bind one variable per argument-context entry at its interpreted
        // type, and read the boundary variables as those binders.
        for j in 0..n {
            let fam_j = self_family(&benv2.tele, &benv2.schema);
            let ty = tyatty(&benv2.theta[j], &fam_j);
            ctx = ctx.bind(ty);
            benv2 = benv2.weaken();
            at2 = shift_argty_by(&at2, 1);
            a2 = shift_bterm_for_check(&a2, 1);
            b2 = shift_bterm_for_check(&b2, 1);
        }
        let ns: Vec<Term> = (0..n).map(|j| Term::var((n - 1 - j) as u32)).collect();
        let ta = insttm(&a2, &benv2.schema, &ns);
        let tb = insttm(&b2, &benv2.schema, &ns);
        let ty = tyatty(&at2, &self_family(&benv2.tele, &benv2.schema));
        ctx.convert(&ta, &tb, Some(&ty))
    }

    fn argty_convert(&self, benv: &BoundaryEnv, a: &ArgType, b: &ArgType) -> bool {
        match (a, b) {
            (ArgType::SelfAt(x), ArgType::SelfAt(y)) => {
                x.len() == y.len()
                    && x.iter().zip(y).enumerate().all(|(k, (s, t))| {
                        let ty = term_subst(&benv.tele.0[k], &x[..k]);
                        self.convert(s, t, Some(&ty))
                    })
            }
            (ArgType::ArgPi(d1, c1), ArgType::ArgPi(d2, c2)) => {
                self.convert(d1, d2, None)
                    && self
                        .bind((**d1).clone())
                        .argty_convert(&benv.weaken(), c1, c2)
            }
            _ => false,
        }
    }

    /// Bidirectional boundary-term typing: introduction forms check,
    /// variables and applications infer.
    pub fn check_boundary_term(
        &self,
        benv: &BoundaryEnv,
        m: &BoundaryTerm,
        expected: &ArgType,
    ) -> Result<(), CheckError> {
        match m {
            BoundaryTerm::BVar(j) => {
                let ty = benv.theta.get(*j as usize).ok_or_else(|| CheckError {
                    kind: CheckErrorKind::Scope,
                    rule: "hyp",
                    path: "boundary".into(),
                    message: format!("boundary variable {} out of range", j),
                })?;
                if self.argty_convert(benv, ty, expected) {
                    Ok(())
                } else {
                    err(
                        CheckErrorKind::Conversion,
                        "hyp",
                        "boundary",
                        "boundary variable type mismatch",
                    )
                }
            }
            BoundaryTerm::BIntro {
                label,
                dims,
                params,
                args,
            } => {
                let ctor = match benv.schema.get(label) {
                    Some(c) => c,
                    None => {
                        return err(
                            CheckErrorKind::LabelOrder,
                            "intro-form",
                            "boundary",
                            format!("label `{}` is unknown or not yet declared", label),
                        )
                    }
                };
                if ctor.dims.len() != dims.len()
                    || ctor.params.len() != params.len()
                    || ctor.args.len() != args.len()
                {
                    return err(
                        CheckErrorKind::Arity,
                        "intro-form",
                        "boundary",
                        format!("argument arity mismatch at `{}`", label),
                    );
                }
                self.check_dims(dims, "intro-form", "boundary")?;
                for (j, p) in params.iter().enumerate() {
                    let ty = term_subst(&ctor.params.0[j], &params[..j]);
                    self.check_term(p, &ty)?;
                }
                for (j, a) in args.iter().enumerate() {
                    let sub_arg = argty_term_subst(&ctor.args[j], params);
                    self.check_boundary_term(benv, a, &sub_arg)?;
                }
                match expected {
                    ArgType::SelfAt(want) => {
                        let at: Vec<Term> = ctor
                            .indices
                            .iter()
                            .map(|ix| term_subst(ix, params))
                            .collect();
                        for (k, (a, b)) in at.iter().zip(want).enumerate() {
                            let ty = term_subst(&benv.tele.0[k], &at[..k]);
                            if !self.convert(a, b, Some(&ty)) {
                                return err(
                                    CheckErrorKind::Conversion,
                                    "intro-form",
                                    "boundary",
                                    format!("index {} of `{}` disagrees", k, label),
                                );
                            }
                        }
                        Ok(())
                    }
                    _ => err(
                        CheckErrorKind::Conversion,
                        "intro-form",
                        "boundary",
                        "constructor used at a function argument type",
                    ),
                }
            }
            BoundaryTerm::BFhcom {
                indices,
                r,
                r2,
                cap,
                tube,
            } => {
                let want = match expected {
                    ArgType::SelfAt(want) => want,
                    _ => {
                        return err(
                            CheckErrorKind::Conversion,
                            "fhcom-form",
                            "boundary",
                            "formal composition used at a function argument type",
                        )
                    }
                };
                self.check_dims(&[*r, *r2], "fhcom-form", "boundary")?;
                self.check_indices(&benv.tele, indices, "boundary")?;
                for (k, (a, b)) in indices.iter().zip(want).enumerate() {
                    let ty = term_subst(&benv.tele.0[k], &indices[..k]);
                    if !self.convert(a, b, Some(&ty)) {
                        return err(
                            CheckErrorKind::Conversion,
                            "fhcom-form",
                            "boundary",
                            "composition index annotation disagrees with the expected index",
                        );
                    }
                }
                let cons: Vec<Constraint> = tube.iter().map(|t| t.cons).collect();
                if !ctx_valid(&cons) {
                    return err(
                        CheckErrorKind::Validity,
                        "fhcom-form",
                        "boundary",
                        "tube constraint context is not valid",
                    );
                }
                self.check_boundary_term(benv, cap, expected)?;
                for (i, ti) in tube.iter().enumerate() {
                    if let Some((ctx_i, sub)) = self.restrict(&[ti.cons]) {
                        let benv_i = benv.dim_subst(&sub);
                        let exp_i = dsub_argty(expected, &sub);
                        let ctx_iy = ctx_i.bind_dim(ti.dim);
                        ctx_iy.check_boundary_term(
                            &benv_i,
                            &dsub_bterm(&ti.body, &sub),
                            &exp_i,
                        )?;
                        let at_r = dsub_bterm(
                            &ti.body,
                            &DimSubst::single(ti.dim, *r).compose(&sub),
                        );
                        if !ctx_i.boundary_convert(
                            &benv_i,
                            &at_r,
                            &dsub_bterm(cap, &sub),
                            &exp_i,
                        ) {
                            return err(
                                CheckErrorKind::Conversion,
                                "fhcom-form",
                                "boundary",
                                format!("tube face {} disagrees with the cap", i),
                            );
                        }
                    }
                    for (j, tj) in tube.iter().enumerate().skip(i + 1) {
                        if let Some((ctx_ij, sub)) = self.restrict(&[ti.cons, tj.cons]) {
                            let benv_ij = benv.dim_subst(&sub);
                            let exp_ij = dsub_argty(expected, &sub);
                            let w = fresh_dim();
                            let bi = dsub_bterm(
                                &ti.body,
                                &DimSubst::single(ti.dim, Dim::Var(w)).compose(&sub),
                            );
                            let bj = dsub_bterm(
                                &tj.body,
                                &DimSubst::single(tj.dim, Dim::Var(w)).compose(&sub),
                            );
                            if !ctx_ij
                                .bind_dim(w)
                                .boundary_convert(&benv_ij, &bi, &bj, &exp_ij)
                            {
                                return err(
                                    CheckErrorKind::Conversion,
                                    "fhcom-form",
                                    "boundary",
                                    format!("tube faces {} and {} disagree", i, j),
                                );
                            }
                        }
                    }
                }
                Ok(())
            }
            BoundaryTerm::BFcoe {
                dim,
                line,
                r,
                r2,
                body,
            } => {
                let want = match expected {
                    ArgType::SelfAt(want) => want,
                    _ => {
                        return err(
                            CheckErrorKind::Conversion,
                            "fcoe-form",
                            "boundary",
                            "formal coercion used at a function argument type",
                        )
                    }
                };
                self.check_dims(&[*r, *r2], "fcoe-form", "boundary")?;
                let ctx_z = self.bind_dim(*dim);
                ctx_z.check_indices(&benv.tele, line, "boundary")?;
                let at_r: Vec<Term> = line
                    .iter()
                    .map(|t| dim_subst(t, &DimSubst::single(*dim, *r)))
                    .collect();
                self.check_boundary_term(benv, body, &ArgType::SelfAt(at_r))?;
                let at_r2: Vec<Term> = line
                    .iter()
                    .map(|t| dim_subst(t, &DimSubst::single(*dim, *r2)))
                    .collect();
                for (k, (a, b)) in at_r2.iter().zip(want).enumerate() {
                    let ty = term_subst(&benv.tele.0[k], &at_r2[..k]);
                    if !self.convert(a, b, Some(&ty)) {
                        return err(
                            CheckErrorKind::Conversion,
                            "fcoe-form",
                            "boundary",
                            "coercion target index disagrees with the expected index",
                        );
                    }
                }
                Ok(())
            }
            BoundaryTerm::BLam(body) => match expected {
                ArgType::ArgPi(dom, cod) => {
                    self.check_type(dom)?;
                    self.bind((**dom).clone())
                        .check_boundary_term(&benv.weaken(), body, cod)
                }
                _ => err(
                    CheckErrorKind::Conversion,
                    "lam-form",
                    "boundary",
                    "boundary lambda at a self argument type",
                ),
            },
            BoundaryTerm::BApp(f, arg) => {
                let fty = self.infer_boundary_term(benv, f)?;
                match fty {
                    ArgType::ArgPi(dom, cod) => {
                        self.check_term(arg, &dom)?;
                        let inst = argty_term_subst(&cod, std::slice::from_ref(&**arg));
                        if self.argty_convert(benv, &inst, expected) {
                            Ok(())
                        } else {
                            err(
                                CheckErrorKind::Conversion,
                                "app-form",
                                "boundary",
                                "application result type mismatch",
                            )
                        }
                    }
                    _ => err(
                        CheckErrorKind::Conversion,
                        "app-form",
                        "boundary",
                        "application head is not a function argument",
                    ),
                }
            }
            BoundaryTerm::BNatRec { scrut, zero, suc } => {
                if !self.flags.ext_natrec {
                    return err(
                        CheckErrorKind::Unsupported,
                        "natrec-form",
                        "boundary",
                        "boundary natrec requires the natrec extension",
                    );
                }
                self.check_term(scrut, &crate::stdlib::nat_type())?;
                self.check_boundary_term(benv, zero, expected)?;
                let mut benv2 = benv.weaken();
                benv2.theta.push(shift_argty_by(expected, 1));
                self.bind(crate::stdlib::nat_type()).check_boundary_term(
                    &benv2,
                    suc,
                    &shift_argty_by(expected, 1),
                )
            }
        }
    }

    fn infer_boundary_term(
        &self,
        benv: &BoundaryEnv,
        m: &BoundaryTerm,
    ) -> Result<ArgType, CheckError> {
        match m {
            BoundaryTerm::BVar(j) => {
                benv.theta
                    .get(*j as usize)
                    .cloned()
                    .ok_or_else(|| CheckError {
                        kind: CheckErrorKind::Scope,
                        rule: "hyp",
                        path: "boundary".into(),
                        message: format!("boundary variable {} out of range", j),
                    })
            }
            BoundaryTerm::BApp(f, arg) => {
                let fty = self.infer_boundary_term(benv, f)?;
                match fty {
                    ArgType::ArgPi(dom, cod) => {
                        self.check_term(arg, &dom)?;
                        Ok(argty_term_subst(&cod, std::slice::from_ref(&**arg)))
                    }
                    _ => err(
                        CheckErrorKind::Conversion,
                        "app-form",
                        "boundary",
                        "application head is not a function argument",
                    ),
                }
            }
            _ => err(
                CheckErrorKind::Unsupported,
                "infer-form",
                "boundary",
                "boundary term form cannot be inferred here",
            ),
        }
    }

    pub fn check_motive(
        &self,
        tele: &Telescope,
        schema: &ConstrList,
        motive: &Motive,
    ) -> Result<(), CheckError> {
        if motive.arity != tele.len() {
            return err(
                CheckErrorKind::Arity,
                "motive",
                "elim",
                "motive binder count disagrees with the index telescope",
            );
        }
        let ctx2 = self.check_telescope(tele)?;
        let n = tele.len() as u32;
        let fam = self_family(tele, schema);
        let self_ty = fam.apply(&(0..n).rev().map(Term::Var).collect::<Vec<_>>());
        let ctx3 = ctx2.bind(self_ty);
        ctx3.check_type(&motive.body)
    }

    /// Check an elimination list against a schema and motive: positions
    /// align with heights, binder counts match, each case body inhabits the
    /// motive at its constructor, and every boundary coherence premise holds
    /// under the constraint's unifier.
    pub fn check_elim_list(
        &self,
        tele: &Telescope,
        schema: &ConstrList,
        motive: &Motive,
        cases: &ElimList,
    ) -> Result<(), CheckError> {
        if cases.len() != schema.len() {
            return err(
                CheckErrorKind::Arity,
                "elim-list",
                "elim",
                format!(
                    "schema has {} constructors but {} cases given",
                    schema.len(),
                    cases.len()
                ),
            );
        }
        for (pos, ((clabel, case), (slabel, ctor))) in
            cases.0.iter().zip(schema.0.iter()).enumerate()
        {
            if clabel != slabel {
                return err(
                    CheckErrorKind::LabelOrder,
                    "elim-list",
                    clabel,
                    format!(
                        "case {} is `{}` but the schema lists `{}`",
                        pos, clabel, slabel
                    ),
                );
            }
            if case.dims.len() != ctor.dims.len()
                || case.n_params as usize != ctor.params.len()
                || case.n_args as usize != ctor.args.len()
            {
                return err(
                    CheckErrorKind::Arity,
                    "elim-list",
                    clabel,
                    "case binder counts disagree with the constructor",
                );
            }
            self.check_elim_case(tele, schema, motive, clabel, ctor, case, cases)?;
        }
        Ok(())
    }

    fn check_elim_case(
        &self,
        tele: &Telescope,
        schema: &ConstrList,
        motive: &Motive,
        label: &str,
        ctor: &Constructor,
        case: &ElimCase,
        all_cases: &ElimList,
    ) -> Result<(), CheckError> {
        let np = ctor.params.len() as u32;
        let na = ctor.args.len() as u32;
        let ctx_x = self.bind_dims(&case.dims);
        // Rename the constructor's bound dimensions to the case's binders.
        let pairs: Vec<(DimVar, Dim)> = ctor
            .dims
            .iter()
            .zip(&case.dims)
            .map(|(a, b)| (*a, Dim::Var(*b)))
            .collect();
        let rename = dsubst(&pairs);
        // Parameter binders.
        let mut ctx = ctx_x.clone();
        for ty in &ctor.params.0 {
            ctx = ctx.bind(ty.clone());
        }
        // Recursive-argument binders at their interpreted types.
        let fam = self_family(tele, schema).weaken(np);
        for (j, a) in ctor.args.iter().enumerate() {
            let base = tyatty(a, &fam);
            ctx = ctx.bind(shift_from(&base, j as u32, 0));
        }
        // Recursive-result binders at the dependent interpretations; the
        // matching argument variable sits at index na-1 when each result is
        // bound.
        for (j, a) in ctor.args.iter().enumerate() {
            let a_shift = shift_argty_cut(a, na + j as u32, 0);
            let mot = motive.weaken(np + na + j as u32);
            let ty = tyatty_dep(&a_shift, &mot, &Term::var(na - 1));
            ctx = ctx.bind(ty);
        }
        // The expected type of the body.
        let indices_up: Vec<Term> = ctor
            .indices
            .iter()
            .map(|t| shift_from(t, 2 * na, 0))
            .collect();
        let gamma_vars: Vec<Term> = (0..np).map(|k| Term::var(2 * na + np - 1 - k)).collect();
        let eta_vars: Vec<Term> = (0..na).map(|j| Term::var(na + na - 1 - j)).collect();
        let rho_vars: Vec<Term> = (0..na).map(|j| Term::var(na - 1 - j)).collect();
        let intro = Term::Intro {
            schema: shift_schema_by(schema, np + 2 * na),
            label: label.to_string(),
            dims: case.dims.iter().map(|d| Dim::Var(*d)).collect(),
            params: gamma_vars,
            args: eta_vars.clone(),
        };
        let body_ty = motive.weaken(np + 2 * na).apply(&indices_up, &intro);
        ctx.check_term(&case.body, &body_ty)
            .map_err(|e| CheckError {
                path: format!("case `{}`", label),
                ..e
            })?;
        // Boundary coherence: under each constraint's unifier the case body
        // must agree with the dependent interpretation of the boundary term.
        let schema_up = shift_schema_by(schema, np + 2 * na);
        let cases_up = {
            let t = Term::Elim {
                motive: Box::new(Term::var(0)),
                indices: vec![],
                scrut: Box::new(Term::var(0)),
                cases: all_cases.clone(),
            };
            match shift_from(&t, np + 2 * na, 0) {
                Term::Elim { cases, .. } => cases,
                _ => unreachable!(),
            }
        };
        let motive_up = motive.weaken(np + 2 * na);
        for (k, (cons, mk)) in ctor.boundary.iter().enumerate() {
            let cons_r = cons.subst(&rename);
            let Some((ctx_k, sub)) = ctx.restrict(&[cons_r]) else {
                continue;
            };
            let mk_up = {
                let shifted = shift_bterm_for_check(mk, 2 * na);
                dsub_bterm(&dsub_bterm(&shifted, &rename), &sub)
            };
            let rhs = insttm_dep(
                &mk_up,
                &dsub_schema(&schema_up, &sub),
                &dsub_cases(&cases_up, &sub),
                &motive_up.dim_subst(&sub),
                &eta_vars,
                &rho_vars,
            );
            let lhs = dim_subst(&case.body, &sub);
            let at = dim_subst(&body_ty, &sub);
            if !ctx_k.convert(&lhs, &rhs, Some(&at)) {
                return err(
                    CheckErrorKind::Conversion,
                    "elim-list",
                    &format!("case `{}`:boundary[{}]", label, k),
                    "case body disagrees with the boundary's dependent interpretation",
                );
            }
        }
        Ok(())
    }
}

fn arg_free_dims(a: &ArgType) -> std::collections::HashSet<DimVar> {
    match a {
        ArgType::SelfAt(ix) => {
            let mut s = std::collections::HashSet::new();
            for t in ix {
                s.extend(free_dims(t));
            }
            s
        }
        ArgType::ArgPi(d, c) => {
            let mut s = free_dims(d);
            s.extend(arg_free_dims(c));
            s
        }
    }
}

fn shift_bterm_for_check(m: &BoundaryTerm, by: u32) -> BoundaryTerm {
    shift_bterm(m, by, 0)
}

/// Check a whole declaration: telescope, schema, and the sample eliminator.
pub fn check_decl(flags: Flags, decl: &crate::stdlib::NamedDecl) -> Result<(), CheckError> {
    let ctx = CheckCtx::new(flags);
    let inner = ctx.check_telescope(&decl.tele)?;
    inner.check_constrs(&decl.tele, &decl.schema)?;
    ctx.check_motive(&decl.tele, &decl.schema, &decl.elim_motive)?;
    ctx.check_elim_list(&decl.tele, &decl.schema, &decl.elim_motive, &decl.elim_cases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stdlib::*;

    fn ctx() -> CheckCtx {
        CheckCtx::new(Flags::default())
    }

    #[test]
    fn numerals_check_at_nat() {
        let nat = nat_type();
        for n in 0..4 {
            ctx().check_term(&num(n), &nat).unwrap();
        }
    }

    #[test]
    fn intro_rejects_wrong_arity() {
        let nat = nat_type();
        let bad = Term::Intro {
            schema: nat_schema(),
            label: "suc".into(),
            dims: vec![],
            params: vec![],
            args: vec![],
        };
        let e = ctx().check_term(&bad, &nat).unwrap_err();
        assert_eq!(e.kind, CheckErrorKind::Arity);
    }

    #[test]
    fn circle_schema_checks() {
        let c = circle_decl();
        ctx().check_constrs(&c.tele, &c.schema).unwrap();
    }

    #[test]
    fn circle_with_half_boundary_is_invalid() {
        let mut schema = circle_schema();
        schema.0[1].1.boundary.pop();
        let e = ctx()
            .check_constrs(&Telescope::empty(), &schema)
            .unwrap_err();
        assert_eq!(e.kind, CheckErrorKind::Validity);
    }

    // A square with two distinct corner points: unlike the torus, whose
    // corners all collapse to base, this schema can exhibit genuine corner
    // disagreements.
    fn two_point_square() -> ConstrList {
        let x = fresh_dim();
        let x2 = fresh_dim();
        let y2 = fresh_dim();
        let p = || BoundaryTerm::BIntro {
            label: "p".into(),
            dims: vec![],
            params: vec![],
            args: vec![],
        };
        let q = || BoundaryTerm::BIntro {
            label: "q".into(),
            dims: vec![],
            params: vec![],
            args: vec![],
        };
        let seg = |d: Dim| BoundaryTerm::BIntro {
            label: "seg".into(),
            dims: vec![d],
            params: vec![],
            args: vec![],
        };
        ConstrList(vec![
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
                        (Constraint::new(Dim::Var(x), Dim::Zero), p()),
                        (Constraint::new(Dim::Var(x), Dim::One), q()),
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
                        (Constraint::new(Dim::Var(x2), Dim::Zero), seg(Dim::Var(y2))),
                        (Constraint::new(Dim::Var(y2), Dim::Zero), seg(Dim::Var(x2))),
                        (Constraint::new(Dim::Var(x2), Dim::One), q()),
                        (Constraint::new(Dim::Var(y2), Dim::One), q()),
                    ],
                },
            ),
        ])
    }

    #[test]
    fn two_point_square_checks() {
        ctx()
            .check_constrs(&Telescope::empty(), &two_point_square())
            .unwrap();
    }

    #[test]
    fn corner_mismatch_is_conversion_error() {
        let mut schema = two_point_square();
        // Redirect the x=0 face of the square to the far corner: at the
        // (x=0, y=0) overlap it now disagrees with seg(0) = p.
        let sq = &mut schema.0[3].1;
        sq.boundary[0].1 = BoundaryTerm::BIntro {
            label: "q".into(),
            dims: vec![],
            params: vec![],
            args: vec![],
        };
        let e = ctx()
            .check_constrs(&Telescope::empty(), &schema)
            .unwrap_err();
        assert_eq!(e.kind, CheckErrorKind::Conversion);
    }

    #[test]
    fn catalog_checks() {
        for decl in catalog() {
            check_decl(Flags::default(), &decl).unwrap_or_else(|e| panic!("{}: {}", decl.name, e));
        }
    }

    #[test]
    fn eliminator_endpoint_mutation_rejected() {
        let t = torus_decl();
        let mut cases = t.elim_cases.clone();
        // Break the lpa case: its endpoints no longer match the base case.
        cases.0[1].1.body = t.intro("lpb", vec![Dim::Var(cases.0[1].1.dims[0])], vec![], vec![]);
        let e = ctx()
            .check_elim_list(&t.tele, &t.schema, &t.elim_motive, &cases)
            .unwrap_err();
        assert_eq!(e.kind, CheckErrorKind::Conversion);
    }

    #[test]
    fn convert_sees_through_collapse() {
        let c = ctx();
        let x = fresh_dim();
        let y = fresh_dim();
        let collapsed = Term::Fhcom {
            r: Dim::Var(x),
            r2: Dim::Var(x),
            cap: Box::new(num(3)),
            tube: vec![Tube::new(
                Constraint::new(Dim::Var(x), Dim::Zero),
                y,
                num(3),
            )],
        };
        assert!(c.convert(&collapsed, &num(3), Some(&nat_type())));
    }

    #[test]
    fn eta_for_functions() {
        let c = ctx().bind(Term::pi(nat_type(), nat_type()));
        let f = Term::var(0);
        let eta = Term::lam(Term::app(Term::var(1), Term::var(0)));
        assert!(c.convert(&eta, &f, Some(&Term::pi(nat_type(), nat_type()))));
    }

    #[test]
    fn distinct_heads_do_not_convert() {
        let c = ctx();
        let circle = circle_decl();
        let base = circle.intro("base", vec![], vec![], vec![]);
        let lp = circle.intro("lp", vec![Dim::Var(fresh_dim())], vec![], vec![]);
        assert!(!c.convert(&base, &lp, Some(&circle.ind_type())));
    }
}
