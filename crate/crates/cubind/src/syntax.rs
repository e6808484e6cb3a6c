//! Core syntax: dimensions, constraints, the cubical term language, schemas,
//! elimination lists, and the two substitution operations.
//!
//! Term variables are de Bruijn indices (index 0 is the innermost binder);
//! dimension variables are globally fresh names paired with explicit
//! substitution maps. Multi-binders (telescopes, eliminator cases, motives)
//! bind left to right, so the last entry of a binder group is index 0 inside
//! its body.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

pub type Label = String;

// ---------------------------------------------------------------------------
// Dimensions
// ---------------------------------------------------------------------------

/// A dimension variable. Names are drawn from a global fresh supply and are
/// never reused, which keeps substitution and binder freshening cheap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVar(pub u32);

static NEXT_DIM: AtomicU32 = AtomicU32::new(0);

/// Issue a dimension variable distinct from all previously issued ones.
pub fn fresh_dim() -> DimVar {
    DimVar(NEXT_DIM.fetch_add(1, Ordering::Relaxed))
}

/// A dimension term: an interval endpoint or a variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dim {
    Zero,
    One,
    Var(DimVar),
}

impl Dim {
    pub fn is_const(self) -> bool {
        !matches!(self, Dim::Var(_))
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Zero => write!(f, "0"),
            Dim::One => write!(f, "1"),
            Dim::Var(DimVar(n)) => write!(f, "#{}", n),
        }
    }
}

// ---------------------------------------------------------------------------
// Constraints
// ---------------------------------------------------------------------------

/// An equation between two dimension terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constraint {
    pub lhs: Dim,
    pub rhs: Dim,
}

impl Constraint {
    pub fn new(lhs: Dim, rhs: Dim) -> Self {
        Constraint { lhs, rhs }
    }

    /// A constraint is satisfied exactly when both sides are the same
    /// dimension term.
    pub fn satisfied(self) -> bool {
        self.lhs == self.rhs
    }

    /// Orient the equation so a constant, if any, sits on the right.
    pub fn normalized(self) -> Self {
        match (self.lhs, self.rhs) {
            (l, Dim::Var(_)) if l.is_const() => Constraint::new(self.rhs, self.lhs),
            _ => self,
        }
    }

    pub fn subst(self, sub: &DimSubst) -> Self {
        Constraint::new(sub.dim(self.lhs), sub.dim(self.rhs))
    }
}

/// An ordered list of constraints. Order matters: tube and boundary systems
/// reduce at the first satisfied constraint.
pub type ConstraintCtx = Vec<Constraint>;

/// The conservative validity criterion: some constraint is satisfied
/// outright, or some dimension is pinned to both endpoints. Mirrored
/// `0 = r` / `1 = r` forms are accepted by orienting constants rightward
/// first.
pub fn ctx_valid(ctx: &[Constraint]) -> bool {
    if ctx.iter().any(|c| c.satisfied()) {
        return true;
    }
    let normed: Vec<Constraint> = ctx.iter().map(|c| c.normalized()).collect();
    normed.iter().any(|c| {
        c.rhs == Dim::Zero
            && normed
                .iter()
                .any(|d| d.lhs == c.lhs && d.rhs == Dim::One)
    })
}

/// Most general unifier of a single constraint, or `None` when the sides are
/// distinct constants. When both sides are variables the later-issued one is
/// substituted away.
pub fn constraint_mgu(c: Constraint) -> Option<DimSubst> {
    match (c.lhs, c.rhs) {
        (l, r) if l == r => Some(DimSubst::identity()),
        (Dim::Var(x), d) if d.is_const() => Some(DimSubst::single(x, d)),
        (d, Dim::Var(x)) if d.is_const() => Some(DimSubst::single(x, d)),
        (Dim::Var(x), Dim::Var(y)) => {
            if x.0 >= y.0 {
                Some(DimSubst::single(x, Dim::Var(y)))
            } else {
                Some(DimSubst::single(y, Dim::Var(x)))
            }
        }
        _ => None,
    }
}

/// Most general unifier of a whole constraint list, folding the accumulated
/// substitution through each remaining equation.
pub fn ctx_mgu(ctx: &[Constraint]) -> Option<DimSubst> {
    let mut acc = DimSubst::identity();
    for c in ctx {
        let step = constraint_mgu(c.subst(&acc))?;
        acc = acc.compose(&step);
    }
    Some(acc)
}

// ---------------------------------------------------------------------------
// Dimension substitutions
// ---------------------------------------------------------------------------

/// A finite map on dimension variables; variables outside the domain are
/// fixed. Composition `a.compose(&b)` applies `a` first, then `b`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DimSubst {
    map: HashMap<DimVar, Dim>,
}

impl DimSubst {
    pub fn identity() -> Self {
        DimSubst::default()
    }

    pub fn single(x: DimVar, d: Dim) -> Self {
        let mut map = HashMap::new();
        map.insert(x, d);
        DimSubst { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(x, d)| Dim::Var(*x) == *d)
    }

    pub fn insert(&mut self, x: DimVar, d: Dim) {
        self.map.insert(x, d);
    }

    pub fn dim(&self, d: Dim) -> Dim {
        match d {
            Dim::Var(x) => *self.map.get(&x).unwrap_or(&d),
            _ => d,
        }
    }

    pub fn compose(&self, then: &DimSubst) -> DimSubst {
        let mut map: HashMap<DimVar, Dim> =
            self.map.iter().map(|(x, d)| (*x, then.dim(*d))).collect();
        for (x, d) in &then.map {
            map.entry(*x).or_insert(*d);
        }
        DimSubst { map }
    }

    /// Refresh a binder when it would clash with this substitution, returning
    /// the binder to use and the substitution to push under it.
    fn under_binder(&self, z: DimVar) -> (DimVar, DimSubst) {
        let clashes = self.map.contains_key(&z)
            || self.map.values().any(|d| *d == Dim::Var(z));
        if clashes {
            let z2 = fresh_dim();
            let mut sub = self.clone();
            sub.insert(z, Dim::Var(z2));
            (z2, sub)
        } else {
            (z, self.clone())
        }
    }

    fn under_binders(&self, zs: &[DimVar]) -> (Vec<DimVar>, DimSubst) {
        let mut sub = self.clone();
        let mut out = Vec::with_capacity(zs.len());
        for &z in zs {
            let (z2, next) = sub.under_binder(z);
            out.push(z2);
            sub = next;
        }
        (out, sub)
    }
}

/// Build the substitution `<r1/x1, ..., rn/xn>`.
pub fn dsubst(pairs: &[(DimVar, Dim)]) -> DimSubst {
    let mut s = DimSubst::identity();
    for (x, d) in pairs {
        s.insert(*x, *d);
    }
    s
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

/// One face of a composition tube: a constraint, a bound tube dimension, and
/// the face term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tube {
    pub cons: Constraint,
    pub dim: DimVar,
    pub body: Term,
}

impl Tube {
    pub fn new(cons: Constraint, dim: DimVar, body: Term) -> Self {
        Tube { cons, dim, body }
    }
}

/// The cubical term language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(u32),
    Lam(Box<Term>),
    App(Box<Term>, Box<Term>),
    Pi(Box<Term>, Box<Term>),
    /// An inductive type: index telescope, schema, index instantiation.
    Ind {
        tele: Telescope,
        schema: ConstrList,
        indices: Vec<Term>,
    },
    /// A constructor element of an inductive type.
    Intro {
        schema: ConstrList,
        label: Label,
        dims: Vec<Dim>,
        params: Vec<Term>,
        args: Vec<Term>,
    },
    /// Formal homogeneous composition.
    Fhcom {
        r: Dim,
        r2: Dim,
        cap: Box<Term>,
        tube: Vec<Tube>,
    },
    /// Formal coercion along a line of indices.
    Fcoe {
        dim: DimVar,
        line: Vec<Term>,
        r: Dim,
        r2: Dim,
        body: Box<Term>,
    },
    /// Formal heterogeneous composition along a line of indices.
    Fcom {
        dim: DimVar,
        line: Vec<Term>,
        r: Dim,
        r2: Dim,
        cap: Box<Term>,
        tube: Vec<Tube>,
    },
    /// Homogeneous composition at an annotated type.
    Hcom {
        ty: Box<Term>,
        r: Dim,
        r2: Dim,
        cap: Box<Term>,
        tube: Vec<Tube>,
    },
    /// Coercion along a type line.
    Coe {
        dim: DimVar,
        line: Box<Term>,
        r: Dim,
        r2: Dim,
        body: Box<Term>,
    },
    /// Heterogeneous composition along a type line.
    Com {
        dim: DimVar,
        line: Box<Term>,
        r: Dim,
        r2: Dim,
        cap: Box<Term>,
        tube: Vec<Tube>,
    },
    /// Total-space coercion along a line of index telescopes and schemas.
    Tcoe {
        dim: DimVar,
        tele: Telescope,
        schema: ConstrList,
        r: Dim,
        r2: Dim,
        body: Box<Term>,
    },
    /// The dependent eliminator. The motive binds one term variable per
    /// index plus the scrutinee variable (innermost).
    Elim {
        motive: Box<Term>,
        indices: Vec<Term>,
        scrut: Box<Term>,
        cases: ElimList,
    },
    PathTy {
        dim: DimVar,
        ty: Box<Term>,
        lhs: Box<Term>,
        rhs: Box<Term>,
    },
    PLam {
        dim: DimVar,
        body: Box<Term>,
    },
    PApp(Box<Term>, Dim),
    /// Natural number recursion; available only with the natrec extension.
    /// The successor branch binds two term variables: the predecessor and
    /// the recursive result.
    NatRec {
        scrut: Box<Term>,
        zero: Box<Term>,
        suc: Box<Term>,
    },
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(i)
    }
    pub fn lam(body: Term) -> Term {
        Term::Lam(Box::new(body))
    }
    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }
    pub fn pi(dom: Term, cod: Term) -> Term {
        Term::Pi(Box::new(dom), Box::new(cod))
    }
    pub fn papp(p: Term, d: Dim) -> Term {
        Term::PApp(Box::new(p), d)
    }
    pub fn plam(dim: DimVar, body: Term) -> Term {
        Term::PLam {
            dim,
            body: Box::new(body),
        }
    }
}

/// A telescope of types; entry `j` may mention the `j` earlier binders.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Telescope(pub Vec<Term>);

impl Telescope {
    pub fn empty() -> Self {
        Telescope(Vec::new())
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The type of one recursive constructor argument: a self-reference at a
/// list of indices, or a function from a non-recursive type into one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArgType {
    SelfAt(Vec<Term>),
    ArgPi(Box<Term>, Box<ArgType>),
}

impl ArgType {
    pub fn self_at(indices: Vec<Term>) -> ArgType {
        ArgType::SelfAt(indices)
    }
    pub fn arg_pi(dom: Term, cod: ArgType) -> ArgType {
        ArgType::ArgPi(Box::new(dom), Box::new(cod))
    }
}

/// The recursive-argument context of a constructor. Boundary variables refer
/// to entries by position.
pub type ArgCtx = Vec<ArgType>;

/// One face of a boundary-level composition tube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BTube {
    pub cons: Constraint,
    pub dim: DimVar,
    pub body: BoundaryTerm,
}

/// The restricted specification language for constructor boundaries.
/// `BVar` refers into the ambient argument context by position; `BLam`
/// binds one ordinary term variable; the natrec successor branch binds one
/// term variable and appends one boundary variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryTerm {
    BVar(u32),
    BIntro {
        label: Label,
        dims: Vec<Dim>,
        params: Vec<Term>,
        args: Vec<BoundaryTerm>,
    },
    BFhcom {
        indices: Vec<Term>,
        r: Dim,
        r2: Dim,
        cap: Box<BoundaryTerm>,
        tube: Vec<BTube>,
    },
    BFcoe {
        dim: DimVar,
        line: Vec<Term>,
        r: Dim,
        r2: Dim,
        body: Box<BoundaryTerm>,
    },
    BLam(Box<BoundaryTerm>),
    BApp(Box<BoundaryTerm>, Box<Term>),
    BNatRec {
        scrut: Box<Term>,
        zero: Box<BoundaryTerm>,
        suc: Box<BoundaryTerm>,
    },
}

/// A single constructor: dimension parameters, non-recursive parameter
/// telescope, index terms, recursive-argument context, and boundary system.
/// The parameter telescope, indices, and argument context may not mention
/// the dimension parameters; boundary constraints mention only them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constructor {
    pub dims: Vec<DimVar>,
    pub params: Telescope,
    /// In context extended by the parameters.
    pub indices: Vec<Term>,
    /// In context extended by the parameters.
    pub args: ArgCtx,
    /// Terms in context extended by the parameters, over the argument
    /// context; constraints over the dimension parameters only.
    pub boundary: Vec<(Constraint, BoundaryTerm)>,
}

/// An ordered list of labeled constructors; each may reference only earlier
/// labels in its boundary.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstrList(pub Vec<(Label, Constructor)>);

impl ConstrList {
    pub fn get(&self, label: &str) -> Option<&Constructor> {
        self.0.iter().find(|(l, _)| l == label).map(|(_, c)| c)
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    /// The prefix of constructors strictly preceding `label`.
    pub fn prefix_before(&self, label: &str) -> ConstrList {
        let pos = self.0.iter().position(|(l, _)| l == label);
        match pos {
            Some(i) => ConstrList(self.0[..i].to_vec()),
            None => self.clone(),
        }
    }
}

/// One eliminator case: dimension binders, then parameter, recursive
/// argument, and recursive result binders (in that order, so the last
/// recursive result is term index 0 in the body).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElimCase {
    pub dims: Vec<DimVar>,
    pub n_params: u32,
    pub n_args: u32,
    pub body: Term,
}

impl ElimCase {
    pub fn n_binders(&self) -> u32 {
        self.n_params + 2 * self.n_args
    }
}

/// Per-label eliminator cases, in schema order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ElimList(pub Vec<(Label, ElimCase)>);

impl ElimList {
    pub fn get(&self, label: &str) -> Option<&ElimCase> {
        self.0.iter().find(|(l, _)| l == label).map(|(_, c)| c)
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
}

// ---------------------------------------------------------------------------
// Height
// ---------------------------------------------------------------------------

/// Position of a label in a constructor list.
pub fn label_height(schema: &ConstrList, label: &str) -> Result<i64, String> {
    schema
        .0
        .iter()
        .position(|(l, _)| l == label)
        .map(|i| i as i64)
        .ok_or_else(|| format!("unknown label `{}`", label))
}

fn collect_labels(m: &BoundaryTerm, out: &mut Vec<Label>) {
    match m {
        BoundaryTerm::BVar(_) => {}
        BoundaryTerm::BIntro { label, args, .. } => {
            out.push(label.clone());
            for a in args {
                collect_labels(a, out);
            }
        }
        BoundaryTerm::BFhcom { cap, tube, .. } => {
            collect_labels(cap, out);
            for t in tube {
                collect_labels(&t.body, out);
            }
        }
        BoundaryTerm::BFcoe { body, .. } => collect_labels(body, out),
        BoundaryTerm::BLam(b) => collect_labels(b, out),
        BoundaryTerm::BApp(b, _) => collect_labels(b, out),
        BoundaryTerm::BNatRec { zero, suc, .. } => {
            collect_labels(zero, out);
            collect_labels(suc, out);
        }
    }
}

/// Labels occurring in a boundary term, in traversal order.
pub fn free_labels(m: &BoundaryTerm) -> Vec<Label> {
    let mut out = Vec::new();
    collect_labels(m, &mut out);
    out
}

/// Height of a boundary term: the maximum height of its labels, or -1 when
/// it mentions none.
pub fn bterm_height(schema: &ConstrList, m: &BoundaryTerm) -> Result<i64, String> {
    let mut h = -1;
    for l in free_labels(m) {
        h = h.max(label_height(schema, &l)?);
    }
    Ok(h)
}

// ---------------------------------------------------------------------------
// Term-variable shifting and substitution
// ---------------------------------------------------------------------------

fn shift_tele(t: &Telescope, by: u32, cut: u32) -> Telescope {
    Telescope(
        t.0.iter()
            .enumerate()
            .map(|(j, ty)| shift_from(ty, by, cut + j as u32))
            .collect(),
    )
}

/// Shift free term variables of an argument type.
pub fn shift_argty(a: &ArgType, by: u32, cut: u32) -> ArgType {
    match a {
        ArgType::SelfAt(ix) => {
            ArgType::SelfAt(ix.iter().map(|t| shift_from(t, by, cut)).collect())
        }
        ArgType::ArgPi(dom, cod) => ArgType::arg_pi(
            shift_from(dom, by, cut),
            shift_argty(cod, by, cut + 1),
        ),
    }
}

/// Shift free term variables of a boundary term.
pub fn shift_bterm(m: &BoundaryTerm, by: u32, cut: u32) -> BoundaryTerm {
    match m {
        BoundaryTerm::BVar(j) => BoundaryTerm::BVar(*j),
        BoundaryTerm::BIntro {
            label,
            dims,
            params,
            args,
        } => BoundaryTerm::BIntro {
            label: label.clone(),
            dims: dims.clone(),
            params: params.iter().map(|t| shift_from(t, by, cut)).collect(),
            args: args.iter().map(|a| shift_bterm(a, by, cut)).collect(),
        },
        BoundaryTerm::BFhcom {
            indices,
            r,
            r2,
            cap,
            tube,
        } => BoundaryTerm::BFhcom {
            indices: indices.iter().map(|t| shift_from(t, by, cut)).collect(),
            r: *r,
            r2: *r2,
            cap: Box::new(shift_bterm(cap, by, cut)),
            tube: tube
                .iter()
                .map(|t| BTube {
                    cons: t.cons,
                    dim: t.dim,
                    body: shift_bterm(&t.body, by, cut),
                })
                .collect(),
        },
        BoundaryTerm::BFcoe {
            dim,
            line,
            r,
            r2,
            body,
        } => BoundaryTerm::BFcoe {
            dim: *dim,
            line: line.iter().map(|t| shift_from(t, by, cut)).collect(),
            r: *r,
            r2: *r2,
            body: Box::new(shift_bterm(body, by, cut)),
        },
        BoundaryTerm::BLam(b) => BoundaryTerm::BLam(Box::new(shift_bterm(b, by, cut + 1))),
        BoundaryTerm::BApp(b, t) => BoundaryTerm::BApp(
            Box::new(shift_bterm(b, by, cut)),
            Box::new(shift_from(t, by, cut)),
        ),
        BoundaryTerm::BNatRec { scrut, zero, suc } => BoundaryTerm::BNatRec {
            scrut: Box::new(shift_from(scrut, by, cut)),
            zero: Box::new(shift_bterm(zero, by, cut)),
            suc: Box::new(shift_bterm(suc, by, cut + 1)),
        },
    }
}

fn shift_constructor(c: &Constructor, by: u32, cut: u32) -> Constructor {
    let np = c.params.len() as u32;
    Constructor {
        dims: c.dims.clone(),
        params: shift_tele(&c.params, by, cut),
        indices: c
            .indices
            .iter()
            .map(|t| shift_from(t, by, cut + np))
            .collect(),
        args: c.args.iter().map(|a| shift_argty(a, by, cut + np)).collect(),
        boundary: c
            .boundary
            .iter()
            .map(|(k, m)| (*k, shift_bterm(m, by, cut + np)))
            .collect(),
    }
}

fn shift_schema(s: &ConstrList, by: u32, cut: u32) -> ConstrList {
    ConstrList(
        s.0.iter()
            .map(|(l, c)| (l.clone(), shift_constructor(c, by, cut)))
            .collect(),
    )
}

fn shift_cases(e: &ElimList, by: u32, cut: u32) -> ElimList {
    ElimList(
        e.0.iter()
            .map(|(l, c)| {
                (
                    l.clone(),
                    ElimCase {
                        dims: c.dims.clone(),
                        n_params: c.n_params,
                        n_args: c.n_args,
                        body: shift_from(&c.body, by, cut + c.n_binders()),
                    },
                )
            })
            .collect(),
    )
}

fn shift_tube(tube: &[Tube], by: u32, cut: u32) -> Vec<Tube> {
    tube.iter()
        .map(|t| Tube::new(t.cons, t.dim, shift_from(&t.body, by, cut)))
        .collect()
}

/// Shift free term variables at or above `cut` upward by `by`.
pub fn shift_from(t: &Term, by: u32, cut: u32) -> Term {
    if by == 0 {
        return t.clone();
    }
    match t {
        Term::Var(i) => {
            if *i >= cut {
                Term::Var(i + by)
            } else {
                Term::Var(*i)
            }
        }
        Term::Lam(b) => Term::Lam(Box::new(shift_from(b, by, cut + 1))),
        Term::App(f, a) => Term::app(shift_from(f, by, cut), shift_from(a, by, cut)),
        Term::Pi(d, c) => Term::pi(shift_from(d, by, cut), shift_from(c, by, cut + 1)),
        Term::Ind {
            tele,
            schema,
            indices,
        } => Term::Ind {
            tele: shift_tele(tele, by, cut),
            schema: shift_schema(schema, by, cut),
            indices: indices.iter().map(|t| shift_from(t, by, cut)).collect(),
        },
        Term::Intro {
            schema,
            label,
            dims,
            params,
            args,
        } => Term::Intro {
            schema: shift_schema(schema, by, cut),
            label: label.clone(),
            dims: dims.clone(),
            params: params.iter().map(|t| shift_from(t, by, cut)).collect(),
            args: args.iter().map(|t| shift_from(t, by, cut)).collect(),
        },
        Term::Fhcom { r, r2, cap, tube } => Term::Fhcom {
            r: *r,
            r2: *r2,
            cap: Box::new(shift_from(cap, by, cut)),
            tube: shift_tube(tube, by, cut),
        },
        Term::Fcoe {
            dim,
            line,
            r,
            r2,
            body,
        } => Term::Fcoe {
            dim: *dim,
            line: line.iter().map(|t| shift_from(t, by, cut)).collect(),
            r: *r,
            r2: *r2,
            body: Box::new(shift_from(body, by, cut)),
        },
        Term::Fcom {
            dim,
            line,
            r,
            r2,
            cap,
            tube,
        } => Term::Fcom {
            dim: *dim,
            line: line.iter().map(|t| shift_from(t, by, cut)).collect(),
            r: *r,
            r2: *r2,
            cap: Box::new(shift_from(cap, by, cut)),
            tube: shift_tube(tube, by, cut),
        },
        Term::Hcom { ty, r, r2, cap, tube } => Term::Hcom {
            ty: Box::new(shift_from(ty, by, cut)),
            r: *r,
            r2: *r2,
            cap: Box::new(shift_from(cap, by, cut)),
            tube: shift_tube(tube, by, cut),
        },
        Term::Coe {
            dim,
            line,
            r,
            r2,
            body,
        } => Term::Coe {
            dim: *dim,
            line: Box::new(shift_from(line, by, cut)),
            r: *r,
            r2: *r2,
            body: Box::new(shift_from(body, by, cut)),
        },
        Term::Com {
            dim,
            line,
            r,
            r2,
            cap,
            tube,
        } => Term::Com {
            dim: *dim,
            line: Box::new(shift_from(line, by, cut)),
            r: *r,
            r2: *r2,
            cap: Box::new(shift_from(cap, by, cut)),
            tube: shift_tube(tube, by, cut),
        },
        Term::Tcoe {
            dim,
            tele,
            schema,
            r,
            r2,
            body,
        } => Term::Tcoe {
            dim: *dim,
            tele: shift_tele(tele, by, cut),
            schema: shift_schema(schema, by, cut),
            r: *r,
            r2: *r2,
            body: Box::new(shift_from(body, by, cut)),
        },
        Term::Elim {
            motive,
            indices,
            scrut,
            cases,
        } => Term::Elim {
            motive: Box::new(shift_from(motive, by, cut + indices.len() as u32 + 1)),
            indices: indices.iter().map(|t| shift_from(t, by, cut)).collect(),
            scrut: Box::new(shift_from(scrut, by, cut)),
            cases: shift_cases(cases, by, cut),
        },
        Term::PathTy { dim, ty, lhs, rhs } => Term::PathTy {
            dim: *dim,
            ty: Box::new(shift_from(ty, by, cut)),
            lhs: Box::new(shift_from(lhs, by, cut)),
            rhs: Box::new(shift_from(rhs, by, cut)),
        },
        Term::PLam { dim, body } => Term::PLam {
            dim: *dim,
            body: Box::new(shift_from(body, by, cut)),
        },
        Term::PApp(p, d) => Term::papp(shift_from(p, by, cut), *d),
        Term::NatRec { scrut, zero, suc } => Term::NatRec {
            scrut: Box::new(shift_from(scrut, by, cut)),
            zero: Box::new(shift_from(zero, by, cut)),
            suc: Box::new(shift_from(suc, by, cut + 2)),
        },
    }
}

pub fn weaken(t: &Term, by: u32) -> Term {
    shift_from(t, by, 0)
}

struct TermSubst<'a> {
    args: &'a [Term],
}

impl<'a> TermSubst<'a> {
    fn var(&self, i: u32, cut: u32) -> Term {
        let n = self.args.len() as u32;
        if i < cut {
            Term::Var(i)
        } else if i < cut + n {
            // Binder j of the group (leftmost first) is index n-1-j at the
            // cut, so index i maps to args[n-1-(i-cut)].
            let j = (n - 1 - (i - cut)) as usize;
            shift_from(&self.args[j], cut, 0)
        } else {
            Term::Var(i - n)
        }
    }

    fn tele(&self, t: &Telescope, cut: u32) -> Telescope {
        Telescope(
            t.0.iter()
                .enumerate()
                .map(|(j, ty)| self.term(ty, cut + j as u32))
                .collect(),
        )
    }

    fn argty(&self, a: &ArgType, cut: u32) -> ArgType {
        match a {
            ArgType::SelfAt(ix) => {
                ArgType::SelfAt(ix.iter().map(|t| self.term(t, cut)).collect())
            }
            ArgType::ArgPi(dom, cod) => {
                ArgType::arg_pi(self.term(dom, cut), self.argty(cod, cut + 1))
            }
        }
    }

    fn bterm(&self, m: &BoundaryTerm, cut: u32) -> BoundaryTerm {
        match m {
            BoundaryTerm::BVar(j) => BoundaryTerm::BVar(*j),
            BoundaryTerm::BIntro {
                label,
                dims,
                params,
                args,
            } => BoundaryTerm::BIntro {
                label: label.clone(),
                dims: dims.clone(),
                params: params.iter().map(|t| self.term(t, cut)).collect(),
                args: args.iter().map(|a| self.bterm(a, cut)).collect(),
            },
            BoundaryTerm::BFhcom {
                indices,
                r,
                r2,
                cap,
                tube,
            } => BoundaryTerm::BFhcom {
                indices: indices.iter().map(|t| self.term(t, cut)).collect(),
                r: *r,
                r2: *r2,
                cap: Box::new(self.bterm(cap, cut)),
                tube: tube
                    .iter()
                    .map(|t| BTube {
                        cons: t.cons,
                        dim: t.dim,
                        body: self.bterm(&t.body, cut),
                    })
                    .collect(),
            },
            BoundaryTerm::BFcoe {
                dim,
                line,
                r,
                r2,
                body,
            } => BoundaryTerm::BFcoe {
                dim: *dim,
                line: line.iter().map(|t| self.term(t, cut)).collect(),
                r: *r,
                r2: *r2,
                body: Box::new(self.bterm(body, cut)),
            },
            BoundaryTerm::BLam(b) => BoundaryTerm::BLam(Box::new(self.bterm(b, cut + 1))),
            BoundaryTerm::BApp(b, t) => BoundaryTerm::BApp(
                Box::new(self.bterm(b, cut)),
                Box::new(self.term(t, cut)),
            ),
            BoundaryTerm::BNatRec { scrut, zero, suc } => BoundaryTerm::BNatRec {
                scrut: Box::new(self.term(scrut, cut)),
                zero: Box::new(self.bterm(zero, cut)),
                suc: Box::new(self.bterm(suc, cut + 1)),
            },
        }
    }

    fn constructor(&self, c: &Constructor, cut: u32) -> Constructor {
        let np = c.params.len() as u32;
        Constructor {
            dims: c.dims.clone(),
            params: self.tele(&c.params, cut),
            indices: c.indices.iter().map(|t| self.term(t, cut + np)).collect(),
            args: c.args.iter().map(|a| self.argty(a, cut + np)).collect(),
            boundary: c
                .boundary
                .iter()
                .map(|(k, m)| (*k, self.bterm(m, cut + np)))
                .collect(),
        }
    }

    fn schema(&self, s: &ConstrList, cut: u32) -> ConstrList {
        ConstrList(
            s.0.iter()
                .map(|(l, c)| (l.clone(), self.constructor(c, cut)))
                .collect(),
        )
    }

    fn cases(&self, e: &ElimList, cut: u32) -> ElimList {
        ElimList(
            e.0.iter()
                .map(|(l, c)| {
                    (
                        l.clone(),
                        ElimCase {
                            dims: c.dims.clone(),
                            n_params: c.n_params,
                            n_args: c.n_args,
                            body: self.term(&c.body, cut + c.n_binders()),
                        },
                    )
                })
                .collect(),
        )
    }

    fn tube(&self, tube: &[Tube], cut: u32) -> Vec<Tube> {
        tube.iter()
            .map(|t| Tube::new(t.cons, t.dim, self.term(&t.body, cut)))
            .collect()
    }

    fn term(&self, t: &Term, cut: u32) -> Term {
        match t {
            Term::Var(i) => self.var(*i, cut),
            Term::Lam(b) => Term::Lam(Box::new(self.term(b, cut + 1))),
            Term::App(f, a) => Term::app(self.term(f, cut), self.term(a, cut)),
            Term::Pi(d, c) => Term::pi(self.term(d, cut), self.term(c, cut + 1)),
            Term::Ind {
                tele,
                schema,
                indices,
            } => Term::Ind {
                tele: self.tele(tele, cut),
                schema: self.schema(schema, cut),
                indices: indices.iter().map(|t| self.term(t, cut)).collect(),
            },
            Term::Intro {
                schema,
                label,
                dims,
                params,
                args,
            } => Term::Intro {
                schema: self.schema(schema, cut),
                label: label.clone(),
                dims: dims.clone(),
                params: params.iter().map(|t| self.term(t, cut)).collect(),
                args: args.iter().map(|t| self.term(t, cut)).collect(),
            },
            Term::Fhcom { r, r2, cap, tube } => Term::Fhcom {
                r: *r,
                r2: *r2,
                cap: Box::new(self.term(cap, cut)),
                tube: self.tube(tube, cut),
            },
            Term::Fcoe {
                dim,
                line,
                r,
                r2,
                body,
            } => Term::Fcoe {
                dim: *dim,
                line: line.iter().map(|t| self.term(t, cut)).collect(),
                r: *r,
                r2: *r2,
                body: Box::new(self.term(body, cut)),
            },
            Term::Fcom {
                dim,
                line,
                r,
                r2,
                cap,
                tube,
            } => Term::Fcom {
                dim: *dim,
                line: line.iter().map(|t| self.term(t, cut)).collect(),
                r: *r,
                r2: *r2,
                cap: Box::new(self.term(cap, cut)),
                tube: self.tube(tube, cut),
            },
            Term::Hcom { ty, r, r2, cap, tube } => Term::Hcom {
                ty: Box::new(self.term(ty, cut)),
                r: *r,
                r2: *r2,
                cap: Box::new(self.term(cap, cut)),
                tube: self.tube(tube, cut),
            },
            Term::Coe {
                dim,
                line,
                r,
                r2,
                body,
            } => Term::Coe {
                dim: *dim,
                line: Box::new(self.term(line, cut)),
                r: *r,
                r2: *r2,
                body: Box::new(self.term(body, cut)),
            },
            Term::Com {
                dim,
                line,
                r,
                r2,
                cap,
                tube,
            } => Term::Com {
                dim: *dim,
                line: Box::new(self.term(line, cut)),
                r: *r,
                r2: *r2,
                cap: Box::new(self.term(cap, cut)),
                tube: self.tube(tube, cut),
            },
            Term::Tcoe {
                dim,
                tele,
                schema,
                r,
                r2,
                body,
            } => Term::Tcoe {
                dim: *dim,
                tele: self.tele(tele, cut),
                schema: self.schema(schema, cut),
                r: *r,
                r2: *r2,
                body: Box::new(self.term(body, cut)),
            },
            Term::Elim {
                motive,
                indices,
                scrut,
                cases,
            } => Term::Elim {
                motive: Box::new(self.term(motive, cut + indices.len() as u32 + 1)),
                indices: indices.iter().map(|t| self.term(t, cut)).collect(),
                scrut: Box::new(self.term(scrut, cut)),
                cases: self.cases(cases, cut),
            },
            Term::PathTy { dim, ty, lhs, rhs } => Term::PathTy {
                dim: *dim,
                ty: Box::new(self.term(ty, cut)),
                lhs: Box::new(self.term(lhs, cut)),
                rhs: Box::new(self.term(rhs, cut)),
            },
            Term::PLam { dim, body } => Term::PLam {
                dim: *dim,
                body: Box::new(self.term(body, cut)),
            },
            Term::PApp(p, d) => Term::papp(self.term(p, cut), *d),
            Term::NatRec { scrut, zero, suc } => Term::NatRec {
                scrut: Box::new(self.term(scrut, cut)),
                zero: Box::new(self.term(zero, cut)),
                suc: Box::new(self.term(suc, cut + 2)),
            },
        }
    }
}

/// Simultaneously substitute `args` for the variables bound by a binder
/// group of width `args.len()`: the leftmost binder receives `args[0]`.
pub fn term_subst(t: &Term, args: &[Term]) -> Term {
    if args.is_empty() {
        return t.clone();
    }
    TermSubst { args }.term(t, 0)
}

pub fn term_subst1(t: &Term, arg: &Term) -> Term {
    term_subst(t, std::slice::from_ref(arg))
}

/// As `term_subst`, for boundary terms.
pub fn bterm_term_subst(m: &BoundaryTerm, args: &[Term]) -> BoundaryTerm {
    if args.is_empty() {
        return m.clone();
    }
    TermSubst { args }.bterm(m, 0)
}

/// As `term_subst`, for argument types.
pub fn argty_term_subst(a: &ArgType, args: &[Term]) -> ArgType {
    if args.is_empty() {
        return a.clone();
    }
    TermSubst { args }.argty(a, 0)
}

/// Substitute boundary terms for all boundary variables of a boundary term.
/// Under a natrec successor branch the appended variable maps to itself in
/// the extended target context.
pub fn bterm_bsubst(m: &BoundaryTerm, args: &[BoundaryTerm]) -> BoundaryTerm {
    match m {
        BoundaryTerm::BVar(j) => args
            .get(*j as usize)
            .cloned()
            .unwrap_or_else(|| BoundaryTerm::BVar(*j)),
        BoundaryTerm::BIntro {
            label,
            dims,
            params,
            args: bargs,
        } => BoundaryTerm::BIntro {
            label: label.clone(),
            dims: dims.clone(),
            params: params.clone(),
            args: bargs.iter().map(|a| bterm_bsubst(a, args)).collect(),
        },
        BoundaryTerm::BFhcom {
            indices,
            r,
            r2,
            cap,
            tube,
        } => BoundaryTerm::BFhcom {
            indices: indices.clone(),
            r: *r,
            r2: *r2,
            cap: Box::new(bterm_bsubst(cap, args)),
            tube: tube
                .iter()
                .map(|t| BTube {
                    cons: t.cons,
                    dim: t.dim,
                    body: bterm_bsubst(&t.body, args),
                })
                .collect(),
        },
        BoundaryTerm::BFcoe {
            dim,
            line,
            r,
            r2,
            body,
        } => BoundaryTerm::BFcoe {
            dim: *dim,
            line: line.clone(),
            r: *r,
            r2: *r2,
            body: Box::new(bterm_bsubst(body, args)),
        },
        BoundaryTerm::BLam(b) => BoundaryTerm::BLam(Box::new(bterm_bsubst(
            b,
            &args.iter().map(|a| shift_bterm(a, 1, 0)).collect::<Vec<_>>(),
        ))),
        BoundaryTerm::BApp(b, t) => {
            BoundaryTerm::BApp(Box::new(bterm_bsubst(b, args)), t.clone())
        }
        BoundaryTerm::BNatRec { scrut, zero, suc } => {
            let mut ext: Vec<BoundaryTerm> =
                args.iter().map(|a| shift_bterm(a, 1, 0)).collect();
            ext.push(BoundaryTerm::BVar(args.len() as u32));
            BoundaryTerm::BNatRec {
                scrut: scrut.clone(),
                zero: Box::new(bterm_bsubst(zero, args)),
                suc: Box::new(bterm_bsubst(suc, &ext)),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Dimension substitution
// ---------------------------------------------------------------------------

fn dsub_tube(tube: &[Tube], sub: &DimSubst) -> Vec<Tube> {
    tube.iter()
        .map(|t| {
            let cons = t.cons.subst(sub);
            let (dim, inner) = sub.under_binder(t.dim);
            Tube::new(cons, dim, dim_subst(&t.body, &inner))
        })
        .collect()
}

/// Apply a dimension substitution to a telescope.
pub fn dsub_tele(t: &Telescope, sub: &DimSubst) -> Telescope {
    Telescope(t.0.iter().map(|ty| dim_subst(ty, sub)).collect())
}

/// Apply a dimension substitution to an argument type.
pub fn dsub_argty(a: &ArgType, sub: &DimSubst) -> ArgType {
    match a {
        ArgType::SelfAt(ix) => ArgType::SelfAt(ix.iter().map(|t| dim_subst(t, sub)).collect()),
        ArgType::ArgPi(d, c) => ArgType::arg_pi(dim_subst(d, sub), dsub_argty(c, sub)),
    }
}

/// Apply a dimension substitution to a boundary term.
pub fn dsub_bterm(m: &BoundaryTerm, sub: &DimSubst) -> BoundaryTerm {
    match m {
        BoundaryTerm::BVar(j) => BoundaryTerm::BVar(*j),
        BoundaryTerm::BIntro {
            label,
            dims,
            params,
            args,
        } => BoundaryTerm::BIntro {
            label: label.clone(),
            dims: dims.iter().map(|d| sub.dim(*d)).collect(),
            params: params.iter().map(|t| dim_subst(t, sub)).collect(),
            args: args.iter().map(|a| dsub_bterm(a, sub)).collect(),
        },
        BoundaryTerm::BFhcom {
            indices,
            r,
            r2,
            cap,
            tube,
        } => BoundaryTerm::BFhcom {
            indices: indices.iter().map(|t| dim_subst(t, sub)).collect(),
            r: sub.dim(*r),
            r2: sub.dim(*r2),
            cap: Box::new(dsub_bterm(cap, sub)),
            tube: tube
                .iter()
                .map(|t| {
                    let cons = t.cons.subst(sub);
                    let (dim, inner) = sub.under_binder(t.dim);
                    BTube {
                        cons,
                        dim,
                        body: dsub_bterm(&t.body, &inner),
                    }
                })
                .collect(),
        },
        BoundaryTerm::BFcoe {
            dim,
            line,
            r,
            r2,
            body,
        } => {
            let r = sub.dim(*r);
            let r2 = sub.dim(*r2);
            let (dim, inner) = sub.under_binder(*dim);
            BoundaryTerm::BFcoe {
                dim,
                line: line.iter().map(|t| dim_subst(t, &inner)).collect(),
                r,
                r2,
                body: Box::new(dsub_bterm(body, sub)),
            }
        }
        BoundaryTerm::BLam(b) => BoundaryTerm::BLam(Box::new(dsub_bterm(b, sub))),
        BoundaryTerm::BApp(b, t) => BoundaryTerm::BApp(
            Box::new(dsub_bterm(b, sub)),
            Box::new(dim_subst(t, sub)),
        ),
        BoundaryTerm::BNatRec { scrut, zero, suc } => BoundaryTerm::BNatRec {
            scrut: Box::new(dim_subst(scrut, sub)),
            zero: Box::new(dsub_bterm(zero, sub)),
            suc: Box::new(dsub_bterm(suc, sub)),
        },
    }
}

fn dsub_constructor(c: &Constructor, sub: &DimSubst) -> Constructor {
    let (dims, inner) = sub.under_binders(&c.dims);
    Constructor {
        dims,
        params: dsub_tele(&c.params, sub),
        indices: c.indices.iter().map(|t| dim_subst(t, sub)).collect(),
        args: c.args.iter().map(|a| dsub_argty(a, sub)).collect(),
        boundary: c
            .boundary
            .iter()
            .map(|(k, m)| (k.subst(&inner), dsub_bterm(m, &inner)))
            .collect(),
    }
}

pub fn dsub_schema(s: &ConstrList, sub: &DimSubst) -> ConstrList {
    if sub.is_identity() {
        return s.clone();
    }
    ConstrList(
        s.0.iter()
            .map(|(l, c)| (l.clone(), dsub_constructor(c, sub)))
            .collect(),
    )
}

pub fn dsub_cases(e: &ElimList, sub: &DimSubst) -> ElimList {
    if sub.is_identity() {
        return e.clone();
    }
    ElimList(
        e.0.iter()
            .map(|(l, c)| {
                let (dims, inner) = sub.under_binders(&c.dims);
                (
                    l.clone(),
                    ElimCase {
                        dims,
                        n_params: c.n_params,
                        n_args: c.n_args,
                        body: dim_subst(&c.body, &inner),
                    },
                )
            })
            .collect(),
    )
}

/// Apply a dimension substitution to a term, homomorphically on every
/// former. Dimension binders that would capture a substituted variable are
/// freshened first.
pub fn dim_subst(t: &Term, sub: &DimSubst) -> Term {
    if sub.is_identity() {
        return t.clone();
    }
    match t {
        Term::Var(i) => Term::Var(*i),
        Term::Lam(b) => Term::Lam(Box::new(dim_subst(b, sub))),
        Term::App(f, a) => Term::app(dim_subst(f, sub), dim_subst(a, sub)),
        Term::Pi(d, c) => Term::pi(dim_subst(d, sub), dim_subst(c, sub)),
        Term::Ind {
            tele,
            schema,
            indices,
        } => Term::Ind {
            tele: dsub_tele(tele, sub),
            schema: dsub_schema(schema, sub),
            indices: indices.iter().map(|t| dim_subst(t, sub)).collect(),
        },
        Term::Intro {
            schema,
            label,
            dims,
            params,
            args,
        } => Term::Intro {
            schema: dsub_schema(schema, sub),
            label: label.clone(),
            dims: dims.iter().map(|d| sub.dim(*d)).collect(),
            params: params.iter().map(|t| dim_subst(t, sub)).collect(),
            args: args.iter().map(|t| dim_subst(t, sub)).collect(),
        },
        Term::Fhcom { r, r2, cap, tube } => Term::Fhcom {
            r: sub.dim(*r),
            r2: sub.dim(*r2),
            cap: Box::new(dim_subst(cap, sub)),
            tube: dsub_tube(tube, sub),
        },
        Term::Fcoe {
            dim,
            line,
            r,
            r2,
            body,
        } => {
            let r = sub.dim(*r);
            let r2 = sub.dim(*r2);
            let (dim, inner) = sub.under_binder(*dim);
            Term::Fcoe {
                dim,
                line: line.iter().map(|t| dim_subst(t, &inner)).collect(),
                r,
                r2,
                body: Box::new(dim_subst(body, sub)),
            }
        }
        Term::Fcom {
            dim,
            line,
            r,
            r2,
            cap,
            tube,
        } => {
            let r = sub.dim(*r);
            let r2 = sub.dim(*r2);
            let (dim, inner) = sub.under_binder(*dim);
            Term::Fcom {
                dim,
                line: line.iter().map(|t| dim_subst(t, &inner)).collect(),
                r,
                r2,
                cap: Box::new(dim_subst(cap, sub)),
                tube: dsub_tube(tube, sub),
            }
        }
        Term::Hcom { ty, r, r2, cap, tube } => Term::Hcom {
            ty: Box::new(dim_subst(ty, sub)),
            r: sub.dim(*r),
            r2: sub.dim(*r2),
            cap: Box::new(dim_subst(cap, sub)),
            tube: dsub_tube(tube, sub),
        },
        Term::Coe {
            dim,
            line,
            r,
            r2,
            body,
        } => {
            let r = sub.dim(*r);
            let r2 = sub.dim(*r2);
            let (dim, inner) = sub.under_binder(*dim);
            Term::Coe {
                dim,
                line: Box::new(dim_subst(line, &inner)),
                r,
                r2,
                body: Box::new(dim_subst(body, sub)),
            }
        }
        Term::Com {
            dim,
            line,
            r,
            r2,
            cap,
            tube,
        } => {
            let r = sub.dim(*r);
            let r2 = sub.dim(*r2);
            let (dim, inner) = sub.under_binder(*dim);
            Term::Com {
                dim,
                line: Box::new(dim_subst(line, &inner)),
                r,
                r2,
                cap: Box::new(dim_subst(cap, sub)),
                tube: dsub_tube(tube, sub),
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
            let r = sub.dim(*r);
            let r2 = sub.dim(*r2);
            let (dim, inner) = sub.under_binder(*dim);
            Term::Tcoe {
                dim,
                tele: dsub_tele(tele, &inner),
                schema: dsub_schema(schema, &inner),
                r,
                r2,
                body: Box::new(dim_subst(body, sub)),
            }
        }
        Term::Elim {
            motive,
            indices,
            scrut,
            cases,
        } => Term::Elim {
            motive: Box::new(dim_subst(motive, sub)),
            indices: indices.iter().map(|t| dim_subst(t, sub)).collect(),
            scrut: Box::new(dim_subst(scrut, sub)),
            cases: dsub_cases(cases, sub),
        },
        Term::PathTy { dim, ty, lhs, rhs } => {
            let (dim, inner) = sub.under_binder(*dim);
            Term::PathTy {
                dim,
                ty: Box::new(dim_subst(ty, &inner)),
                lhs: Box::new(dim_subst(lhs, sub)),
                rhs: Box::new(dim_subst(rhs, sub)),
            }
        }
        Term::PLam { dim, body } => {
            let (dim, inner) = sub.under_binder(*dim);
            Term::PLam {
                dim,
                body: Box::new(dim_subst(body, &inner)),
            }
        }
        Term::PApp(p, d) => Term::papp(dim_subst(p, sub), sub.dim(*d)),
        Term::NatRec { scrut, zero, suc } => Term::NatRec {
            scrut: Box::new(dim_subst(scrut, sub)),
            zero: Box::new(dim_subst(zero, sub)),
            suc: Box::new(dim_subst(suc, sub)),
        },
    }
}

// ---------------------------------------------------------------------------
// Free dimensions / free term variables
// ---------------------------------------------------------------------------

#[derive(Default)]
struct DimCollector {
    free: HashSet<DimVar>,
    bound: Vec<DimVar>,
}

impl DimCollector {
    fn dim(&mut self, d: Dim) {
        if let Dim::Var(x) = d {
            if !self.bound.contains(&x) {
                self.free.insert(x);
            }
        }
    }

    fn cons(&mut self, c: Constraint) {
        self.dim(c.lhs);
        self.dim(c.rhs);
    }

    fn scoped<F: FnOnce(&mut Self)>(&mut self, binders: &[DimVar], f: F) {
        let n = self.bound.len();
        self.bound.extend_from_slice(binders);
        f(self);
        self.bound.truncate(n);
    }

    fn tube(&mut self, tube: &[Tube]) {
        for t in tube {
            self.cons(t.cons);
            self.scoped(&[t.dim], |s| s.term(&t.body));
        }
    }

    fn tele(&mut self, t: &Telescope) {
        for ty in &t.0 {
            self.term(ty);
        }
    }

    fn argty(&mut self, a: &ArgType) {
        match a {
            ArgType::SelfAt(ix) => ix.iter().for_each(|t| self.term(t)),
            ArgType::ArgPi(d, c) => {
                self.term(d);
                self.argty(c);
            }
        }
    }

    fn bterm(&mut self, m: &BoundaryTerm) {
        match m {
            BoundaryTerm::BVar(_) => {}
            BoundaryTerm::BIntro {
                dims, params, args, ..
            } => {
                dims.iter().for_each(|d| self.dim(*d));
                params.iter().for_each(|t| self.term(t));
                args.iter().for_each(|a| self.bterm(a));
            }
            BoundaryTerm::BFhcom {
                indices,
                r,
                r2,
                cap,
                tube,
            } => {
                indices.iter().for_each(|t| self.term(t));
                self.dim(*r);
                self.dim(*r2);
                self.bterm(cap);
                for t in tube {
                    self.cons(t.cons);
                    self.scoped(&[t.dim], |s| s.bterm(&t.body));
                }
            }
            BoundaryTerm::BFcoe {
                dim,
                line,
                r,
                r2,
                body,
            } => {
                self.dim(*r);
                self.dim(*r2);
                self.scoped(&[*dim], |s| line.iter().for_each(|t| s.term(t)));
                self.bterm(body);
            }
            BoundaryTerm::BLam(b) => self.bterm(b),
            BoundaryTerm::BApp(b, t) => {
                self.bterm(b);
                self.term(t);
            }
            BoundaryTerm::BNatRec { scrut, zero, suc } => {
                self.term(scrut);
                self.bterm(zero);
                self.bterm(suc);
            }
        }
    }

    fn constructor(&mut self, c: &Constructor) {
        self.tele(&c.params);
        c.indices.iter().for_each(|t| self.term(t));
        c.args.iter().for_each(|a| self.argty(a));
        self.scoped(&c.dims.clone(), |s| {
            for (k, m) in &c.boundary {
                s.cons(*k);
                s.bterm(m);
            }
        });
    }

    fn schema(&mut self, s: &ConstrList) {
        for (_, c) in &s.0 {
            self.constructor(c);
        }
    }

    fn cases(&mut self, e: &ElimList) {
        for (_, c) in &e.0 {
            self.scoped(&c.dims.clone(), |s| s.term(&c.body));
        }
    }

    fn term(&mut self, t: &Term) {
        match t {
            Term::Var(_) => {}
            Term::Lam(b) => self.term(b),
            Term::App(f, a) => {
                self.term(f);
                self.term(a);
            }
            Term::Pi(d, c) => {
                self.term(d);
                self.term(c);
            }
            Term::Ind {
                tele,
                schema,
                indices,
            } => {
                self.tele(tele);
                self.schema(schema);
                indices.iter().for_each(|t| self.term(t));
            }
            Term::Intro {
                schema,
                dims,
                params,
                args,
                ..
            } => {
                self.schema(schema);
                dims.iter().for_each(|d| self.dim(*d));
                params.iter().for_each(|t| self.term(t));
                args.iter().for_each(|t| self.term(t));
            }
            Term::Fhcom { r, r2, cap, tube } => {
                self.dim(*r);
                self.dim(*r2);
                self.term(cap);
                self.tube(tube);
            }
            Term::Fcoe {
                dim,
                line,
                r,
                r2,
                body,
            } => {
                self.dim(*r);
                self.dim(*r2);
                self.scoped(&[*dim], |s| line.iter().for_each(|t| s.term(t)));
                self.term(body);
            }
            Term::Fcom {
                dim,
                line,
                r,
                r2,
                cap,
                tube,
            } => {
                self.dim(*r);
                self.dim(*r2);
                self.scoped(&[*dim], |s| line.iter().for_each(|t| s.term(t)));
                self.term(cap);
                self.tube(tube);
            }
            Term::Hcom { ty, r, r2, cap, tube } => {
                self.term(ty);
                self.dim(*r);
                self.dim(*r2);
                self.term(cap);
                self.tube(tube);
            }
            Term::Coe {
                dim,
                line,
                r,
                r2,
                body,
            } => {
                self.dim(*r);
                self.dim(*r2);
                self.scoped(&[*dim], |s| s.term(line));
                self.term(body);
            }
            Term::Com {
                dim,
                line,
                r,
                r2,
                cap,
                tube,
            } => {
                self.dim(*r);
                self.dim(*r2);
                self.scoped(&[*dim], |s| s.term(line));
                self.term(cap);
                self.tube(tube);
            }
            Term::Tcoe {
                dim,
                tele,
                schema,
                r,
                r2,
                body,
            } => {
                self.dim(*r);
                self.dim(*r2);
                self.scoped(&[*dim], |s| {
                    s.tele(tele);
                    s.schema(schema);
                });
                self.term(body);
            }
            Term::Elim {
                motive,
                indices,
                scrut,
                cases,
            } => {
                self.term(motive);
                indices.iter().for_each(|t| self.term(t));
                self.term(scrut);
                self.cases(cases);
            }
            Term::PathTy { dim, ty, lhs, rhs } => {
                self.scoped(&[*dim], |s| s.term(ty));
                self.term(lhs);
                self.term(rhs);
            }
            Term::PLam { dim, body } => self.scoped(&[*dim], |s| s.term(body)),
            Term::PApp(p, d) => {
                self.term(p);
                self.dim(*d);
            }
            Term::NatRec { scrut, zero, suc } => {
                self.term(scrut);
                self.term(zero);
                self.term(suc);
            }
        }
    }
}

/// Free dimension variables of a term.
pub fn free_dims(t: &Term) -> HashSet<DimVar> {
    let mut c = DimCollector::default();
    c.term(t);
    c.free
}

/// Free dimension variables of a schema.
pub fn schema_free_dims(s: &ConstrList) -> HashSet<DimVar> {
    let mut c = DimCollector::default();
    c.schema(s);
    c.free
}

/// Free dimension variables of a telescope.
pub fn tele_free_dims(t: &Telescope) -> HashSet<DimVar> {
    let mut c = DimCollector::default();
    c.tele(t);
    c.free
}

fn max_var(t: &Term, cut: u32, best: &mut Option<u32>) {
    match t {
        Term::Var(i) => {
            if *i >= cut {
                let depth = *i - cut;
                *best = Some(best.map_or(depth, |b| b.max(depth)));
            }
        }
        Term::Lam(b) => max_var(b, cut + 1, best),
        Term::App(f, a) => {
            max_var(f, cut, best);
            max_var(a, cut, best);
        }
        Term::Pi(d, c) => {
            max_var(d, cut, best);
            max_var(c, cut + 1, best);
        }
        Term::Ind {
            tele,
            schema,
            indices,
        } => {
            for (j, ty) in tele.0.iter().enumerate() {
                max_var(ty, cut + j as u32, best);
            }
            max_var_schema(schema, cut, best);
            indices.iter().for_each(|t| max_var(t, cut, best));
        }
        Term::Intro {
            schema,
            params,
            args,
            ..
        } => {
            max_var_schema(schema, cut, best);
            params.iter().for_each(|t| max_var(t, cut, best));
            args.iter().for_each(|t| max_var(t, cut, best));
        }
        Term::Fhcom { cap, tube, .. } => {
            max_var(cap, cut, best);
            tube.iter().for_each(|t| max_var(&t.body, cut, best));
        }
        Term::Fcoe { line, body, .. } => {
            line.iter().for_each(|t| max_var(t, cut, best));
            max_var(body, cut, best);
        }
        Term::Fcom {
            line, cap, tube, ..
        } => {
            line.iter().for_each(|t| max_var(t, cut, best));
            max_var(cap, cut, best);
            tube.iter().for_each(|t| max_var(&t.body, cut, best));
        }
        Term::Hcom { ty, cap, tube, .. } => {
            max_var(ty, cut, best);
            max_var(cap, cut, best);
            tube.iter().for_each(|t| max_var(&t.body, cut, best));
        }
        Term::Coe { line, body, .. } => {
            max_var(line, cut, best);
            max_var(body, cut, best);
        }
        Term::Com {
            line, cap, tube, ..
        } => {
            max_var(line, cut, best);
            max_var(cap, cut, best);
            tube.iter().for_each(|t| max_var(&t.body, cut, best));
        }
        Term::Tcoe {
            tele, schema, body, ..
        } => {
            for (j, ty) in tele.0.iter().enumerate() {
                max_var(ty, cut + j as u32, best);
            }
            max_var_schema(schema, cut, best);
            max_var(body, cut, best);
        }
        Term::Elim {
            motive,
            indices,
            scrut,
            cases,
        } => {
            max_var(motive, cut + indices.len() as u32 + 1, best);
            indices.iter().for_each(|t| max_var(t, cut, best));
            max_var(scrut, cut, best);
            for (_, c) in &cases.0 {
                max_var(&c.body, cut + c.n_binders(), best);
            }
        }
        Term::PathTy { ty, lhs, rhs, .. } => {
            max_var(ty, cut, best);
            max_var(lhs, cut, best);
            max_var(rhs, cut, best);
        }
        Term::PLam { body, .. } => max_var(body, cut, best),
        Term::PApp(p, _) => max_var(p, cut, best),
        Term::NatRec { scrut, zero, suc } => {
            max_var(scrut, cut, best);
            max_var(zero, cut, best);
            max_var(suc, cut + 2, best);
        }
    }
}

fn max_var_schema(s: &ConstrList, cut: u32, best: &mut Option<u32>) {
    for (_, c) in &s.0 {
        let np = c.params.len() as u32;
        for (j, ty) in c.params.0.iter().enumerate() {
            max_var(ty, cut + j as u32, best);
        }
        c.indices.iter().for_each(|t| max_var(t, cut + np, best));
        for a in &c.args {
            max_var_argty(a, cut + np, best);
        }
        for (_, m) in &c.boundary {
            max_var_bterm(m, cut + np, best);
        }
    }
}

fn max_var_argty(a: &ArgType, cut: u32, best: &mut Option<u32>) {
    match a {
        ArgType::SelfAt(ix) => ix.iter().for_each(|t| max_var(t, cut, best)),
        ArgType::ArgPi(d, c) => {
            max_var(d, cut, best);
            max_var_argty(c, cut + 1, best);
        }
    }
}

fn max_var_bterm(m: &BoundaryTerm, cut: u32, best: &mut Option<u32>) {
    match m {
        BoundaryTerm::BVar(_) => {}
        BoundaryTerm::BIntro { params, args, .. } => {
            params.iter().for_each(|t| max_var(t, cut, best));
            args.iter().for_each(|a| max_var_bterm(a, cut, best));
        }
        BoundaryTerm::BFhcom {
            indices, cap, tube, ..
        } => {
            indices.iter().for_each(|t| max_var(t, cut, best));
            max_var_bterm(cap, cut, best);
            tube.iter().for_each(|t| max_var_bterm(&t.body, cut, best));
        }
        BoundaryTerm::BFcoe { line, body, .. } => {
            line.iter().for_each(|t| max_var(t, cut, best));
            max_var_bterm(body, cut, best);
        }
        BoundaryTerm::BLam(b) => max_var_bterm(b, cut + 1, best),
        BoundaryTerm::BApp(b, t) => {
            max_var_bterm(b, cut, best);
            max_var(t, cut, best);
        }
        BoundaryTerm::BNatRec { scrut, zero, suc } => {
            max_var(scrut, cut, best);
            max_var_bterm(zero, cut, best);
            max_var_bterm(suc, cut + 1, best);
        }
    }
}

/// True when the term has no free term variables.
pub fn term_closed(t: &Term) -> bool {
    let mut best = None;
    max_var(t, 0, &mut best);
    best.is_none()
}

/// True when the schema has no free term variables.
pub fn schema_term_closed(s: &ConstrList) -> bool {
    let mut best = None;
    max_var_schema(s, 0, &mut best);
    best.is_none()
}

// ---------------------------------------------------------------------------
// Alpha equality
// ---------------------------------------------------------------------------

#[derive(Default, Clone)]
struct DimEnv {
    l2r: HashMap<DimVar, DimVar>,
    r2l: HashMap<DimVar, DimVar>,
}

impl DimEnv {
    fn bind(&self, l: DimVar, r: DimVar) -> DimEnv {
        let mut e = self.clone();
        e.l2r.insert(l, r);
        e.r2l.insert(r, l);
        e
    }

    fn binds(&self, ls: &[DimVar], rs: &[DimVar]) -> Option<DimEnv> {
        if ls.len() != rs.len() {
            return None;
        }
        let mut e = self.clone();
        for (l, r) in ls.iter().zip(rs) {
            e = e.bind(*l, *r);
        }
        Some(e)
    }

    fn dim(&self, a: Dim, b: Dim) -> bool {
        match (a, b) {
            (Dim::Var(x), Dim::Var(y)) => match (self.l2r.get(&x), self.r2l.get(&y)) {
                (Some(y2), Some(x2)) => *y2 == y && *x2 == x,
                (None, None) => x == y,
                _ => false,
            },
            _ => a == b,
        }
    }

    fn cons(&self, a: Constraint, b: Constraint) -> bool {
        self.dim(a.lhs, b.lhs) && self.dim(a.rhs, b.rhs)
    }
}

fn aeq_list(env: &DimEnv, xs: &[Term], ys: &[Term]) -> bool {
    xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| aeq(env, x, y))
}

fn aeq_tube(env: &DimEnv, xs: &[Tube], ys: &[Tube]) -> bool {
    xs.len() == ys.len()
        && xs.iter().zip(ys).all(|(x, y)| {
            env.cons(x.cons, y.cons) && aeq(&env.bind(x.dim, y.dim), &x.body, &y.body)
        })
}

fn aeq_tele(env: &DimEnv, a: &Telescope, b: &Telescope) -> bool {
    a.len() == b.len() && a.0.iter().zip(&b.0).all(|(x, y)| aeq(env, x, y))
}

fn aeq_argty(env: &DimEnv, a: &ArgType, b: &ArgType) -> bool {
    match (a, b) {
        (ArgType::SelfAt(x), ArgType::SelfAt(y)) => aeq_list(env, x, y),
        (ArgType::ArgPi(d1, c1), ArgType::ArgPi(d2, c2)) => {
            aeq(env, d1, d2) && aeq_argty(env, c1, c2)
        }
        _ => false,
    }
}

fn aeq_bterm(env: &DimEnv, a: &BoundaryTerm, b: &BoundaryTerm) -> bool {
    use BoundaryTerm::*;
    match (a, b) {
        (BVar(i), BVar(j)) => i == j,
        (
            BIntro {
                label: l1,
                dims: d1,
                params: p1,
                args: a1,
            },
            BIntro {
                label: l2,
                dims: d2,
                params: p2,
                args: a2,
            },
        ) => {
            l1 == l2
                && d1.len() == d2.len()
                && d1.iter().zip(d2).all(|(x, y)| env.dim(*x, *y))
                && aeq_list(env, p1, p2)
                && a1.len() == a2.len()
                && a1.iter().zip(a2).all(|(x, y)| aeq_bterm(env, x, y))
        }
        (
            BFhcom {
                indices: i1,
                r: r1,
                r2: s1,
                cap: c1,
                tube: t1,
            },
            BFhcom {
                indices: i2,
                r: r2d,
                r2: s2,
                cap: c2,
                tube: t2,
            },
        ) => {
            aeq_list(env, i1, i2)
                && env.dim(*r1, *r2d)
                && env.dim(*s1, *s2)
                && aeq_bterm(env, c1, c2)
                && t1.len() == t2.len()
                && t1.iter().zip(t2).all(|(x, y)| {
                    env.cons(x.cons, y.cons)
                        && aeq_bterm(&env.bind(x.dim, y.dim), &x.body, &y.body)
                })
        }
        (
            BFcoe {
                dim: z1,
                line: l1,
                r: r1,
                r2: s1,
                body: b1,
            },
            BFcoe {
                dim: z2,
                line: l2,
                r: r2d,
                r2: s2,
                body: b2,
            },
        ) => {
            env.dim(*r1, *r2d)
                && env.dim(*s1, *s2)
                && aeq_list(&env.bind(*z1, *z2), l1, l2)
                && aeq_bterm(env, b1, b2)
        }
        (BLam(x), BLam(y)) => aeq_bterm(env, x, y),
        (BApp(x, s), BApp(y, t)) => aeq_bterm(env, x, y) && aeq(env, s, t),
        (
            BNatRec {
                scrut: s1,
                zero: z1,
                suc: q1,
            },
            BNatRec {
                scrut: s2,
                zero: z2,
                suc: q2,
            },
        ) => aeq(env, s1, s2) && aeq_bterm(env, z1, z2) && aeq_bterm(env, q1, q2),
        _ => false,
    }
}

fn aeq_schema(env: &DimEnv, a: &ConstrList, b: &ConstrList) -> bool {
    a.len() == b.len()
        && a.0.iter().zip(&b.0).all(|((l1, c1), (l2, c2))| {
            if l1 != l2
                || c1.dims.len() != c2.dims.len()
                || !aeq_tele(env, &c1.params, &c2.params)
                || !aeq_list(env, &c1.indices, &c2.indices)
                || c1.args.len() != c2.args.len()
                || !c1
                    .args
                    .iter()
                    .zip(&c2.args)
                    .all(|(x, y)| aeq_argty(env, x, y))
                || c1.boundary.len() != c2.boundary.len()
            {
                return false;
            }
            match env.binds(&c1.dims, &c2.dims) {
                None => false,
                Some(env2) => c1.boundary.iter().zip(&c2.boundary).all(|((k1, m1), (k2, m2))| {
                    env2.cons(*k1, *k2) && aeq_bterm(&env2, m1, m2)
                }),
            }
        })
}

fn aeq_cases(env: &DimEnv, a: &ElimList, b: &ElimList) -> bool {
    a.len() == b.len()
        && a.0.iter().zip(&b.0).all(|((l1, c1), (l2, c2))| {
            l1 == l2
                && c1.n_params == c2.n_params
                && c1.n_args == c2.n_args
                && match env.binds(&c1.dims, &c2.dims) {
                    None => false,
                    Some(env2) => aeq(&env2, &c1.body, &c2.body),
                }
        })
}

fn aeq(env: &DimEnv, a: &Term, b: &Term) -> bool {
    use Term::*;
    match (a, b) {
        (Var(i), Var(j)) => i == j,
        (Lam(x), Lam(y)) => aeq(env, x, y),
        (App(f1, a1), App(f2, a2)) => aeq(env, f1, f2) && aeq(env, a1, a2),
        (Pi(d1, c1), Pi(d2, c2)) => aeq(env, d1, d2) && aeq(env, c1, c2),
        (
            Ind {
                tele: t1,
                schema: s1,
                indices: i1,
            },
            Ind {
                tele: t2,
                schema: s2,
                indices: i2,
            },
        ) => aeq_tele(env, t1, t2) && aeq_schema(env, s1, s2) && aeq_list(env, i1, i2),
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
                && d1.len() == d2.len()
                && d1.iter().zip(d2).all(|(x, y)| env.dim(*x, *y))
                && aeq_schema(env, s1, s2)
                && aeq_list(env, p1, p2)
                && aeq_list(env, a1, a2)
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
        ) => env.dim(*r1, *r2d) && env.dim(*s1, *s2) && aeq(env, c1, c2) && aeq_tube(env, t1, t2),
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
            env.dim(*r1, *r2d)
                && env.dim(*s1, *s2)
                && aeq_list(&env.bind(*z1, *z2), l1, l2)
                && aeq(env, b1, b2)
        }
        (
            Fcom {
                dim: z1,
                line: l1,
                r: r1,
                r2: s1,
                cap: c1,
                tube: t1,
            },
            Fcom {
                dim: z2,
                line: l2,
                r: r2d,
                r2: s2,
                cap: c2,
                tube: t2,
            },
        ) => {
            env.dim(*r1, *r2d)
                && env.dim(*s1, *s2)
                && aeq_list(&env.bind(*z1, *z2), l1, l2)
                && aeq(env, c1, c2)
                && aeq_tube(env, t1, t2)
        }
        (
            Hcom {
                ty: y1,
                r: r1,
                r2: s1,
                cap: c1,
                tube: t1,
            },
            Hcom {
                ty: y2,
                r: r2d,
                r2: s2,
                cap: c2,
                tube: t2,
            },
        ) => {
            aeq(env, y1, y2)
                && env.dim(*r1, *r2d)
                && env.dim(*s1, *s2)
                && aeq(env, c1, c2)
                && aeq_tube(env, t1, t2)
        }
        (
            Coe {
                dim: z1,
                line: l1,
                r: r1,
                r2: s1,
                body: b1,
            },
            Coe {
                dim: z2,
                line: l2,
                r: r2d,
                r2: s2,
                body: b2,
            },
        ) => {
            env.dim(*r1, *r2d)
                && env.dim(*s1, *s2)
                && aeq(&env.bind(*z1, *z2), l1, l2)
                && aeq(env, b1, b2)
        }
        (
            Com {
                dim: z1,
                line: l1,
                r: r1,
                r2: s1,
                cap: c1,
                tube: t1,
            },
            Com {
                dim: z2,
                line: l2,
                r: r2d,
                r2: s2,
                cap: c2,
                tube: t2,
            },
        ) => {
            env.dim(*r1, *r2d)
                && env.dim(*s1, *s2)
                && aeq(&env.bind(*z1, *z2), l1, l2)
                && aeq(env, c1, c2)
                && aeq_tube(env, t1, t2)
        }
        (
            Tcoe {
                dim: z1,
                tele: e1,
                schema: s1,
                r: r1,
                r2: q1,
                body: b1,
            },
            Tcoe {
                dim: z2,
                tele: e2,
                schema: s2,
                r: r2d,
                r2: q2,
                body: b2,
            },
        ) => {
            env.dim(*r1, *r2d) && env.dim(*q1, *q2) && {
                let inner = env.bind(*z1, *z2);
                aeq_tele(&inner, e1, e2) && aeq_schema(&inner, s1, s2) && aeq(env, b1, b2)
            }
        }
        (
            Elim {
                motive: m1,
                indices: i1,
                scrut: s1,
                cases: c1,
            },
            Elim {
                motive: m2,
                indices: i2,
                scrut: s2,
                cases: c2,
            },
        ) => {
            aeq(env, m1, m2)
                && aeq_list(env, i1, i2)
                && aeq(env, s1, s2)
                && aeq_cases(env, c1, c2)
        }
        (
            PathTy {
                dim: z1,
                ty: t1,
                lhs: l1,
                rhs: q1,
            },
            PathTy {
                dim: z2,
                ty: t2,
                lhs: l2,
                rhs: q2,
            },
        ) => aeq(&env.bind(*z1, *z2), t1, t2) && aeq(env, l1, l2) && aeq(env, q1, q2),
        (PLam { dim: z1, body: b1 }, PLam { dim: z2, body: b2 }) => {
            aeq(&env.bind(*z1, *z2), b1, b2)
        }
        (PApp(p1, d1), PApp(p2, d2)) => aeq(env, p1, p2) && env.dim(*d1, *d2),
        (
            NatRec {
                scrut: s1,
                zero: z1,
                suc: q1,
            },
            NatRec {
                scrut: s2,
                zero: z2,
                suc: q2,
            },
        ) => aeq(env, s1, s2) && aeq(env, z1, z2) && aeq(env, q1, q2),
        _ => false,
    }
}

/// Alpha equality: term variables compare as indices, dimension binders up
/// to consistent renaming.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    aeq(&DimEnv::default(), a, b)
}

pub fn alpha_eq_schema(a: &ConstrList, b: &ConstrList) -> bool {
    aeq_schema(&DimEnv::default(), a, b)
}

pub fn alpha_eq_tele(a: &Telescope, b: &Telescope) -> bool {
    aeq_tele(&DimEnv::default(), a, b)
}

pub fn alpha_eq_argty(a: &ArgType, b: &ArgType) -> bool {
    aeq_argty(&DimEnv::default(), a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> DimVar {
        fresh_dim()
    }

    #[test]
    fn fresh_dims_are_distinct() {
        let mut seen = HashSet::new();
        for _ in 0..1000 {
            assert!(seen.insert(fresh_dim()));
        }
    }

    #[test]
    fn constraint_satisfaction() {
        assert!(Constraint::new(Dim::Zero, Dim::Zero).satisfied());
        let v = x();
        assert!(Constraint::new(Dim::Var(v), Dim::Var(v)).satisfied());
        assert!(!Constraint::new(Dim::Var(v), Dim::Zero).satisfied());
    }

    #[test]
    fn validity_examples() {
        let v = x();
        assert!(ctx_valid(&[
            Constraint::new(Dim::Var(v), Dim::Zero),
            Constraint::new(Dim::Var(v), Dim::One)
        ]));
        assert!(ctx_valid(&[Constraint::new(Dim::Zero, Dim::Zero)]));
        assert!(!ctx_valid(&[Constraint::new(Dim::Var(v), Dim::Zero)]));
        // Mirrored orientation is accepted.
        assert!(ctx_valid(&[
            Constraint::new(Dim::Zero, Dim::Var(v)),
            Constraint::new(Dim::Var(v), Dim::One)
        ]));
        assert!(!ctx_valid(&[]));
    }

    #[test]
    fn mgu_examples() {
        let v = x();
        let w = x();
        let s = constraint_mgu(Constraint::new(Dim::Var(v), Dim::Zero)).unwrap();
        assert_eq!(s.dim(Dim::Var(v)), Dim::Zero);
        // Later-issued variable is substituted away.
        let s = constraint_mgu(Constraint::new(Dim::Var(v), Dim::Var(w))).unwrap();
        assert_eq!(s.dim(Dim::Var(w)), Dim::Var(v));
        assert_eq!(s.dim(Dim::Var(v)), Dim::Var(v));
        assert!(constraint_mgu(Constraint::new(Dim::Zero, Dim::One)).is_none());
    }

    #[test]
    fn mgu_satisfies() {
        let v = x();
        let w = x();
        for c in [
            Constraint::new(Dim::Var(v), Dim::Zero),
            Constraint::new(Dim::One, Dim::Var(w)),
            Constraint::new(Dim::Var(v), Dim::Var(w)),
            Constraint::new(Dim::Var(v), Dim::Var(v)),
        ] {
            let s = constraint_mgu(c).unwrap();
            assert!(c.subst(&s).satisfied(), "{:?}", c);
        }
    }

    #[test]
    fn subst_composition_on_dims() {
        let v = x();
        let w = x();
        let a = DimSubst::single(v, Dim::Var(w));
        let b = DimSubst::single(w, Dim::One);
        let ab = a.compose(&b);
        assert_eq!(ab.dim(Dim::Var(v)), Dim::One);
        assert_eq!(ab.dim(Dim::Var(w)), Dim::One);
    }

    #[test]
    fn term_subst_var() {
        // Substituting into a bare variable returns the argument.
        let m = Term::lam(Term::var(0));
        assert_eq!(term_subst1(&Term::var(0), &m), m);
    }

    #[test]
    fn term_subst_shadowing() {
        // The identity function is unaffected by substitution for an outer
        // variable: (\a. a)[M / outer] stays \a. a.
        let id = Term::lam(Term::var(0));
        assert_eq!(term_subst1(&id, &Term::var(7)), id);
    }

    #[test]
    fn term_subst_avoids_capture() {
        // t = \b. a b with a free (index 1 inside the lambda). Substituting
        // the ambient variable b (index 0 outside) for a must shift it to
        // index 1 under the binder rather than capturing.
        let t = Term::lam(Term::app(Term::var(1), Term::var(0)));
        let got = term_subst1(&t, &Term::var(0));
        let want = Term::lam(Term::app(Term::var(1), Term::var(0)));
        assert_eq!(got, want);
    }

    #[test]
    fn dim_subst_homomorphic_on_fhcom() {
        let xv = x();
        let yv = x();
        let t = Term::Fhcom {
            r: Dim::Zero,
            r2: Dim::Var(xv),
            cap: Box::new(Term::var(0)),
            tube: vec![Tube::new(
                Constraint::new(Dim::Var(xv), Dim::Zero),
                yv,
                Term::var(1),
            )],
        };
        let got = dim_subst(&t, &DimSubst::single(xv, Dim::One));
        match got {
            Term::Fhcom { r, r2, tube, .. } => {
                assert_eq!(r, Dim::Zero);
                assert_eq!(r2, Dim::One);
                assert_eq!(tube[0].cons, Constraint::new(Dim::One, Dim::Zero));
            }
            _ => panic!("expected fhcom"),
        }
    }

    #[test]
    fn dim_subst_identity() {
        let xv = x();
        let t = Term::plam(xv, Term::papp(Term::var(0), Dim::Var(xv)));
        let got = dim_subst(&t, &DimSubst::identity());
        assert_eq!(got, t);
        assert!(alpha_eq(&got, &t));
    }

    #[test]
    fn dim_subst_renames_captured_binder() {
        // plam z. p @ w, substituting z for w: the bound z must be renamed
        // before w becomes z.
        let z = x();
        let w = x();
        let t = Term::plam(z, Term::papp(Term::var(0), Dim::Var(w)));
        let got = dim_subst(&t, &DimSubst::single(w, Dim::Var(z)));
        match &got {
            Term::PLam { dim, body } => {
                assert_ne!(*dim, z);
                assert_eq!(**body, Term::papp(Term::var(0), Dim::Var(z)));
            }
            _ => panic!("expected plam"),
        }
        // The renamed result is still alpha-equal to the intended one.
        let z2 = x();
        let want = Term::plam(z2, Term::papp(Term::var(0), Dim::Var(z)));
        assert!(alpha_eq(&got, &want));
    }

    #[test]
    fn dim_subst_composes() {
        let xv = x();
        let yv = x();
        let zv = x();
        let t = Term::plam(zv, Term::papp(Term::var(0), Dim::Var(xv)));
        let a = DimSubst::single(xv, Dim::Var(yv));
        let b = DimSubst::single(yv, Dim::One);
        let lhs = dim_subst(&dim_subst(&t, &a), &b);
        let rhs = dim_subst(&t, &a.compose(&b));
        assert!(alpha_eq(&lhs, &rhs));
    }

    #[test]
    fn alpha_eq_plam() {
        let a = x();
        let b = x();
        assert!(alpha_eq(
            &Term::plam(a, Term::papp(Term::var(0), Dim::Var(a))),
            &Term::plam(b, Term::papp(Term::var(0), Dim::Var(b)))
        ));
        assert!(!alpha_eq(
            &Term::plam(a, Term::papp(Term::var(0), Dim::Var(a))),
            &Term::plam(b, Term::papp(Term::var(0), Dim::Zero))
        ));
    }

    #[test]
    fn height_of_labels_and_bterms() {
        let schema = ConstrList(vec![
            (
                "base".into(),
                Constructor {
                    dims: vec![],
                    params: Telescope::empty(),
                    indices: vec![],
                    args: vec![],
                    boundary: vec![],
                },
            ),
            (
                "lp".into(),
                Constructor {
                    dims: vec![x()],
                    params: Telescope::empty(),
                    indices: vec![],
                    args: vec![],
                    boundary: vec![],
                },
            ),
        ]);
        assert_eq!(label_height(&schema, "lp").unwrap(), 1);
        assert_eq!(
            bterm_height(&schema, &BoundaryTerm::BVar(0)).unwrap(),
            -1
        );
        let m = BoundaryTerm::BIntro {
            label: "base".into(),
            dims: vec![],
            params: vec![],
            args: vec![],
        };
        assert_eq!(bterm_height(&schema, &m).unwrap(), 0);
        assert!(label_height(&schema, "nope").is_err());
    }

    #[test]
    fn free_dim_collection_respects_binders() {
        let z = x();
        let w = x();
        let t = Term::plam(z, Term::papp(Term::var(0), Dim::Var(w)));
        let fd = free_dims(&t);
        assert!(fd.contains(&w));
        assert!(!fd.contains(&z));
    }
}
