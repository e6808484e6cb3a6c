//! Pretty-printer for the `.cit` surface syntax. Binder names are assigned
//! from fixed pools, skipping anything that would collide with a declared
//! name, so printed declarations re-parse to alpha-equal syntax.

use super::{DataDecl, DefDecl, Item, SourceFile};
use crate::syntax::*;
use std::collections::{HashMap, HashSet};
use std::fmt::Write;

pub struct Printer {
    datas: Vec<DataDecl>,
    reserved: HashSet<String>,
}

const TERM_POOL: [&str; 12] = ["a", "b", "c", "d", "e", "f", "g", "h", "k", "m", "n", "o"];
const DIM_POOL: [&str; 6] = ["x", "y", "z", "w", "v", "u"];
const KEYWORDS: [&str; 18] = [
    "data", "def", "eval", "trace", "observe", "in", "rec", "self", "elim", "natrec", "hcom",
    "coe", "com", "fhcom", "fcoe", "fcom", "plam", "path",
];

#[derive(Default, Clone)]
pub struct PEnv {
    terms: Vec<String>,
    dims: HashMap<DimVar, String>,
    n_terms: usize,
    n_dims: usize,
}

impl Printer {
    pub fn new(datas: &[DataDecl]) -> Printer {
        let mut reserved: HashSet<String> = KEYWORDS.iter().map(|s| s.to_string()).collect();
        for d in datas {
            reserved.insert(d.name.clone());
            for (l, _) in &d.schema.0 {
                reserved.insert(l.clone());
            }
        }
        Printer {
            datas: datas.to_vec(),
            reserved,
        }
    }

    fn fresh_term_name(&self, env: &mut PEnv) -> String {
        loop {
            let n = env.n_terms;
            env.n_terms += 1;
            let name = if n < TERM_POOL.len() {
                TERM_POOL[n].to_string()
            } else {
                format!("{}{}", TERM_POOL[n % TERM_POOL.len()], n / TERM_POOL.len())
            };
            if !self.reserved.contains(&name) && !env.terms.contains(&name) {
                return name;
            }
        }
    }

    fn fresh_dim_name(&self, env: &mut PEnv, v: DimVar) -> String {
        loop {
            let n = env.n_dims;
            env.n_dims += 1;
            let name = if n < DIM_POOL.len() {
                DIM_POOL[n].to_string()
            } else {
                format!("{}{}", DIM_POOL[n % DIM_POOL.len()], n / DIM_POOL.len())
            };
            if !self.reserved.contains(&name) && !env.dims.values().any(|d| *d == name) {
                env.dims.insert(v, name.clone());
                return name;
            }
        }
    }

    fn dim(&self, env: &PEnv, d: Dim) -> String {
        match d {
            Dim::Zero => "0".into(),
            Dim::One => "1".into(),
            Dim::Var(v) => env
                .dims
                .get(&v)
                .cloned()
                .unwrap_or_else(|| format!("_d{}", v.0)),
        }
    }

    fn var(&self, env: &PEnv, i: u32) -> String {
        let n = env.terms.len();
        if (i as usize) < n {
            env.terms[n - 1 - i as usize].clone()
        } else {
            format!("_v{}", i)
        }
    }

    fn find_data(&self, tele: &Telescope, schema: &ConstrList) -> Option<&DataDecl> {
        self.datas
            .iter()
            .find(|d| alpha_eq_tele(&d.tele, tele) && alpha_eq_schema(&d.schema, schema))
    }

    fn is_atom(t: &Term) -> bool {
        !matches!(
            t,
            Term::Lam(_)
                | Term::App(_, _)
                | Term::PApp(_, _)
                | Term::Pi(_, _)
                | Term::PathTy { .. }
                | Term::PLam { .. }
        )
    }

    fn atom(&self, env: &mut PEnv, t: &Term) -> String {
        let s = self.term(env, t);
        if Self::is_atom(t) {
            s
        } else {
            format!("({})", s)
        }
    }

    fn tube(&self, env: &mut PEnv, tube: &[Tube]) -> String {
        let mut parts = Vec::new();
        for f in tube {
            let mut env2 = env.clone();
            let y = self.fresh_dim_name(&mut env2, f.dim);
            parts.push(format!(
                "{} = {} -> {}. {}",
                self.dim(env, f.cons.lhs),
                self.dim(env, f.cons.rhs),
                y,
                self.term(&mut env2, &f.body)
            ));
            env.n_dims = env.n_dims.max(env2.n_dims);
        }
        format!("[{}]", parts.join(" | "))
    }

    pub fn term(&self, env: &mut PEnv, t: &Term) -> String {
        match t {
            Term::Var(i) => self.var(env, *i),
            Term::Lam(b) => {
                let name = self.fresh_term_name(env);
                env.terms.push(name.clone());
                let body = self.term(env, b);
                env.terms.pop();
                format!("\\{}. {}", name, body)
            }
            Term::App(f, a) => {
                let fs = if matches!(**f, Term::App(_, _) | Term::PApp(_, _)) {
                    self.term(env, f)
                } else {
                    self.atom(env, f)
                };
                format!("{} {}", fs, self.atom(env, a))
            }
            Term::PApp(p, d) => {
                let ps = if matches!(**p, Term::App(_, _) | Term::PApp(_, _)) {
                    self.term(env, p)
                } else {
                    self.atom(env, p)
                };
                format!("{} @ {}", ps, self.dim(env, *d))
            }
            Term::Pi(dom, cod) => {
                let ds = self.term(env, dom);
                let name = self.fresh_term_name(env);
                env.terms.push(name.clone());
                let cs = self.term(env, cod);
                env.terms.pop();
                format!("({} : {}) -> {}", name, ds, cs)
            }
            Term::PathTy { dim, ty, lhs, rhs } => {
                let mut env2 = env.clone();
                let x = self.fresh_dim_name(&mut env2, *dim);
                let tys = self.term(&mut env2, ty);
                env.n_dims = env.n_dims.max(env2.n_dims);
                format!(
                    "path [{}. {}] {} {}",
                    x,
                    tys,
                    self.atom(env, lhs),
                    self.atom(env, rhs)
                )
            }
            Term::PLam { dim, body } => {
                let mut env2 = env.clone();
                let x = self.fresh_dim_name(&mut env2, *dim);
                let bs = self.term(&mut env2, body);
                env.n_dims = env.n_dims.max(env2.n_dims);
                format!("plam {}. {}", x, bs)
            }
            Term::Ind {
                tele,
                schema,
                indices,
            } => match self.find_data(tele, schema) {
                Some(d) if indices.is_empty() => d.name.clone(),
                Some(d) => {
                    let ix: Vec<String> = indices.iter().map(|t| self.term(env, t)).collect();
                    format!("{}[{}]", d.name, ix.join(", "))
                }
                None => "?ind".to_string(),
            },
            Term::Intro {
                label,
                dims,
                params,
                args,
                ..
            } => {
                let mut parts: Vec<String> = dims.iter().map(|d| self.dim(env, *d)).collect();
                parts.extend(params.iter().map(|t| self.term(env, t)));
                parts.extend(args.iter().map(|t| self.term(env, t)));
                if parts.is_empty() {
                    label.clone()
                } else {
                    format!("{}({})", label, parts.join(", "))
                }
            }
            Term::Hcom { ty, r, r2, cap, tube } => format!(
                "hcom {{{}}} {} ~> {} {} {}",
                self.term(env, ty),
                self.dim(env, *r),
                self.dim(env, *r2),
                self.atom(env, cap),
                self.tube(env, tube)
            ),
            Term::Coe {
                dim,
                line,
                r,
                r2,
                body,
            } => {
                let mut env2 = env.clone();
                let z = self.fresh_dim_name(&mut env2, *dim);
                let ls = self.term(&mut env2, line);
                env.n_dims = env.n_dims.max(env2.n_dims);
                format!(
                    "coe {{{}. {}}} {} ~> {} {}",
                    z,
                    ls,
                    self.dim(env, *r),
                    self.dim(env, *r2),
                    self.atom(env, body)
                )
            }
            Term::Com {
                dim,
                line,
                r,
                r2,
                cap,
                tube,
            } => {
                let mut env2 = env.clone();
                let z = self.fresh_dim_name(&mut env2, *dim);
                let ls = self.term(&mut env2, line);
                env.n_dims = env.n_dims.max(env2.n_dims);
                format!(
                    "com {{{}. {}}} {} ~> {} {} {}",
                    z,
                    ls,
                    self.dim(env, *r),
                    self.dim(env, *r2),
                    self.atom(env, cap),
                    self.tube(env, tube)
                )
            }
            Term::Fhcom { r, r2, cap, tube } => format!(
                "fhcom {} ~> {} {} {}",
                self.dim(env, *r),
                self.dim(env, *r2),
                self.atom(env, cap),
                self.tube(env, tube)
            ),
            Term::Fcoe {
                dim,
                line,
                r,
                r2,
                body,
            } => {
                let mut env2 = env.clone();
                let z = self.fresh_dim_name(&mut env2, *dim);
                let ls: Vec<String> = line.iter().map(|t| self.term(&mut env2, t)).collect();
                env.n_dims = env.n_dims.max(env2.n_dims);
                format!(
                    "fcoe {{{}. [{}]}} {} ~> {} {}",
                    z,
                    ls.join(", "),
                    self.dim(env, *r),
                    self.dim(env, *r2),
                    self.atom(env, body)
                )
            }
            Term::Fcom {
                dim,
                line,
                r,
                r2,
                cap,
                tube,
            } => {
                let mut env2 = env.clone();
                let z = self.fresh_dim_name(&mut env2, *dim);
                let ls: Vec<String> = line.iter().map(|t| self.term(&mut env2, t)).collect();
                env.n_dims = env.n_dims.max(env2.n_dims);
                format!(
                    "fcom {{{}. [{}]}} {} ~> {} {} {}",
                    z,
                    ls.join(", "),
                    self.dim(env, *r),
                    self.dim(env, *r2),
                    self.atom(env, cap),
                    self.tube(env, tube)
                )
            }
            Term::Tcoe {
                dim,
                tele,
                schema,
                r,
                r2,
                body,
            } => {
                // Internal former: printed for traces, not re-parseable.
                let name = self
                    .find_data(tele, schema)
                    .map(|d| d.name.clone())
                    .unwrap_or_else(|| "?schema".to_string());
                let mut env2 = env.clone();
                let z = self.fresh_dim_name(&mut env2, *dim);
                env.n_dims = env.n_dims.max(env2.n_dims);
                format!(
                    "tcoe {{{}. {}}} {} ~> {} {}",
                    z,
                    name,
                    self.dim(env, *r),
                    self.dim(env, *r2),
                    self.atom(env, body)
                )
            }
            Term::Elim {
                motive,
                indices,
                scrut,
                cases,
            } => {
                let mut env2 = env.clone();
                let mut binders = Vec::new();
                for _ in 0..=indices.len() {
                    let n = self.fresh_term_name(&mut env2);
                    env2.terms.push(n.clone());
                    binders.push(n);
                }
                let ms = self.term(&mut env2, motive);
                let ix: Vec<String> = indices.iter().map(|t| self.term(env, t)).collect();
                let mut case_strs = Vec::new();
                for (label, case) in &cases.0 {
                    let mut env3 = env.clone();
                    let mut parts = Vec::new();
                    for d in &case.dims {
                        let n = self.fresh_dim_name(&mut env3, *d);
                        parts.push(format!("@{}", n));
                    }
                    for _ in 0..(case.n_params + 2 * case.n_args) {
                        let n = self.fresh_term_name(&mut env3);
                        env3.terms.push(n.clone());
                        parts.push(n);
                    }
                    let body = self.term(&mut env3, &case.body);
                    if parts.is_empty() {
                        case_strs.push(format!("{} -> {}", label, body));
                    } else {
                        case_strs.push(format!("{}({}) -> {}", label, parts.join(", "), body));
                    }
                }
                format!(
                    "elim [{}. {}] [{}] {} {{ {} }}",
                    binders.join(" "),
                    ms,
                    ix.join(", "),
                    self.atom(env, scrut),
                    case_strs.join(" | ")
                )
            }
            Term::NatRec { scrut, zero, suc } => {
                let ss = self.atom(env, scrut);
                let zs = self.term(env, zero);
                let a = self.fresh_term_name(env);
                env.terms.push(a.clone());
                let p = self.fresh_term_name(env);
                env.terms.push(p.clone());
                let qs = self.term(env, suc);
                env.terms.pop();
                env.terms.pop();
                format!(
                    "natrec {} {{ zero -> {} | suc({}, {}) -> {} }}",
                    ss, zs, a, p, qs
                )
            }
        }
    }

    pub fn term_str(&self, t: &Term) -> String {
        self.term(&mut PEnv::default(), t)
    }

    fn arg_type(&self, env: &mut PEnv, a: &ArgType) -> String {
        match a {
            ArgType::SelfAt(ix) if ix.is_empty() => "self".into(),
            ArgType::SelfAt(ix) => {
                let parts: Vec<String> = ix.iter().map(|t| self.term(env, t)).collect();
                format!("self[{}]", parts.join(", "))
            }
            ArgType::ArgPi(dom, cod) => {
                let ds = self.term(env, dom);
                let name = self.fresh_term_name(env);
                env.terms.push(name.clone());
                let cs = self.arg_type(env, cod);
                env.terms.pop();
                format!("({} : {}) -> {}", name, ds, cs)
            }
        }
    }

    fn bterm(&self, env: &mut PEnv, bnames: &[String], m: &BoundaryTerm) -> String {
        match m {
            BoundaryTerm::BVar(j) => bnames
                .get(*j as usize)
                .cloned()
                .unwrap_or_else(|| format!("_p{}", j)),
            BoundaryTerm::BIntro {
                label,
                dims,
                params,
                args,
            } => {
                let mut parts: Vec<String> = dims.iter().map(|d| self.dim(env, *d)).collect();
                parts.extend(params.iter().map(|t| self.term(env, t)));
                parts.extend(args.iter().map(|a| self.bterm(env, bnames, a)));
                if parts.is_empty() {
                    label.clone()
                } else {
                    format!("{}({})", label, parts.join(", "))
                }
            }
            BoundaryTerm::BFhcom {
                indices,
                r,
                r2,
                cap,
                tube,
            } => {
                let ann = if indices.is_empty() {
                    String::new()
                } else {
                    let parts: Vec<String> = indices.iter().map(|t| self.term(env, t)).collect();
                    format!("{{{}}} ", parts.join(", "))
                };
                let mut faces = Vec::new();
                for f in tube {
                    let mut env2 = env.clone();
                    let y = self.fresh_dim_name(&mut env2, f.dim);
                    faces.push(format!(
                        "{} = {} -> {}. {}",
                        self.dim(env, f.cons.lhs),
                        self.dim(env, f.cons.rhs),
                        y,
                        self.bterm(&mut env2, bnames, &f.body)
                    ));
                    env.n_dims = env.n_dims.max(env2.n_dims);
                }
                format!(
                    "fhcom {}{} ~> {} ({}) [{}]",
                    ann,
                    self.dim(env, *r),
                    self.dim(env, *r2),
                    self.bterm(env, bnames, cap),
                    faces.join(" | ")
                )
            }
            BoundaryTerm::BFcoe {
                dim,
                line,
                r,
                r2,
                body,
            } => {
                let mut env2 = env.clone();
                let z = self.fresh_dim_name(&mut env2, *dim);
                let ls: Vec<String> = line.iter().map(|t| self.term(&mut env2, t)).collect();
                env.n_dims = env.n_dims.max(env2.n_dims);
                format!(
                    "fcoe {{{}. [{}]}} {} ~> {} ({})",
                    z,
                    ls.join(", "),
                    self.dim(env, *r),
                    self.dim(env, *r2),
                    self.bterm(env, bnames, body)
                )
            }
            BoundaryTerm::BLam(b) => {
                let name = self.fresh_term_name(env);
                env.terms.push(name.clone());
                let bs = self.bterm(env, bnames, b);
                env.terms.pop();
                format!("\\{}. {}", name, bs)
            }
            BoundaryTerm::BApp(b, arg) => {
                let bs = match **b {
                    BoundaryTerm::BVar(_) | BoundaryTerm::BApp(_, _) => {
                        self.bterm(env, bnames, b)
                    }
                    _ => format!("({})", self.bterm(env, bnames, b)),
                };
                format!("{} {}", bs, self.atom(env, arg))
            }
            BoundaryTerm::BNatRec { scrut, zero, suc } => {
                let ss = self.atom(env, scrut);
                let zs = self.bterm(env, bnames, zero);
                let a = self.fresh_term_name(env);
                env.terms.push(a.clone());
                let mut bnames2 = bnames.to_vec();
                let p = format!("{}r", a);
                bnames2.push(p.clone());
                let qs = self.bterm(env, &bnames2, suc);
                env.terms.pop();
                format!(
                    "natrec {} {{ zero -> {} | suc({}, {}) -> {} }}",
                    ss, zs, a, p, qs
                )
            }
        }
    }

    pub fn data_decl(&self, d: &DataDecl) -> String {
        let mut out = String::new();
        write!(out, "data {}", d.name).unwrap();
        let mut env = PEnv::default();
        if !d.tele.is_empty() {
            let mut parts = Vec::new();
            for ty in &d.tele.0 {
                let ts = self.term(&mut env, ty);
                let name = self.fresh_term_name(&mut env);
                env.terms.push(name.clone());
                parts.push(format!("{} : {}", name, ts));
            }
            write!(out, "({})", parts.join(", ")).unwrap();
        }
        write!(out, " =").unwrap();
        for (i, (label, c)) in d.schema.0.iter().enumerate() {
            let mut env = PEnv {
                terms: Vec::new(),
                dims: HashMap::new(),
                n_terms: d.tele.len(),
                n_dims: 0,
            };
            // Index-telescope binder names are fixed by position.
            let mut index_env = PEnv::default();
            for _ in 0..d.tele.len() {
                let n = self.fresh_term_name(&mut index_env);
                index_env.terms.push(n);
            }
            env.n_terms = 0;
            let lead = if i == 0 { " " } else { "\n  | " };
            write!(out, "{}{}", lead, label).unwrap();
            let mut parts = Vec::new();
            for x in &c.dims {
                let n = self.fresh_dim_name(&mut env, *x);
                parts.push(format!("@{}", n));
            }
            for ty in &c.params.0 {
                let ts = self.term(&mut env, ty);
                let name = self.fresh_term_name(&mut env);
                env.terms.push(name.clone());
                parts.push(format!("{} : {}", name, ts));
            }
            let mut bnames = Vec::new();
            for a in &c.args {
                let ats = self.arg_type(&mut env, a);
                let name = self.fresh_term_name(&mut env);
                bnames.push(name.clone());
                parts.push(format!("rec {} : {}", name, ats));
            }
            if !parts.is_empty() {
                write!(out, "({})", parts.join(", ")).unwrap();
            }
            if !c.indices.is_empty() {
                let ix: Vec<String> = c.indices.iter().map(|t| self.term(&mut env, t)).collect();
                write!(out, " in [{}]", ix.join(", ")).unwrap();
            }
            if !c.boundary.is_empty() {
                let mut faces = Vec::new();
                for (cons, m) in &c.boundary {
                    faces.push(format!(
                        "{} = {} -> {}",
                        self.dim(&env, cons.lhs),
                        self.dim(&env, cons.rhs),
                        self.bterm(&mut env, &bnames, m)
                    ));
                }
                write!(out, " [{}]", faces.join(" | ")).unwrap();
            }
        }
        out
    }

    pub fn item(&self, item: &Item) -> String {
        match item {
            Item::Data(d) => self.data_decl(d),
            Item::Def(DefDecl { name, ann, body, .. }) => match ann {
                Some(t) => format!(
                    "def {} : {} = {}",
                    name,
                    self.term_str(t),
                    self.term_str(body)
                ),
                None => format!("def {} = {}", name, self.term_str(body)),
            },
            Item::Eval { term, .. } => format!("eval {}", self.term_str(term)),
            Item::Trace { term, .. } => format!("trace {}", self.term_str(term)),
            Item::Observe { term, at, .. } => {
                format!("observe {} : {}", self.term_str(term), self.term_str(at))
            }
        }
    }

    pub fn file(&self, f: &SourceFile) -> String {
        let mut out = String::new();
        for item in &f.items {
            out.push_str(&self.item(item));
            out.push('\n');
        }
        out
    }
}
