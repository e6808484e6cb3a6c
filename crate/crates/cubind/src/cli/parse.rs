//! Lexer and recursive-descent parser for the `.cit` surface syntax.
//!
//! The grammar is LL with explicit binders. Constructor applications are
//! written flat — `surf(x, y)`, `wqsup(a, g)` — and split into dimension,
//! parameter, and recursive-argument groups using the declared schema.
//! Definitions are expanded at use sites.

use super::{DataDecl, DefDecl, Item, SourceFile};
use crate::syntax::*;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sym(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
struct Sp {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Sp>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let bump = |chars: &mut std::iter::Peekable<std::str::Chars>,
                        line: &mut usize,
                        col: &mut usize| {
            let c = chars.next().unwrap();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars, &mut line, &mut col);
            continue;
        }
        if c == '-' {
            // Either a comment `--` or the arrow `->`.
            bump(&mut chars, &mut line, &mut col);
            match chars.peek() {
                Some('-') => {
                    while let Some(&d) = chars.peek() {
                        if d == '\n' {
                            break;
                        }
                        bump(&mut chars, &mut line, &mut col);
                    }
                    continue;
                }
                Some('>') => {
                    bump(&mut chars, &mut line, &mut col);
                    out.push(Sp {
                        tok: Tok::Sym("->"),
                        line: l0,
                        col: c0,
                    });
                    continue;
                }
                _ => {
                    return Err(ParseError {
                        line: l0,
                        col: c0,
                        message: "stray '-'".into(),
                    })
                }
            }
        }
        if c == '~' {
            bump(&mut chars, &mut line, &mut col);
            if chars.peek() == Some(&'>') {
                bump(&mut chars, &mut line, &mut col);
                out.push(Sp {
                    tok: Tok::Sym("~>"),
                    line: l0,
                    col: c0,
                });
                continue;
            }
            return Err(ParseError {
                line: l0,
                col: c0,
                message: "expected '~>'".into(),
            });
        }
        let sym = match c {
            '(' => Some("("),
            ')' => Some(")"),
            '[' => Some("["),
            ']' => Some("]"),
            '{' => Some("{"),
            '}' => Some("}"),
            ',' => Some(","),
            ':' => Some(":"),
            '.' => Some("."),
            '|' => Some("|"),
            '\\' => Some("\\"),
            '@' => Some("@"),
            '=' => Some("="),
            _ => None,
        };
        if let Some(s) = sym {
            bump(&mut chars, &mut line, &mut col);
            out.push(Sp {
                tok: Tok::Sym(s),
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    word.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            out.push(Sp {
                tok: Tok::Ident(word),
                line: l0,
                col: c0,
            });
            continue;
        }
        return Err(ParseError {
            line: l0,
            col: c0,
            message: format!("unexpected character {:?}", c),
        });
    }
    out.push(Sp {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// Binder scopes active while parsing a term or boundary term.
#[derive(Debug, Clone, Default)]
struct Scope {
    terms: Vec<String>,
    dims: Vec<(String, DimVar)>,
    bvars: Vec<String>,
}

impl Scope {
    fn term_index(&self, name: &str) -> Option<u32> {
        self.terms
            .iter()
            .rev()
            .position(|n| n == name)
            .map(|i| i as u32)
    }
    fn dim_var(&self, name: &str) -> Option<DimVar> {
        self.dims
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }
    fn bvar_index(&self, name: &str) -> Option<u32> {
        self.bvars.iter().position(|n| n == name).map(|i| i as u32)
    }
    fn push_term(&mut self, name: &str) {
        self.terms.push(name.to_string());
    }
    fn push_dim(&mut self, name: &str) -> DimVar {
        let v = fresh_dim();
        self.dims.push((name.to_string(), v));
        v
    }
}

pub struct Parser {
    toks: Vec<Sp>,
    pos: usize,
    pub datas: Vec<DataDecl>,
    labels: HashMap<String, usize>,
    defs: Vec<(String, Option<Term>, Term)>,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            datas: Vec::new(),
            labels: HashMap::new(),
            defs: Vec::new(),
        })
    }

    /// Seed the declaration environment from earlier items (used when
    /// parsing `-e` expressions against a loaded file).
    pub fn with_env(src: &str, items: &[Item]) -> Result<Parser, ParseError> {
        let mut p = Parser::new(src)?;
        for item in items {
            match item {
                Item::Data(d) => p.install_data(d.clone()),
                Item::Def(d) => p.defs.push((d.name.clone(), d.ann.clone(), d.body.clone())),
                _ => {}
            }
        }
        Ok(p)
    }

    fn install_data(&mut self, d: DataDecl) {
        for (l, _) in &d.schema.0 {
            self.labels.insert(l.clone(), self.datas.len());
        }
        self.datas.push(d);
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> (usize, usize) {
        (self.toks[self.pos].line, self.toks[self.pos].col)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError {
            line,
            col,
            message: msg.into(),
        })
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat_sym(&mut self, s: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Sym(t) if *t == s => {
                self.next();
                Ok(())
            }
            other => self.fail(format!("expected `{}`, found {:?}", s, other)),
        }
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn eat_kw(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(w) if w == kw => {
                self.next();
                Ok(())
            }
            other => self.fail(format!("expected `{}`, found {:?}", kw, other)),
        }
    }

    fn at_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(w) if w == kw)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Tok::Ident(w) => Ok(w),
            other => self.fail(format!("expected an identifier, found {:?}", other)),
        }
    }

    // -----------------------------------------------------------------
    // Files
    // -----------------------------------------------------------------

    fn file(&mut self) -> Result<SourceFile, ParseError> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => break,
                Tok::Ident(w) if w == "data" => {
                    let line = self.here().0;
                    let d = self.data_decl(line)?;
                    self.install_data(d.clone());
                    items.push(Item::Data(d));
                }
                Tok::Ident(w) if w == "def" => {
                    let line = self.here().0;
                    let d = self.def_decl(line)?;
                    self.defs.push((d.name.clone(), d.ann.clone(), d.body.clone()));
                    items.push(Item::Def(d));
                }
                Tok::Ident(w) if w == "eval" => {
                    let line = self.here().0;
                    self.next();
                    let term = self.term(&mut Scope::default())?;
                    items.push(Item::Eval { line, term });
                }
                Tok::Ident(w) if w == "trace" => {
                    let line = self.here().0;
                    self.next();
                    let term = self.term(&mut Scope::default())?;
                    items.push(Item::Trace { line, term });
                }
                Tok::Ident(w) if w == "observe" => {
                    let line = self.here().0;
                    self.next();
                    let term = self.term(&mut Scope::default())?;
                    self.eat_sym(":")?;
                    let at = self.term(&mut Scope::default())?;
                    items.push(Item::Observe { line, term, at });
                }
                other => return self.fail(format!("expected a declaration, found {:?}", other)),
            }
        }
        Ok(SourceFile { items })
    }

    fn data_decl(&mut self, line: usize) -> Result<DataDecl, ParseError> {
        self.eat_kw("data")?;
        let name = self.ident()?;
        let mut scope = Scope::default();
        let mut tele = Vec::new();
        if self.at_sym("(") {
            self.next();
            loop {
                let binder = self.ident()?;
                self.eat_sym(":")?;
                let ty = self.term(&mut scope)?;
                scope.push_term(&binder);
                tele.push(ty);
                if self.at_sym(",") {
                    self.next();
                    continue;
                }
                break;
            }
            self.eat_sym(")")?;
        }
        self.eat_sym("=")?;
        // Constructors are visible to later boundaries as they accumulate.
        let mut schema = ConstrList::default();
        loop {
            let (label, ctor) = self.constructor(&tele, &schema)?;
            schema.0.push((label, ctor));
            if self.at_sym("|") {
                self.next();
                continue;
            }
            break;
        }
        Ok(DataDecl {
            line,
            name,
            tele: Telescope(tele),
            schema,
        })
    }

    fn constructor(
        &mut self,
        tele: &[Term],
        prefix: &ConstrList,
    ) -> Result<(String, Constructor), ParseError> {
        let label = self.ident()?;
        let mut scope = Scope::default();
        let mut dims = Vec::new();
        let mut params = Vec::new();
        let mut args: Vec<(String, ArgType)> = Vec::new();
        if self.at_sym("(") {
            self.next();
            loop {
                if self.at_sym("@") {
                    self.next();
                    let d = self.ident()?;
                    dims.push(scope.push_dim(&d));
                } else if self.at_kw("rec") {
                    self.next();
                    let rec_name = self.ident()?;
                    self.eat_sym(":")?;
                    let at = self.arg_type(&mut scope, tele.len())?;
                    args.push((rec_name, at));
                } else {
                    let pname = self.ident()?;
                    self.eat_sym(":")?;
                    if !args.is_empty() {
                        return self.fail("parameters must precede recursive arguments");
                    }
                    let ty = self.term(&mut scope)?;
                    scope.push_term(&pname);
                    params.push(ty);
                }
                if self.at_sym(",") {
                    self.next();
                    continue;
                }
                break;
            }
            self.eat_sym(")")?;
        }
        let indices = if self.at_kw("in") {
            self.next();
            self.eat_sym("[")?;
            let ts = self.term_list(&mut scope, "]")?;
            self.eat_sym("]")?;
            ts
        } else {
            if !tele.is_empty() {
                return self.fail(format!(
                    "constructor `{}` of an indexed type needs `in [...]`",
                    label
                ));
            }
            vec![]
        };
        let mut boundary = Vec::new();
        if self.at_sym("[") {
            self.next();
            scope.bvars = args.iter().map(|(n, _)| n.clone()).collect();
            loop {
                let lhs = self.dim(&scope)?;
                self.eat_sym("=")?;
                let rhs = self.dim(&scope)?;
                self.eat_sym("->")?;
                let m = self.bterm(&mut scope, prefix)?;
                boundary.push((Constraint::new(lhs, rhs), m));
                if self.at_sym("|") {
                    self.next();
                    continue;
                }
                break;
            }
            self.eat_sym("]")?;
        }
        Ok((
            label,
            Constructor {
                dims,
                params: Telescope(params),
                indices,
                args: args.into_iter().map(|(_, a)| a).collect(),
                boundary,
            },
        ))
    }

    fn arg_type(&mut self, scope: &mut Scope, n_indices: usize) -> Result<ArgType, ParseError> {
        if self.at_kw("self") {
            self.next();
            let ix = if self.at_sym("[") {
                self.next();
                let ts = self.term_list(scope, "]")?;
                self.eat_sym("]")?;
                ts
            } else {
                vec![]
            };
            if ix.len() != n_indices {
                return self.fail(format!(
                    "self reference needs {} indices, got {}",
                    n_indices,
                    ix.len()
                ));
            }
            return Ok(ArgType::SelfAt(ix));
        }
        self.eat_sym("(")?;
        let b = self.ident()?;
        self.eat_sym(":")?;
        let dom = self.term(scope)?;
        self.eat_sym(")")?;
        self.eat_sym("->")?;
        scope.push_term(&b);
        let cod = self.arg_type(scope, n_indices)?;
        scope.terms.pop();
        Ok(ArgType::arg_pi(dom, cod))
    }

    fn def_decl(&mut self, line: usize) -> Result<DefDecl, ParseError> {
        self.eat_kw("def")?;
        let name = self.ident()?;
        let ann = if self.at_sym(":") {
            self.next();
            Some(self.term(&mut Scope::default())?)
        } else {
            None
        };
        self.eat_sym("=")?;
        let body = self.term(&mut Scope::default())?;
        Ok(DefDecl { line, name, ann, body })
    }

    // -----------------------------------------------------------------
    // Dimensions and terms
    // -----------------------------------------------------------------

    fn dim(&mut self, scope: &Scope) -> Result<Dim, ParseError> {
        match self.peek().clone() {
            Tok::Ident(w) if w == "0" => {
                self.next();
                Ok(Dim::Zero)
            }
            Tok::Ident(w) if w == "1" => {
                self.next();
                Ok(Dim::One)
            }
            Tok::Ident(w) => match scope.dim_var(&w) {
                Some(v) => {
                    self.next();
                    Ok(Dim::Var(v))
                }
                None => self.fail(format!("unknown dimension `{}`", w)),
            },
            other => self.fail(format!("expected a dimension, found {:?}", other)),
        }
    }

    fn term_list(&mut self, scope: &mut Scope, closer: &str) -> Result<Vec<Term>, ParseError> {
        let mut out = Vec::new();
        if self.at_sym(closer) {
            return Ok(out);
        }
        loop {
            out.push(self.term(scope)?);
            if self.at_sym(",") {
                self.next();
                continue;
            }
            break;
        }
        Ok(out)
    }

    fn term(&mut self, scope: &mut Scope) -> Result<Term, ParseError> {
        // Lambda.
        if self.at_sym("\\") {
            self.next();
            let name = self.ident()?;
            self.eat_sym(".")?;
            scope.push_term(&name);
            let body = self.term(scope)?;
            scope.terms.pop();
            return Ok(Term::lam(body));
        }
        if self.at_kw("plam") {
            self.next();
            let name = self.ident()?;
            self.eat_sym(".")?;
            let v = scope.push_dim(&name);
            let body = self.term(scope)?;
            scope.dims.pop();
            return Ok(Term::plam(v, body));
        }
        // Dependent function type: `(a : A) -> B`.
        if self.at_sym("(") {
            if let (Tok::Ident(_), Tok::Sym(":")) = (self.peek_at(1), self.peek_at(2)) {
                self.next();
                let name = self.ident()?;
                self.eat_sym(":")?;
                let dom = self.term(scope)?;
                self.eat_sym(")")?;
                self.eat_sym("->")?;
                scope.push_term(&name);
                let cod = self.term(scope)?;
                scope.terms.pop();
                return Ok(Term::pi(dom, cod));
            }
        }
        if self.at_kw("path") {
            self.next();
            self.eat_sym("[")?;
            let name = self.ident()?;
            self.eat_sym(".")?;
            let v = scope.push_dim(&name);
            let ty = self.term(scope)?;
            scope.dims.pop();
            self.eat_sym("]")?;
            let lhs = self.atom(scope)?;
            let rhs = self.atom(scope)?;
            return Ok(Term::PathTy {
                dim: v,
                ty: Box::new(ty),
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            });
        }
        // Application chain with path application.
        let mut t = self.atom(scope)?;
        loop {
            if self.at_sym("@") {
                self.next();
                let d = self.dim(scope)?;
                t = Term::papp(t, d);
                continue;
            }
            if self.starts_atom() {
                let a = self.atom(scope)?;
                t = Term::app(t, a);
                continue;
            }
            break;
        }
        Ok(t)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Sym("(") => true,
            Tok::Ident(w) => {
                !matches!(
                    w.as_str(),
                    "data" | "def" | "eval" | "trace" | "observe" | "in" | "rec" | "self"
                ) && w != "0"
                    && w != "1"
            }
            _ => false,
        }
    }

    fn tube(&mut self, scope: &mut Scope) -> Result<Vec<Tube>, ParseError> {
        self.eat_sym("[")?;
        let mut out = Vec::new();
        if self.at_sym("]") {
            self.next();
            return Ok(out);
        }
        loop {
            let lhs = self.dim(scope)?;
            self.eat_sym("=")?;
            let rhs = self.dim(scope)?;
            self.eat_sym("->")?;
            let name = self.ident()?;
            self.eat_sym(".")?;
            let v = scope.push_dim(&name);
            let body = self.term(scope)?;
            scope.dims.pop();
            out.push(Tube::new(Constraint::new(lhs, rhs), v, body));
            if self.at_sym("|") {
                self.next();
                continue;
            }
            break;
        }
        self.eat_sym("]")?;
        Ok(out)
    }

    fn atom(&mut self, scope: &mut Scope) -> Result<Term, ParseError> {
        if self.at_sym("(") {
            self.next();
            let t = self.term(scope)?;
            self.eat_sym(")")?;
            return Ok(t);
        }
        if self.at_kw("hcom") {
            self.next();
            self.eat_sym("{")?;
            let ty = self.term(scope)?;
            self.eat_sym("}")?;
            let r = self.dim(scope)?;
            self.eat_sym("~>")?;
            let r2 = self.dim(scope)?;
            let cap = self.atom(scope)?;
            let tube = self.tube(scope)?;
            return Ok(Term::Hcom {
                ty: Box::new(ty),
                r,
                r2,
                cap: Box::new(cap),
                tube,
            });
        }
        if self.at_kw("com") || self.at_kw("coe") {
            let is_com = self.at_kw("com");
            self.next();
            self.eat_sym("{")?;
            let name = self.ident()?;
            self.eat_sym(".")?;
            let v = scope.push_dim(&name);
            let line = self.term(scope)?;
            scope.dims.pop();
            self.eat_sym("}")?;
            let r = self.dim(scope)?;
            self.eat_sym("~>")?;
            let r2 = self.dim(scope)?;
            let body = self.atom(scope)?;
            if is_com {
                let tube = self.tube(scope)?;
                return Ok(Term::Com {
                    dim: v,
                    line: Box::new(line),
                    r,
                    r2,
                    cap: Box::new(body),
                    tube,
                });
            }
            return Ok(Term::Coe {
                dim: v,
                line: Box::new(line),
                r,
                r2,
                body: Box::new(body),
            });
        }
        if self.at_kw("fhcom") {
            self.next();
            let r = self.dim(scope)?;
            self.eat_sym("~>")?;
            let r2 = self.dim(scope)?;
            let cap = self.atom(scope)?;
            let tube = self.tube(scope)?;
            return Ok(Term::Fhcom {
                r,
                r2,
                cap: Box::new(cap),
                tube,
            });
        }
        if self.at_kw("fcoe") || self.at_kw("fcom") {
            let is_fcom = self.at_kw("fcom");
            self.next();
            self.eat_sym("{")?;
            let name = self.ident()?;
            self.eat_sym(".")?;
            let v = scope.push_dim(&name);
            self.eat_sym("[")?;
            let line = self.term_list(scope, "]")?;
            self.eat_sym("]")?;
            scope.dims.pop();
            self.eat_sym("}")?;
            let r = self.dim(scope)?;
            self.eat_sym("~>")?;
            let r2 = self.dim(scope)?;
            let body = self.atom(scope)?;
            if is_fcom {
                let tube = self.tube(scope)?;
                return Ok(Term::Fcom {
                    dim: v,
                    line,
                    r,
                    r2,
                    cap: Box::new(body),
                    tube,
                });
            }
            return Ok(Term::Fcoe {
                dim: v,
                line,
                r,
                r2,
                body: Box::new(body),
            });
        }
        if self.at_kw("elim") {
            return self.elim(scope);
        }
        if self.at_kw("natrec") {
            self.next();
            let scrut = self.atom(scope)?;
            self.eat_sym("{")?;
            self.eat_kw("zero")?;
            self.eat_sym("->")?;
            let zero = self.term(scope)?;
            self.eat_sym("|")?;
            self.eat_kw("suc")?;
            self.eat_sym("(")?;
            let a = self.ident()?;
            self.eat_sym(",")?;
            let p = self.ident()?;
            self.eat_sym(")")?;
            self.eat_sym("->")?;
            scope.push_term(&a);
            scope.push_term(&p);
            let suc = self.term(scope)?;
            scope.terms.pop();
            scope.terms.pop();
            self.eat_sym("}")?;
            return Ok(Term::NatRec {
                scrut: Box::new(scrut),
                zero: Box::new(zero),
                suc: Box::new(suc),
            });
        }
        // Identifier: binder, data reference, constructor, or definition.
        let name = self.ident()?;
        if let Some(i) = scope.term_index(&name) {
            return Ok(Term::Var(i));
        }
        if let Some(d) = self.datas.iter().position(|d| d.name == name) {
            let decl = self.datas[d].clone();
            let indices = if self.at_sym("[") {
                self.next();
                let ts = self.term_list(scope, "]")?;
                self.eat_sym("]")?;
                ts
            } else {
                vec![]
            };
            if indices.len() != decl.tele.len() {
                return self.fail(format!(
                    "`{}` needs {} indices, got {}",
                    name,
                    decl.tele.len(),
                    indices.len()
                ));
            }
            return Ok(Term::Ind {
                tele: decl.tele.clone(),
                schema: decl.schema.clone(),
                indices,
            });
        }
        if let Some(&d) = self.labels.get(&name) {
            let decl = self.datas[d].clone();
            return self.intro_call(scope, &decl.schema, &name);
        }
        if let Some((_, _, body)) = self.defs.iter().rev().find(|(n, _, _)| n == &name) {
            return Ok(body.clone());
        }
        self.fail(format!("unknown identifier `{}`", name))
    }

    /// A flat constructor application `label(d..., p..., a...)`, split by
    /// the schema's binder counts.
    fn intro_call(
        &mut self,
        scope: &mut Scope,
        schema: &ConstrList,
        label: &str,
    ) -> Result<Term, ParseError> {
        let ctor = schema.get(label).expect("label resolved").clone();
        let total = ctor.dims.len() + ctor.params.len() + ctor.args.len();
        let mut dims = Vec::new();
        let mut params = Vec::new();
        let mut args = Vec::new();
        if total > 0 {
            self.eat_sym("(")?;
            for slot in 0..total {
                if slot > 0 {
                    self.eat_sym(",")?;
                }
                if slot < ctor.dims.len() {
                    dims.push(self.dim(scope)?);
                } else if slot < ctor.dims.len() + ctor.params.len() {
                    params.push(self.term(scope)?);
                } else {
                    args.push(self.term(scope)?);
                }
            }
            self.eat_sym(")")?;
        }
        Ok(Term::Intro {
            schema: schema.clone(),
            label: label.to_string(),
            dims,
            params,
            args,
        })
    }

    fn elim(&mut self, scope: &mut Scope) -> Result<Term, ParseError> {
        self.eat_kw("elim")?;
        self.eat_sym("[")?;
        let mut binders = Vec::new();
        loop {
            binders.push(self.ident()?);
            if self.at_sym(".") {
                self.next();
                break;
            }
        }
        for b in &binders {
            scope.push_term(b);
        }
        let motive = self.term(scope)?;
        for _ in &binders {
            scope.terms.pop();
        }
        self.eat_sym("]")?;
        self.eat_sym("[")?;
        let indices = self.term_list(scope, "]")?;
        self.eat_sym("]")?;
        if binders.len() != indices.len() + 1 {
            return self.fail(format!(
                "motive binds {} variables but {} indices were given",
                binders.len(),
                indices.len()
            ));
        }
        let scrut = self.atom(scope)?;
        self.eat_sym("{")?;
        let mut cases = Vec::new();
        loop {
            let label = self.ident()?;
            let d = match self.labels.get(&label) {
                Some(d) => *d,
                None => return self.fail(format!("unknown constructor `{}` in eliminator", label)),
            };
            let ctor = self.datas[d].schema.get(&label).unwrap().clone();
            let nd = ctor.dims.len();
            let np = ctor.params.len();
            let na = ctor.args.len();
            let mut dims = Vec::new();
            let mut term_binders = Vec::new();
            if nd + np + 2 * na > 0 {
                self.eat_sym("(")?;
                for slot in 0..(nd + np + 2 * na) {
                    if slot > 0 {
                        self.eat_sym(",")?;
                    }
                    if self.at_sym("@") {
                        self.next();
                        let name = self.ident()?;
                        dims.push(scope.push_dim(&name));
                    } else {
                        term_binders.push(self.ident()?);
                    }
                }
                self.eat_sym(")")?;
            }
            if dims.len() != nd || term_binders.len() != np + 2 * na {
                return self.fail(format!(
                    "case `{}` needs {} dimension and {} term binders",
                    label,
                    nd,
                    np + 2 * na
                ));
            }
            self.eat_sym("->")?;
            for b in &term_binders {
                scope.push_term(b);
            }
            let body = self.term(scope)?;
            for _ in &term_binders {
                scope.terms.pop();
            }
            for _ in 0..nd {
                scope.dims.pop();
            }
            cases.push((
                label,
                ElimCase {
                    dims,
                    n_params: np as u32,
                    n_args: na as u32,
                    body,
                },
            ));
            if self.at_sym("|") {
                self.next();
                continue;
            }
            break;
        }
        self.eat_sym("}")?;
        Ok(Term::Elim {
            motive: Box::new(motive),
            indices,
            scrut: Box::new(scrut),
            cases: ElimList(cases),
        })
    }

    // -----------------------------------------------------------------
    // Boundary terms
    // -----------------------------------------------------------------

    fn bterm(&mut self, scope: &mut Scope, prefix: &ConstrList) -> Result<BoundaryTerm, ParseError> {
        if self.at_sym("\\") {
            self.next();
            let name = self.ident()?;
            self.eat_sym(".")?;
            scope.push_term(&name);
            let body = self.bterm(scope, prefix)?;
            scope.terms.pop();
            return Ok(BoundaryTerm::BLam(Box::new(body)));
        }
        let mut b = self.batom(scope, prefix)?;
        while self.starts_atom() || self.at_sym("(") {
            let arg = self.atom(scope)?;
            b = BoundaryTerm::BApp(Box::new(b), Box::new(arg));
        }
        Ok(b)
    }

    fn batom(&mut self, scope: &mut Scope, prefix: &ConstrList) -> Result<BoundaryTerm, ParseError> {
        if self.at_sym("(") {
            self.next();
            let b = self.bterm(scope, prefix)?;
            self.eat_sym(")")?;
            return Ok(b);
        }
        if self.at_kw("fhcom") {
            self.next();
            let indices = if self.at_sym("{") {
                self.next();
                let ts = self.term_list(scope, "}")?;
                self.eat_sym("}")?;
                ts
            } else {
                vec![]
            };
            let r = self.dim(scope)?;
            self.eat_sym("~>")?;
            let r2 = self.dim(scope)?;
            let cap = self.batom(scope, prefix)?;
            self.eat_sym("[")?;
            let mut tube = Vec::new();
            loop {
                let lhs = self.dim(scope)?;
                self.eat_sym("=")?;
                let rhs = self.dim(scope)?;
                self.eat_sym("->")?;
                let name = self.ident()?;
                self.eat_sym(".")?;
                let v = scope.push_dim(&name);
                let body = self.bterm(scope, prefix)?;
                scope.dims.pop();
                tube.push(BTube {
                    cons: Constraint::new(lhs, rhs),
                    dim: v,
                    body,
                });
                if self.at_sym("|") {
                    self.next();
                    continue;
                }
                break;
            }
            self.eat_sym("]")?;
            return Ok(BoundaryTerm::BFhcom {
                indices,
                r,
                r2,
                cap: Box::new(cap),
                tube,
            });
        }
        if self.at_kw("fcoe") {
            self.next();
            self.eat_sym("{")?;
            let name = self.ident()?;
            self.eat_sym(".")?;
            let v = scope.push_dim(&name);
            self.eat_sym("[")?;
            let line = self.term_list(scope, "]")?;
            self.eat_sym("]")?;
            scope.dims.pop();
            self.eat_sym("}")?;
            let r = self.dim(scope)?;
            self.eat_sym("~>")?;
            let r2 = self.dim(scope)?;
            let body = self.batom(scope, prefix)?;
            return Ok(BoundaryTerm::BFcoe {
                dim: v,
                line,
                r,
                r2,
                body: Box::new(body),
            });
        }
        if self.at_kw("natrec") {
            self.next();
            let scrut = self.atom(scope)?;
            self.eat_sym("{")?;
            self.eat_kw("zero")?;
            self.eat_sym("->")?;
            let zero = self.bterm(scope, prefix)?;
            self.eat_sym("|")?;
            self.eat_kw("suc")?;
            self.eat_sym("(")?;
            let a = self.ident()?;
            self.eat_sym(",")?;
            let p = self.ident()?;
            self.eat_sym(")")?;
            self.eat_sym("->")?;
            scope.push_term(&a);
            scope.bvars.push(p);
            let suc = self.bterm(scope, prefix)?;
            scope.bvars.pop();
            scope.terms.pop();
            self.eat_sym("}")?;
            return Ok(BoundaryTerm::BNatRec {
                scrut: Box::new(scrut),
                zero: Box::new(zero),
                suc: Box::new(suc),
            });
        }
        let name = self.ident()?;
        if let Some(j) = scope.bvar_index(&name) {
            return Ok(BoundaryTerm::BVar(j));
        }
        if let Some(ctor) = prefix.get(&name).cloned() {
            // Constructor of the schema being defined: recursive argument
            // slots parse as boundary terms.
            let total = ctor.dims.len() + ctor.params.len() + ctor.args.len();
            let mut dims = Vec::new();
            let mut params = Vec::new();
            let mut args = Vec::new();
            if total > 0 {
                self.eat_sym("(")?;
                for slot in 0..total {
                    if slot > 0 {
                        self.eat_sym(",")?;
                    }
                    if slot < ctor.dims.len() {
                        dims.push(self.dim(scope)?);
                    } else if slot < ctor.dims.len() + ctor.params.len() {
                        params.push(self.term(scope)?);
                    } else {
                        args.push(self.bterm(scope, prefix)?);
                    }
                }
                self.eat_sym(")")?;
            }
            return Ok(BoundaryTerm::BIntro {
                label: name,
                dims,
                params,
                args,
            });
        }
        self.fail(format!(
            "`{}` is not a recursive argument or earlier constructor",
            name
        ))
    }
}

/// Parse a whole declaration file.
pub fn parse_file(src: &str) -> Result<SourceFile, ParseError> {
    Parser::new(src)?.file()
}

/// Parse one expression in the environment of previously parsed items.
pub fn parse_expr(src: &str, items: &[Item]) -> Result<Term, ParseError> {
    let mut p = Parser::with_env(src, items)?;
    let t = p.term(&mut Scope::default())?;
    match p.peek() {
        Tok::Eof => Ok(t),
        other => p.fail(format!("trailing input: {:?}", other)),
    }
}
