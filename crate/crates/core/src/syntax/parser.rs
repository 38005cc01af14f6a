//! Recursive-descent parser for terms, refinement types, problems, type
//! environments and finite theories.

use super::lexer::{tokenize, Tok, Token};
use super::SyntaxError;
use crate::sort::Sort;
use crate::sorting::Signature;
use crate::term::{Const, Term};
use crate::types::RefType;

pub(crate) struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    pub sig: &'a Signature,
    pub scope: Vec<String>,
}

/// Annotation on a quantifier binder.
enum Ann {
    Sort(Sort),
    Guard(RefType),
}

/// Raw declarations of a finite theory file.
#[derive(Debug, Clone, Default)]
pub struct TheoryDecls {
    pub name: String,
    pub sorts: Vec<(String, Vec<String>)>,
    pub funs: Vec<FunDecl>,
    pub rels: Vec<RelDecl>,
}

#[derive(Debug, Clone)]
pub struct FunDecl {
    pub name: String,
    pub args: Vec<String>,
    pub result: String,
    pub entries: Vec<(Vec<String>, String)>,
}

#[derive(Debug, Clone)]
pub struct RelDecl {
    pub name: String,
    pub args: Vec<String>,
    pub tuples: Vec<Vec<String>>,
}

/// Raw contents of a problem file.
#[derive(Debug, Clone)]
pub struct ProblemDecls {
    pub theory: String,
    pub env: Vec<(String, Sort)>,
    pub clauses: Vec<Term>,
    pub goal: Term,
}

fn op_symbol(t: &Tok) -> Option<&'static str> {
    Some(match t {
        Tok::Plus => "+",
        Tok::Minus => "-",
        Tok::Star => "*",
        Tok::Mod => "mod",
        Tok::Lt => "<",
        Tok::Le => "<=",
        Tok::Gt => ">",
        Tok::Ge => ">=",
        _ => return None,
    })
}

impl<'a> Parser<'a> {
    pub fn new(src: &str, sig: &'a Signature) -> Result<Parser<'a>, SyntaxError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            sig,
            scope: Vec::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        let t = &self.toks[self.pos];
        Err(SyntaxError {
            line: t.line,
            col: t.col,
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, SyntaxError> {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), SyntaxError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.unexpected(&format!("`{}`", t.text()))
        }
    }

    fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected("an identifier"),
        }
    }

    pub fn expect_eof(&mut self) -> Result<(), SyntaxError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    // Sorts

    pub fn sort(&mut self) -> Result<Sort, SyntaxError> {
        let dom = self.sort_atom()?;
        if self.eat(&Tok::Arrow) {
            Ok(Sort::arrow(dom, self.sort()?))
        } else {
            Ok(dom)
        }
    }

    fn sort_atom(&mut self) -> Result<Sort, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(if s == "o" { Sort::Prop } else { Sort::Base(s) })
            }
            Tok::LParen => {
                self.bump();
                let s = self.sort()?;
                self.expect(&Tok::RParen)?;
                Ok(s)
            }
            _ => self.unexpected("a sort"),
        }
    }

    // Terms

    pub fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek() {
            Tok::Forall | Tok::Exists | Tok::Lambda => self.binder(),
            _ => self.implication(),
        }
    }

    fn binder_groups(&mut self, guards: bool) -> Result<Vec<(String, Ann)>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            let mut names = Vec::new();
            while let Tok::Ident(_) = self.peek() {
                names.push(self.ident()?);
            }
            if names.is_empty() {
                return self.unexpected("a binder name");
            }
            if self.eat(&Tok::Colon) {
                if guards && *self.peek() == Tok::LBracket {
                    self.bump();
                    let saved = std::mem::take(&mut self.scope);
                    let ty = self.ref_type();
                    self.scope = saved;
                    let ty = ty?;
                    self.expect(&Tok::RBracket)?;
                    for n in names {
                        out.push((n, Ann::Guard(ty.clone())));
                    }
                } else {
                    let s = self.sort()?;
                    for n in names {
                        out.push((n, Ann::Sort(s.clone())));
                    }
                }
            } else {
                for n in names {
                    out.push((n, Ann::Sort(Sort::int())));
                }
            }
            if *self.peek() == Tok::Dot {
                self.bump();
                return Ok(out);
            }
        }
    }

    fn binder(&mut self) -> Result<Term, SyntaxError> {
        let kind = self.bump();
        let groups = self.binder_groups(kind == Tok::Exists)?;
        let depth = self.scope.len();
        for (x, _) in &groups {
            self.scope.push(x.clone());
        }
        let body = self.term();
        self.scope.truncate(depth);
        let mut body = body?;
        for (x, ann) in groups.into_iter().rev() {
            body = match (ann, &kind) {
                (Ann::Sort(s), Tok::Forall) => Term::forall(x, s, body),
                (Ann::Sort(s), Tok::Exists) => Term::exists(x, s, body),
                (Ann::Sort(s), _) => Term::abs(x, s, body),
                (Ann::Guard(t), _) => Term::guarded(x, t, body),
            };
        }
        Ok(body)
    }

    fn implication(&mut self) -> Result<Term, SyntaxError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = match self.peek() {
                Tok::Forall | Tok::Exists | Tok::Lambda => self.binder()?,
                _ => self.implication()?,
            };
            Ok(Term::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            lhs = Term::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.negation()?;
        while self.eat(&Tok::And) {
            lhs = Term::and(lhs, self.negation()?);
        }
        Ok(lhs)
    }

    fn negation(&mut self) -> Result<Term, SyntaxError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Term::not(self.negation()?))
            }
            Tok::Forall | Tok::Exists | Tok::Lambda => self.binder(),
            _ => self.comparison(),
        }
    }

    fn comparison(&mut self) -> Result<Term, SyntaxError> {
        let lhs = self.additive()?;
        let t = self.peek().clone();
        let make: Option<Box<dyn Fn(Term, Term) -> Term>> = match t {
            Tok::Eq => Some(Box::new(Term::eq)),
            Tok::Neq => Some(Box::new(Term::neq)),
            Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge => {
                let name = op_symbol(&t).unwrap();
                Some(Box::new(move |a, b| Term::op(name, a, b)))
            }
            _ => None,
        };
        match make {
            Some(f) => {
                self.bump();
                let rhs = self.additive()?;
                Ok(f(lhs, rhs))
            }
            None => Ok(lhs),
        }
    }

    fn additive(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.multiplicative()?;
        loop {
            let name = match self.peek() {
                Tok::Plus => "+",
                Tok::Minus => "-",
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Term::op(name, lhs, self.multiplicative()?);
        }
    }

    fn multiplicative(&mut self) -> Result<Term, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let name = match self.peek() {
                Tok::Star => "*",
                Tok::Mod => "mod",
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Term::op(name, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Term, SyntaxError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            if let Tok::Int(n) = *self.peek() {
                self.bump();
                return Ok(self.literal(-n));
            }
            let t = self.unary()?;
            return Ok(Term::op("-", self.literal(0), t));
        }
        self.application()
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Int(_) | Tok::True | Tok::False | Tok::LParen
        )
    }

    fn application(&mut self) -> Result<Term, SyntaxError> {
        let mut t = self.atom()?;
        while self.starts_atom() {
            t = Term::app(t, self.atom()?);
        }
        Ok(t)
    }

    fn literal(&self, n: i64) -> Term {
        if !self.sig.int_literals && self.sig.get(&n.to_string()).is_some() {
            Term::sym(n.to_string())
        } else {
            Term::int(n)
        }
    }

    pub fn resolve(&self, x: String) -> Term {
        if !self.scope.contains(&x) && self.sig.get(&x).is_some() {
            Term::sym(x)
        } else {
            Term::var(x)
        }
    }

    fn atom(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                Ok(self.resolve(x))
            }
            Tok::Int(n) => {
                self.bump();
                Ok(self.literal(n))
            }
            Tok::True => {
                self.bump();
                Ok(Term::tt())
            }
            Tok::False => {
                self.bump();
                Ok(Term::ff())
            }
            Tok::LParen => {
                self.bump();
                if let Some(t) = self.section()? {
                    return Ok(t);
                }
                let t = self.term()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            _ => self.unexpected("a term"),
        }
    }

    /// Operator sections such as `(&&)`, `(+)` and `(exists : int)`, after the
    /// opening parenthesis.
    fn section(&mut self) -> Result<Option<Term>, SyntaxError> {
        let closes = *self.peek_at(1) == Tok::RParen;
        let c = match self.peek().clone() {
            Tok::And if closes => Const::And,
            Tok::Or if closes => Const::Or,
            Tok::Implies if closes => Const::Implies,
            Tok::Not if closes => Const::Not,
            Tok::Eq if closes => Const::Eq,
            Tok::Neq if closes => Const::Neq,
            ref t if closes && op_symbol(t).is_some() => Const::Sym(op_symbol(t).unwrap().into()),
            Tok::Forall | Tok::Exists if *self.peek_at(1) == Tok::Colon => {
                let q = self.bump();
                self.bump();
                let c = if q == Tok::Exists && *self.peek() == Tok::LBracket {
                    self.bump();
                    let saved = std::mem::take(&mut self.scope);
                    let ty = self.ref_type();
                    self.scope = saved;
                    let ty = ty?;
                    self.expect(&Tok::RBracket)?;
                    Const::Guarded(Box::new(ty))
                } else if q == Tok::Exists {
                    Const::Exists(self.sort()?)
                } else {
                    Const::Forall(self.sort()?)
                };
                self.expect(&Tok::RParen)?;
                return Ok(Some(Term::Const(c)));
            }
            _ => return Ok(None),
        };
        self.bump();
        self.bump();
        Ok(Some(Term::Const(c)))
    }

    // Refinement types

    pub fn ref_type(&mut self) -> Result<RefType, SyntaxError> {
        if *self.peek() == Tok::LParen && self.is_dep_binder() {
            self.bump();
            let mut names = Vec::new();
            while let Tok::Ident(_) = self.peek() {
                names.push(self.ident()?);
            }
            self.expect(&Tok::Colon)?;
            let s = self.sort()?;
            self.expect(&Tok::RParen)?;
            self.expect(&Tok::Arrow)?;
            let depth = self.scope.len();
            self.scope.extend(names.iter().cloned());
            let body = self.ref_type();
            self.scope.truncate(depth);
            let mut t = body?;
            for x in names.into_iter().rev() {
                t = RefType::dep(x, s.clone(), t);
            }
            return Ok(t);
        }
        let dom = self.type_atom()?;
        if self.eat(&Tok::Arrow) {
            Ok(RefType::arrow(dom, self.ref_type()?))
        } else {
            Ok(dom)
        }
    }

    fn is_dep_binder(&self) -> bool {
        let mut k = 1;
        while let Tok::Ident(_) = self.peek_at(k) {
            k += 1;
        }
        k > 1 && *self.peek_at(k) == Tok::Colon
    }

    fn type_atom(&mut self) -> Result<RefType, SyntaxError> {
        match self.peek() {
            Tok::Bool => {
                self.bump();
                self.expect(&Tok::LBracket)?;
                let phi = self.term()?;
                self.expect(&Tok::RBracket)?;
                Ok(RefType::Bool(phi))
            }
            Tok::LParen => {
                self.bump();
                let t = self.ref_type()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            _ => self.unexpected("a type"),
        }
    }

    // Files

    pub fn problem(&mut self) -> Result<ProblemDecls, SyntaxError> {
        self.expect(&Tok::Theory)?;
        let theory = self.ident()?;
        self.expect(&Tok::Semi)?;
        let mut env = Vec::new();
        let mut clauses = Vec::new();
        if self.eat(&Tok::Env) {
            while let Tok::Ident(_) = self.peek() {
                let x = self.ident()?;
                self.expect(&Tok::Colon)?;
                let s = self.sort()?;
                self.expect(&Tok::Semi)?;
                env.push((x, s));
            }
        }
        self.scope = env.iter().map(|(x, _)| x.clone()).collect();
        if self.eat(&Tok::Clauses) {
            while *self.peek() != Tok::Goal && *self.peek() != Tok::Eof {
                clauses.push(self.term()?);
                self.expect(&Tok::Semi)?;
            }
        }
        self.expect(&Tok::Goal)?;
        let goal = self.term()?;
        self.eat(&Tok::Semi);
        self.expect_eof()?;
        Ok(ProblemDecls {
            theory,
            env,
            clauses,
            goal,
        })
    }

    /// Only the `theory` line of a problem file, to pick a signature.
    pub fn theory_header(&mut self) -> Result<String, SyntaxError> {
        self.expect(&Tok::Theory)?;
        let name = self.ident()?;
        self.expect(&Tok::Semi)?;
        Ok(name)
    }

    /// `name : T;` or `x : base;` entries.
    pub fn type_env(&mut self) -> Result<Vec<(String, Result<Sort, RefType>)>, SyntaxError> {
        let mut out = Vec::new();
        self.scope.clear();
        while !self.at_eof() {
            let x = self.ident()?;
            self.expect(&Tok::Colon)?;
            let entry = match self.peek().clone() {
                Tok::Ident(b) if *self.peek_at(1) == Tok::Semi => {
                    self.bump();
                    self.scope.push(x.clone());
                    Ok(Sort::Base(b))
                }
                _ => Err(self.ref_type()?),
            };
            self.expect(&Tok::Semi)?;
            out.push((x, entry));
        }
        Ok(out)
    }

    fn element(&mut self) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            Tok::Int(n) => {
                self.bump();
                Ok(n.to_string())
            }
            Tok::Minus => {
                self.bump();
                match self.bump() {
                    Tok::Int(n) => Ok((-n).to_string()),
                    _ => self.error("expected an integer after `-`"),
                }
            }
            _ => self.unexpected("an element name"),
        }
    }

    fn symbol_name(&mut self) -> Result<String, SyntaxError> {
        if let Some(op) = op_symbol(self.peek()) {
            self.bump();
            return Ok(op.to_string());
        }
        self.ident()
    }

    fn tuple(&mut self, arity: usize) -> Result<Vec<String>, SyntaxError> {
        if arity == 0 {
            self.expect(&Tok::LParen)?;
            self.expect(&Tok::RParen)?;
            return Ok(Vec::new());
        }
        if arity == 1 {
            return Ok(vec![self.element()?]);
        }
        self.expect(&Tok::LParen)?;
        let mut v = vec![self.element()?];
        while self.eat(&Tok::Comma) {
            v.push(self.element()?);
        }
        self.expect(&Tok::RParen)?;
        if v.len() != arity {
            return self.error(format!("tuple has {} components, expected {arity}", v.len()));
        }
        Ok(v)
    }

    fn signature_sort(&mut self) -> Result<(Vec<String>, String), SyntaxError> {
        let s = self.sort()?;
        let (args, res) = s.uncurry();
        let mut names = Vec::new();
        for a in args {
            match a {
                Sort::Base(b) => names.push(b.clone()),
                _ => return self.error("symbol arguments must be base sorts"),
            }
        }
        let res = match res {
            Sort::Base(b) => b.clone(),
            Sort::Prop => "o".to_string(),
            Sort::Arrow(..) => unreachable!(),
        };
        Ok((names, res))
    }

    pub fn theory(&mut self) -> Result<TheoryDecls, SyntaxError> {
        let mut th = TheoryDecls::default();
        self.expect(&Tok::Theory)?;
        th.name = self.ident()?;
        self.expect(&Tok::Semi)?;
        while !self.at_eof() {
            let kw = self.ident()?;
            match kw.as_str() {
                "sort" => {
                    let name = self.ident()?;
                    self.expect(&Tok::Eq)?;
                    self.expect(&Tok::LBrace)?;
                    let mut elems = Vec::new();
                    if *self.peek() != Tok::RBrace {
                        elems.push(self.element()?);
                        while self.eat(&Tok::Comma) {
                            elems.push(self.element()?);
                        }
                    }
                    self.expect(&Tok::RBrace)?;
                    th.sorts.push((name, elems));
                }
                "fun" => {
                    let name = self.symbol_name()?;
                    self.expect(&Tok::Colon)?;
                    let (args, result) = self.signature_sort()?;
                    if result == "o" {
                        return self.error("functions return a base sort; use `rel` for relations");
                    }
                    self.expect(&Tok::Eq)?;
                    let mut entries = Vec::new();
                    if args.is_empty() {
                        entries.push((Vec::new(), self.element()?));
                    } else {
                        self.expect(&Tok::LBrace)?;
                        if *self.peek() != Tok::RBrace {
                            loop {
                                let key = self.tuple(args.len())?;
                                self.expect(&Tok::Arrow)?;
                                entries.push((key, self.element()?));
                                if !self.eat(&Tok::Comma) {
                                    break;
                                }
                            }
                        }
                        self.expect(&Tok::RBrace)?;
                    }
                    th.funs.push(FunDecl {
                        name,
                        args,
                        result,
                        entries,
                    });
                }
                "rel" => {
                    let name = self.symbol_name()?;
                    self.expect(&Tok::Colon)?;
                    let (args, result) = self.signature_sort()?;
                    if result != "o" {
                        return self.error("relations must have result sort o");
                    }
                    self.expect(&Tok::Eq)?;
                    self.expect(&Tok::LBrace)?;
                    let mut tuples = Vec::new();
                    if *self.peek() != Tok::RBrace {
                        loop {
                            tuples.push(self.tuple(args.len())?);
                            if !self.eat(&Tok::Comma) {
                                break;
                            }
                        }
                    }
                    self.expect(&Tok::RBrace)?;
                    th.rels.push(RelDecl { name, args, tuples });
                }
                other => return self.error(format!("unknown declaration `{other}`")),
            }
            self.expect(&Tok::Semi)?;
        }
        Ok(th)
    }
}
