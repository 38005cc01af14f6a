//! Evaluation of terms in the standard and monotone semantics.
//!
//! Terms are compiled once against a scope of sorted variables into a small
//! tree whose variables are stack positions; evaluation then runs over
//! frame indices.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::frame::{Frame, Frames, Kind};
use super::theory::{FunTable, RelTable, SymbolRef};
use super::{typesem, SemError};
use crate::sort::{Sort, SortEnv};
use crate::sorting::{self, Signature};
use crate::term::{fresh_name, Const, Term};
use crate::types::RefType;

#[derive(Debug)]
enum Node {
    Var(usize),
    Lit(usize),
    Abs { fun: Arc<Frame>, body: Box<Node> },
    App { fun: Arc<Frame>, f: Box<Node>, a: Box<Node> },
    Beta { args: Vec<Node>, body: Box<Node> },
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Not(Box<Node>),
    Eq(Box<Node>, Box<Node>),
    Neq(Box<Node>, Box<Node>),
    Fun(Arc<FunTable>, Vec<Node>),
    Rel(Arc<RelTable>, Vec<Node>),
    Quant { exists: bool, size: usize, body: Box<Node> },
    Guarded { members: Arc<Vec<usize>>, body: Box<Node> },
}

/// A term compiled against a scope; evaluate with one value per scope
/// variable, in order.
#[derive(Debug)]
pub struct Compiled {
    node: Node,
    pub sort: Sort,
    pub frame: Arc<Frame>,
}

pub struct Evaluator<'a> {
    pub frames: &'a Frames,
    pub kind: Kind,
    sig: Signature,
    guards: RefCell<HashMap<RefType, Arc<Vec<usize>>>>,
    tables: RefCell<HashMap<String, (Option<Arc<FunTable>>, Option<Arc<RelTable>>)>>,
}

fn arity_of(c: &Const, sig: &Signature) -> usize {
    match c {
        Const::True | Const::False | Const::Int(_) => 0,
        Const::Not | Const::Forall(_) | Const::Exists(_) | Const::Guarded(_) => 1,
        Const::And | Const::Or | Const::Implies | Const::Eq | Const::Neq => 2,
        Const::Sym(s) => sig.get(s).map(Sort::arity).unwrap_or(0),
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(frames: &'a Frames, kind: Kind) -> Evaluator<'a> {
        Evaluator {
            frames,
            kind,
            sig: frames.theory.signature(),
            guards: RefCell::new(HashMap::new()),
            tables: RefCell::new(HashMap::new()),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn frame(&self, s: &Sort) -> Result<Arc<Frame>, SemError> {
        self.frames.get(s, self.kind)
    }

    pub fn compile(&self, env: &SortEnv, t: &Term) -> Result<Compiled, SemError> {
        let mut scope: Vec<(String, Sort)> = env.iter().map(|(x, s)| (x.to_string(), s.clone())).collect();
        let (node, sort) = self.compile_in(t, &mut scope)?;
        let frame = self.frame(&sort)?;
        Ok(Compiled { node, sort, frame })
    }

    /// Evaluates `t` under the valuation `vals` of `env`.
    pub fn eval(&self, env: &SortEnv, t: &Term, vals: &[usize]) -> Result<usize, SemError> {
        self.compile(env, t)?.run(vals)
    }

    fn scope_env(scope: &[(String, Sort)]) -> SortEnv {
        let mut env = SortEnv::new();
        for (x, s) in scope {
            env = env.extended(x, s.clone());
        }
        env
    }

    fn lookup(scope: &[(String, Sort)], x: &str) -> Option<(usize, Sort)> {
        scope
            .iter()
            .rposition(|(y, _)| y == x)
            .map(|i| (i, scope[i].1.clone()))
    }

    fn mismatch(t: &Term, expected: &Sort, found: &Sort) -> SemError {
        SemError::SortMismatch {
            term: crate::syntax::print_term(t),
            expected: expected.clone(),
            found: found.clone(),
        }
    }

    fn compile_in(&self, t: &Term, scope: &mut Vec<(String, Sort)>) -> Result<(Node, Sort), SemError> {
        match t {
            Term::Var(x) => {
                let (i, s) = Self::lookup(scope, x).ok_or_else(|| SemError::Unbound(x.clone()))?;
                Ok((Node::Var(i), s))
            }
            Term::Const(c) => self.compile_const(c, &[], t, scope),
            Term::Abs(x, s, body) => {
                scope.push((x.clone(), s.clone()));
                let r = self.compile_in(body, scope);
                scope.pop();
                let (b, bs) = r?;
                let sort = Sort::arrow(s.clone(), bs);
                let fun = self.frame(&sort)?;
                Ok((Node::Abs { fun, body: Box::new(b) }, sort))
            }
            Term::App(..) => {
                let (head, args) = t.spine();
                match head {
                    Term::Const(c) => self.compile_const(c, &args, t, scope),
                    Term::Abs(..) => self.compile_beta(head, &args, t, scope),
                    _ => {
                        let (mut node, mut sort) = self.compile_in(head, scope)?;
                        for a in args {
                            (node, sort) = self.apply_node(node, sort, a, t, scope)?;
                        }
                        Ok((node, sort))
                    }
                }
            }
        }
    }

    fn apply_node(
        &self,
        f: Node,
        fs: Sort,
        a: &Term,
        whole: &Term,
        scope: &mut Vec<(String, Sort)>,
    ) -> Result<(Node, Sort), SemError> {
        let Sort::Arrow(d, c) = &fs else {
            return Err(SemError::NotAFunction(crate::syntax::print_term(whole)));
        };
        let (an, asort) = self.compile_in(a, scope)?;
        if asort != **d {
            return Err(Self::mismatch(a, d, &asort));
        }
        let fun = self.frame(&fs)?;
        Ok((
            Node::App {
                fun,
                f: Box::new(f),
                a: Box::new(an),
            },
            (**c).clone(),
        ))
    }

    fn compile_beta(
        &self,
        head: &Term,
        args: &[&Term],
        whole: &Term,
        scope: &mut Vec<(String, Sort)>,
    ) -> Result<(Node, Sort), SemError> {
        let mut binders = Vec::new();
        let mut body = head;
        while let Term::Abs(x, s, b) = body {
            if binders.len() == args.len() {
                break;
            }
            binders.push((x.clone(), s.clone()));
            body = b;
        }
        let k = binders.len();
        let mut arg_nodes = Vec::with_capacity(k);
        for (a, (_, s)) in args.iter().zip(&binders) {
            let (n, asort) = self.compile_in(a, scope)?;
            if &asort != s {
                return Err(Self::mismatch(a, s, &asort));
            }
            arg_nodes.push(n);
        }
        let depth = scope.len();
        scope.extend(binders);
        let r = self.compile_in(body, scope);
        scope.truncate(depth);
        let (b, bs) = r?;
        let mut node = Node::Beta {
            args: arg_nodes,
            body: Box::new(b),
        };
        let mut sort = bs;
        for a in &args[k..] {
            (node, sort) = self.apply_node(node, sort, a, whole, scope)?;
        }
        Ok((node, sort))
    }

    fn sort_of_const(&self, c: &Const, args: &[&Term], scope: &[(String, Sort)]) -> Result<Sort, SemError> {
        Ok(match c {
            Const::Eq | Const::Neq => {
                let Some(a) = args.first() else {
                    return Err(SemError::NotAFunction("(=)".into()));
                };
                let env = Self::scope_env(scope);
                let s = sorting::infer_sort_scoped(&self.sig, &env, a)
                    .map_err(|e| SemError::Sort(e.to_string()))?;
                Sort::curried([s.clone(), s], Sort::Prop)
            }
            Const::Guarded(t) => Sort::arrow(Sort::arrow(t.sort(), Sort::Prop), Sort::Prop),
            _ => {
                let env = SortEnv::new();
                sorting::infer_sort_scoped(&self.sig, &env, &Term::Const(c.clone()))
                    .map_err(|e| SemError::Sort(e.to_string()))?
            }
        })
    }

    /// Eta-expands a partially applied constant.
    fn eta(&self, c: &Const, args: &[&Term], scope: &[(String, Sort)]) -> Result<Term, SemError> {
        let cs = self.sort_of_const(c, args, scope)?;
        let (doms, _) = cs.uncurry();
        let mut avoid: BTreeSet<String> = scope.iter().map(|(x, _)| x.clone()).collect();
        for a in args {
            a.all_names(&mut avoid);
        }
        let mut t = Term::apps(Term::Const(c.clone()), args.iter().map(|a| (*a).clone()));
        let mut binders = Vec::new();
        for d in doms.iter().skip(args.len()).take(arity_of(c, &self.sig) - args.len()) {
            let x = fresh_name("_e", &avoid);
            avoid.insert(x.clone());
            t = Term::app(t, Term::var(x.clone()));
            binders.push((x, (*d).clone()));
        }
        Ok(Term::abs_many(&binders, t))
    }

    fn table_for(&self, s: &str) -> (Option<Arc<FunTable>>, Option<Arc<RelTable>>) {
        if let Some(t) = self.tables.borrow().get(s) {
            return t.clone();
        }
        let entry = match self.frames.theory.symbol(s) {
            Some(SymbolRef::Fun(f)) => (Some(Arc::new(f.clone())), None),
            Some(SymbolRef::Rel(r)) => (None, Some(Arc::new(r.clone()))),
            _ => (None, None),
        };
        self.tables.borrow_mut().insert(s.to_string(), entry.clone());
        entry
    }

    fn compile_const(
        &self,
        c: &Const,
        args: &[&Term],
        whole: &Term,
        scope: &mut Vec<(String, Sort)>,
    ) -> Result<(Node, Sort), SemError> {
        if self.kind == Kind::Monotone
            && matches!(c, Const::Not | Const::Implies | Const::Forall(_))
            && !sorting::is_constraint(&self.sig, &Self::scope_env(scope), whole)
        {
            return Err(SemError::NonGoalConstant(crate::syntax::print_term(whole)));
        }
        let arity = arity_of(c, &self.sig);
        if args.len() < arity {
            let expanded = self.eta(c, args, scope)?;
            return self.compile_in(&expanded, scope);
        }
        let o = Sort::Prop;
        let sub = |a: &Term, scope: &mut Vec<(String, Sort)>, want: Option<&Sort>| {
            let (n, s) = self.compile_in(a, scope)?;
            if let Some(w) = want {
                if &s != w {
                    return Err(Self::mismatch(a, w, &s));
                }
            }
            Ok::<_, SemError>((Box::new(n), s))
        };
        let node = match c {
            Const::True => Node::Lit(1),
            Const::False => Node::Lit(0),
            Const::Int(n) => {
                let i = self
                    .frames
                    .theory
                    .literal(*n)
                    .ok_or_else(|| SemError::UnknownSymbol(n.to_string()))?;
                return self.finish(Node::Lit(i), Sort::int(), args, whole, scope);
            }
            Const::And | Const::Or | Const::Implies => {
                let (a, _) = sub(args[0], scope, Some(&o))?;
                let (b, _) = sub(args[1], scope, Some(&o))?;
                let n = match c {
                    Const::And => Node::And(a, b),
                    Const::Or => Node::Or(a, b),
                    _ => Node::Implies(a, b),
                };
                return self.finish(n, o, &args[2..], whole, scope);
            }
            Const::Not => {
                let (a, _) = sub(args[0], scope, Some(&o))?;
                return self.finish(Node::Not(a), o, &args[1..], whole, scope);
            }
            Const::Eq | Const::Neq => {
                let (a, sa) = sub(args[0], scope, None)?;
                let (b, _) = sub(args[1], scope, Some(&sa))?;
                if !sa.is_base() {
                    return Err(SemError::Sort(format!(
                        "equality at non-base sort {sa} in `{}`",
                        crate::syntax::print_term(whole)
                    )));
                }
                let n = if *c == Const::Eq { Node::Eq(a, b) } else { Node::Neq(a, b) };
                return self.finish(n, o, &args[2..], whole, scope);
            }
            Const::Forall(s) | Const::Exists(s) => {
                let Term::Abs(x, xs, body) = args[0] else {
                    let expanded = self.eta_quantifier(c, s, args[0], scope);
                    let rest: Vec<&Term> = args[1..].to_vec();
                    let (n, ns) = self.compile_in(&expanded, scope)?;
                    return self.finish(n, ns, &rest, whole, scope);
                };
                if xs != s {
                    return Err(Self::mismatch(args[0], &Sort::arrow(s.clone(), o.clone()), &Sort::arrow(xs.clone(), o.clone())));
                }
                let size = self.frame(s)?.size;
                scope.push((x.clone(), s.clone()));
                let r = self.compile_in(body, scope);
                scope.pop();
                let (b, bs) = r?;
                if bs != o {
                    return Err(Self::mismatch(body, &o, &bs));
                }
                let n = Node::Quant {
                    exists: matches!(c, Const::Exists(_)),
                    size,
                    body: Box::new(b),
                };
                return self.finish(n, o, &args[1..], whole, scope);
            }
            Const::Guarded(ty) => {
                let s = ty.sort();
                let Term::Abs(x, xs, body) = args[0] else {
                    let expanded = self.eta_quantifier(c, &s, args[0], scope);
                    let (n, ns) = self.compile_in(&expanded, scope)?;
                    return self.finish(n, ns, &args[1..], whole, scope);
                };
                if *xs != s {
                    return Err(Self::mismatch(args[0], &s, xs));
                }
                let members = self.guard_members(ty)?;
                scope.push((x.clone(), s.clone()));
                let r = self.compile_in(body, scope);
                scope.pop();
                let (b, bs) = r?;
                if bs != o {
                    return Err(Self::mismatch(body, &o, &bs));
                }
                let n = Node::Guarded {
                    members,
                    body: Box::new(b),
                };
                return self.finish(n, o, &args[1..], whole, scope);
            }
            Const::Sym(name) => {
                if let Some(SymbolRef::Element { sort, index }) = self.frames.theory.symbol(name) {
                    let s = Sort::base(sort);
                    return self.finish(Node::Lit(index), s, args, whole, scope);
                }
                let cs = self.sort_of_const(c, &[], scope)?;
                let (doms, res) = cs.uncurry();
                let mut nodes = Vec::new();
                for (a, d) in args.iter().zip(doms.iter()) {
                    let (n, _) = sub(a, scope, Some(d))?;
                    nodes.push(*n);
                }
                let res = res.clone();
                let n = match self.table_for(name) {
                    (Some(f), _) => Node::Fun(f, nodes),
                    (_, Some(r)) => Node::Rel(r, nodes),
                    _ => return Err(SemError::UnknownSymbol(name.clone())),
                };
                return self.finish(n, res, &args[arity..], whole, scope);
            }
        };
        self.finish(node, o, args, whole, scope)
    }

    /// `Q H` with `H` not an abstraction becomes `Q (\x. H x)`.
    fn eta_quantifier(&self, c: &Const, s: &Sort, h: &Term, scope: &[(String, Sort)]) -> Term {
        let mut avoid: BTreeSet<String> = scope.iter().map(|(x, _)| x.clone()).collect();
        h.all_names(&mut avoid);
        let x = fresh_name("_q", &avoid);
        Term::app(
            Term::Const(c.clone()),
            Term::abs(x.clone(), s.clone(), Term::app(h.clone(), Term::var(x))),
        )
    }

    /// Applies any remaining arguments.
    fn finish(
        &self,
        node: Node,
        sort: Sort,
        rest: &[&Term],
        whole: &Term,
        scope: &mut Vec<(String, Sort)>,
    ) -> Result<(Node, Sort), SemError> {
        let (mut node, mut sort) = (node, sort);
        for a in rest {
            (node, sort) = self.apply_node(node, sort, a, whole, scope)?;
        }
        Ok((node, sort))
    }

    /// Inhabitants of a closed type in this evaluator's frame kind.
    pub fn guard_members(&self, ty: &RefType) -> Result<Arc<Vec<usize>>, SemError> {
        if let Some(m) = self.guards.borrow().get(ty) {
            return Ok(m.clone());
        }
        if !ty.free_vars().is_empty() {
            return Err(SemError::OpenGuard(crate::syntax::print_type(ty)));
        }
        let m = Arc::new(typesem::ideal(self, ty, &typesem::IndEnv::new())?);
        self.guards.borrow_mut().insert(ty.clone(), m.clone());
        Ok(m)
    }
}

impl Compiled {
    pub fn run(&self, vals: &[usize]) -> Result<usize, SemError> {
        let mut stack = vals.to_vec();
        run(&self.node, &mut stack)
    }
}

fn run(n: &Node, stack: &mut Vec<usize>) -> Result<usize, SemError> {
    Ok(match n {
        Node::Var(i) => stack[*i],
        Node::Lit(v) => *v,
        Node::Abs { fun, body } => {
            let dom = fun.dom().unwrap().size;
            let mut table = Vec::with_capacity(dom);
            for e in 0..dom {
                stack.push(e);
                let v = run(body, stack);
                stack.pop();
                table.push(v?);
            }
            fun.from_table(&table)
                .ok_or_else(|| SemError::NotMonotone(fun.sort.clone()))?
        }
        Node::App { fun, f, a } => {
            let fv = run(f, stack)?;
            let av = run(a, stack)?;
            fun.apply(fv, av)
        }
        Node::Beta { args, body } => {
            let depth = stack.len();
            let vals = args.iter().map(|a| run(a, stack)).collect::<Result<Vec<_>, _>>()?;
            stack.extend(vals);
            let r = run(body, stack);
            stack.truncate(depth);
            r?
        }
        Node::And(a, b) => usize::from(run(a, stack)? == 1 && run(b, stack)? == 1),
        Node::Or(a, b) => usize::from(run(a, stack)? == 1 || run(b, stack)? == 1),
        Node::Implies(a, b) => usize::from(run(a, stack)? == 0 || run(b, stack)? == 1),
        Node::Not(a) => 1 - run(a, stack)?,
        Node::Eq(a, b) => usize::from(run(a, stack)? == run(b, stack)?),
        Node::Neq(a, b) => usize::from(run(a, stack)? != run(b, stack)?),
        Node::Fun(t, args) => {
            let vals = args.iter().map(|a| run(a, stack)).collect::<Result<Vec<_>, _>>()?;
            t.apply(&vals)
        }
        Node::Rel(t, args) => {
            let vals = args.iter().map(|a| run(a, stack)).collect::<Result<Vec<_>, _>>()?;
            usize::from(t.holds(&vals))
        }
        Node::Quant { exists, size, body } => {
            let mut result = usize::from(!*exists);
            for e in 0..*size {
                stack.push(e);
                let v = run(body, stack);
                stack.pop();
                if (v? == 1) == *exists {
                    result = usize::from(*exists);
                    break;
                }
            }
            result
        }
        Node::Guarded { members, body } => {
            let mut result = 0;
            for &e in members.iter() {
                stack.push(e);
                let v = run(body, stack);
                stack.pop();
                if v? == 1 {
                    result = 1;
                    break;
                }
            }
            result
        }
    })
}
