//! Terms of the applied lambda calculus: variables, constants, application
//! and sorted abstraction.

use std::collections::{BTreeMap, BTreeSet};

use crate::sort::Sort;
use crate::types::RefType;

/// Constants: the logical connectives, quantifier families, integer
/// literals and symbols of the constraint signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Const {
    True,
    False,
    And,
    Or,
    Implies,
    Not,
    /// Equality at any base sort. Must be applied to two arguments.
    Eq,
    /// Disequality at any base sort. Must be applied to two arguments.
    Neq,
    Forall(Sort),
    Exists(Sort),
    /// Existential quantifier restricted to the inhabitants of a closed type.
    Guarded(Box<RefType>),
    Int(i64),
    /// A symbol of the constraint signature (`+`, `<`, `mod`, a finite-theory
    /// function, or a fresh relation constant produced by inference).
    Sym(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(Const),
    App(Box<Term>, Box<Term>),
    Abs(String, Sort, Box<Term>),
}

impl Term {
    pub fn var(x: impl Into<String>) -> Term {
        Term::Var(x.into())
    }

    pub fn sym(s: impl Into<String>) -> Term {
        Term::Const(Const::Sym(s.into()))
    }

    pub fn int(n: i64) -> Term {
        Term::Const(Const::Int(n))
    }

    pub fn tt() -> Term {
        Term::Const(Const::True)
    }

    pub fn ff() -> Term {
        Term::Const(Const::False)
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn abs(x: impl Into<String>, s: Sort, body: Term) -> Term {
        Term::Abs(x.into(), s, Box::new(body))
    }

    /// `\x1 ... xn. body`
    pub fn abs_many(binders: &[(String, Sort)], body: Term) -> Term {
        binders
            .iter()
            .rev()
            .fold(body, |b, (x, s)| Term::abs(x.clone(), s.clone(), b))
    }

    fn binop(c: Const, a: Term, b: Term) -> Term {
        Term::apps(Term::Const(c), [a, b])
    }

    pub fn and(a: Term, b: Term) -> Term {
        Term::binop(Const::And, a, b)
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::binop(Const::Or, a, b)
    }

    pub fn implies(a: Term, b: Term) -> Term {
        Term::binop(Const::Implies, a, b)
    }

    pub fn not(a: Term) -> Term {
        Term::app(Term::Const(Const::Not), a)
    }

    pub fn eq(a: Term, b: Term) -> Term {
        Term::binop(Const::Eq, a, b)
    }

    pub fn neq(a: Term, b: Term) -> Term {
        Term::binop(Const::Neq, a, b)
    }

    /// Binary application of a signature symbol, e.g. `a + b` or `a < b`.
    pub fn op(name: &str, a: Term, b: Term) -> Term {
        Term::apps(Term::sym(name), [a, b])
    }

    /// Conjunction of a list; `true` when empty.
    pub fn conj(parts: impl IntoIterator<Item = Term>) -> Term {
        let mut it = parts.into_iter();
        match it.next() {
            None => Term::tt(),
            Some(first) => it.fold(first, Term::and),
        }
    }

    /// Disjunction of a list; `false` when empty.
    pub fn disj(parts: impl IntoIterator<Item = Term>) -> Term {
        let mut it = parts.into_iter();
        match it.next() {
            None => Term::ff(),
            Some(first) => it.fold(first, Term::or),
        }
    }

    pub fn exists(x: impl Into<String>, s: Sort, body: Term) -> Term {
        let x = x.into();
        Term::app(
            Term::Const(Const::Exists(s.clone())),
            Term::abs(x, s, body),
        )
    }

    pub fn forall(x: impl Into<String>, s: Sort, body: Term) -> Term {
        let x = x.into();
        Term::app(
            Term::Const(Const::Forall(s.clone())),
            Term::abs(x, s, body),
        )
    }

    pub fn forall_many(binders: &[(String, Sort)], body: Term) -> Term {
        binders
            .iter()
            .rev()
            .fold(body, |b, (x, s)| Term::forall(x.clone(), s.clone(), b))
    }

    pub fn exists_many(binders: &[(String, Sort)], body: Term) -> Term {
        binders
            .iter()
            .rev()
            .fold(body, |b, (x, s)| Term::exists(x.clone(), s.clone(), b))
    }

    /// `exists x : [T]. body`; the binder's sort is the sort refined by `T`.
    pub fn guarded(x: impl Into<String>, ty: RefType, body: Term) -> Term {
        let s = ty.sort();
        Term::app(
            Term::Const(Const::Guarded(Box::new(ty))),
            Term::abs(x, s, body),
        )
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_const(&self, c: &Const) -> bool {
        matches!(self, Term::Const(d) if d == c)
    }

    /// Splits an application spine `h a1 ... an` into `h` and `[a1, ..., an]`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(a.as_ref());
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// Matches `c a b` for a binary constant `c`.
    pub fn as_binary(&self, c: &Const) -> Option<(&Term, &Term)> {
        if let Term::App(f, b) = self {
            if let Term::App(g, a) = f.as_ref() {
                if g.is_const(c) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Matches `Q (\x:s. body)` for a quantifier constant, returning the
    /// quantifier, binder, sort and body.
    pub fn as_binder(&self) -> Option<(&Const, &str, &Sort, &Term)> {
        if let Term::App(f, a) = self {
            if let (Term::Const(c), Term::Abs(x, s, body)) = (f.as_ref(), a.as_ref()) {
                if matches!(c, Const::Forall(_) | Const::Exists(_) | Const::Guarded(_)) {
                    return Some((c, x, s, body));
                }
            }
        }
        None
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Const(Const::Guarded(t)) => 1 + t.size(),
            Term::Const(_) => 1,
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Abs(_, _, b) => 1 + b.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            Term::Const(Const::Guarded(t)) => {
                for x in t.free_vars() {
                    if !bound.contains(&x) {
                        out.insert(x);
                    }
                }
            }
            Term::Const(_) => {}
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::Abs(x, _, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Free variables in order of first occurrence, left to right.
    pub fn free_vars_ordered(&self) -> Vec<String> {
        fn go(t: &Term, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match t {
                Term::Var(x) => {
                    if !bound.contains(x) && !out.contains(x) {
                        out.push(x.clone());
                    }
                }
                Term::Const(Const::Guarded(ty)) => {
                    for x in ty.free_vars() {
                        if !bound.contains(&x) && !out.contains(&x) {
                            out.push(x);
                        }
                    }
                }
                Term::Const(_) => {}
                Term::App(f, a) => {
                    go(f, bound, out);
                    go(a, bound, out);
                }
                Term::Abs(x, _, b) => {
                    bound.push(x.clone());
                    go(b, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => x == y,
            Term::Const(Const::Guarded(t)) => t.free_vars().contains(x),
            Term::Const(_) => false,
            Term::App(f, a) => f.occurs_free(x) || a.occurs_free(x),
            Term::Abs(y, _, b) => y != x && b.occurs_free(x),
        }
    }

    /// Every name occurring in the term, bound or free.
    pub fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Const(Const::Guarded(t)) => t.all_names(out),
            Term::Const(_) => {}
            Term::App(f, a) => {
                f.all_names(out);
                a.all_names(out);
            }
            Term::Abs(x, _, b) => {
                out.insert(x.clone());
                b.all_names(out);
            }
        }
    }

    /// Symbols of the constraint signature used in the term.
    pub fn symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(Const::Sym(s)) => {
                out.insert(s.clone());
            }
            Term::Const(Const::Guarded(t)) => t.symbols(out),
            Term::Var(_) | Term::Const(_) => {}
            Term::App(f, a) => {
                f.symbols(out);
                a.symbols(out);
            }
            Term::Abs(_, _, b) => b.symbols(out),
        }
    }

    /// Capture-avoiding substitution `self[u/x]`.
    pub fn subst(&self, x: &str, u: &Term) -> Term {
        let mut m = BTreeMap::new();
        m.insert(x.to_string(), u.clone());
        self.subst_map(&m)
    }

    /// Capture-avoiding simultaneous substitution.
    pub fn subst_map(&self, s: &BTreeMap<String, Term>) -> Term {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Term::Var(x) => s.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::Const(Const::Guarded(t)) => {
                Term::Const(Const::Guarded(Box::new(t.subst_map(s))))
            }
            Term::Const(_) => self.clone(),
            Term::App(f, a) => Term::app(f.subst_map(s), a.subst_map(s)),
            Term::Abs(x, sort, body) => {
                let (x2, body2) = subst_under_binder(x, body.as_ref(), s, |b, m| b.subst_map(m), |b| {
                    b.free_vars()
                });
                Term::Abs(x2, sort.clone(), Box::new(body2))
            }
        }
    }

    /// Renames free occurrences of `x` to the variable `y`.
    pub fn rename(&self, x: &str, y: &str) -> Term {
        self.subst(x, &Term::var(y))
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        alpha_eq_term(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

/// Shared logic for substituting under a binder `x`: drops `x` from the
/// substitution and renames `x` when it would capture a free variable of
/// a replacement.
pub(crate) fn subst_under_binder<B>(
    x: &str,
    body: &B,
    s: &BTreeMap<String, Term>,
    apply: impl Fn(&B, &BTreeMap<String, Term>) -> B,
    body_fv: impl Fn(&B) -> BTreeSet<String>,
) -> (String, B) {
    let mut inner = s.clone();
    inner.remove(x);
    let bfv = body_fv(body);
    inner.retain(|y, _| bfv.contains(y));
    if inner.is_empty() {
        return (x.to_string(), apply(body, &inner));
    }
    let captured: BTreeSet<String> = inner.values().flat_map(|u| u.free_vars()).collect();
    if !captured.contains(x) {
        return (x.to_string(), apply(body, &inner));
    }
    let mut avoid = captured;
    avoid.extend(bfv);
    avoid.extend(inner.keys().cloned());
    let fresh = fresh_name(x, &avoid);
    inner.insert(x.to_string(), Term::var(fresh.clone()));
    (fresh, apply(body, &inner))
}

/// Produces `base'`, `base''`, ... until the name is not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = format!("{base}'");
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

/// `base` itself when it is not in `avoid`, otherwise a primed variant.
pub fn fresh_or(base: &str, avoid: &BTreeSet<String>) -> String {
    if avoid.contains(base) {
        fresh_name(base, avoid)
    } else {
        base.to_string()
    }
}

/// Position of the innermost binder of `x`, counted from the outside.
fn bound_index(stack: &[String], x: &str) -> Option<usize> {
    stack.iter().rposition(|y| y == x)
}

pub(crate) fn alpha_eq_term(
    a: &Term,
    b: &Term,
    la: &mut Vec<String>,
    lb: &mut Vec<String>,
) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => match (bound_index(la, x), bound_index(lb, y)) {
            (None, None) => x == y,
            (Some(i), Some(j)) => i == j,
            _ => false,
        },
        (Term::Const(Const::Guarded(s)), Term::Const(Const::Guarded(t))) => {
            crate::types::alpha_eq_type(s, t, la, lb)
        }
        (Term::Const(c), Term::Const(d)) => c == d,
        (Term::App(f, x), Term::App(g, y)) => {
            alpha_eq_term(f, g, la, lb) && alpha_eq_term(x, y, la, lb)
        }
        (Term::Abs(x, s, p), Term::Abs(y, t, q)) => {
            if s != t {
                return false;
            }
            la.push(x.clone());
            lb.push(y.clone());
            let r = alpha_eq_term(p, q, la, lb);
            la.pop();
            lb.pop();
            r
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int() -> Sort {
        Sort::int()
    }

    #[test]
    fn substitute_variable() {
        assert_eq!(Term::var("x").subst("x", &Term::int(5)), Term::int(5));
    }

    #[test]
    fn substitution_avoids_capture() {
        let t = Term::abs("y", int(), Term::var("x"));
        let r = t.subst("x", &Term::var("y"));
        assert_eq!(r, Term::abs("y'", int(), Term::var("y")));
    }

    #[test]
    fn substitution_stops_at_shadowing_binder() {
        let t = Term::abs("x", int(), Term::var("x"));
        assert_eq!(t.subst("x", &Term::int(1)), t);
    }

    #[test]
    fn alpha_equivalence_ignores_binder_names() {
        let a = Term::abs("x", int(), Term::abs("y", int(), Term::var("x")));
        let b = Term::abs("u", int(), Term::abs("v", int(), Term::var("u")));
        let c = Term::abs("u", int(), Term::abs("v", int(), Term::var("v")));
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&c));
    }

    #[test]
    fn alpha_equivalence_distinguishes_free_from_bound() {
        let a = Term::abs("x", int(), Term::var("y"));
        let b = Term::abs("y", int(), Term::var("y"));
        assert!(!a.alpha_eq(&b));
    }

    #[test]
    fn spine_of_application() {
        let t = Term::apps(Term::var("f"), [Term::int(1), Term::int(2)]);
        let (h, args) = t.spine();
        assert_eq!(h, &Term::var("f"));
        assert_eq!(args, vec![&Term::int(1), &Term::int(2)]);
    }

    #[test]
    fn simultaneous_substitution_does_not_chain() {
        let t = Term::and(Term::var("x"), Term::var("y"));
        let mut m = BTreeMap::new();
        m.insert("x".to_string(), Term::var("y"));
        m.insert("y".to_string(), Term::var("x"));
        assert_eq!(t.subst_map(&m), Term::and(Term::var("y"), Term::var("x")));
    }
}
