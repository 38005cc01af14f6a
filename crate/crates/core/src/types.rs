//! Refinement types: well-formedness, extremal types, subtyping and
//! algorithmic type checking of goal terms and programs.

use std::collections::{BTreeMap, BTreeSet};

use crate::sort::{Sort, SortEnv};
use crate::sorting::{self, Signature};
use crate::term::{alpha_eq_term, fresh_name, subst_under_binder, Const, Term};
use crate::transform::{self, LogicProgram};

/// `T ::= bool[φ] | (x:ι) -> T | T -> T`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RefType {
    Bool(Term),
    Dep(String, Sort, Box<RefType>),
    Arrow(Box<RefType>, Box<RefType>),
}

impl RefType {
    pub fn bool(phi: Term) -> RefType {
        RefType::Bool(phi)
    }

    pub fn dep(x: impl Into<String>, base: Sort, body: RefType) -> RefType {
        RefType::Dep(x.into(), base, Box::new(body))
    }

    pub fn arrow(dom: RefType, cod: RefType) -> RefType {
        RefType::Arrow(Box::new(dom), Box::new(cod))
    }

    /// The underlying sort, without checking well-formedness.
    pub fn sort(&self) -> Sort {
        match self {
            RefType::Bool(_) => Sort::Prop,
            RefType::Dep(_, b, t) => Sort::arrow(b.clone(), t.sort()),
            RefType::Arrow(a, b) => Sort::arrow(a.sort(), b.sort()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            RefType::Bool(phi) => 1 + phi.size(),
            RefType::Dep(_, _, t) => 1 + t.size(),
            RefType::Arrow(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            RefType::Bool(phi) => phi.free_vars(),
            RefType::Dep(x, _, t) => {
                let mut s = t.free_vars();
                s.remove(x);
                s
            }
            RefType::Arrow(a, b) => {
                let mut s = a.free_vars();
                s.extend(b.free_vars());
                s
            }
        }
    }

    pub fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            RefType::Bool(phi) => phi.all_names(out),
            RefType::Dep(x, _, t) => {
                out.insert(x.clone());
                t.all_names(out);
            }
            RefType::Arrow(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
        }
    }

    pub fn symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            RefType::Bool(phi) => phi.symbols(out),
            RefType::Dep(_, _, t) => t.symbols(out),
            RefType::Arrow(a, b) => {
                a.symbols(out);
                b.symbols(out);
            }
        }
    }

    pub fn subst(&self, x: &str, u: &Term) -> RefType {
        let mut m = BTreeMap::new();
        m.insert(x.to_string(), u.clone());
        self.subst_map(&m)
    }

    pub fn subst_map(&self, s: &BTreeMap<String, Term>) -> RefType {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            RefType::Bool(phi) => RefType::Bool(phi.subst_map(s)),
            RefType::Dep(x, b, t) => {
                let (x2, t2) =
                    subst_under_binder(x, t.as_ref(), s, |t, m| t.subst_map(m), |t| t.free_vars());
                RefType::Dep(x2, b.clone(), Box::new(t2))
            }
            RefType::Arrow(a, b) => RefType::arrow(a.subst_map(s), b.subst_map(s)),
        }
    }

    pub fn alpha_eq(&self, other: &RefType) -> bool {
        alpha_eq_type(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// The refinement formulas occurring in the type, outermost first.
    pub fn refinements(&self) -> Vec<&Term> {
        match self {
            RefType::Bool(phi) => vec![phi],
            RefType::Dep(_, _, t) => t.refinements(),
            RefType::Arrow(a, b) => {
                let mut v = a.refinements();
                v.extend(b.refinements());
                v
            }
        }
    }
}

pub(crate) fn alpha_eq_type(
    s: &RefType,
    t: &RefType,
    la: &mut Vec<String>,
    lb: &mut Vec<String>,
) -> bool {
    match (s, t) {
        (RefType::Bool(p), RefType::Bool(q)) => alpha_eq_term(p, q, la, lb),
        (RefType::Dep(x, a, p), RefType::Dep(y, b, q)) => {
            if a != b {
                return false;
            }
            la.push(x.clone());
            lb.push(y.clone());
            let r = alpha_eq_type(p, q, la, lb);
            la.pop();
            lb.pop();
            r
        }
        (RefType::Arrow(a1, b1), RefType::Arrow(a2, b2)) => {
            alpha_eq_type(a1, a2, la, lb) && alpha_eq_type(b1, b2, la, lb)
        }
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("refinement `{0}` is not a constraint formula in its scope")]
    BadRefinement(String),
    #[error("dependent binder `{0}` must range over a base sort, not {1}")]
    NonBaseDependency(String, Sort),
    #[error("type for `{name}` refines {found}, but the variable has sort {expected}")]
    WrongSort {
        name: String,
        expected: Sort,
        found: Sort,
    },
    #[error("`{0}` is not declared in the sort environment")]
    Undeclared(String),
    #[error("`{0}` is typed twice")]
    Duplicate(String),
    #[error("no type given for `{0}`")]
    Missing(String),
    #[error("types refine different sorts: {0} and {1}")]
    SortMismatch(Sort, Sort),
    #[error("ill-formed input: {0}")]
    IllFormed(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// `Δ ⊢ T :: ρ`: returns the refined sort.
pub fn refines(sig: &Signature, env: &SortEnv, t: &RefType) -> Result<Sort, TypeError> {
    match t {
        RefType::Bool(phi) => {
            if sorting::is_constraint_formula(sig, env, phi) {
                Ok(Sort::Prop)
            } else {
                Err(TypeError::BadRefinement(crate::syntax::print_term(phi)))
            }
        }
        RefType::Dep(x, b, body) => {
            if !b.is_base() {
                return Err(TypeError::NonBaseDependency(x.clone(), b.clone()));
            }
            let inner = env.extended(x, b.clone());
            Ok(Sort::arrow(b.clone(), refines(sig, &inner, body)?))
        }
        RefType::Arrow(a, b) => Ok(Sort::arrow(refines(sig, env, a)?, refines(sig, env, b)?)),
    }
}

fn extremal(rho: &Sort, top: bool, depth: &mut usize) -> RefType {
    match rho {
        Sort::Prop => RefType::Bool(if top { Term::tt() } else { Term::ff() }),
        Sort::Arrow(d, c) if d.is_base() => {
            let z = format!("z{depth}");
            *depth += 1;
            RefType::dep(z, (**d).clone(), extremal(c, top, depth))
        }
        Sort::Arrow(d, c) => {
            let dom = extremal(d, !top, depth);
            RefType::arrow(dom, extremal(c, top, depth))
        }
        Sort::Base(_) => panic!("extremal types exist only at relational sorts"),
    }
}

/// `⊤_ρ`
pub fn top_type(rho: &Sort) -> RefType {
    extremal(rho, true, &mut 0)
}

/// `⊥_ρ`
pub fn bot_type(rho: &Sort) -> RefType {
    extremal(rho, false, &mut 0)
}

/// An entry of a type environment: an individual variable or a typed
/// relational variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeEntry {
    Ind(Sort),
    Ty(RefType),
}

/// An ordered type environment with distinct subjects.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeEnv {
    entries: Vec<(String, TypeEntry)>,
}

impl TypeEnv {
    pub fn new() -> TypeEnv {
        TypeEnv::default()
    }

    pub fn push(&mut self, name: impl Into<String>, e: TypeEntry) -> Result<(), TypeError> {
        let name = name.into();
        if self.get(&name).is_some() {
            return Err(TypeError::Duplicate(name));
        }
        self.entries.push((name, e));
        Ok(())
    }

    pub fn push_type(&mut self, name: impl Into<String>, t: RefType) -> Result<(), TypeError> {
        self.push(name, TypeEntry::Ty(t))
    }

    /// Extension that shadows an existing entry.
    pub fn extended(&self, name: &str, e: TypeEntry) -> TypeEnv {
        let mut g = self.clone();
        g.entries.retain(|(x, _)| x != name);
        g.entries.push((name.to_string(), e));
        g
    }

    pub fn get(&self, name: &str) -> Option<&TypeEntry> {
        self.entries.iter().find(|(x, _)| x == name).map(|(_, e)| e)
    }

    pub fn get_type(&self, name: &str) -> Option<&RefType> {
        match self.get(name) {
            Some(TypeEntry::Ty(t)) => Some(t),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &TypeEntry)> {
        self.entries.iter().map(|(x, e)| (x.as_str(), e))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    /// `Γ♭`, the underlying sort environment.
    pub fn flat(&self) -> SortEnv {
        let mut env = SortEnv::new();
        for (x, e) in &self.entries {
            let s = match e {
                TypeEntry::Ind(s) => s.clone(),
                TypeEntry::Ty(t) => t.sort(),
            };
            env = env.extended(x, s);
        }
        env
    }

    /// The individual variables, in order.
    pub fn individuals(&self) -> SortEnv {
        let mut env = SortEnv::new();
        for (x, e) in &self.entries {
            if let TypeEntry::Ind(s) = e {
                env = env.extended(x, s.clone());
            }
        }
        env
    }

    /// Applies `f` to every type in the environment.
    pub fn map_types(&self, mut f: impl FnMut(&RefType) -> RefType) -> TypeEnv {
        TypeEnv {
            entries: self
                .entries
                .iter()
                .map(|(x, e)| {
                    let e = match e {
                        TypeEntry::Ind(s) => TypeEntry::Ind(s.clone()),
                        TypeEntry::Ty(t) => TypeEntry::Ty(f(t)),
                    };
                    (x.clone(), e)
                })
                .collect(),
        }
    }
}

/// `⊢ Γ :: Δ`: every entry of `gamma` refines the matching entry of `delta`,
/// and every variable of `delta` is typed.
pub fn env_refines(sig: &Signature, gamma: &TypeEnv, delta: &SortEnv) -> Result<(), TypeError> {
    let mut scope = SortEnv::new();
    for (x, e) in gamma.iter() {
        let expected = delta.get(x).ok_or_else(|| TypeError::Undeclared(x.to_string()))?;
        let found = match e {
            TypeEntry::Ind(s) => s.clone(),
            TypeEntry::Ty(t) => refines(sig, &scope, t)?,
        };
        if &found != expected {
            return Err(TypeError::WrongSort {
                name: x.to_string(),
                expected: expected.clone(),
                found,
            });
        }
        scope = scope.extended(x, found);
    }
    for x in delta.names() {
        if !gamma.contains(x) {
            return Err(TypeError::Missing(x.to_string()));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("entailment could not be decided: {0}")]
    Indeterminate(String),
    #[error("entailment backend failed: {0}")]
    Backend(String),
}

/// Decides validity of `hyp ⇒ concl` in the background theory. `ctx` gives
/// the sorts of the free individual variables.
pub trait EntailmentOracle {
    fn entails(&self, ctx: &SortEnv, hyp: &Term, concl: &Term) -> Result<bool, OracleError>;
}

fn avoid_set(ctx: &SortEnv, parts: &[&BTreeSet<String>]) -> BTreeSet<String> {
    let mut avoid: BTreeSet<String> = ctx.names().map(str::to_string).collect();
    for p in parts {
        avoid.extend(p.iter().cloned());
    }
    avoid
}

/// `⊢ T1 ⊑ T2`, with the base case delegated to the oracle.
pub fn subtype(
    ctx: &SortEnv,
    t1: &RefType,
    t2: &RefType,
    oracle: &dyn EntailmentOracle,
) -> Result<bool, TypeError> {
    match (t1, t2) {
        (RefType::Bool(phi), RefType::Bool(psi)) => Ok(oracle.entails(ctx, phi, psi)?),
        (RefType::Dep(x, a, p), RefType::Dep(y, b, q)) => {
            if a != b {
                return Err(TypeError::SortMismatch(t1.sort(), t2.sort()));
            }
            let z = if x == y && !ctx.contains(x) {
                x.clone()
            } else {
                let avoid = avoid_set(ctx, &[&p.free_vars(), &q.free_vars()]);
                if avoid.contains(x) {
                    fresh_name(x, &avoid)
                } else {
                    x.clone()
                }
            };
            let p2 = p.subst(x, &Term::var(z.clone()));
            let q2 = q.subst(y, &Term::var(z.clone()));
            subtype(&ctx.extended(&z, a.clone()), &p2, &q2, oracle)
        }
        (RefType::Arrow(a1, b1), RefType::Arrow(a2, b2)) => {
            Ok(subtype(ctx, a2, a1, oracle)? && subtype(ctx, b1, b2, oracle)?)
        }
        _ => Err(TypeError::SortMismatch(t1.sort(), t2.sort())),
    }
}

/// Algorithmic type checker: synthesis with a single trailing subsumption,
/// and checking mode for abstractions.
pub struct Checker<'a> {
    pub sig: &'a Signature,
    pub oracle: &'a dyn EntailmentOracle,
}

fn fresh_for(x: &str, gamma: &TypeEnv, extra: &BTreeSet<String>) -> String {
    if !gamma.contains(x) && !extra.contains(x) {
        return x.to_string();
    }
    let mut avoid: BTreeSet<String> = gamma.iter().map(|(y, _)| y.to_string()).collect();
    avoid.extend(extra.iter().cloned());
    fresh_name(x, &avoid)
}

impl Checker<'_> {
    /// `Γ ⊢ G : T` for a goal term whose guards and relational existentials
    /// have already been eliminated.
    pub fn check(&self, gamma: &TypeEnv, g: &Term, t: &RefType) -> Result<bool, TypeError> {
        match (g, t) {
            (Term::Abs(x, s, body), RefType::Dep(y, b, tb)) => {
                if s != b {
                    return Ok(false);
                }
                let mut extra = tb.free_vars();
                extra.remove(y);
                let x2 = fresh_for(x, gamma, &extra);
                let body2 = body.rename(x, &x2);
                let tb2 = tb.subst(y, &Term::var(x2.clone()));
                self.check(&gamma.extended(&x2, TypeEntry::Ind(s.clone())), &body2, &tb2)
            }
            (Term::Abs(x, s, body), RefType::Arrow(t1, t2)) => {
                if s.is_base() || &t1.sort() != s {
                    return Ok(false);
                }
                let mut extra = t1.free_vars();
                extra.extend(t2.free_vars());
                let x2 = fresh_for(x, gamma, &extra);
                let body2 = body.rename(x, &x2);
                self.check(&gamma.extended(&x2, TypeEntry::Ty((**t1).clone())), &body2, t2)
            }
            _ => match self.synth(gamma, g)? {
                Some(found) => {
                    if found.sort() != t.sort() {
                        return Ok(false);
                    }
                    subtype(&gamma.individuals(), &found, t, self.oracle)
                }
                None => Ok(false),
            },
        }
    }

    /// Synthesises a type, or `None` when no derivation exists.
    pub fn synth(&self, gamma: &TypeEnv, g: &Term) -> Result<Option<RefType>, TypeError> {
        let flat = gamma.flat();
        if sorting::is_constraint_formula(self.sig, &flat, g) {
            return Ok(Some(RefType::Bool(g.clone())));
        }
        if let Some((a, b)) = g.as_binary(&Const::And) {
            return self.synth_bool_pair(gamma, a, b, Term::and);
        }
        if let Some((a, b)) = g.as_binary(&Const::Or) {
            return self.synth_bool_pair(gamma, a, b, Term::or);
        }
        if let Some((Const::Exists(s), x, _, body)) = g.as_binder() {
            if !s.is_base() {
                return Ok(None);
            }
            let x2 = fresh_for(x, gamma, &BTreeSet::new());
            let body2 = body.rename(x, &x2);
            let inner = gamma.extended(&x2, TypeEntry::Ind(s.clone()));
            return Ok(match self.synth(&inner, &body2)? {
                Some(RefType::Bool(phi)) => Some(RefType::Bool(Term::exists(x2, s.clone(), phi))),
                _ => None,
            });
        }
        let (head, args) = g.spine();
        self.synth_app(gamma, head, &args)
    }

    fn synth_bool_pair(
        &self,
        gamma: &TypeEnv,
        a: &Term,
        b: &Term,
        combine: fn(Term, Term) -> Term,
    ) -> Result<Option<RefType>, TypeError> {
        let Some(RefType::Bool(p)) = self.synth(gamma, a)? else {
            return Ok(None);
        };
        let Some(RefType::Bool(q)) = self.synth(gamma, b)? else {
            return Ok(None);
        };
        Ok(Some(RefType::Bool(combine(p, q))))
    }

    fn synth_app(
        &self,
        gamma: &TypeEnv,
        head: &Term,
        args: &[&Term],
    ) -> Result<Option<RefType>, TypeError> {
        match head {
            Term::Var(x) => match gamma.get(x) {
                Some(TypeEntry::Ty(t)) => self.apply_args(gamma, t.clone(), args),
                _ => Ok(None),
            },
            Term::Abs(x, s, body) if !args.is_empty() => {
                let mut extra = BTreeSet::new();
                for a in &args[1..] {
                    extra.extend(a.free_vars());
                }
                let x2 = fresh_for(x, gamma, &extra);
                let body2 = body.rename(x, &x2);
                if s.is_base() {
                    let n = args[0];
                    if !sorting::is_constraint_term_of(self.sig, &gamma.flat(), n, s) {
                        return Ok(None);
                    }
                    let inner = gamma.extended(&x2, TypeEntry::Ind(s.clone()));
                    match self.synth(&inner, &body2)? {
                        Some(t) => Ok(self.apply_args(&inner, t, &args[1..])?.map(|t| t.subst(&x2, n))),
                        None => Ok(None),
                    }
                } else {
                    let Some(th) = self.synth(gamma, args[0])? else {
                        return Ok(None);
                    };
                    if &th.sort() != s {
                        return Ok(None);
                    }
                    let inner = gamma.extended(&x2, TypeEntry::Ty(th));
                    match self.synth(&inner, &body2)? {
                        Some(t) => self.apply_args(&inner, t, &args[1..]),
                        None => Ok(None),
                    }
                }
            }
            Term::Abs(x, s, body) => {
                if s.is_base() {
                    let x2 = fresh_for(x, gamma, &BTreeSet::new());
                    let body2 = body.rename(x, &x2);
                    let inner = gamma.extended(&x2, TypeEntry::Ind(s.clone()));
                    Ok(self
                        .synth(&inner, &body2)?
                        .map(|t| RefType::dep(x2, s.clone(), t)))
                } else if s.is_relational() {
                    // No argument to take the domain from: assume nothing.
                    let dom = top_type(s);
                    let x2 = fresh_for(x, gamma, &dom.free_vars());
                    let body2 = body.rename(x, &x2);
                    let inner = gamma.extended(&x2, TypeEntry::Ty(dom.clone()));
                    Ok(self.synth(&inner, &body2)?.map(|t| RefType::arrow(dom, t)))
                } else {
                    Ok(None)
                }
            }
            _ => Ok(None),
        }
    }

    fn apply_args(
        &self,
        gamma: &TypeEnv,
        mut t: RefType,
        args: &[&Term],
    ) -> Result<Option<RefType>, TypeError> {
        let flat = gamma.flat();
        for a in args {
            t = match t {
                RefType::Dep(x, b, body) => {
                    if !sorting::is_constraint_term_of(self.sig, &flat, a, &b) {
                        return Ok(None);
                    }
                    body.subst(&x, a)
                }
                RefType::Arrow(t1, t2) => {
                    if !self.check(gamma, a, &t1)? {
                        return Ok(None);
                    }
                    *t2
                }
                RefType::Bool(_) => return Ok(None),
            };
        }
        Ok(Some(t))
    }
}

/// Rewrites a goal term into the fragment the checker handles: guards and
/// relational existentials eliminated, bare connectives eta-expanded.
pub fn prepare_goal(t: &Term) -> Term {
    transform::eta_connectives(&transform::eliminate_rel_existentials(&transform::elim_guards(t)))
}

/// `Γ ⊢ G : T`.
pub fn check_term(
    sig: &Signature,
    gamma: &TypeEnv,
    g: &Term,
    t: &RefType,
    oracle: &dyn EntailmentOracle,
) -> Result<bool, TypeError> {
    Checker { sig, oracle }.check(gamma, &prepare_goal(g), t)
}

/// Per-definition verdicts of the program rule: each body must check against
/// the type of its variable.
pub fn check_program_detailed(
    sig: &Signature,
    p: &LogicProgram,
    gamma: &TypeEnv,
    oracle: &dyn EntailmentOracle,
) -> Result<Vec<(String, bool)>, TypeError> {
    env_refines(sig, gamma, &p.env)?;
    let checker = Checker { sig, oracle };
    let mut out = Vec::new();
    for (x, body) in p.defs() {
        let t = gamma
            .get_type(x)
            .ok_or_else(|| TypeError::Missing(x.to_string()))?;
        out.push((x.to_string(), checker.check(gamma, &prepare_goal(body), t)?));
    }
    Ok(out)
}

/// `⊢ P : Γ`.
pub fn check_program(
    sig: &Signature,
    p: &LogicProgram,
    gamma: &TypeEnv,
    oracle: &dyn EntailmentOracle,
) -> Result<bool, TypeError> {
    Ok(check_program_detailed(sig, p, gamma, oracle)?
        .iter()
        .all(|(_, ok)| *ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, parse_type};

    /// Syntactic oracle: accepts exactly the entailments given to it, plus
    /// reflexive ones.
    struct Table(Vec<(String, String)>);

    impl EntailmentOracle for Table {
        fn entails(&self, _: &SortEnv, h: &Term, c: &Term) -> Result<bool, OracleError> {
            if h.alpha_eq(c) || c == &Term::tt() || h == &Term::ff() {
                return Ok(true);
            }
            let hs = crate::syntax::print_term(h);
            let cs = crate::syntax::print_term(c);
            Ok(self.0.iter().any(|(a, b)| a == &hs && b == &cs))
        }
    }

    #[test]
    fn top_and_bottom_shapes() {
        let s = Sort::arrow(Sort::int(), Sort::Prop);
        assert_eq!(top_type(&Sort::Prop), RefType::Bool(Term::tt()));
        assert!(bot_type(&s).alpha_eq(&parse_type("(z:int) -> bool[false]").unwrap()));
        let ho = Sort::arrow(s.clone(), Sort::Prop);
        assert!(top_type(&ho).alpha_eq(&parse_type("((z:int) -> bool[false]) -> bool[true]").unwrap()));
    }

    #[test]
    fn refinement_of_add_type() {
        let sig = Signature::zla();
        let t = parse_type("(x:int) -> (y:int) -> (z:int) -> bool[z = x + y]").unwrap();
        assert_eq!(refines(&sig, &SortEnv::new(), &t).unwrap().to_string(), "int -> int -> int -> o");
    }

    #[test]
    fn unbound_refinement_variable_is_rejected() {
        let sig = Signature::zla();
        let t = parse_type("(x:int) -> bool[y = 0]").unwrap();
        assert!(refines(&sig, &SortEnv::new(), &t).is_err());
        let env = SortEnv::from_pairs([("x".to_string(), Sort::int())]).unwrap();
        assert_eq!(refines(&sig, &env, &parse_type("bool[x = 0]").unwrap()), Ok(Sort::Prop));
    }

    #[test]
    fn reflexive_subtyping() {
        let t = parse_type("((x:int) -> bool[x > 0]) -> (y:int) -> bool[y = 1]").unwrap();
        assert!(subtype(&SortEnv::new(), &t, &t, &Table(vec![])).unwrap());
    }

    #[test]
    fn true_does_not_check_against_false() {
        let sig = Signature::zla();
        let ok = check_term(
            &sig,
            &TypeEnv::new(),
            &Term::tt(),
            &RefType::Bool(Term::ff()),
            &Table(vec![]),
        )
        .unwrap();
        assert!(!ok);
    }

    #[test]
    fn redex_with_individual_argument() {
        let sig = Signature::zla();
        let g = parse_term(r"(\x:int. x = 1) 1").unwrap();
        let t = Checker { sig: &sig, oracle: &Table(vec![]) }
            .synth(&TypeEnv::new(), &g)
            .unwrap()
            .unwrap();
        assert!(t.alpha_eq(&RefType::Bool(parse_term("1 = 1").unwrap())));
    }
}
