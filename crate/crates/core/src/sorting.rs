//! Constraint signatures, the sorting judgement for terms, constraint
//! recognition and the goal-term judgement.

use std::collections::BTreeMap;

use crate::sort::{Sort, SortEnv};
use crate::term::{Const, Term};
use crate::types;

/// Symbols available to the constraint language of a background theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub name: String,
    symbols: BTreeMap<String, Sort>,
    /// Integer literals denote elements of the base sort `int`.
    pub int_literals: bool,
}

impl Signature {
    pub fn empty(name: impl Into<String>) -> Signature {
        Signature {
            name: name.into(),
            symbols: BTreeMap::new(),
            int_literals: false,
        }
    }

    /// Linear integer arithmetic with `mod`.
    pub fn zla() -> Signature {
        let mut sig = Signature::empty("zla");
        sig.int_literals = true;
        let int = Sort::int;
        for op in ["+", "-", "*", "mod"] {
            sig.declare(op, Sort::curried([int(), int()], int()));
        }
        for cmp in ["<", "<=", ">", ">="] {
            sig.declare(cmp, Sort::curried([int(), int()], Sort::Prop));
        }
        sig
    }

    pub fn declare(&mut self, name: impl Into<String>, sort: Sort) {
        self.symbols.insert(name.into(), sort);
    }

    pub fn get(&self, name: &str) -> Option<&Sort> {
        self.symbols.get(name)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, &Sort)> {
        self.symbols.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// The signature for a theory id; `zla` is built in, anything else starts
    /// empty and is filled in from a finite theory.
    pub fn for_theory(id: &str) -> Signature {
        if id == "zla" {
            Signature::zla()
        } else {
            Signature::empty(id)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SortError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("integer literal {0} is not part of this theory")]
    NoLiterals(i64),
    #[error("in `{term}`: expected an argument of sort {expected}, found {found}")]
    Mismatch {
        term: String,
        expected: Sort,
        found: Sort,
    },
    #[error("in `{term}`: a term of sort {sort} cannot be applied")]
    NotAFunction { term: String, sort: Sort },
    #[error("abstraction over `{0}` shadows a variable of the environment")]
    Shadowing(String),
    #[error("in `{0}`: equality must be applied to two terms of the same base sort")]
    BadEquality(String),
    #[error("in `{term}`: quantifier over {expected} applied to a term of sort {found}")]
    BadQuantifier {
        term: String,
        expected: Sort,
        found: Sort,
    },
    #[error("guard type: {0}")]
    Guard(String),
}

fn sort_of_const(sig: &Signature, c: &Const) -> Result<Sort, SortError> {
    let o = || Sort::Prop;
    Ok(match c {
        Const::True | Const::False => o(),
        Const::And | Const::Or | Const::Implies => Sort::curried([o(), o()], o()),
        Const::Not => Sort::arrow(o(), o()),
        Const::Eq | Const::Neq => {
            return Err(SortError::BadEquality(crate::syntax::print_term(
                &Term::Const(c.clone()),
            )))
        }
        Const::Forall(s) | Const::Exists(s) => Sort::arrow(Sort::arrow(s.clone(), o()), o()),
        Const::Guarded(t) => {
            let rho = types::refines(sig, &SortEnv::new(), t)
                .map_err(|e| SortError::Guard(e.to_string()))?;
            Sort::arrow(Sort::arrow(rho, o()), o())
        }
        Const::Int(n) => {
            if !sig.int_literals {
                return Err(SortError::NoLiterals(*n));
            }
            Sort::int()
        }
        Const::Sym(s) => sig
            .get(s)
            .cloned()
            .ok_or_else(|| SortError::UnknownSymbol(s.clone()))?,
    })
}

struct Sorter<'a> {
    sig: &'a Signature,
    top: &'a SortEnv,
}

impl Sorter<'_> {
    fn infer(&self, env: &SortEnv, t: &Term) -> Result<Sort, SortError> {
        match t {
            Term::Var(x) => env
                .get(x)
                .cloned()
                .ok_or_else(|| SortError::Unbound(x.clone())),
            Term::Const(c) => sort_of_const(self.sig, c),
            Term::App(..) => {
                let (head, args) = t.spine();
                if let Term::Const(Const::Eq | Const::Neq) = head {
                    return self.equality(env, t, &args);
                }
                let mut s = self.infer(env, head)?;
                for a in args {
                    let Sort::Arrow(d, c) = s else {
                        return Err(SortError::NotAFunction {
                            term: crate::syntax::print_term(t),
                            sort: s,
                        });
                    };
                    let sa = self.infer(env, a)?;
                    if sa != *d {
                        return Err(SortError::Mismatch {
                            term: crate::syntax::print_term(t),
                            expected: *d,
                            found: sa,
                        });
                    }
                    s = *c;
                }
                Ok(s)
            }
            Term::Abs(x, s, body) => {
                if self.top.contains(x) {
                    return Err(SortError::Shadowing(x.clone()));
                }
                let inner = env.extended(x, s.clone());
                Ok(Sort::arrow(s.clone(), self.infer(&inner, body)?))
            }
        }
    }

    fn equality(&self, env: &SortEnv, t: &Term, args: &[&Term]) -> Result<Sort, SortError> {
        let bad = || SortError::BadEquality(crate::syntax::print_term(t));
        if args.len() != 2 {
            return Err(bad());
        }
        let a = self.infer(env, args[0])?;
        let b = self.infer(env, args[1])?;
        if a != b || !a.is_base() {
            return Err(bad());
        }
        Ok(Sort::Prop)
    }
}

/// The sorting judgement `env ⊢ t : σ`. Abstractions may not rebind a name of
/// `env`; nested abstractions may shadow each other.
pub fn infer_sort(sig: &Signature, env: &SortEnv, t: &Term) -> Result<Sort, SortError> {
    Sorter { sig, top: env }.infer(env, t)
}

/// Like [`infer_sort`] but without the shadowing restriction against `env`,
/// for subterms already inside a binder context.
pub fn infer_sort_scoped(sig: &Signature, env: &SortEnv, t: &Term) -> Result<Sort, SortError> {
    Sorter {
        sig,
        top: &SortEnv::new(),
    }
    .infer(env, t)
}

/// Whether `t` belongs to the constraint language: built from individual
/// variables, signature symbols, literals and the first-order connectives and
/// quantifiers over base sorts, and well sorted at a base sort or `o`.
pub fn is_constraint(sig: &Signature, env: &SortEnv, t: &Term) -> bool {
    constraint_shape(env, t)
        && matches!(infer_sort_scoped(sig, env, t), Ok(s) if s.is_base() || s == Sort::Prop)
}

/// Whether `t` is a constraint formula (sort `o`).
pub fn is_constraint_formula(sig: &Signature, env: &SortEnv, t: &Term) -> bool {
    constraint_shape(env, t) && matches!(infer_sort_scoped(sig, env, t), Ok(Sort::Prop))
}

/// Whether `t` is a constraint term of the given base sort.
pub fn is_constraint_term_of(sig: &Signature, env: &SortEnv, t: &Term, base: &Sort) -> bool {
    constraint_shape(env, t) && matches!(infer_sort_scoped(sig, env, t), Ok(s) if &s == base)
}

fn constraint_shape(env: &SortEnv, t: &Term) -> bool {
    match t {
        Term::Var(x) => env.get(x).is_some_and(Sort::is_base),
        Term::Const(Const::True | Const::False | Const::Int(_) | Const::Sym(_)) => true,
        Term::Const(_) => false,
        Term::Abs(..) => false,
        Term::App(..) => {
            let (head, args) = t.spine();
            match head {
                Term::Const(Const::And | Const::Or | Const::Implies | Const::Eq | Const::Neq) => {
                    args.len() == 2 && args.iter().all(|a| constraint_shape(env, a))
                }
                Term::Const(Const::Not) => args.len() == 1 && constraint_shape(env, args[0]),
                Term::Const(Const::Sym(_)) => args.iter().all(|a| constraint_shape(env, a)),
                Term::Const(Const::Forall(s) | Const::Exists(s)) if s.is_base() => {
                    match args.as_slice() {
                        [Term::Abs(x, xs, body)] if xs == s => {
                            constraint_shape(&env.extended(x, s.clone()), body)
                        }
                        _ => false,
                    }
                }
                _ => false,
            }
        }
    }
}

/// A goal-term rejection: the rule that failed and the offending subterm.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{rule}: {reason} in `{subterm}`")]
pub struct GoalError {
    pub rule: &'static str,
    pub subterm: String,
    pub reason: String,
}

/// One step of a goal-term derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleStep {
    pub rule: &'static str,
    pub subterm: String,
    pub sort: Sort,
}

struct GoalChecker<'a> {
    sig: &'a Signature,
    top: &'a SortEnv,
    trace: Vec<RuleStep>,
}

fn is_goal_binder_sort(s: &Sort) -> bool {
    s.is_base() || s.is_relational()
}

impl GoalChecker<'_> {
    fn fail<T>(&self, rule: &'static str, t: &Term, reason: impl Into<String>) -> Result<T, GoalError> {
        Err(GoalError {
            rule,
            subterm: crate::syntax::print_term(t),
            reason: reason.into(),
        })
    }

    fn step(&mut self, rule: &'static str, t: &Term, sort: &Sort) {
        self.trace.push(RuleStep {
            rule,
            subterm: crate::syntax::print_term(t),
            sort: sort.clone(),
        });
    }

    fn goal(&mut self, env: &SortEnv, t: &Term) -> Result<Sort, GoalError> {
        if is_constraint_formula(self.sig, env, t) {
            self.step("GConstraint", t, &Sort::Prop);
            return Ok(Sort::Prop);
        }
        match t {
            Term::Var(x) => match env.get(x) {
                Some(s) if s.is_relational() => {
                    let s = s.clone();
                    self.step("GVar", t, &s);
                    Ok(s)
                }
                Some(s) => self.fail("GVar", t, format!("variable has non-relational sort {s}")),
                None => self.fail("GVar", t, "unbound variable"),
            },
            Term::Const(c) => {
                let s = match c {
                    Const::And | Const::Or => Sort::curried([Sort::Prop, Sort::Prop], Sort::Prop),
                    Const::Exists(s) if is_goal_binder_sort(s) => {
                        Sort::arrow(Sort::arrow(s.clone(), Sort::Prop), Sort::Prop)
                    }
                    Const::Guarded(_) => match sort_of_const(self.sig, c) {
                        Ok(s) => s,
                        Err(e) => return self.fail("GCst", t, e.to_string()),
                    },
                    _ => return self.fail("GCst", t, "not a goal-term constant"),
                };
                self.step("GCst", t, &s);
                Ok(s)
            }
            Term::Abs(x, s, body) => {
                if self.top.contains(x) {
                    return self.fail("GAbs", t, format!("binder `{x}` shadows the environment"));
                }
                if !is_goal_binder_sort(s) {
                    return self.fail("GAbs", t, format!("binder sort {s} is neither individual nor relational"));
                }
                let inner = env.extended(x, s.clone());
                let r = self.goal(&inner, body)?;
                if !r.is_relational() {
                    return self.fail("GAbs", t, format!("body has non-relational sort {r}"));
                }
                let res = Sort::arrow(s.clone(), r);
                self.step("GAbs", t, &res);
                Ok(res)
            }
            Term::App(f, a) => {
                let fs = self.goal(env, f)?;
                let Sort::Arrow(d, c) = fs else {
                    return self.fail("GAppRel", t, format!("head has sort {fs} and cannot be applied"));
                };
                if d.is_base() {
                    if !is_constraint_term_of(self.sig, env, a, &d) {
                        return self.fail(
                            "GAppInd",
                            t,
                            format!("argument is not a constraint term of sort {d}"),
                        );
                    }
                    self.step("GAppInd", t, &c);
                } else {
                    let sa = self.goal(env, a)?;
                    if sa != *d {
                        return self.fail(
                            "GAppRel",
                            t,
                            format!("argument has sort {sa}, expected {d}"),
                        );
                    }
                    self.step("GAppRel", t, &c);
                }
                Ok(*c)
            }
        }
    }
}

/// The goal-term judgement `env ⊢ t : expected`. On success returns the rule
/// trace in post-order.
pub fn check_goal_term(
    sig: &Signature,
    env: &SortEnv,
    t: &Term,
    expected: &Sort,
) -> Result<Vec<RuleStep>, GoalError> {
    let mut gc = GoalChecker {
        sig,
        top: env,
        trace: Vec::new(),
    };
    let s = gc.goal(env, t)?;
    if &s != expected {
        return gc.fail("goal", t, format!("has sort {s}, expected {expected}"));
    }
    Ok(gc.trace)
}

/// Goal-term check that tolerates names of `env` being rebound, for terms
/// produced by transformations that have already been sort checked.
pub fn goal_sort_scoped(sig: &Signature, env: &SortEnv, t: &Term) -> Result<Sort, GoalError> {
    let empty = SortEnv::new();
    let mut gc = GoalChecker {
        sig,
        top: &empty,
        trace: Vec::new(),
    };
    gc.goal(env, t)
}
