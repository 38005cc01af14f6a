//! Syntactic reductions: definite formulas to logic programs, elimination of
//! relational existentials, and elimination of type guards via `Com`/`Lar`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::problem::DefiniteFormula;
use crate::sort::{Sort, SortEnv};
use crate::term::{fresh_name, fresh_or, Const, Term};
use crate::types::RefType;

/// Recursive definitions `X = λx̄. G`, one per relational variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicProgram {
    pub env: SortEnv,
    defs: Vec<(String, Term)>,
}

impl LogicProgram {
    /// Definitions must be given for exactly the variables of `env`.
    pub fn new(env: SortEnv, defs: Vec<(String, Term)>) -> LogicProgram {
        let mut ordered = Vec::new();
        for x in env.names() {
            let body = defs
                .iter()
                .find(|(y, _)| y == x)
                .map(|(_, t)| t.clone())
                .unwrap_or_else(|| panic!("no definition for `{x}`"));
            ordered.push((x.to_string(), body));
        }
        LogicProgram { env, defs: ordered }
    }

    pub fn def(&self, x: &str) -> Option<&Term> {
        self.defs.iter().find(|(y, _)| y == x).map(|(_, t)| t)
    }

    pub fn defs(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.defs.iter().map(|(x, t)| (x.as_str(), t))
    }

    pub fn map_defs(&self, mut f: impl FnMut(&Term) -> Term) -> LogicProgram {
        LogicProgram {
            env: self.env.clone(),
            defs: self.defs.iter().map(|(x, t)| (x.clone(), f(t))).collect(),
        }
    }
}

impl fmt::Display for LogicProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, t) in &self.defs {
            writeln!(f, "{x} = {t};")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("type `{0}` is not closed")]
    OpenType(String),
}

fn env_names(env: &SortEnv) -> BTreeSet<String> {
    env.names().map(str::to_string).collect()
}

/// Collapses the clauses sharing a head into one disjunctive definition.
/// Binder names come from the first clause for each head; clause binders not
/// in the head become existentials; variables without clauses get `false`.
pub fn program_of_definite(env: &SortEnv, d: &DefiniteFormula) -> LogicProgram {
    let mut defs = Vec::new();
    for (x, sort) in env.iter() {
        let (doms, _) = sort.uncurry();
        let clauses: Vec<_> = d.clauses_for(x).collect();
        let mut avoid = env_names(env);
        let canon: Vec<String> = match clauses.first() {
            Some(c) => c.head_args.clone(),
            None => (1..=doms.len())
                .map(|i| {
                    let n = fresh_or(&format!("x{i}"), &avoid);
                    avoid.insert(n.clone());
                    n
                })
                .collect(),
        };
        let binders: Vec<(String, Sort)> = canon
            .iter()
            .cloned()
            .zip(doms.iter().map(|s| (*s).clone()))
            .collect();
        let mut bodies = Vec::new();
        for c in clauses {
            let mut taken: BTreeSet<String> = env_names(env);
            taken.extend(canon.iter().cloned());
            c.body.all_names(&mut taken);
            // Extra binders are renamed away from the canonical names first.
            let mut renaming = BTreeMap::new();
            let mut extra = Vec::new();
            for (z, s) in &c.binders {
                if c.head_args.contains(z) {
                    continue;
                }
                let z2 = if canon.contains(z) {
                    let n = fresh_name(z, &taken);
                    taken.insert(n.clone());
                    renaming.insert(z.clone(), Term::var(n.clone()));
                    n
                } else {
                    z.clone()
                };
                extra.push((z2, s.clone()));
            }
            for (y, cname) in c.head_args.iter().zip(&canon) {
                if y != cname {
                    renaming.insert(y.clone(), Term::var(cname.clone()));
                }
            }
            let body = c.body.subst_map(&renaming);
            bodies.push(Term::exists_many(&extra, body));
        }
        defs.push((x.to_string(), Term::abs_many(&binders, Term::disj(bodies))));
    }
    LogicProgram::new(env.clone(), defs)
}

/// `U_ρ = λx̄. true`, the top element of a relational sort.
pub fn top_term(rho: &Sort) -> Term {
    let (doms, _) = rho.uncurry();
    let binders: Vec<(String, Sort)> = doms
        .iter()
        .enumerate()
        .map(|(i, s)| (format!("x{}", i + 1), (*s).clone()))
        .collect();
    Term::abs_many(&binders, Term::tt())
}

/// Replaces every `∃x:ρ. G` with `ρ` relational by `G[U_ρ/x]`.
pub fn eliminate_rel_existentials(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::Abs(x, s, b) => Term::Abs(x.clone(), s.clone(), Box::new(eliminate_rel_existentials(b))),
        Term::App(f, a) => {
            if let Term::Const(Const::Exists(s)) = f.as_ref() {
                if !s.is_base() {
                    let u = top_term(s);
                    return match a.as_ref() {
                        Term::Abs(x, _, body) => eliminate_rel_existentials(body).subst(x, &u),
                        other => Term::app(eliminate_rel_existentials(other), u),
                    };
                }
            }
            Term::app(eliminate_rel_existentials(f), eliminate_rel_existentials(a))
        }
    }
}

/// Negation pushed through a constraint formula: De Morgan, flipped
/// (dis)equalities and quantifier duals. Other atoms are wrapped in `~`.
pub fn negate_constraint(phi: &Term) -> Term {
    if phi.is_const(&Const::True) {
        return Term::ff();
    }
    if phi.is_const(&Const::False) {
        return Term::tt();
    }
    if let Some((a, b)) = phi.as_binary(&Const::And) {
        return Term::or(negate_constraint(a), negate_constraint(b));
    }
    if let Some((a, b)) = phi.as_binary(&Const::Or) {
        return Term::and(negate_constraint(a), negate_constraint(b));
    }
    if let Some((a, b)) = phi.as_binary(&Const::Implies) {
        return Term::and(a.clone(), negate_constraint(b));
    }
    if let Some((a, b)) = phi.as_binary(&Const::Eq) {
        return Term::neq(a.clone(), b.clone());
    }
    if let Some((a, b)) = phi.as_binary(&Const::Neq) {
        return Term::eq(a.clone(), b.clone());
    }
    if let Term::App(f, a) = phi {
        if f.is_const(&Const::Not) {
            return (**a).clone();
        }
    }
    if let Some((q, x, s, body)) = phi.as_binder() {
        match q {
            Const::Exists(_) => return Term::forall(x, s.clone(), negate_constraint(body)),
            Const::Forall(_) => return Term::exists(x, s.clone(), negate_constraint(body)),
            _ => {}
        }
    }
    Term::not(phi.clone())
}

struct Names {
    avoid: BTreeSet<String>,
}

impl Names {
    fn fresh(&mut self, base: &str) -> String {
        let n = fresh_or(base, &self.avoid);
        self.avoid.insert(n.clone());
        n
    }
}

fn com_raw(t: &RefType, names: &mut Names) -> Term {
    let z = names.fresh("z");
    match t {
        RefType::Bool(phi) => Term::abs(
            z.clone(),
            Sort::Prop,
            Term::and(Term::var(z), negate_constraint(phi)),
        ),
        RefType::Dep(x, b, body) => {
            let inner = com_raw(body, names);
            let applied = Term::app(Term::var(z.clone()), Term::var(x.clone()));
            Term::abs(
                z,
                t.sort(),
                Term::exists(x.clone(), b.clone(), Term::app(inner, applied)),
            )
        }
        RefType::Arrow(t1, t2) => {
            let arg = lar_raw(&Term::ff(), t1, names);
            let inner = com_raw(t2, names);
            Term::abs(
                z.clone(),
                t.sort(),
                Term::app(inner, Term::app(Term::var(z), arg)),
            )
        }
    }
}

fn lar_raw(g: &Term, t: &RefType, names: &mut Names) -> Term {
    match t {
        RefType::Bool(phi) => Term::or(g.clone(), phi.clone()),
        RefType::Dep(x, b, body) => {
            let z = if g.occurs_free(x) { names.fresh(x) } else { x.clone() };
            names.avoid.insert(z.clone());
            let body = body.subst(x, &Term::var(z.clone()));
            Term::abs(z, b.clone(), lar_raw(g, &body, names))
        }
        RefType::Arrow(t1, t2) => {
            let z = names.fresh("z");
            let com1 = com_raw(t1, names);
            let g2 = Term::or(g.clone(), Term::app(com1, Term::var(z.clone())));
            Term::abs(z, t1.sort(), lar_raw(&g2, t2, names))
        }
    }
}

fn names_for(g: Option<&Term>, t: &RefType) -> Names {
    let mut avoid = BTreeSet::new();
    t.all_names(&mut avoid);
    if let Some(g) = g {
        g.all_names(&mut avoid);
    }
    Names { avoid }
}

fn check_closed(t: &RefType) -> Result<(), TransformError> {
    if t.free_vars().is_empty() {
        Ok(())
    } else {
        Err(TransformError::OpenType(crate::syntax::print_type(t)))
    }
}

/// `Com(T)`: a goal term of sort `ρ -> o` true exactly of the relations
/// outside the ideal of `T`.
pub fn com(t: &RefType) -> Result<Term, TransformError> {
    check_closed(t)?;
    Ok(simplify(&com_raw(t, &mut names_for(None, t))))
}

/// `Lar(G)(T)`: with `G = false`, the largest inhabitant of `T`.
pub fn lar(g: &Term, t: &RefType) -> Result<Term, TransformError> {
    check_closed(t)?;
    Ok(simplify(&lar_raw(g, t, &mut names_for(Some(g), t))))
}

/// Replaces each guarded existential `∃x:T. G` by `G[Lar(false)(T)/x]`,
/// innermost first. Guards with free variables are left in place.
pub fn elim_guards(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::Abs(x, s, b) => Term::Abs(x.clone(), s.clone(), Box::new(elim_guards(b))),
        Term::App(f, a) => {
            if let Term::Const(Const::Guarded(ty)) = f.as_ref() {
                if let Ok(witness) = lar(&Term::ff(), ty) {
                    return match a.as_ref() {
                        Term::Abs(x, _, body) => elim_guards(body).subst(x, &witness),
                        other => Term::app(elim_guards(other), witness),
                    };
                }
            }
            Term::app(elim_guards(f), elim_guards(a))
        }
    }
}

pub fn elim_program(p: &LogicProgram) -> LogicProgram {
    p.map_defs(elim_guards)
}

/// Full beta normalisation.
pub fn beta_normal(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::Abs(x, s, b) => Term::Abs(x.clone(), s.clone(), Box::new(beta_normal(b))),
        Term::App(f, a) => {
            let f2 = beta_normal(f);
            match f2 {
                Term::Abs(x, _, body) => beta_normal(&body.subst(&x, a)),
                f2 => Term::app(f2, beta_normal(a)),
            }
        }
    }
}

fn collect_chain<'a>(t: &'a Term, c: &Const, out: &mut Vec<&'a Term>) {
    match t.as_binary(c) {
        Some((a, b)) => {
            collect_chain(a, c, out);
            collect_chain(b, c, out);
        }
        None => out.push(t),
    }
}

fn units(t: &Term) -> Term {
    match t {
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::Abs(x, s, b) => Term::Abs(x.clone(), s.clone(), Box::new(units(b))),
        Term::App(..) => {
            for (c, unit) in [(Const::And, Const::True), (Const::Or, Const::False)] {
                if t.as_binary(&c).is_some() {
                    let mut parts = Vec::new();
                    collect_chain(t, &c, &mut parts);
                    let parts: Vec<Term> = parts
                        .into_iter()
                        .map(units)
                        .filter(|p| !p.is_const(&unit))
                        .collect();
                    return match parts.len() {
                        0 => Term::Const(unit),
                        _ => {
                            let mut it = parts.into_iter();
                            let first = it.next().unwrap();
                            it.fold(first, |acc, p| {
                                Term::apps(Term::Const(c.clone()), [acc, p])
                            })
                        }
                    };
                }
            }
            let Term::App(f, a) = t else { unreachable!() };
            Term::app(units(f), units(a))
        }
    }
}

/// Beta normalisation, unit laws for `∧`/`∨`, and left-associated chains.
pub fn simplify(t: &Term) -> Term {
    units(&beta_normal(t))
}

/// Eta-expands partially applied `∧`/`∨` and existentials applied to
/// something other than an abstraction.
pub fn eta_connectives(t: &Term) -> Term {
    let mut avoid = BTreeSet::new();
    t.all_names(&mut avoid);
    let mut names = Names { avoid };
    eta_in(t, &mut names)
}

fn eta_in(t: &Term, names: &mut Names) -> Term {
    let (head, args) = t.spine();
    if let Term::Const(c) = head {
        let args: Vec<Term> = args.into_iter().map(|a| eta_in(a, names)).collect();
        match c {
            Const::And | Const::Or if args.len() < 2 => {
                let mut binders = Vec::new();
                let mut full = Term::apps(head.clone(), args.clone());
                for _ in args.len()..2 {
                    let b = names.fresh("b");
                    full = Term::app(full, Term::var(b.clone()));
                    binders.push((b, Sort::Prop));
                }
                return Term::abs_many(&binders, full);
            }
            Const::Exists(_) | Const::Guarded(_) if !args.is_empty() && !matches!(args[0], Term::Abs(..)) => {
                let s = match c {
                    Const::Guarded(ty) => ty.sort(),
                    Const::Exists(s) => s.clone(),
                    _ => unreachable!(),
                };
                let x = names.fresh("e");
                let body = Term::app(args[0].clone(), Term::var(x.clone()));
                let q = Term::app(head.clone(), Term::abs(x, s, body));
                return Term::apps(q, args[1..].iter().cloned());
            }
            Const::Exists(s) if args.is_empty() => {
                let h = names.fresh("h");
                let x = names.fresh("e");
                let hs = Sort::arrow(s.clone(), Sort::Prop);
                let body = Term::app(Term::var(h.clone()), Term::var(x.clone()));
                return Term::abs(h, hs, Term::exists(x, s.clone(), body));
            }
            _ => return Term::apps(head.clone(), args),
        }
    }
    match t {
        Term::Abs(x, s, b) => Term::Abs(x.clone(), s.clone(), Box::new(eta_in(b, names))),
        Term::App(..) => {
            let (head, args) = t.spine();
            let h = eta_in(head, names);
            Term::apps(h, args.into_iter().map(|a| eta_in(a, names)))
        }
        _ => t.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::decompose_definite;
    use crate::sorting::Signature;
    use crate::syntax::{parse_term, parse_type, print_term};

    #[test]
    fn iteration_program() {
        let src = include_str!("../corpus/iter.hochc");
        let p = crate::syntax::parse_problem(src).unwrap();
        let prog = program_of_definite(&p.env, &p.definite);
        assert_eq!(print_term(prog.def("Add").unwrap()), r"\x y z:int. z = x + y");
        assert_eq!(
            print_term(prog.def("Iter").unwrap()),
            r"\f:int -> int -> int -> o s n m:int. n <= 0 && m = s || (exists p:int. 0 < n && Iter f s (n - 1) p && f n p m)"
        );
    }

    #[test]
    fn variable_without_clauses_is_false() {
        let one = Sort::base("one");
        let q = Sort::arrow(one.clone(), Sort::Prop);
        let p = Sort::arrow(Sort::arrow(q.clone(), Sort::Prop), Sort::Prop);
        let env = SortEnv::from_pairs([("Q".to_string(), q), ("P".to_string(), p)]).unwrap();
        let mut sig = Signature::empty("one");
        sig.declare("u", one);
        let d = crate::syntax::parse_term_with(
            "forall x:(one -> o) -> o. x Q => P x",
            &sig,
            &["Q", "P"],
        )
        .unwrap();
        let df = decompose_definite(&sig, &env, &d).unwrap();
        let prog = program_of_definite(&env, &df);
        assert_eq!(print_term(prog.def("P").unwrap()), r"\x:(one -> o) -> o. x Q");
        assert_eq!(print_term(prog.def("Q").unwrap()), r"\x1:one. false");
    }

    #[test]
    fn shared_head_becomes_disjunction() {
        let env = SortEnv::from_pairs([("X".to_string(), Sort::arrow(Sort::int(), Sort::Prop))]).unwrap();
        let d = parse_term("(forall y:int. y = 0 => X y) && (forall z w:int. X w && z = w + 1 => X z)").unwrap();
        let df = decompose_definite(&Signature::zla(), &env, &d).unwrap();
        let prog = program_of_definite(&env, &df);
        assert_eq!(
            print_term(prog.def("X").unwrap()),
            r"\y:int. y = 0 || (exists w:int. X w && y = w + 1)"
        );
    }

    #[test]
    fn relational_existential_becomes_top() {
        let t = parse_term("exists f:int -> o. f 3").unwrap();
        assert_eq!(print_term(&eliminate_rel_existentials(&t)), r"(\x1:int. true) 3");
    }

    #[test]
    fn complement_and_largest_element_of_even_preserving_type() {
        let t = parse_type("(x:int) -> (y:int) -> bool[x mod 2 = 0 => y mod 2 = 0]").unwrap();
        assert_eq!(
            print_term(&lar(&Term::ff(), &t).unwrap()),
            r"\x y:int. x mod 2 = 0 => y mod 2 = 0"
        );
        assert_eq!(
            print_term(&com(&t).unwrap()),
            r"\z:int -> int -> o. exists x y:int. z x y && x mod 2 = 0 && y mod 2 <> 0"
        );
    }

    #[test]
    fn com_and_lar_at_prop() {
        let t = parse_type("bool[x = 0]").unwrap();
        assert!(com(&t).is_err());
        let t = parse_type("bool[1 = 0]").unwrap();
        assert_eq!(print_term(&com(&t).unwrap()), r"\z:o. z && 1 <> 0");
        assert_eq!(print_term(&lar(&parse_term("G").unwrap(), &t).unwrap()), "G || 1 = 0");
    }

    #[test]
    fn guard_on_prop() {
        let t = parse_term("exists x : [bool[1 = 2]]. x").unwrap();
        assert_eq!(print_term(&elim_guards(&t)), "1 = 2");
    }

    #[test]
    fn negation_of_constraints() {
        let phi = parse_term("x < 1 && (y = 2 || ~(z = 3))").unwrap();
        assert_eq!(print_term(&negate_constraint(&phi)), "~(x < 1) || y <> 2 && z = 3");
    }
}
