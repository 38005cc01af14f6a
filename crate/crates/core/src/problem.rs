//! HoCHC problems: definite formulas split into clauses, goal formulas and
//! problem validation.

use std::collections::BTreeSet;

use crate::sort::{Sort, SortEnv};
use crate::sorting::{self, GoalError, Signature};
use crate::term::{fresh_name, Const, Term};

/// `∀ x̄. body ⇒ X ȳ` with `ȳ` pairwise distinct variables among `x̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub binders: Vec<(String, Sort)>,
    pub body: Term,
    pub head_var: String,
    pub head_args: Vec<String>,
}

impl Clause {
    pub fn to_term(&self) -> Term {
        let head = Term::apps(
            Term::var(self.head_var.clone()),
            self.head_args.iter().map(|a| Term::var(a.clone())),
        );
        Term::forall_many(&self.binders, Term::implies(self.body.clone(), head))
    }
}

/// A conjunction of definite clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefiniteFormula {
    pub clauses: Vec<Clause>,
}

impl DefiniteFormula {
    pub fn to_term(&self) -> Term {
        if self.clauses.is_empty() {
            return Term::tt();
        }
        Term::conj(self.clauses.iter().map(Clause::to_term))
    }

    /// Clauses whose head is the given variable.
    pub fn clauses_for<'a>(&'a self, x: &'a str) -> impl Iterator<Item = &'a Clause> + 'a {
        self.clauses.iter().filter(move |c| c.head_var == x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProblemError {
    #[error("`{0}` must have a relational sort")]
    NotRelational(String),
    #[error("clause head `{0}` is not a variable of the environment applied to distinct bound variables")]
    BadHead(String),
    #[error("clause head `{head}` applies `{var}` to {found} arguments, its sort needs {expected}")]
    PartialHead {
        head: String,
        var: String,
        expected: usize,
        found: usize,
    },
    #[error("not a definite formula: `{0}`")]
    NotDefinite(String),
    #[error("clause body: {0}")]
    Body(GoalError),
    #[error("goal: {0}")]
    Goal(GoalError),
    #[error("binder `{0}` shadows a variable of the environment")]
    Shadowing(String),
}

/// `⟨Δ, D, G⟩` over a named background theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub theory: String,
    pub env: SortEnv,
    pub definite: DefiniteFormula,
    pub goal: Term,
}

impl Problem {
    /// Validates the problem against a signature: relational environment,
    /// clause bodies and goal are goal terms of sort `o`.
    pub fn validate(&self, sig: &Signature) -> Result<(), ProblemError> {
        for (x, s) in self.env.iter() {
            if !s.is_relational() {
                return Err(ProblemError::NotRelational(x.to_string()));
            }
        }
        for c in &self.definite.clauses {
            check_clause(sig, &self.env, c)?;
        }
        sorting::check_goal_term(sig, &self.env, &self.goal, &Sort::Prop)
            .map_err(ProblemError::Goal)?;
        Ok(())
    }

    /// Number of variables in the environment.
    pub fn arity(&self) -> usize {
        self.env.len()
    }
}

fn check_clause(sig: &Signature, env: &SortEnv, c: &Clause) -> Result<(), ProblemError> {
    for (x, s) in &c.binders {
        if env.contains(x) {
            return Err(ProblemError::Shadowing(x.clone()));
        }
        if !(s.is_base() || s.is_relational()) {
            return Err(ProblemError::NotDefinite(format!("binder {x} : {s}")));
        }
    }
    let head = crate::syntax::print_term(&c.to_term());
    let Some(hs) = env.get(&c.head_var) else {
        return Err(ProblemError::BadHead(head));
    };
    let (dom, _) = hs.uncurry();
    if dom.len() != c.head_args.len() {
        return Err(ProblemError::PartialHead {
            head,
            var: c.head_var.clone(),
            expected: dom.len(),
            found: c.head_args.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for (a, d) in c.head_args.iter().zip(dom) {
        let bound = c.binders.iter().find(|(x, _)| x == a);
        match bound {
            Some((_, s)) if s == d && seen.insert(a.clone()) => {}
            _ => return Err(ProblemError::BadHead(head)),
        }
    }
    // Checking the closed-over body also rejects inner abstractions that
    // rebind environment variables.
    let closed = Term::abs_many(&c.binders, c.body.clone());
    sorting::check_goal_term(sig, env, &closed, &abs_sort(&c.binders)).map_err(ProblemError::Body)?;
    Ok(())
}

fn abs_sort(binders: &[(String, Sort)]) -> Sort {
    Sort::curried(binders.iter().map(|(_, s)| s.clone()), Sort::Prop)
}

/// Splits a definite formula into clauses. Accepts conjunctions of
/// `∀ x̄. G ⇒ X ȳ` in any nesting of `∀`, `∧` and `⇒`, and `true`.
pub fn decompose_definite(
    sig: &Signature,
    env: &SortEnv,
    d: &Term,
) -> Result<DefiniteFormula, ProblemError> {
    let mut clauses = Vec::new();
    collect(d, Vec::new(), Vec::new(), env, &mut clauses)?;
    let df = DefiniteFormula { clauses };
    for c in &df.clauses {
        check_clause(sig, env, c)?;
    }
    Ok(df)
}

fn collect(
    t: &Term,
    binders: Vec<(String, Sort)>,
    hyps: Vec<Term>,
    env: &SortEnv,
    out: &mut Vec<Clause>,
) -> Result<(), ProblemError> {
    if t.is_const(&Const::True) {
        return Ok(());
    }
    if let Some((a, b)) = t.as_binary(&Const::And) {
        collect(a, binders.clone(), hyps.clone(), env, out)?;
        return collect(b, binders, hyps, env, out);
    }
    if let Some((Const::Forall(s), x, _, body)) = t.as_binder() {
        let mut avoid: BTreeSet<String> = env.names().map(str::to_string).collect();
        avoid.extend(binders.iter().map(|(y, _)| y.clone()));
        for h in &hyps {
            avoid.extend(h.free_vars());
        }
        let (x2, body2) = if avoid.contains(x) {
            let y = fresh_name(x, &avoid);
            (y.clone(), body.rename(x, &y))
        } else {
            (x.to_string(), body.clone())
        };
        let mut binders = binders;
        binders.push((x2, s.clone()));
        return collect(&body2, binders, hyps, env, out);
    }
    if let Some((a, b)) = t.as_binary(&Const::Implies) {
        let mut hyps = hyps;
        hyps.push(a.clone());
        return collect(b, binders, hyps, env, out);
    }
    let (head, args) = t.spine();
    let bad = || ProblemError::BadHead(crate::syntax::print_term(t));
    let Term::Var(x) = head else {
        return Err(bad());
    };
    if !env.contains(x) || binders.iter().any(|(y, _)| y == x) {
        return Err(bad());
    }
    let mut head_args = Vec::new();
    for a in args {
        match a {
            Term::Var(y) => head_args.push(y.clone()),
            _ => return Err(bad()),
        }
    }
    out.push(Clause {
        binders,
        body: if hyps.is_empty() { Term::tt() } else { Term::conj(hyps) },
        head_var: x.clone(),
        head_args,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn env() -> SortEnv {
        SortEnv::from_pairs([
            ("X".to_string(), Sort::arrow(Sort::int(), Sort::Prop)),
            ("Y".to_string(), Sort::Prop),
        ])
        .unwrap()
    }

    #[test]
    fn splits_conjunction_of_clauses() {
        let sig = Signature::zla();
        let d = parse_term("(forall x:int. x = 0 => X x) && (forall x:int. X (x - 1) => X x) && (true => Y)")
            .unwrap();
        let df = decompose_definite(&sig, &env(), &d).unwrap();
        assert_eq!(df.clauses.len(), 3);
        assert_eq!(df.clauses[2].head_var, "Y");
        assert!(df.clauses[2].binders.is_empty());
    }

    #[test]
    fn nested_implications_accumulate() {
        let sig = Signature::zla();
        let d = parse_term("forall x:int. x > 0 => forall y:int. y = x => X y").unwrap();
        let df = decompose_definite(&sig, &env(), &d).unwrap();
        let c = &df.clauses[0];
        assert_eq!(c.binders.len(), 2);
        assert_eq!(crate::syntax::print_term(&c.body), "x > 0 && y = x");
    }

    #[test]
    fn head_must_use_distinct_variables() {
        let sig = Signature::zla();
        let env = SortEnv::from_pairs([(
            "R".to_string(),
            Sort::curried([Sort::int(), Sort::int()], Sort::Prop),
        )])
        .unwrap();
        let d = parse_term("forall x:int. true => R x x").unwrap();
        assert!(matches!(decompose_definite(&sig, &env, &d), Err(ProblemError::BadHead(_))));
        let d = parse_term("forall x:int. true => R x (x + 1)").unwrap();
        assert!(decompose_definite(&sig, &env, &d).is_err());
    }

    #[test]
    fn partial_head_is_rejected() {
        let sig = Signature::zla();
        let env = SortEnv::from_pairs([(
            "R".to_string(),
            Sort::curried([Sort::int(), Sort::int()], Sort::Prop),
        )])
        .unwrap();
        let d = parse_term("forall x:int. true => R x").unwrap();
        assert!(matches!(
            decompose_definite(&sig, &env, &d),
            Err(ProblemError::PartialHead { .. })
        ));
    }

    #[test]
    fn round_trip_through_terms() {
        let sig = Signature::zla();
        let d = parse_term("forall x:int. x = 0 => X x").unwrap();
        let df = decompose_definite(&sig, &env(), &d).unwrap();
        let again = decompose_definite(&sig, &env(), &df.to_term()).unwrap();
        assert_eq!(df, again);
    }
}
