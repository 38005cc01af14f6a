//! Leftmost-outermost reduction of goal terms against a logic program.

use std::collections::BTreeSet;
use std::fmt;

use crate::term::Term;
use crate::transform::LogicProgram;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Beta,
    Delta,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Beta => "beta",
            Rule::Delta => "delta",
        })
    }
}

/// One reduction step, or `None` if `t` is in normal form.
pub fn step(p: &LogicProgram, t: &Term) -> Option<(Rule, Term)> {
    step_in(p, t, &mut BTreeSet::new())
}

fn step_in(p: &LogicProgram, t: &Term, bound: &mut BTreeSet<String>) -> Option<(Rule, Term)> {
    match t {
        Term::Var(x) => {
            if bound.contains(x) {
                return None;
            }
            p.def(x).map(|d| (Rule::Delta, d.clone()))
        }
        Term::Const(_) => None,
        Term::Abs(x, s, b) => {
            let fresh = bound.insert(x.clone());
            let r = step_in(p, b, bound);
            if fresh {
                bound.remove(x);
            }
            r.map(|(rule, b2)| (rule, Term::Abs(x.clone(), s.clone(), Box::new(b2))))
        }
        Term::App(f, a) => {
            if let Term::Abs(x, _, body) = f.as_ref() {
                return Some((Rule::Beta, body.subst(x, a)));
            }
            if let Some((rule, f2)) = step_in(p, f, bound) {
                return Some((rule, Term::app(f2, (**a).clone())));
            }
            step_in(p, a, bound).map(|(rule, a2)| (rule, Term::app((**f).clone(), a2)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub term: Term,
    pub steps: Vec<Rule>,
    /// False when the fuel ran out first.
    pub normal: bool,
}

/// Reduces until no rule applies or `fuel` steps have been taken.
pub fn normalize(p: &LogicProgram, t: &Term, fuel: usize) -> Reduction {
    let mut cur = t.clone();
    let mut steps = Vec::new();
    while steps.len() < fuel {
        match step(p, &cur) {
            Some((rule, next)) => {
                steps.push(rule);
                cur = next;
            }
            None => {
                return Reduction {
                    term: cur,
                    steps,
                    normal: true,
                }
            }
        }
    }
    let normal = step(p, &cur).is_none();
    Reduction {
        term: cur,
        steps,
        normal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sort::{Sort, SortEnv};
    use crate::syntax::{parse_term, print_term};

    fn program() -> LogicProgram {
        let env = SortEnv::from_pairs([("X".to_string(), Sort::arrow(Sort::int(), Sort::Prop))]).unwrap();
        LogicProgram::new(env, vec![("X".into(), parse_term(r"\y:int. y = 0 || X (y - 1)").unwrap())])
    }

    #[test]
    fn delta_then_beta() {
        let p = program();
        let t = parse_term("X 2").unwrap();
        let (r1, t1) = step(&p, &t).unwrap();
        assert_eq!(r1, Rule::Delta);
        let (r2, t2) = step(&p, &t1).unwrap();
        assert_eq!(r2, Rule::Beta);
        assert_eq!(print_term(&t2), "2 = 0 || X (2 - 1)");
    }

    #[test]
    fn recursion_runs_out_of_fuel() {
        let r = normalize(&program(), &parse_term("X 2").unwrap(), 10);
        assert!(!r.normal);
        assert_eq!(r.steps.len(), 10);
    }

    #[test]
    fn bound_names_are_not_unfolded() {
        let t = parse_term(r"\X:int -> o. X 1").unwrap();
        assert!(step(&program(), &t).is_none());
    }
}
