//! Builds a problem in code, infers its Horn system and prints SMT-LIB.

use hohorn::inference::chc_of_problem;
use hohorn::problem::decompose_definite;
use hohorn::solver::emit_smtlib;
use hohorn::syntax::parse_term;
use hohorn::{Problem, Signature, Sort, SortEnv};

fn main() {
    let sig = Signature::zla();
    let env = SortEnv::from_pairs([
        ("Even".to_string(), Sort::arrow(Sort::int(), Sort::Prop)),
        ("Twice".to_string(), Sort::curried([Sort::arrow(Sort::int(), Sort::Prop), Sort::int()], Sort::Prop)),
    ])
    .unwrap();
    let d = parse_term(
        "(forall n:int. n = 0 || (exists m:int. n = m + 2 && Even m) => Even n) \
         && (forall p:int -> o. forall n:int. p n && p (n + 2) => Twice p n)",
    )
    .unwrap();
    let problem = Problem {
        theory: "zla".into(),
        definite: decompose_definite(&sig, &env, &d).unwrap(),
        env,
        goal: parse_term("Twice Even 1").unwrap(),
    };
    problem.validate(&sig).unwrap();
    let sys = chc_of_problem(&sig, &problem).unwrap();
    print!("{}", emit_smtlib(&sys).unwrap());
}
