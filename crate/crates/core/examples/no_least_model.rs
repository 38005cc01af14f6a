//! A definite formula over the one-point theory with two incomparable
//! minimal standard models, and the least model of its monotone program.

use std::sync::Arc;

use hohorn::cli::render_element;
use hohorn::semantics::fixpoint::{comparable, least_model, minimal_models};
use hohorn::semantics::{FiniteTheory, Frames, Kind};
use hohorn::syntax::parse_problem_with;
use hohorn::transform::program_of_definite;

const SRC: &str = "
theory one;
env
  Q : one -> o;
  P : ((one -> o) -> o) -> o;
clauses
  forall x:(one -> o) -> o. x Q => P x;
goal false;
";

fn main() {
    let th = Arc::new(FiniteTheory::one_point("one", "u"));
    let p = parse_problem_with(SRC, &th.signature()).unwrap();
    let frames = Frames::new(th);

    let models = minimal_models(&frames, &p.env, &p.definite).unwrap();
    for (i, m) in models.iter().enumerate() {
        println!("minimal model {}:", i + 1);
        for ((x, s), v) in p.env.iter().zip(m) {
            println!("  {x} = {}", render_element(&frames, s, Kind::Standard, *v));
        }
    }
    let cmp = comparable(&frames, &p.env, Kind::Standard, &models[0], &models[1]).unwrap();
    println!("comparable: {cmp}");

    let mu = least_model(&frames, &program_of_definite(&p.env, &p.definite)).unwrap();
    println!("least monotone model:");
    for ((x, s), v) in p.env.iter().zip(&mu) {
        println!("  {x} = {}", render_element(&frames, s, Kind::Monotone, *v));
    }
}
