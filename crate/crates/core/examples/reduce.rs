//! Unfolds definitions of the Iter/Add program step by step.

use std::path::Path;

use hohorn::cli::load_problem;
use hohorn::reduce::{normalize, step};
use hohorn::syntax::parse_term_with;
use hohorn::transform::program_of_definite;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/iter.hochc");
    let loaded = load_problem(&path, None).unwrap();
    let p = &loaded.problem;
    let prog = program_of_definite(&p.env, &p.definite);
    println!("{prog}");

    let mut t = parse_term_with("Iter Add 0 1 1", &loaded.sig, &["Add", "Iter"]).unwrap();
    for _ in 0..4 {
        let Some((rule, next)) = step(&prog, &t) else { break };
        println!("--{rule}--> {next}");
        t = next;
    }
    let r = normalize(&prog, &parse_term_with("Add 2 3 5", &loaded.sig, &["Add"]).unwrap(), 100);
    println!("\nAdd 2 3 5 normalises to `{}` in {} steps", r.term, r.steps.len());
}
