//! Reduces the Iter/Add problem to first-order Horn clauses and hands them to
//! z3 (or the solver named by `HOHORN_SOLVER`).

use std::path::Path;

use hohorn::cli::load_problem;
use hohorn::inference::infer_problem;
use hohorn::solver::{emit_smtlib, run_solver, SolverConfig};
use hohorn::types::TypeEntry;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/iter.hochc");
    let loaded = load_problem(&path, None).expect("corpus problem loads");
    let inf = infer_problem(&loaded.sig, &loaded.problem).expect("inference succeeds");

    println!("inferred templates:");
    for (x, e) in inf.gamma.iter() {
        match e {
            TypeEntry::Ty(t) => println!("  {x} : {t}"),
            TypeEntry::Ind(s) => println!("  {x} : {s}"),
        }
    }
    println!("\nHorn system:\n{}", inf.system);

    let text = emit_smtlib(&inf.system).unwrap();
    let cfg = SolverConfig::resolve(None).unwrap_or_else(|| SolverConfig::new("z3 {file}"));
    match run_solver(&text, &cfg) {
        Ok(v) => println!("solver says {} in {:?}", v.status, v.duration),
        Err(e) => println!("could not run the solver: {e}"),
    }
}
