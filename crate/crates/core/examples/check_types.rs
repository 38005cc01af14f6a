//! Checks the Iter/Add program against a refinement type environment, then
//! shows that weakening Iter's type makes the goal untypable.

use std::path::Path;

use hohorn::cli::load_problem;
use hohorn::solver::SmtOracle;
use hohorn::syntax::parse_type_env;
use hohorn::transform::program_of_definite;
use hohorn::types::{check_program_detailed, check_term};
use hohorn::{RefType, Term};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let loaded = load_problem(&dir.join("iter.hochc"), None).unwrap();
    let p = &loaded.problem;
    let prog = program_of_definite(&p.env, &p.definite);
    let oracle = SmtOracle::z3();

    for file in ["gamma_i.rty", "gamma_weak.rty"] {
        let src = std::fs::read_to_string(dir.join(file)).unwrap();
        let gamma = parse_type_env(&src, &loaded.sig).unwrap();
        println!("{file}:");
        match check_program_detailed(&loaded.sig, &prog, &gamma, &oracle) {
            Ok(defs) => {
                for (x, ok) in defs {
                    println!("  {x}: {}", if ok { "ok" } else { "rejected" });
                }
            }
            Err(e) => println!("  error: {e}"),
        }
        let goal = check_term(&loaded.sig, &gamma, &p.goal, &RefType::bool(Term::ff()), &oracle);
        println!("  goal refuted: {goal:?}");
    }
}
