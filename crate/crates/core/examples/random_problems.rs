//! Generates small problems over arithmetic modulo 3 and decides them three
//! ways: standard models, monotone prefixed points and the least fixpoint.

use std::sync::Arc;

use hohorn::gen::Gen;
use hohorn::semantics::fixpoint::{solvable_monotone, solvable_monotone_prefix, solvable_standard};
use hohorn::semantics::{FiniteTheory, Frames};

fn main() {
    let th = Arc::new(FiniteTheory::modular(3));
    let frames = Frames::new(th.clone());
    let mut g = Gen::new(&th, "int", 2024);
    for _ in 0..5 {
        let p = g.problem();
        let s = solvable_standard(&frames, &p).unwrap();
        let m = solvable_monotone_prefix(&frames, &p).unwrap();
        let l = solvable_monotone(&frames, &p).unwrap();
        println!("{p}-- standard {s}, monotone {m}, least fixpoint {l}\n");
    }
}
